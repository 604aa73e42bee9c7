// Command-line front end: verify Riemann-Roch and Cardy identities for matrix
// factorizations of isolated quasi-homogeneous singularities.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mfhrr/battery.hpp"
#include "mfhrr/chern.hpp"
#include "mfhrr/errors.hpp"

namespace {

using namespace mfhrr;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Options {
    bool json = false;
    int jobs = 1;
    std::string method = "both";  // groebner | graded | both
};

// Dimensions under the requested method, cross-checking when asked for both.
ExtResult ext_with_method(const HomComplex& h, const std::string& method) {
    if (method == "groebner") return ext_dims_groebner(h);
    if (method == "graded") return ext_dims_graded(h);
    ExtResult g = ext_dims_groebner(h);
    try {
        ExtResult gr = ext_dims_graded(h);
        if (gr.dim_even != g.dim_even || gr.dim_odd != g.dim_odd)
            throw error("groebner and graded Ext methods disagree");
        g.method = "both";
    } catch (const not_gradable_error&) {
    }
    return g;
}

int run_verify_case(const ProblemFile& pf, const Options& opt, std::string& out) {
    auto [p, q] = pf.hrr_pair();
    VerificationReport rep = verify_hrr(*p, *q, opt.method);
    if (!pf.name.empty()) rep.p_descr = pf.name + ": " + rep.p_descr;
    out = opt.json ? report_to_json(rep) + "\n" : report_to_text(rep);
    if (!rep.error.empty()) return kExitInputError;
    return rep.equal ? kExitOk : kExitVerificationFailed;
}

int run_cardy_case(const ProblemFile& pf, const Options& opt, std::string& out) {
    auto [a, b] = pf.cardy_pair();
    const MatrixFactorization& p = pf.mf(a->mf_name);
    const MatrixFactorization& q = pf.mf(b->mf_name);
    CardyReport rep = verify_cardy(p, q, a->matrix, b->matrix, a->name, b->name, opt.method);
    if (!pf.name.empty()) rep.p_descr = pf.name + ": " + rep.p_descr;
    out = opt.json ? report_to_json(rep) + "\n" : report_to_text(rep);
    if (!rep.error.empty()) return kExitInputError;
    return rep.equal ? kExitOk : kExitVerificationFailed;
}

int run_battery(const Options& opt) {
    std::vector<ProblemFile> cases = builtin_battery();
    std::vector<std::string> outputs(cases.size());
    std::vector<int> codes(cases.size(), kExitOk);

    auto run_one = [&](std::size_t i) {
        try {
            codes[i] = cases[i].command == "cardy" ? run_cardy_case(cases[i], opt, outputs[i])
                                                   : run_verify_case(cases[i], opt, outputs[i]);
        } catch (const error& e) {
            outputs[i] = std::string("error in case ") + cases[i].name + ": " + e.what() + "\n";
            codes[i] = kExitInputError;
        }
    };

    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& th : pool) th.join();
    }

    // Deterministic input-order report stream, regardless of completion order.
    int worst = kExitOk;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (!opt.json) std::cout << "=== " << cases[i].name << " ===\n";
        std::cout << outputs[i];
        worst = std::max(worst, codes[i]);
    }
    if (!opt.json)
        std::cout << (worst == kExitOk ? "battery: all identities hold\n"
                                       : "battery: FAILURES present\n");
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Riemann-Roch and Cardy verification for matrix factorizations"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // global flags may follow the subcommand

    Options opt;
    bool calibration_report = false;
    app.add_flag("--json", opt.json, "emit JSON reports");
    app.add_option("--jobs", opt.jobs, "worker threads for the battery")->default_val(1);
    app.add_option("--method", opt.method, "ext method: groebner|graded|both")
        ->check(CLI::IsMember({"groebner", "graded", "both"}))
        ->default_val("both");
    app.add_flag("--calibration-report", calibration_report,
                 "print the duality-sign calibration record");

    std::string file, mf_a, mf_b, poly_text;
    CLI::App* cmd_verify = app.add_subcommand("verify", "check the Riemann-Roch identity");
    cmd_verify->add_option("file", file)->required();
    CLI::App* cmd_cardy = app.add_subcommand("cardy", "check the Cardy identity");
    cmd_cardy->add_option("file", file)->required();
    CLI::App* cmd_chern = app.add_subcommand("chern", "local Chern character of one factorization");
    cmd_chern->add_option("file", file)->required();
    cmd_chern->add_option("mf", mf_a)->required();
    CLI::App* cmd_ext = app.add_subcommand("ext", "Ext dimensions and Euler characteristic");
    cmd_ext->add_option("file", file)->required();
    cmd_ext->add_option("mf_p", mf_a)->required();
    cmd_ext->add_option("mf_q", mf_b)->required();
    CLI::App* cmd_milnor = app.add_subcommand("milnor", "Milnor ring data of w");
    cmd_milnor->add_option("file", file)->required();
    CLI::App* cmd_residue = app.add_subcommand("residue", "Grothendieck residue of a polynomial");
    cmd_residue->add_option("file", file)->required();
    cmd_residue->add_option("poly", poly_text)->required();
    CLI::App* cmd_battery = app.add_subcommand("battery", "run the built-in verification suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (calibration_report) {
            std::cout << global_calibration().record << "\n";
            if (app.get_subcommands().empty()) return kExitOk;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return kExitInputError;
        }

        if (cmd_battery->parsed()) return run_battery(opt);

        ProblemFile pf = parse_problem(slurp(file));
        if (cmd_verify->parsed()) {
            std::string out;
            int code = run_verify_case(pf, opt, out);
            std::cout << out;
            return code;
        }
        if (cmd_cardy->parsed()) {
            std::string out;
            int code = run_cardy_case(pf, opt, out);
            std::cout << out;
            return code;
        }
        if (cmd_chern->parsed()) {
            const MatrixFactorization& m = pf.mf(mf_a);
            MilnorRing mr = milnor_ring(pf.w);
            ChernClass c = chern_local(m, mr);
            std::cout << "ch(" << mf_a << ") = " << c.milnor_class.str() << "  (n=" << c.n
                      << ", mu=" << mr.mu << ")\n";
            return kExitOk;
        }
        if (cmd_ext->parsed()) {
            HomComplex h = hom_complex(pf.mf(mf_a), pf.mf(mf_b));
            ExtResult r = ext_with_method(h, opt.method);
            std::cout << "dim Ext^0 = " << r.dim_even << ", dim Ext^1 = " << r.dim_odd
                      << ", chi = " << r.euler << "  [method " << r.method << "]\n";
            return kExitOk;
        }
        if (cmd_milnor->parsed()) {
            MilnorRing mr = milnor_ring(pf.w);
            std::cout << "w = " << pf.w.str() << "\nmu = " << mr.mu << "\nbasis:";
            for (const auto& m : mr.basis) std::cout << " " << m.str(*mr.ring);
            std::cout << "\nweights:";
            if (mr.weights)
                for (const auto& u : *mr.weights) std::cout << " " << u.str();
            else
                std::cout << " (not quasi-homogeneous)";
            std::cout << "\n";
            return kExitOk;
        }
        if (cmd_residue->parsed()) {
            MilnorRing mr = milnor_ring(pf.w);
            MultiPoly g = parse_poly(poly_text, pf.ring);
            std::cout << residue(g, mr).str() << "\n";
            return kExitOk;
        }
        std::cerr << app.help();
        return kExitInputError;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
