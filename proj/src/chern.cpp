#include "mfhrr/chern.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "mfhrr/errors.hpp"

namespace mfhrr {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Closedness of an endomorphism part directly against delta.
void require_closed_endo(const MatrixFactorization& p, const PolyMatrix& alpha, const char* who) {
    if (static_cast<int>(alpha.size()) != p.dim())
        throw error(std::string(who) + " has the wrong shape");
    for (const auto& row : alpha)
        if (static_cast<int>(row.size()) != p.dim())
            throw error(std::string(who) + " has the wrong shape");
    PolyMatrix delta = delta_matrix(p);
    for (int parity = 0; parity < 2; ++parity) {
        PolyMatrix part = poly_matrix_zero(p.ring, p.dim(), p.dim());
        bool any = false;
        for (int i = 0; i < p.dim(); ++i)
            for (int j = 0; j < p.dim(); ++j) {
                if (((p.index_parity(i) + p.index_parity(j)) & 1) != parity) continue;
                const MultiPoly& e = alpha[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (e.is_zero()) continue;
                part[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
                any = true;
            }
        if (!any) continue;
        PolyMatrix da = poly_matrix_mul(delta, part);
        PolyMatrix ad = poly_matrix_mul(part, delta);
        PolyMatrix d = parity == 0 ? poly_matrix_sub(da, ad) : poly_matrix_add(da, ad);
        if (!poly_matrix_is_zero(d))
            throw not_closed_error(std::string(who) + " is not a closed endomorphism");
    }
}

}  // namespace

ChernClass boundary_bulk(const MatrixFactorization& p, const PolyMatrix& alpha,
                         const MilnorRing& mr) {
    require_closed_endo(p, alpha, "boundary_bulk: endomorphism");
    SuperMatrixForm dd = entrywise_d(delta_matrix(p), mr.ring, p.r0, p.r1);
    SuperMatrixForm expo = exp_truncated(-dd);
    SuperMatrixForm a = SuperMatrixForm::from_matrix(mr.ring, p.r0, p.r1, poly_matrix_lift(alpha, mr.ring));
    FormPoly tau = supertrace(wedge_mul(expo, a));
    ChernClass c;
    c.n = mr.ring->nvars();
    c.parity = c.n & 1;
    // Reordering normalization: moving the n form factors past the odd matrix
    // factors costs (-1)^{binom(n,2)}; with it, tau(1) of koszul(x,y) is
    // +dx^dy. The identities are insensitive to this factor (tau enters both
    // sides quadratically), the reported classes are not.
    MultiPoly top = tau.top_coefficient();
    if ((c.n * (c.n - 1) / 2) % 2 == 1) top = -top;
    c.milnor_class = milnor_normal_form(top, mr);
    return c;
}

ChernClass chern_local(const MatrixFactorization& p, const MilnorRing& mr) {
    return boundary_bulk(p, poly_matrix_identity(p.ring, p.dim()), mr);
}

ChernClass dual_class(const ChernClass& c) {
    ChernClass d = c;
    if (c.n % 2 == 1) d.milnor_class = -d.milnor_class;
    return d;
}

// --- Todd series --------------------------------------------------------

Rational ToddSeries::coeff(const std::vector<int>& key) const {
    auto it = coeffs.find(key);
    return it == coeffs.end() ? Rational(0) : it->second;
}

std::string ToddSeries::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : coeffs) {
        os << (first ? "" : " + ") << "(" << c.str() << ")";
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] == 0) continue;
            os << "*c" << (i + 1);
            if (key[i] > 1) os << "^" << key[i];
        }
        first = false;
    }
    return os.str();
}

namespace {

MultiPoly truncate_degree(const MultiPoly& p, int deg) {
    MultiPoly r(p.ring());
    for (const auto& [m, c] : p.terms())
        if (m.total_degree() <= deg) r.add_term(m, c);
    return r;
}

MultiPoly elementary_symmetric(const RingPtr& ring, int k) {
    int n = ring->nvars();
    MultiPoly r(ring);
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(idx.size()) == k) {
            Monomial m(n);
            for (int i : idx) m.e[static_cast<std::size_t>(i)] = 1;
            r.add_term(m, Rational(1));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return r;
}

}  // namespace

ToddSeries todd_series(int degree) {
    ToddSeries td;
    td.degree = degree;
    if (degree < 0) throw error("todd_series: negative degree");
    td.coeffs[std::vector<int>(static_cast<std::size_t>(std::max(degree, 0)), 0)] = Rational(1);
    if (degree == 0) return td;

    int n = degree;  // one Chern root per degree suffices
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i + 1));
    RingPtr ring = make_ring(names);

    // x/(1 - e^{-x}) as a truncated power series: invert
    // s(x) = (1 - e^{-x})/x = sum_k (-1)^k x^k/(k+1)!.
    std::vector<Rational> s(static_cast<std::size_t>(degree) + 1);
    Rational fact(1);
    for (int k = 0; k <= degree; ++k) {
        fact *= Rational(k + 1);
        s[static_cast<std::size_t>(k)] = Rational(k % 2 == 0 ? 1 : -1) / fact;
    }
    std::vector<Rational> t(static_cast<std::size_t>(degree) + 1);
    t[0] = Rational(1);
    for (int k = 1; k <= degree; ++k) {
        Rational acc;
        for (int j = 1; j <= k; ++j) acc += s[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(k - j)];
        t[static_cast<std::size_t>(k)] = -acc;
    }

    MultiPoly total = MultiPoly::constant(ring, Rational(1));
    for (int i = 0; i < n; ++i) {
        MultiPoly factor(ring);
        for (int k = 0; k <= degree; ++k) {
            Monomial m(n);
            m.e[static_cast<std::size_t>(i)] = k;
            factor.add_term(m, t[static_cast<std::size_t>(k)]);
        }
        total = truncate_degree(total * factor, degree);
    }

    // Rewrite in elementary symmetric polynomials by peeling lex-leading
    // partitions.
    std::vector<MultiPoly> elem;
    for (int k = 1; k <= n; ++k) elem.push_back(elementary_symmetric(ring, k));
    MonomialOrder lex = MonomialOrder::lex();
    td.coeffs.clear();
    td.coeffs[std::vector<int>(static_cast<std::size_t>(n), 0)] = total.constant_term();
    MultiPoly rest = total - MultiPoly::constant(ring, total.constant_term());
    while (!rest.is_zero()) {
        auto [m, c] = rest.leading_term(lex);
        // Lex-leading exponent of a symmetric polynomial is a partition.
        std::vector<int> key(static_cast<std::size_t>(n), 0);
        MultiPoly prod = MultiPoly::constant(ring, Rational(1));
        for (int i = 0; i < n; ++i) {
            int next = i + 1 < n ? m.e[static_cast<std::size_t>(i + 1)] : 0;
            int a = m.e[static_cast<std::size_t>(i)] - next;
            if (a < 0) throw error("todd_series: non-symmetric remainder");
            key[static_cast<std::size_t>(i)] = a;
            for (int rep = 0; rep < a; ++rep) prod = truncate_degree(prod * elem[static_cast<std::size_t>(i)], degree);
        }
        td.coeffs[key] = c;
        rest -= prod.scaled(c);
    }
    return td;
}

// --- calibration ----------------------------------------------------------

int hrr_sign_constant(int n) {
    return ((n * (n + 1) / 2) % 2 == 0) ? 1 : -1;
}

int vee_factor(const Calibration& cal, int n) {
    if (cal.convention == VeeConvention::top_sign && n % 2 == 1) return -1;
    return 1;
}

namespace {

Rational residue_product(const ChernClass& f, const ChernClass& g, const MilnorRing& mr) {
    return residue(g.milnor_class * f.milnor_class, mr);
}

struct Probe {
    std::string name;
    long lhs;
    Rational rhs_identity, rhs_top;
};

Calibration run_calibration() {
    std::vector<Probe> probes;

    auto hrr_probe = [&](const std::string& name, const MatrixFactorization& p,
                         const MatrixFactorization& q) {
        MilnorRing mr = milnor_ring(p.w);
        long lhs = euler_char(p, q);
        ChernClass f = chern_local(p, mr), g = chern_local(q, mr);
        Rational raw = residue_product(f, g, mr);
        int s = hrr_sign_constant(mr.ring->nvars());
        int vee_top = mr.ring->nvars() % 2 == 1 ? -1 : 1;
        probes.push_back({name, lhs, Rational(s) * raw, Rational(s * vee_top) * raw});
    };

    {
        RingPtr r = make_ring({"x", "y"});
        MatrixFactorization k = koszul_mf(MultiPoly::variable(r, 0), MultiPoly::variable(r, 1));
        hrr_probe("hrr:x*y", k, k);
    }
    {
        RingPtr r = make_ring({"x", "y"});
        MatrixFactorization t = tensor_mf(koszul_mf(MultiPoly::variable(r, 0), MultiPoly::variable(r, 0)),
                                          koszul_mf(MultiPoly::variable(r, 1), MultiPoly::variable(r, 1)));
        hrr_probe("hrr:x^2+y^2", t, t);
    }
    {
        // Odd-n Cardy probe with odd endomorphisms; this one separates the
        // two conventions.
        RingPtr r = make_ring({"x"});
        MatrixFactorization k = koszul_mf(MultiPoly::variable(r, 0), MultiPoly::variable(r, 0));
        PolyMatrix z = poly_matrix_zero(r, 2, 2);
        z[0][1] = MultiPoly::constant(r, Rational(1));
        z[1][0] = MultiPoly::constant(r, Rational(-1));
        MilnorRing mr = milnor_ring(k.w);
        Rational lhs = cardy_lhs(k, k, z, z);
        ChernClass f = boundary_bulk(k, z, mr), g = boundary_bulk(k, z, mr);
        Rational raw = residue_product(f, g, mr);
        int s = hrr_sign_constant(1);
        Probe pr{"cardy:x^2", 0, Rational(s) * raw, Rational(-s) * raw};
        // lhs is rational here; probes store longs, so check directly.
        pr.lhs = lhs.to_long();
        probes.push_back(pr);
    }

    Calibration cal;
    cal.identity_ok = true;
    cal.top_sign_ok = true;
    std::ostringstream rec;
    for (const auto& p : probes) {
        if (Rational(p.lhs) != p.rhs_identity) cal.identity_ok = false;
        if (Rational(p.lhs) != p.rhs_top) cal.top_sign_ok = false;
        rec << p.name << "[lhs=" << p.lhs << ",identity=" << p.rhs_identity.str()
            << ",top_sign=" << p.rhs_top.str() << "] ";
    }
    if (cal.identity_ok)
        cal.convention = VeeConvention::identity;
    else if (cal.top_sign_ok)
        cal.convention = VeeConvention::top_sign;
    else
        throw convention_error("calibration: no duality-sign convention fits all probes: " + rec.str());
    cal.record = std::string("convention=") +
                 (cal.convention == VeeConvention::identity ? "identity" : "top_sign") +
                 "; probes: " + rec.str();
    return cal;
}

}  // namespace

const Calibration& global_calibration() {
    static const Calibration cal = run_calibration();
    return cal;
}

Rational hrr_rhs(const MatrixFactorization& p, const MatrixFactorization& q, const MilnorRing& mr) {
    const Calibration& cal = global_calibration();
    ChernClass f = chern_local(p, mr), g = chern_local(q, mr);
    int n = mr.ring->nvars();
    return Rational(hrr_sign_constant(n) * vee_factor(cal, n)) * residue_product(f, g, mr);
}

Rational cardy_rhs(const PolyMatrix& alpha, const PolyMatrix& beta,
                   const MatrixFactorization& p, const MatrixFactorization& q,
                   const MilnorRing& mr) {
    const Calibration& cal = global_calibration();
    ChernClass f = boundary_bulk(p, alpha, mr);
    ChernClass g = boundary_bulk(q, beta, mr);
    int n = mr.ring->nvars();
    return Rational(hrr_sign_constant(n) * vee_factor(cal, n)) * residue_product(f, g, mr);
}

// --- verification drivers -----------------------------------------------

namespace {

// Shared scope checks; fills the report error on violation.
bool enter_scope(const MatrixFactorization& p, const MatrixFactorization& q, std::string& err,
                 std::optional<MilnorRing>& mr) {
    MfCheck cp = validate_mf(p);
    if (!cp.ok) {
        err = "P is not a matrix factorization: " + cp.message;
        return false;
    }
    MfCheck cq = validate_mf(q);
    if (!cq.ok) {
        err = "Q is not a matrix factorization: " + cq.message;
        return false;
    }
    if (!same_ring(p.ring, q.ring) || p.w != q.w) {
        err = "P and Q have different potentials";
        return false;
    }
    if (!quasi_homogeneous_weights(p.w)) {
        err = "scope: w is not quasi-homogeneous";
        return false;
    }
    try {
        mr = milnor_ring(p.w);
    } catch (const non_isolated_error& e) {
        err = std::string("scope: ") + e.what();
        return false;
    }
    return true;
}

std::string ext_method(const HomComplex& h, ExtResult& out, const std::string& method) {
    if (method == "groebner") {
        out = ext_dims_groebner(h);
        return "groebner";
    }
    if (method == "graded") {
        out = ext_dims_graded(h);
        return "graded";
    }
    ExtResult g = ext_dims_groebner(h);
    try {
        ExtResult gr = ext_dims_graded(h);
        if (gr.dim_even != g.dim_even || gr.dim_odd != g.dim_odd)
            throw error("groebner and graded Ext methods disagree: (" + std::to_string(g.dim_even) +
                        "," + std::to_string(g.dim_odd) + ") vs (" + std::to_string(gr.dim_even) +
                        "," + std::to_string(gr.dim_odd) + ")");
        out = g;
        return "both";
    } catch (const not_gradable_error&) {
        out = g;
        return "groebner";
    }
}

}  // namespace

VerificationReport verify_hrr(const MatrixFactorization& p, const MatrixFactorization& q,
                              const std::string& method) {
    auto start = Clock::now();
    VerificationReport r;
    r.w = p.w.str();
    r.n = p.ring->nvars();
    r.p_descr = p.descr.empty() ? "P" : p.descr;
    r.q_descr = q.descr.empty() ? "Q" : q.descr;
    r.sign_constant = hrr_sign_constant(r.n);

    std::optional<MilnorRing> mr;
    if (!enter_scope(p, q, r.error, mr)) {
        r.elapsed_ms = ms_since(start);
        return r;
    }
    r.mu = mr->mu;
    try {
        HomComplex h = hom_complex(p, q);
        ExtResult dims;
        r.method = ext_method(h, dims, method);
        r.lhs = dims.euler;
        ChernClass f = chern_local(p, *mr), g = chern_local(q, *mr);
        r.chern_p = f.milnor_class.str();
        r.chern_q = g.milnor_class.str();
        const Calibration& cal = global_calibration();
        r.calibration = cal.record;
        r.rhs = Rational(r.sign_constant * vee_factor(cal, r.n)) * residue_product(f, g, *mr);
        r.equal = Rational(r.lhs) == r.rhs;
    } catch (const error& e) {
        r.error = e.what();
    }
    r.elapsed_ms = ms_since(start);
    return r;
}

CardyReport verify_cardy(const MatrixFactorization& p, const MatrixFactorization& q,
                         const PolyMatrix& alpha, const PolyMatrix& beta,
                         const std::string& alpha_name, const std::string& beta_name,
                         const std::string& method) {
    auto start = Clock::now();
    CardyReport r;
    r.w = p.w.str();
    r.n = p.ring->nvars();
    r.p_descr = p.descr.empty() ? "P" : p.descr;
    r.q_descr = q.descr.empty() ? "Q" : q.descr;
    r.alpha = alpha_name;
    r.beta = beta_name;
    r.sign_constant = hrr_sign_constant(r.n);

    std::optional<MilnorRing> mr;
    if (!enter_scope(p, q, r.error, mr)) {
        r.elapsed_ms = ms_since(start);
        return r;
    }
    r.mu = mr->mu;
    try {
        HomComplex h = hom_complex(p, q);
        ExtResult dims;
        r.method = ext_method(h, dims, method);
        ExtBasis eb = ext_basis(h);
        r.lhs = cardy_lhs_with(eb, alpha, beta);
        ChernClass f = boundary_bulk(p, alpha, *mr);
        ChernClass g = boundary_bulk(q, beta, *mr);
        r.tau_alpha = f.milnor_class.str();
        r.tau_beta = g.milnor_class.str();
        const Calibration& cal = global_calibration();
        r.calibration = cal.record;
        r.rhs = Rational(r.sign_constant * vee_factor(cal, r.n)) * residue_product(f, g, *mr);
        r.equal = r.lhs == r.rhs;
    } catch (const error& e) {
        r.error = e.what();
    }
    r.elapsed_ms = ms_since(start);
    return r;
}

// --- serialization ----------------------------------------------------------

std::string report_to_json(const VerificationReport& r) {
    nlohmann::json j{{"w", r.w},
                     {"n", r.n},
                     {"mu", r.mu},
                     {"P", r.p_descr},
                     {"Q", r.q_descr},
                     {"lhs", r.lhs},
                     {"rhs_numerator", r.rhs.numerator().get_str()},
                     {"rhs_denominator", r.rhs.denominator().get_str()},
                     {"equal", r.equal},
                     {"sign_constant", r.sign_constant},
                     {"chern_P", r.chern_p},
                     {"chern_Q", r.chern_q},
                     {"method", r.method},
                     {"calibration", r.calibration},
                     {"elapsed_ms", r.elapsed_ms},
                     {"error", r.error}};
    return j.dump();
}

VerificationReport report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    VerificationReport r;
    r.w = j.at("w").get<std::string>();
    r.n = j.at("n").get<int>();
    r.mu = j.at("mu").get<long>();
    r.p_descr = j.at("P").get<std::string>();
    r.q_descr = j.at("Q").get<std::string>();
    r.lhs = j.at("lhs").get<long>();
    r.rhs = Rational::parse(j.at("rhs_numerator").get<std::string>() + "/" +
                            j.at("rhs_denominator").get<std::string>());
    r.equal = j.at("equal").get<bool>();
    r.sign_constant = j.at("sign_constant").get<int>();
    r.chern_p = j.at("chern_P").get<std::string>();
    r.chern_q = j.at("chern_Q").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.calibration = j.at("calibration").get<std::string>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.error = j.value("error", "");
    return r;
}

std::string report_to_json(const CardyReport& r) {
    nlohmann::json j{{"w", r.w},
                     {"n", r.n},
                     {"mu", r.mu},
                     {"P", r.p_descr},
                     {"Q", r.q_descr},
                     {"alpha", r.alpha},
                     {"beta", r.beta},
                     {"lhs_numerator", r.lhs.numerator().get_str()},
                     {"lhs_denominator", r.lhs.denominator().get_str()},
                     {"rhs_numerator", r.rhs.numerator().get_str()},
                     {"rhs_denominator", r.rhs.denominator().get_str()},
                     {"equal", r.equal},
                     {"sign_constant", r.sign_constant},
                     {"tau_alpha", r.tau_alpha},
                     {"tau_beta", r.tau_beta},
                     {"method", r.method},
                     {"calibration", r.calibration},
                     {"elapsed_ms", r.elapsed_ms},
                     {"error", r.error}};
    return j.dump();
}

CardyReport cardy_report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CardyReport r;
    r.w = j.at("w").get<std::string>();
    r.n = j.at("n").get<int>();
    r.mu = j.at("mu").get<long>();
    r.p_descr = j.at("P").get<std::string>();
    r.q_descr = j.at("Q").get<std::string>();
    r.alpha = j.at("alpha").get<std::string>();
    r.beta = j.at("beta").get<std::string>();
    r.lhs = Rational::parse(j.at("lhs_numerator").get<std::string>() + "/" +
                            j.at("lhs_denominator").get<std::string>());
    r.rhs = Rational::parse(j.at("rhs_numerator").get<std::string>() + "/" +
                            j.at("rhs_denominator").get<std::string>());
    r.equal = j.at("equal").get<bool>();
    r.sign_constant = j.at("sign_constant").get<int>();
    r.tau_alpha = j.at("tau_alpha").get<std::string>();
    r.tau_beta = j.at("tau_beta").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.calibration = j.at("calibration").get<std::string>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.error = j.value("error", "");
    return r;
}

std::string report_to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "w = " << r.w << "  (n=" << r.n << ", mu=" << r.mu << ")\n"
       << "  P = " << r.p_descr << "\n  Q = " << r.q_descr << "\n";
    if (!r.error.empty()) {
        os << "  ERROR: " << r.error << "\n";
        return os.str();
    }
    os << "  chi(P,Q) = " << r.lhs << "   rhs = " << r.rhs.str() << "   ["
       << (r.equal ? "EQUAL" : "MISMATCH") << "]\n"
       << "  sign = " << r.sign_constant << ", ch(P) = " << r.chern_p << ", ch(Q) = " << r.chern_q
       << ", method = " << r.method << ", " << r.elapsed_ms << " ms\n";
    return os.str();
}

std::string report_to_text(const CardyReport& r) {
    std::ostringstream os;
    os << "w = " << r.w << "  (n=" << r.n << ", mu=" << r.mu << ")\n"
       << "  P = " << r.p_descr << "\n  Q = " << r.q_descr << "\n"
       << "  alpha = " << r.alpha << ", beta = " << r.beta << "\n";
    if (!r.error.empty()) {
        os << "  ERROR: " << r.error << "\n";
        return os.str();
    }
    os << "  str(L_beta R_alpha) = " << r.lhs.str() << "   rhs = " << r.rhs.str() << "   ["
       << (r.equal ? "EQUAL" : "MISMATCH") << "]\n"
       << "  tau(alpha) = " << r.tau_alpha << ", tau(beta) = " << r.tau_beta << ", method = "
       << r.method << ", " << r.elapsed_ms << " ms\n";
    return os.str();
}

}  // namespace mfhrr
