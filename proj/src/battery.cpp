#include "mfhrr/battery.hpp"

#include "mfhrr/errors.hpp"

namespace mfhrr {

namespace {

ProblemFile make_case(const std::string& name, const std::string& command, const RingPtr& ring,
                      const MultiPoly& w) {
    ProblemFile pf;
    pf.name = name;
    pf.command = command;
    pf.ring = ring;
    pf.w = w;
    return pf;
}

void add_mf(ProblemFile& pf, const std::string& name, MatrixFactorization m) {
    pf.mfs.emplace_back(name, std::move(m));
}

void add_endo(ProblemFile& pf, const std::string& name, const std::string& on, PolyMatrix m) {
    pf.endos.push_back({name, on, std::move(m)});
}

}  // namespace

std::vector<ProblemFile> builtin_battery() {
    std::vector<ProblemFile> cases;

    RingPtr rx = make_ring({"x"});
    RingPtr rxy = make_ring({"x", "y"});
    RingPtr rxyz = make_ring({"x", "y", "z"});
    RingPtr rxuv = make_ring({"x", "u", "v"});
    auto X = [&](const RingPtr& r, const char* v, int p = 1) {
        return MultiPoly::variable(r, *r->index_of(v), p);
    };

    // ---- HRR cases, n = 1: the A_k chain ----
    struct AK {
        int k, a;  // w = x^{k+1}, P = koszul(x^a, x^{k+1-a})
        int b;     // Q = koszul(x^b, x^{k+1-b})
    };
    for (AK c : {AK{1, 1, 1}, AK{2, 1, 1}, AK{2, 1, 2}, AK{3, 1, 2}, AK{4, 2, 2}, AK{5, 3, 1}}) {
        MultiPoly w = X(rx, "x", c.k + 1);
        ProblemFile pf = make_case("A" + std::to_string(c.k) + "[x^" + std::to_string(c.k + 1) +
                                       ";a=" + std::to_string(c.a) + ",b=" + std::to_string(c.b) + "]",
                                   "verify", rx, w);
        add_mf(pf, "P", koszul_mf(X(rx, "x", c.a), X(rx, "x", c.k + 1 - c.a)));
        add_mf(pf, "Q", koszul_mf(X(rx, "x", c.b), X(rx, "x", c.k + 1 - c.b)));
        pf.pair_names = {{"P"}, {"Q"}};
        cases.push_back(std::move(pf));
    }

    // ---- n = 2: the node x*y ----
    {
        MultiPoly w = X(rxy, "x") * X(rxy, "y");
        ProblemFile pf = make_case("node[x*y]", "verify", rxy, w);
        add_mf(pf, "P", koszul_mf(X(rxy, "x"), X(rxy, "y")));
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));

        ProblemFile pf2 = make_case("node[x*y;swapped]", "verify", rxy, w);
        add_mf(pf2, "P", koszul_mf(X(rxy, "x"), X(rxy, "y")));
        add_mf(pf2, "Q", koszul_mf(X(rxy, "y"), X(rxy, "x")));
        pf2.pair_names = {{"P"}, {"Q"}};
        cases.push_back(std::move(pf2));
    }

    // ---- n = 2: quadric x^2 + y^2 ----
    {
        MultiPoly w = X(rxy, "x", 2) + X(rxy, "y", 2);
        ProblemFile pf = make_case("quadric[x^2+y^2]", "verify", rxy, w);
        add_mf(pf, "P", tensor_mf(koszul_mf(X(rxy, "x"), X(rxy, "x")),
                                  koszul_mf(X(rxy, "y"), X(rxy, "y"))));
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));
    }

    // ---- n = 2: Fermat cubic and variants ----
    {
        MultiPoly w = X(rxy, "x", 3) + X(rxy, "y", 3);
        auto fermat = [&]() {
            return tensor_mf(koszul_mf(X(rxy, "x"), X(rxy, "x", 2)),
                             koszul_mf(X(rxy, "y"), X(rxy, "y", 2)));
        };
        ProblemFile pf = make_case("fermat2[x^3+y^3]", "verify", rxy, w);
        add_mf(pf, "P", fermat());
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));

        ProblemFile pfs = make_case("fermat2[x^3+y^3;shift]", "verify", rxy, w);
        add_mf(pfs, "P", fermat());
        add_mf(pfs, "Q", shift_mf(fermat()));
        pfs.pair_names = {{"P"}, {"Q"}};
        cases.push_back(std::move(pfs));

        ProblemFile pfc = make_case("fermat2[x^3+y^3;plus-contractible]", "verify", rxy, w);
        add_mf(pfc, "P", fermat());
        add_mf(pfc, "Q", sum_mf(fermat(), koszul_mf(MultiPoly::constant(rxy, Rational(1)), w)));
        pfc.pair_names = {{"P"}, {"Q"}};
        cases.push_back(std::move(pfc));
    }

    // ---- n = 2: Fermat cubic along its linear factor ----
    {
        MultiPoly x = X(rxy, "x"), y = X(rxy, "y");
        MultiPoly w = x.pow(3) + y.pow(3);
        MultiPoly lin = x + y;
        MultiPoly quad = x.pow(2) - x * y + y.pow(2);
        ProblemFile pf = make_case("fermat2[x^3+y^3;linear-factor]", "verify", rxy, w);
        add_mf(pf, "L", koszul_mf(lin, quad));
        pf.pair_names = {{"L"}, {"L"}};
        cases.push_back(std::move(pf));

        ProblemFile pfx = make_case("fermat2[x^3+y^3;linear-vs-tensor]", "verify", rxy, w);
        add_mf(pfx, "L", koszul_mf(lin, quad));
        add_mf(pfx, "T", tensor_mf(koszul_mf(x, x.pow(2)), koszul_mf(y, y.pow(2))));
        pfx.pair_names = {{"L"}, {"T"}};
        cases.push_back(std::move(pfx));
    }

    // ---- n = 2: D4 (x^3 + x*y^2) with an explicit 4x4 factorization ----
    {
        MultiPoly x = X(rxy, "x"), y = X(rxy, "y");
        MultiPoly w = x.pow(3) + x * y.pow(2);
        MatrixFactorization d4;
        d4.ring = rxy;
        d4.w = w;
        d4.r0 = d4.r1 = 2;
        d4.d1 = {{y, x}, {x.pow(2), -(x * y)}};
        d4.d0 = {{x * y, x}, {x.pow(2), -y}};
        d4.descr = "explicit{d1=[[y, x],[x^2, -x*y]], d0=[[x*y, x],[x^2, -y]]}";

        ProblemFile pf = make_case("D4[x^3+x*y^2]", "verify", rxy, w);
        add_mf(pf, "M", d4);
        pf.pair_names = {{"M"}, {"M"}};
        cases.push_back(std::move(pf));

        ProblemFile pf2 = make_case("D4[x^3+x*y^2;vs-koszul]", "verify", rxy, w);
        add_mf(pf2, "M", d4);
        add_mf(pf2, "K", koszul_mf(x, x.pow(2) + y.pow(2)));
        pf2.pair_names = {{"M"}, {"K"}};
        cases.push_back(std::move(pf2));
    }

    // ---- n = 3: Fermat cubic, quadric chain, Knoerrer stabilization ----
    {
        MultiPoly w = X(rxyz, "x", 3) + X(rxyz, "y", 3) + X(rxyz, "z", 3);
        ProblemFile pf = make_case("fermat3[x^3+y^3+z^3]", "verify", rxyz, w);
        add_mf(pf, "P",
               tensor_mf(tensor_mf(koszul_mf(X(rxyz, "x"), X(rxyz, "x", 2)),
                                   koszul_mf(X(rxyz, "y"), X(rxyz, "y", 2))),
                         koszul_mf(X(rxyz, "z"), X(rxyz, "z", 2))));
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));
    }
    {
        MultiPoly w = X(rxyz, "x", 2) + X(rxyz, "y", 2) + X(rxyz, "z", 2);
        ProblemFile pf = make_case("quadric3[x^2+y^2+z^2]", "verify", rxyz, w);
        add_mf(pf, "P",
               tensor_mf(tensor_mf(koszul_mf(X(rxyz, "x"), X(rxyz, "x")),
                                   koszul_mf(X(rxyz, "y"), X(rxyz, "y"))),
                         koszul_mf(X(rxyz, "z"), X(rxyz, "z"))));
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));
    }
    {
        // Knoerrer partner of A1: x^2 + u*v with two fresh variables.
        MultiPoly w = X(rxuv, "x", 2) + X(rxuv, "u") * X(rxuv, "v");
        ProblemFile pf = make_case("knoerrer[x^2+u*v]", "verify", rxuv, w);
        add_mf(pf, "P", tensor_mf(koszul_mf(X(rxuv, "x"), X(rxuv, "x")),
                                  koszul_mf(X(rxuv, "u"), X(rxuv, "v"))));
        pf.pair_names = {{"P"}, {"P"}};
        cases.push_back(std::move(pf));
    }

    // ---- Cardy cases with non-identity closed endomorphisms ----
    {
        // A1: the odd involution-like class z with z^2 = -1.
        MultiPoly one = MultiPoly::constant(rx, Rational(1));
        ProblemFile pf = make_case("cardy:A1[x^2]", "cardy", rx, X(rx, "x", 2));
        add_mf(pf, "P", koszul_mf(X(rx, "x"), X(rx, "x")));
        PolyMatrix z = poly_matrix_zero(rx, 2, 2);
        z[0][1] = one;
        z[1][0] = -one;
        add_endo(pf, "z", "P", z);
        pf.cardy_names = {{"z"}, {"z"}};
        cases.push_back(std::move(pf));
    }
    {
        // A2: odd class of koszul(x, x^2); both sides vanish but tau does not.
        MultiPoly one = MultiPoly::constant(rx, Rational(1));
        ProblemFile pf = make_case("cardy:A2[x^3]", "cardy", rx, X(rx, "x", 3));
        add_mf(pf, "P", koszul_mf(X(rx, "x"), X(rx, "x", 2)));
        PolyMatrix z = poly_matrix_zero(rx, 2, 2);
        z[0][1] = one;
        z[1][0] = -X(rx, "x");
        add_endo(pf, "z", "P", z);
        pf.cardy_names = {{"z"}, {"z"}};
        cases.push_back(std::move(pf));
    }
    {
        // A3 with the symmetric splitting: nonzero supertrace -4.
        MultiPoly one = MultiPoly::constant(rx, Rational(1));
        ProblemFile pf = make_case("cardy:A3[x^4;a=2]", "cardy", rx, X(rx, "x", 4));
        add_mf(pf, "P", koszul_mf(X(rx, "x", 2), X(rx, "x", 2)));
        PolyMatrix z = poly_matrix_zero(rx, 2, 2);
        z[0][1] = one;
        z[1][0] = -one;
        add_endo(pf, "z", "P", z);
        pf.cardy_names = {{"z"}, {"z"}};
        cases.push_back(std::move(pf));
    }
    {
        // Quadric: even class z1 (x) z2 squaring to -1; supertrace -4.
        MultiPoly one = MultiPoly::constant(rxy, Rational(1));
        ProblemFile pf = make_case("cardy:quadric[x^2+y^2]", "cardy", rxy,
                                   X(rxy, "x", 2) + X(rxy, "y", 2));
        add_mf(pf, "P", tensor_mf(koszul_mf(X(rxy, "x"), X(rxy, "x")),
                                  koszul_mf(X(rxy, "y"), X(rxy, "y"))));
        PolyMatrix theta = poly_matrix_zero(rxy, 4, 4);
        theta[0][1] = -one;
        theta[1][0] = one;
        theta[2][3] = -one;
        theta[3][2] = one;
        add_endo(pf, "theta", "P", theta);
        pf.cardy_names = {{"theta"}, {"theta"}};
        cases.push_back(std::move(pf));
    }
    {
        // Fermat cubic: even product class with polynomial entries.
        MultiPoly x = X(rxy, "x"), y = X(rxy, "y");
        ProblemFile pf = make_case("cardy:fermat2[x^3+y^3]", "cardy", rxy, x.pow(3) + y.pow(3));
        add_mf(pf, "P", tensor_mf(koszul_mf(x, x.pow(2)), koszul_mf(y, y.pow(2))));
        MultiPoly one = MultiPoly::constant(rxy, Rational(1));
        PolyMatrix theta = poly_matrix_zero(rxy, 4, 4);
        theta[0][1] = -one;
        theta[1][0] = x * y;
        theta[2][3] = -x;
        theta[3][2] = y;
        add_endo(pf, "theta", "P", theta);
        pf.cardy_names = {{"theta"}, {"theta"}};
        cases.push_back(std::move(pf));
    }
    {
        // Quadric with distinct objects: P and its shift, classes conjugated
        // by the block swap.
        MultiPoly one = MultiPoly::constant(rxy, Rational(1));
        ProblemFile pf = make_case("cardy:quadric[x^2+y^2;shifted-target]", "cardy", rxy,
                                   X(rxy, "x", 2) + X(rxy, "y", 2));
        MatrixFactorization t = tensor_mf(koszul_mf(X(rxy, "x"), X(rxy, "x")),
                                          koszul_mf(X(rxy, "y"), X(rxy, "y")));
        add_mf(pf, "P", t);
        add_mf(pf, "Q", shift_mf(t));
        PolyMatrix theta = poly_matrix_zero(rxy, 4, 4);
        theta[0][1] = -one;
        theta[1][0] = one;
        theta[2][3] = -one;
        theta[3][2] = one;
        PolyMatrix theta_shifted = poly_matrix_zero(rxy, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                theta_shifted[static_cast<std::size_t>((i + 2) % 4)][static_cast<std::size_t>((j + 2) % 4)] =
                    theta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        add_endo(pf, "theta", "P", theta);
        add_endo(pf, "theta_shifted", "Q", theta_shifted);
        pf.pair_names = {{"P"}, {"Q"}};
        pf.cardy_names = {{"theta"}, {"theta_shifted"}};
        cases.push_back(std::move(pf));
    }
    {
        // Linear-factor Koszul of the Fermat cubic: multiplication by y is a
        // non-identity even class whose tau products are nonzero polynomials
        // with vanishing residue.
        MultiPoly x = X(rxy, "x"), y = X(rxy, "y");
        ProblemFile pf = make_case("cardy:fermat2[x^3+y^3;linear-factor]", "cardy", rxy,
                                   x.pow(3) + y.pow(3));
        add_mf(pf, "L", koszul_mf(x + y, x.pow(2) - x * y + y.pow(2)));
        PolyMatrix ymul = poly_matrix_zero(rxy, 2, 2);
        ymul[0][0] = ymul[1][1] = y;
        add_endo(pf, "ymul", "L", ymul);
        pf.cardy_names = {{"ymul"}, {"ymul"}};
        cases.push_back(std::move(pf));
    }
    {
        // D4: multiplication by y, an even non-identity class.
        MultiPoly x = X(rxy, "x"), y = X(rxy, "y");
        MultiPoly w = x.pow(3) + x * y.pow(2);
        ProblemFile pf = make_case("cardy:D4[x^3+x*y^2]", "cardy", rxy, w);
        MatrixFactorization d4;
        d4.ring = rxy;
        d4.w = w;
        d4.r0 = d4.r1 = 2;
        d4.d1 = {{y, x}, {x.pow(2), -(x * y)}};
        d4.d0 = {{x * y, x}, {x.pow(2), -y}};
        d4.descr = "explicit{d1=[[y, x],[x^2, -x*y]], d0=[[x*y, x],[x^2, -y]]}";
        add_mf(pf, "M", d4);
        PolyMatrix ymul = poly_matrix_zero(rxy, 4, 4);
        for (int i = 0; i < 4; ++i) ymul[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = y;
        add_endo(pf, "ymul", "M", ymul);
        pf.cardy_names = {{"ymul"}, {"ymul"}};
        cases.push_back(std::move(pf));
    }

    return cases;
}

}  // namespace mfhrr
