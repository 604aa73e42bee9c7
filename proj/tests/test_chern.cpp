#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfhrr/chern.hpp"
#include "mfhrr/errors.hpp"
#include "test_util.hpp"

using namespace mfhrr;
using namespace mfhrr::testutil;

namespace {

MatrixFactorization node_koszul(const RingPtr& r) {
    return koszul_mf(parse_poly("x", r), parse_poly("y", r));
}

}  // namespace

TEST_CASE("boundary-bulk examples") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization p = node_koszul(rxy);
    MilnorRing mr = milnor_ring(p.w);

    ChernClass id_class = boundary_bulk(p, poly_matrix_identity(rxy, 2), mr);
    CHECK(id_class.milnor_class == parse_poly("1", rxy));

    RingPtr rx = make_ring({"x"});
    MatrixFactorization a1 = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    MilnorRing mr1 = milnor_ring(a1.w);
    ChernClass c1 = boundary_bulk(a1, poly_matrix_identity(rx, 2), mr1);
    CHECK(c1.milnor_class.is_zero());

    ChernClass z0 = boundary_bulk(p, poly_matrix_zero(rxy, 2, 2), mr);
    CHECK(z0.milnor_class.is_zero());

    PolyMatrix not_closed = poly_matrix_zero(rxy, 2, 2);
    not_closed[0][0] = parse_poly("x", rxy);
    CHECK_THROWS_AS(boundary_bulk(p, not_closed, mr), not_closed_error);
}

TEST_CASE("tau of the odd A1 class") {
    RingPtr rx = make_ring({"x"});
    MatrixFactorization k = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    MilnorRing mr = milnor_ring(k.w);
    PolyMatrix z = poly_matrix_zero(rx, 2, 2);
    z[0][1] = parse_poly("1", rx);
    z[1][0] = parse_poly("-1", rx);
    ChernClass c = boundary_bulk(k, z, mr);
    CHECK(c.milnor_class == parse_poly("2", rx));
}

TEST_CASE("chern_local of shifts and contractible summands") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization p = node_koszul(rxy);
    MilnorRing mr = milnor_ring(p.w);
    ChernClass c = chern_local(p, mr);
    ChernClass cs = chern_local(shift_mf(p), mr);
    CHECK(cs.milnor_class == -c.milnor_class);

    MatrixFactorization contractible = koszul_mf(MultiPoly::constant(rxy, Rational(1)), p.w);
    ChernClass cc = chern_local(contractible, mr);
    CHECK(cc.milnor_class.is_zero());
    ChernClass csum = chern_local(sum_mf(p, contractible), mr);
    CHECK(csum.milnor_class == c.milnor_class);
}

TEST_CASE("boundary-bulk is linear and kills exact endomorphisms") {
    RingPtr rx = make_ring({"x"});
    MatrixFactorization k = koszul_mf(parse_poly("x", rx), parse_poly("x^2", rx));
    MilnorRing mr = milnor_ring(k.w);
    PolyMatrix delta = delta_matrix(k);
    for (int trial = 0; trial < 200; ++trial) {
        // Exact even endomorphism D(g) for random odd g.
        PolyMatrix g = poly_matrix_zero(rx, 2, 2);
        g[0][1] = rand_poly(rx, 2, 2);
        g[1][0] = rand_poly(rx, 2, 2);
        PolyMatrix dg = poly_matrix_add(poly_matrix_mul(delta, g), poly_matrix_mul(g, delta));
        ChernClass c = boundary_bulk(k, dg, mr);
        CHECK(c.milnor_class.is_zero());
    }
    // Linearity: tau(a id + z) = a tau(id) + tau(z).
    PolyMatrix z = poly_matrix_zero(rx, 2, 2);
    z[0][1] = parse_poly("1", rx);
    z[1][0] = parse_poly("-x", rx);
    PolyMatrix id = poly_matrix_identity(rx, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Rational a = rand_rational();
        PolyMatrix combo = poly_matrix_add(poly_matrix_scaled(id, a), z);
        ChernClass lhs = boundary_bulk(k, combo, mr);
        ChernClass c_id = chern_local(k, mr);
        ChernClass c_z = boundary_bulk(k, z, mr);
        CHECK(lhs.milnor_class == c_id.milnor_class.scaled(a) + c_z.milnor_class);
    }
}

TEST_CASE("dual_class is a parity-graded involution") {
    RingPtr rxy = make_ring({"x", "y"});
    MilnorRing mr = milnor_ring(parse_poly("x*y", rxy));
    ChernClass c;
    c.n = 2;
    c.parity = 0;
    c.milnor_class = parse_poly("1", rxy);
    CHECK(dual_class(c).milnor_class == c.milnor_class);  // n even: identity
    CHECK(dual_class(dual_class(c)).milnor_class == c.milnor_class);

    ChernClass c1;
    c1.n = 1;
    c1.parity = 1;
    RingPtr rx = make_ring({"x"});
    c1.milnor_class = parse_poly("3*x", rx);
    CHECK(dual_class(c1).milnor_class == parse_poly("-3*x", rx));
    CHECK(dual_class(dual_class(c1)).milnor_class == c1.milnor_class);
}

TEST_CASE("todd series frozen low-degree values") {
    ToddSeries t0 = todd_series(0);
    CHECK(t0.coeff({}) == Rational(1));

    ToddSeries t1 = todd_series(1);
    CHECK(t1.coeff({0}) == Rational(1));
    CHECK(t1.coeff({1}) == Rational(1, 2));

    ToddSeries t2 = todd_series(2);
    CHECK(t2.coeff({0, 0}) == Rational(1));
    CHECK(t2.coeff({1, 0}) == Rational(1, 2));
    CHECK(t2.coeff({2, 0}) == Rational(1, 12));
    CHECK(t2.coeff({0, 1}) == Rational(1, 12));

    ToddSeries t3 = todd_series(3);
    CHECK(t3.coeff({1, 0, 0}) == Rational(1, 2));
    CHECK(t3.coeff({2, 0, 0}) == Rational(1, 12));
    CHECK(t3.coeff({0, 1, 0}) == Rational(1, 12));
    CHECK(t3.coeff({1, 1, 0}) == Rational(1, 24));
    CHECK(t3.coeff({3, 0, 0}) == Rational(0));
    CHECK(t3.coeff({0, 0, 1}) == Rational(0));
}

TEST_CASE("todd of a trivial bundle is 1") {
    // All Chern classes zero: only the constant coefficient survives.
    ToddSeries t3 = todd_series(3);
    CHECK(t3.coeff({0, 0, 0}) == Rational(1));
}

TEST_CASE("sign constant") {
    CHECK(hrr_sign_constant(1) == -1);
    CHECK(hrr_sign_constant(2) == -1);
    CHECK(hrr_sign_constant(3) == 1);
    CHECK(hrr_sign_constant(4) == 1);
    CHECK(hrr_sign_constant(5) == -1);
}

TEST_CASE("calibration settles on a single convention") {
    const Calibration& cal = global_calibration();
    CHECK(cal.identity_ok);
    CHECK_FALSE(cal.top_sign_ok);  // the odd-n Cardy probe separates them
    CHECK(cal.convention == VeeConvention::identity);
    CHECK(cal.record.find("convention=identity") != std::string::npos);
}

TEST_CASE("hrr_rhs examples") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    MilnorRing mr = milnor_ring(node.w);
    CHECK(hrr_rhs(node, node, mr) == Rational(1));

    RingPtr rx = make_ring({"x"});
    MatrixFactorization a1 = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    MilnorRing mr1 = milnor_ring(a1.w);
    CHECK(hrr_rhs(a1, a1, mr1) == Rational(0));

    MatrixFactorization contractible = koszul_mf(MultiPoly::constant(rxy, Rational(1)), node.w);
    CHECK(hrr_rhs(contractible, node, mr) == Rational(0));
}

TEST_CASE("cardy_rhs specializes to hrr_rhs on identities") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    MilnorRing mr = milnor_ring(node.w);
    PolyMatrix id = poly_matrix_identity(rxy, 2);
    CHECK(cardy_rhs(id, id, node, node, mr) == hrr_rhs(node, node, mr));
    // Scaling alpha scales the output.
    PolyMatrix id3 = poly_matrix_scaled(id, Rational(3));
    CHECK(cardy_rhs(id3, id, node, node, mr) == Rational(3) * hrr_rhs(node, node, mr));
}

TEST_CASE("verify_hrr examples") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    VerificationReport r = verify_hrr(node, node);
    CHECK(r.error.empty());
    CHECK(r.lhs == 1);
    CHECK(r.rhs == Rational(1));
    CHECK(r.equal);
    CHECK(r.n == 2);
    CHECK(r.mu == 1);
    CHECK(r.sign_constant == -1);
    CHECK(r.method == "both");

    RingPtr rx = make_ring({"x"});
    MatrixFactorization a1 = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    VerificationReport r1 = verify_hrr(a1, a1);
    CHECK(r1.equal);
    CHECK(r1.lhs == 0);

    MatrixFactorization fermat = tensor_mf(koszul_mf(parse_poly("x", rxy), parse_poly("x^2", rxy)),
                                           koszul_mf(parse_poly("y", rxy), parse_poly("y^2", rxy)));
    VerificationReport r2 = verify_hrr(fermat, fermat);
    CHECK(r2.error.empty());
    CHECK(r2.equal);
}

TEST_CASE("verify_hrr reports scope violations instead of throwing") {
    RingPtr rx = make_ring({"x"});
    MatrixFactorization m;
    m.ring = rx;
    m.w = parse_poly("x^2 + x^3", rx);
    m.r0 = m.r1 = 1;
    m.d1 = {{parse_poly("x", rx)}};
    m.d0 = {{parse_poly("x + x^2", rx)}};
    VerificationReport r = verify_hrr(m, m);
    CHECK_FALSE(r.error.empty());
    CHECK_FALSE(r.equal);
    CHECK(r.error.find("quasi-homogeneous") != std::string::npos);
}

TEST_CASE("shift flips both sides coherently") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    MilnorRing mr = milnor_ring(node.w);
    MatrixFactorization s = shift_mf(node);
    CHECK(euler_char(s, node) == -euler_char(node, node));
    CHECK(hrr_rhs(s, node, mr) == -hrr_rhs(node, node, mr));
    VerificationReport r = verify_hrr(s, node);
    CHECK(r.equal);
}

TEST_CASE("Knoerrer invariance of both sides") {
    // Base: node over (x, y); stabilized: x*y + u*v over four variables.
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization p = node_koszul(rxy);
    VerificationReport base = verify_hrr(p, p);

    RingPtr ruv = make_ring({"u", "v"});
    MatrixFactorization kn = koszul_mf(parse_poly("u", ruv), parse_poly("v", ruv));
    MatrixFactorization pk = tensor_mf(p, kn);
    VerificationReport stab = verify_hrr(pk, pk);

    CHECK(base.equal);
    CHECK(stab.equal);
    CHECK(base.lhs == stab.lhs);
    CHECK(base.rhs == stab.rhs);
}

TEST_CASE("report JSON round-trips") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    VerificationReport r = verify_hrr(node, node);
    VerificationReport back = report_from_json(report_to_json(r));
    CHECK(back == r);

    RingPtr rx = make_ring({"x"});
    MatrixFactorization k = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    PolyMatrix z = poly_matrix_zero(rx, 2, 2);
    z[0][1] = parse_poly("1", rx);
    z[1][0] = parse_poly("-1", rx);
    CardyReport cr = verify_cardy(k, k, z, z, "z", "z");
    CHECK(cr.equal);
    CHECK(cr.lhs == Rational(-2));
    CardyReport cback = cardy_report_from_json(report_to_json(cr));
    CHECK(cback == cr);
}

TEST_CASE("verify_hrr on a direct sum with larger euler characteristic") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization node = node_koszul(rxy);
    MatrixFactorization pp = sum_mf(node, node);
    VerificationReport r = verify_hrr(pp, pp);
    CHECK(r.error.empty());
    CHECK(r.lhs == 4);
    CHECK(r.rhs == Rational(4));
    CHECK(r.equal);
}

TEST_CASE("cardy with distinct source and target objects") {
    RingPtr rx = make_ring({"x"});
    MatrixFactorization p = koszul_mf(parse_poly("x", rx), parse_poly("x", rx));
    MatrixFactorization q = sum_mf(p, p);
    PolyMatrix z = poly_matrix_zero(rx, 2, 2);
    z[0][1] = parse_poly("1", rx);
    z[1][0] = parse_poly("-1", rx);
    // beta = z + z block-diagonal on the sum.
    PolyMatrix zz = poly_matrix_zero(rx, 4, 4);
    zz[0][2] = parse_poly("1", rx);
    zz[1][3] = parse_poly("1", rx);
    zz[2][0] = parse_poly("-1", rx);
    zz[3][1] = parse_poly("-1", rx);
    CardyReport r = verify_cardy(p, q, z, zz, "z", "z+z");
    CHECK(r.error.empty());
    CHECK(r.equal);
    CHECK(r.lhs == Rational(-4));  // two copies of the rank-one case

    // Wrong endomorphism shapes are rejected, not undefined behavior.
    CHECK_THROWS_AS(cardy_lhs(p, q, zz, zz), error);
    MilnorRing mr = milnor_ring(p.w);
    CHECK_THROWS_AS(boundary_bulk(p, zz, mr), error);
}

TEST_CASE("cardy identity on random closed endomorphism combinations") {
    // Random R-linear combinations of Ext basis cocycles are closed; the two
    // Cardy sides must agree on every sample.
    struct Case {
        MatrixFactorization m;
    };
    RingPtr rx = make_ring({"x"});
    RingPtr rxy = make_ring({"x", "y"});
    std::vector<MatrixFactorization> objects{
        koszul_mf(parse_poly("x", rx), parse_poly("x^2", rx)),
        koszul_mf(parse_poly("x^2", rx), parse_poly("x^2", rx)),
        koszul_mf(parse_poly("x + y", rxy), parse_poly("x^2 - x*y + y^2", rxy)),
        tensor_mf(koszul_mf(parse_poly("x", rxy), parse_poly("x", rxy)),
                  koszul_mf(parse_poly("y", rxy), parse_poly("y", rxy))),
    };
    for (const auto& p : objects) {
        HomComplex h = hom_complex(p, p);
        ExtBasis eb = ext_basis(h);
        if (eb.reps.empty()) continue;
        MilnorRing mr = milnor_ring(p.w);
        for (int trial = 0; trial < 5; ++trial) {
            auto random_cocycle = [&]() {
                PolyMatrix acc = poly_matrix_zero(p.ring, p.dim(), p.dim());
                for (const auto& rep : eb.reps) {
                    if (rand_int(0, 1) == 0) continue;
                    MultiPoly c = rand_poly(p.ring, 2, 1);
                    PolyMatrix scaled = rep;
                    for (auto& row : scaled)
                        for (auto& e : row) e = e * c;
                    acc = poly_matrix_add(acc, scaled);
                }
                return acc;
            };
            PolyMatrix alpha = random_cocycle();
            PolyMatrix beta = random_cocycle();
            Rational lhs = cardy_lhs_with(eb, alpha, beta);
            Rational rhs = cardy_rhs(alpha, beta, p, p, mr);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("Knoerrer invariance with a nonzero non-constant class") {
    RingPtr rxy = make_ring({"x", "y"});
    MatrixFactorization l = koszul_mf(parse_poly("x + y", rxy),
                                      parse_poly("x^2 - x*y + y^2", rxy));
    VerificationReport base = verify_hrr(l, l);
    REQUIRE(base.equal);
    REQUIRE(base.lhs == 2);

    RingPtr ruv = make_ring({"u", "v"});
    MatrixFactorization kn = koszul_mf(parse_poly("u", ruv), parse_poly("v", ruv));
    MatrixFactorization lk = tensor_mf(l, kn);
    VerificationReport stab = verify_hrr(lk, lk);
    CHECK(stab.equal);
    CHECK(stab.lhs == base.lhs);
    CHECK(stab.rhs == base.rhs);
    CHECK(stab.n == 4);
    CHECK(stab.sign_constant == 1);  // binom(5,2) = 10
}
