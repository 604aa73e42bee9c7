#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfhrr/errors.hpp"
#include "mfhrr/poly.hpp"
#include "mfhrr/linalg.hpp"
#include "test_util.hpp"

using namespace mfhrr;
using namespace mfhrr::testutil;

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(6, 4);
    CHECK(a.numerator() == 3);
    CHECK(a.denominator() == 2);
    CHECK((a + Rational(1, 2)) == Rational(2));
    CHECK((Rational(1, 3) * Rational(3)) == Rational(1));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational::parse("-7/21") == Rational(-1, 3));
    CHECK_THROWS_AS(Rational(1, 0), error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), error);
}

TEST_CASE("parse examples") {
    RingPtr r = make_ring({"x", "y"});
    MultiPoly p = parse_poly("x^3 + y^3", r);
    CHECK(p.term_count() == 2);

    MultiPoly z = parse_poly("0", r);
    CHECK(z.is_zero());
    CHECK(z.terms().empty());

    MultiPoly q = parse_poly("2*x*y - x*y", r);
    CHECK(q.term_count() == 1);
    Monomial xy(std::vector<int>{1, 1});
    CHECK(q.coefficient(xy) == Rational(1));

    CHECK(parse_poly("1/2*x - 3", r).coefficient(Monomial(2)) == Rational(-3));
    CHECK_THROWS_AS(parse_poly("x + q", r), input_error);
    CHECK_THROWS_AS(parse_poly("x + ", r), input_error);
    CHECK_THROWS_AS(parse_poly("", r), input_error);
}

TEST_CASE("parse reports error positions") {
    RingPtr r = make_ring({"x"});
    try {
        parse_poly("x^2 + zz", r);
        FAIL("expected input_error");
    } catch (const input_error& e) {
        CHECK(e.pos == 6);
    }
}

TEST_CASE("partial derivative examples") {
    RingPtr r = make_ring({"x", "y"});
    MultiPoly w = parse_poly("x^3 + y^3", r);
    CHECK(partial_derivative(w, 0) == parse_poly("3*x^2", r));
    CHECK(partial_derivative(parse_poly("x*y", r), 1) == parse_poly("x", r));
    CHECK(partial_derivative(parse_poly("5", r), 0).is_zero());
    CHECK_THROWS_AS(partial_derivative(w, 2), error);
    CHECK_THROWS_AS(partial_derivative(w, -1), error);
}

TEST_CASE("hessian determinant examples") {
    RingPtr rxy = make_ring({"x", "y"});
    CHECK(hessian_det(parse_poly("x*y", rxy)) == parse_poly("-1", rxy));
    RingPtr rx = make_ring({"x"});
    CHECK(hessian_det(parse_poly("x^2", rx)) == parse_poly("2", rx));
    CHECK(hessian_det(parse_poly("x^3 + y^3", rxy)) == parse_poly("36*x*y", rxy));
}

TEST_CASE("quasi-homogeneous weights") {
    RingPtr r = make_ring({"x", "y"});
    auto u = quasi_homogeneous_weights(parse_poly("x^3 + y^3", r));
    REQUIRE(u.has_value());
    CHECK((*u)[0] == Rational(1, 3));
    CHECK((*u)[1] == Rational(1, 3));

    auto v = quasi_homogeneous_weights(parse_poly("x*y", r));
    REQUIRE(v.has_value());
    CHECK((*v)[0] == Rational(1, 2));
    CHECK((*v)[1] == Rational(1, 2));

    RingPtr rx = make_ring({"x"});
    CHECK_FALSE(quasi_homogeneous_weights(parse_poly("x^2 + x^3", rx)).has_value());
    // Constant terms and zero are rejected.
    CHECK_FALSE(quasi_homogeneous_weights(parse_poly("x^2 + 1", rx)).has_value());
    CHECK_FALSE(quasi_homogeneous_weights(parse_poly("0", rx)).has_value());
    // D4 has forced weights (1/3, 1/3).
    auto d4 = quasi_homogeneous_weights(parse_poly("x^3 + x*y^2", r));
    REQUIRE(d4.has_value());
    CHECK((*d4)[0] == Rational(1, 3));
    CHECK((*d4)[1] == Rational(1, 3));
}

TEST_CASE("ring axioms on randomized polynomials") {
    RingPtr r = make_ring({"x", "y", "z"});
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = rand_poly(r), q = rand_poly(r), s = rand_poly(r);
        CHECK((p + q) * s == p * s + q * s);
        CHECK(p * q == q * p);
        CHECK((p + q) + s == p + (q + s));
        CHECK(p - p == MultiPoly::zero(r));
    }
}

TEST_CASE("mixed partials commute") {
    RingPtr r = make_ring({"x", "y", "z"});
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = rand_poly(r, 5, 4);
        int a = rand_int(0, 2), b = rand_int(0, 2);
        CHECK(partial_derivative(partial_derivative(p, a), b) ==
              partial_derivative(partial_derivative(p, b), a));
    }
}

TEST_CASE("Euler identity for random quasi-homogeneous polynomials") {
    for (int trial = 0; trial < 200; ++trial) {
        int n = rand_int(1, 3);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        RingPtr r = make_ring(names);
        // Random weights 1/d_i, then random monomials of weighted degree 1.
        std::vector<int> d(static_cast<std::size_t>(n));
        for (auto& di : d) di = rand_int(2, 5);
        std::vector<Monomial> candidates;
        Monomial cur(n);
        auto rec = [&](auto&& self, int var, Rational rem) -> void {
            if (var == n) {
                if (rem.is_zero() && !cur.is_one()) candidates.push_back(cur);
                return;
            }
            for (int e = 0;; ++e) {
                Rational used = Rational(e) / Rational(d[static_cast<std::size_t>(var)]);
                if (used > rem) break;
                cur.e[static_cast<std::size_t>(var)] = e;
                self(self, var + 1, rem - used);
            }
            cur.e[static_cast<std::size_t>(var)] = 0;
        };
        rec(rec, 0, Rational(1));
        if (candidates.empty()) continue;
        MultiPoly w(r);
        for (const auto& m : candidates)
            if (rand_int(0, 1)) w.add_term(m, rand_nonzero_rational());
        if (w.is_zero()) w.add_term(candidates[0], Rational(1));

        auto u = quasi_homogeneous_weights(w);
        REQUIRE(u.has_value());
        MultiPoly acc(r);
        for (int i = 0; i < n; ++i)
            acc += MultiPoly::variable(r, i).scaled((*u)[static_cast<std::size_t>(i)]) *
                   partial_derivative(w, i);
        CHECK(acc == w);
    }
}

TEST_CASE("parse of print is the identity") {
    RingPtr r = make_ring({"x", "y"});
    for (int i = 0; i < 200; ++i) {
        MultiPoly p = rand_poly(r, 6, 4);
        CHECK(parse_poly(p.str(), r) == p);
    }
}

TEST_CASE("lifting to a larger ring preserves arithmetic") {
    RingPtr small = make_ring({"x", "y"});
    RingPtr big = merge_rings(small, make_ring({"u", "v"}));
    CHECK(big->nvars() == 4);
    for (int i = 0; i < 50; ++i) {
        MultiPoly p = rand_poly(small), q = rand_poly(small);
        CHECK((p * q).lifted(big) == p.lifted(big) * q.lifted(big));
        CHECK((p + q).lifted(big) == p.lifted(big) + q.lifted(big));
    }
}

TEST_CASE("monomial orders are global total orders") {
    RingPtr r = make_ring({"x", "y", "z"});
    std::vector<MonomialOrder> orders{MonomialOrder::lex(), MonomialOrder::degrevlex(),
                                      MonomialOrder::wdegrevlex({Rational(1, 2), Rational(1, 3),
                                                                 Rational(1, 5)})};
    auto rand_mono = [&] {
        Monomial m(3);
        for (auto& e : m.e) e = rand_int(0, 4);
        return m;
    };
    Monomial one(3);
    for (const auto& ord : orders) {
        for (int trial = 0; trial < 200; ++trial) {
            Monomial a = rand_mono(), b = rand_mono(), c = rand_mono();
            int ab = ord.compare(a, b);
            CHECK(ab == -ord.compare(b, a));           // antisymmetry
            CHECK((ab == 0) == (a == b));              // total on distinct monomials
            CHECK(ord.compare(a * c, b * c) == ab);    // multiplicative
            if (!a.is_one()) CHECK(ord.compare(a, one) > 0);  // 1 is minimal (global)
            // transitivity spot check
            if (ab > 0 && ord.compare(b, c) > 0) CHECK(ord.compare(a, c) > 0);
        }
    }
}

TEST_CASE("parser survives random garbage") {
    RingPtr r = make_ring({"x", "y"});
    const std::string alphabet = "xy01+-*/^ ()[]{}qz.";
    for (int trial = 0; trial < 500; ++trial) {
        std::string s;
        int len = rand_int(0, 12);
        for (int i = 0; i < len; ++i)
            s += alphabet[static_cast<std::size_t>(rand_int(0, static_cast<int>(alphabet.size()) - 1))];
        try {
            MultiPoly p = parse_poly(s, r);
            // Whatever parsed must survive a round trip.
            CHECK(parse_poly(p.str(), r) == p);
        } catch (const input_error&) {
            // rejection is fine; crashing is not
        }
    }
}

TEST_CASE("exact linear algebra: solve, determinant, sparse rank") {
    // q_solve returns a particular solution plus a nullspace basis.
    QMatrix a{{Rational(1), Rational(2), Rational(0)},
              {Rational(0), Rational(0), Rational(1)}};
    QVec b{Rational(3), Rational(5)};
    auto sol = q_solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(q_mul_vec(a, sol->particular) == b);
    REQUIRE(sol->nullspace.size() == 1);
    QVec zero2(2);
    CHECK(q_mul_vec(a, sol->nullspace[0]) == zero2);

    QMatrix bad{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
    CHECK_FALSE(q_solve(bad, QVec{Rational(0), Rational(1)}).has_value());

    // Determinant is multiplicative; identity has det 1.
    CHECK(q_det(q_identity(4)) == Rational(1));
    for (int trial = 0; trial < 100; ++trial) {
        int n = rand_int(1, 4);
        auto rand_mat = [&] {
            QMatrix m = q_zero(n, n);
            for (auto& row : m)
                for (auto& e : row) e = rand_rational();
            return m;
        };
        QMatrix p = rand_mat(), q = rand_mat();
        CHECK(q_det(q_mul(p, q)) == q_det(p) * q_det(q));
    }

    // Sparse rank agrees with dense rank on random sparse matrices.
    for (int trial = 0; trial < 100; ++trial) {
        int rows = rand_int(1, 8), cols = rand_int(1, 8);
        QMatrix dense = q_zero(rows, cols);
        std::vector<SparseCol> sparse(static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) {
                if (rand_int(0, 3) != 0) continue;
                Rational v = rand_rational();
                if (v.is_zero()) continue;
                dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
                sparse[static_cast<std::size_t>(c)].emplace_back(r, v);
            }
        CHECK(q_rank_sparse(sparse) == q_rank(dense));
    }
}
