#include "mfhrr/mf.hpp"

#include <cassert>

#include "mfhrr/errors.hpp"

namespace mfhrr {

PolyMatrix delta_matrix(const MatrixFactorization& m) {
    PolyMatrix d = poly_matrix_zero(m.ring, m.dim(), m.dim());
    for (int i = 0; i < m.r0; ++i)
        for (int j = 0; j < m.r1; ++j)
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(m.r0 + j)] =
                m.d1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int i = 0; i < m.r1; ++i)
        for (int j = 0; j < m.r0; ++j)
            d[static_cast<std::size_t>(m.r0 + i)][static_cast<std::size_t>(j)] =
                m.d0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return d;
}

MfCheck validate_mf(const MatrixFactorization& m) {
    if (static_cast<int>(m.d1.size()) != m.r0 || static_cast<int>(m.d0.size()) != m.r1)
        return {false, "block shape mismatch"};
    for (const auto& row : m.d1)
        if (static_cast<int>(row.size()) != m.r1) return {false, "d1 is not r0 x r1"};
    for (const auto& row : m.d0)
        if (static_cast<int>(row.size()) != m.r0) return {false, "d0 is not r1 x r0"};

    auto check_product = [&](const PolyMatrix& a, const PolyMatrix& b, int rank,
                             const char* label) -> MfCheck {
        PolyMatrix prod = poly_matrix_mul(a, b);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                MultiPoly expect = i == j ? m.w : MultiPoly::zero(m.ring);
                const MultiPoly& got = prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (got != expect)
                    return {false, std::string(label) + " violated at entry (" + std::to_string(i) +
                                       "," + std::to_string(j) + "): got " + got.str() +
                                       ", expected " + expect.str()};
            }
        return {true, ""};
    };
    if (m.r1 > 0 && m.r0 > 0) {
        MfCheck c1 = check_product(m.d1, m.d0, m.r0, "d1*d0 = w*I");
        if (!c1.ok) return c1;
        MfCheck c0 = check_product(m.d0, m.d1, m.r1, "d0*d1 = w*I");
        if (!c0.ok) return c0;
    }
    return {true, ""};
}

MatrixFactorization koszul_mf(const MultiPoly& a, const MultiPoly& b) {
    if (!same_ring(a.ring(), b.ring())) throw error("koszul_mf: factors over different rings");
    MatrixFactorization m;
    m.ring = a.ring();
    m.w = a * b;
    m.r0 = m.r1 = 1;
    m.d1 = {{a}};
    m.d0 = {{b}};
    m.descr = "koszul(" + a.str() + ", " + b.str() + ")";
    return m;
}

namespace {

PolyMatrix kron(const PolyMatrix& a, int ra, int ca, const PolyMatrix& b, int rb, int cb,
                const RingPtr& ring) {
    PolyMatrix r = poly_matrix_zero(ring, ra * rb, ca * cb);
    for (int i1 = 0; i1 < ra; ++i1)
        for (int j1 = 0; j1 < ca; ++j1) {
            const MultiPoly& e = a[static_cast<std::size_t>(i1)][static_cast<std::size_t>(j1)];
            if (e.is_zero()) continue;
            for (int i2 = 0; i2 < rb; ++i2)
                for (int j2 = 0; j2 < cb; ++j2) {
                    const MultiPoly& f = b[static_cast<std::size_t>(i2)][static_cast<std::size_t>(j2)];
                    if (f.is_zero()) continue;
                    r[static_cast<std::size_t>(i1 * rb + i2)][static_cast<std::size_t>(j1 * cb + j2)] = e * f;
                }
        }
    return r;
}

void paste_block(PolyMatrix& dst, const PolyMatrix& src, int row0, int col0) {
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < src[i].size(); ++j)
            dst[static_cast<std::size_t>(row0) + i][static_cast<std::size_t>(col0) + j] = src[i][j];
}

}  // namespace

MatrixFactorization tensor_mf(const MatrixFactorization& m, const MatrixFactorization& n) {
    RingPtr ring = merge_rings(m.ring, n.ring);
    PolyMatrix md1 = poly_matrix_lift(m.d1, ring), md0 = poly_matrix_lift(m.d0, ring);
    PolyMatrix nd1 = poly_matrix_lift(n.d1, ring), nd0 = poly_matrix_lift(n.d0, ring);
    PolyMatrix ip0 = poly_matrix_identity(ring, m.r0), ip1 = poly_matrix_identity(ring, m.r1);
    PolyMatrix iq0 = poly_matrix_identity(ring, n.r0), iq1 = poly_matrix_identity(ring, n.r1);

    MatrixFactorization t;
    t.ring = ring;
    t.w = m.w.lifted(ring) + n.w.lifted(ring);
    // E0 = P0Q0 + P1Q1, E1 = P1Q0 + P0Q1, with i-major flattening of e_i (x) f_j.
    t.r0 = m.r0 * n.r0 + m.r1 * n.r1;
    t.r1 = m.r1 * n.r0 + m.r0 * n.r1;
    t.d1 = poly_matrix_zero(ring, t.r0, t.r1);
    t.d0 = poly_matrix_zero(ring, t.r1, t.r0);

    // delta = delta_m (x) 1 + 1 (x) delta_n, (1 (x) delta_n)(e (x) f) = (-1)^{|e|} e (x) delta_n f.
    // d1 blocks: [P1Q0 | P0Q1] -> [P0Q0 | P1Q1]
    paste_block(t.d1, kron(md1, m.r0, m.r1, iq0, n.r0, n.r0, ring), 0, 0);
    paste_block(t.d1, kron(ip0, m.r0, m.r0, nd1, n.r0, n.r1, ring), 0, m.r1 * n.r0);
    paste_block(t.d1, poly_matrix_neg(kron(ip1, m.r1, m.r1, nd0, n.r1, n.r0, ring)), m.r0 * n.r0, 0);
    paste_block(t.d1, kron(md0, m.r1, m.r0, iq1, n.r1, n.r1, ring), m.r0 * n.r0, m.r1 * n.r0);
    // d0 blocks: [P0Q0 | P1Q1] -> [P1Q0 | P0Q1]
    paste_block(t.d0, kron(md0, m.r1, m.r0, iq0, n.r0, n.r0, ring), 0, 0);
    paste_block(t.d0, poly_matrix_neg(kron(ip1, m.r1, m.r1, nd1, n.r1, n.r1, ring)), 0, m.r0 * n.r0);
    paste_block(t.d0, kron(ip0, m.r0, m.r0, nd0, n.r1, n.r0, ring), m.r1 * n.r0, 0);
    paste_block(t.d0, kron(md1, m.r0, m.r1, iq1, n.r1, n.r1, ring), m.r1 * n.r0, m.r0 * n.r0);

    if (m.degrees && n.degrees) {
        std::vector<Rational> deg(static_cast<std::size_t>(t.dim()));
        auto md = *m.degrees, nd = *n.degrees;
        auto at_m = [&](int par, int i) { return md[static_cast<std::size_t>(par == 0 ? i : m.r0 + i)]; };
        auto at_n = [&](int par, int i) { return nd[static_cast<std::size_t>(par == 0 ? i : n.r0 + i)]; };
        int k = 0;
        for (int i = 0; i < m.r0; ++i)
            for (int j = 0; j < n.r0; ++j) deg[static_cast<std::size_t>(k++)] = at_m(0, i) + at_n(0, j);
        for (int i = 0; i < m.r1; ++i)
            for (int j = 0; j < n.r1; ++j) deg[static_cast<std::size_t>(k++)] = at_m(1, i) + at_n(1, j);
        for (int i = 0; i < m.r1; ++i)
            for (int j = 0; j < n.r0; ++j) deg[static_cast<std::size_t>(k++)] = at_m(1, i) + at_n(0, j);
        for (int i = 0; i < m.r0; ++i)
            for (int j = 0; j < n.r1; ++j) deg[static_cast<std::size_t>(k++)] = at_m(0, i) + at_n(1, j);
        t.degrees = std::move(deg);
    }
    t.descr = "tensor(" + m.descr + ", " + n.descr + ")";
    return t;
}

MatrixFactorization shift_mf(const MatrixFactorization& m) {
    MatrixFactorization s;
    s.ring = m.ring;
    s.w = m.w;
    s.r0 = m.r1;
    s.r1 = m.r0;
    s.d1 = poly_matrix_neg(m.d0);
    s.d0 = poly_matrix_neg(m.d1);
    if (m.degrees) {
        std::vector<Rational> deg;
        deg.insert(deg.end(), m.degrees->begin() + m.r0, m.degrees->end());
        deg.insert(deg.end(), m.degrees->begin(), m.degrees->begin() + m.r0);
        s.degrees = std::move(deg);
    }
    s.descr = "shift(" + m.descr + ")";
    return s;
}

MatrixFactorization dual_mf(const MatrixFactorization& m) {
    MatrixFactorization d;
    d.ring = m.ring;
    d.w = -m.w;
    d.r0 = m.r0;
    d.r1 = m.r1;
    d.d1 = poly_matrix_transpose(m.d0);
    d.d0 = poly_matrix_neg(poly_matrix_transpose(m.d1));
    if (m.degrees) {
        std::vector<Rational> deg;
        for (const auto& t : *m.degrees) deg.push_back(-t);
        d.degrees = std::move(deg);
    }
    d.descr = "dual(" + m.descr + ")";
    return d;
}

MatrixFactorization sum_mf(const MatrixFactorization& m, const MatrixFactorization& n) {
    if (!same_ring(m.ring, n.ring) || m.w != n.w) throw error("sum_mf: potentials differ");
    MatrixFactorization s;
    s.ring = m.ring;
    s.w = m.w;
    s.r0 = m.r0 + n.r0;
    s.r1 = m.r1 + n.r1;
    s.d1 = poly_matrix_zero(s.ring, s.r0, s.r1);
    s.d0 = poly_matrix_zero(s.ring, s.r1, s.r0);
    paste_block(s.d1, m.d1, 0, 0);
    paste_block(s.d1, n.d1, m.r0, m.r1);
    paste_block(s.d0, m.d0, 0, 0);
    paste_block(s.d0, n.d0, m.r1, m.r0);
    if (m.degrees && n.degrees) {
        std::vector<Rational> deg;
        deg.insert(deg.end(), m.degrees->begin(), m.degrees->begin() + m.r0);
        deg.insert(deg.end(), n.degrees->begin(), n.degrees->begin() + n.r0);
        deg.insert(deg.end(), m.degrees->begin() + m.r0, m.degrees->end());
        deg.insert(deg.end(), n.degrees->begin() + n.r0, n.degrees->end());
        s.degrees = std::move(deg);
    }
    s.descr = "sum(" + m.descr + ", " + n.descr + ")";
    return s;
}

std::optional<std::vector<Rational>> infer_degrees(const MatrixFactorization& m,
                                                   const std::vector<Rational>& weights) {
    int dim = m.dim();
    PolyMatrix delta = delta_matrix(m);
    // Entry degrees; every nonzero entry must be weighted-homogeneous.
    std::vector<std::vector<std::optional<Rational>>> edeg(
        static_cast<std::size_t>(dim), std::vector<std::optional<Rational>>(static_cast<std::size_t>(dim)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const MultiPoly& e = delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (e.is_zero()) continue;
            auto d = e.homogeneous_weighted_degree(weights);
            if (!d) return std::nullopt;
            edeg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *d;
        }
    // Propagate t_j - t_i = deg(entry) - 1/2 across the constraint graph.
    std::vector<std::optional<Rational>> t(static_cast<std::size_t>(dim));
    Rational half(1, 2);
    for (int start = 0; start < dim; ++start) {
        if (t[static_cast<std::size_t>(start)]) continue;
        t[static_cast<std::size_t>(start)] = Rational(0);
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < dim; ++j) {
                // Edge i <- j from entry (i, j): t_j = t_i + deg - 1/2.
                if (edeg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    Rational tj = *t[static_cast<std::size_t>(i)] +
                                  *edeg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - half;
                    if (!t[static_cast<std::size_t>(j)]) {
                        t[static_cast<std::size_t>(j)] = tj;
                        stack.push_back(j);
                    } else if (*t[static_cast<std::size_t>(j)] != tj) {
                        return std::nullopt;
                    }
                }
                // Edge j <- i from entry (j, i): t_i = t_j + deg - 1/2.
                if (edeg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                    Rational tj = *t[static_cast<std::size_t>(i)] -
                                  *edeg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] + half;
                    if (!t[static_cast<std::size_t>(j)]) {
                        t[static_cast<std::size_t>(j)] = tj;
                        stack.push_back(j);
                    } else if (*t[static_cast<std::size_t>(j)] != tj) {
                        return std::nullopt;
                    }
                }
            }
        }
    }
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(dim));
    for (auto& v : t) out.push_back(*v);
    return out;
}

std::optional<std::vector<Rational>> ensure_degrees(const MatrixFactorization& m) {
    if (m.degrees) return m.degrees;
    auto weights = quasi_homogeneous_weights(m.w);
    if (!weights) return std::nullopt;
    return infer_degrees(m, *weights);
}

}  // namespace mfhrr
