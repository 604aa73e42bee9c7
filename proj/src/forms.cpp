#include "mfhrr/forms.hpp"

#include <bit>
#include <cassert>
#include <sstream>

#include "mfhrr/errors.hpp"

namespace mfhrr {

PolyMatrix poly_matrix_zero(const RingPtr& ring, int rows, int cols) {
    return PolyMatrix(static_cast<std::size_t>(rows),
                      std::vector<MultiPoly>(static_cast<std::size_t>(cols), MultiPoly::zero(ring)));
}

PolyMatrix poly_matrix_identity(const RingPtr& ring, int n) {
    PolyMatrix m = poly_matrix_zero(ring, n, n);
    for (int i = 0; i < n; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = MultiPoly::constant(ring, Rational(1));
    return m;
}

PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b) {
    assert(a.size() == b.size());
    PolyMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        assert(a[i].size() == b[i].size());
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
    }
    return r;
}

PolyMatrix poly_matrix_sub(const PolyMatrix& a, const PolyMatrix& b) {
    return poly_matrix_add(a, poly_matrix_neg(b));
}

PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    RingPtr ring;
    for (const auto& row : a)
        for (const auto& p : row)
            if (p.ring()) ring = p.ring();
    if (!ring)
        for (const auto& row : b)
            for (const auto& p : row)
                if (p.ring()) ring = p.ring();
    PolyMatrix r = poly_matrix_zero(ring, static_cast<int>(n), static_cast<int>(m));
    for (std::size_t i = 0; i < n; ++i) {
        assert(a[i].size() == k);
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (b[t][j].is_zero()) continue;
                r[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    return r;
}

PolyMatrix poly_matrix_scaled(const PolyMatrix& a, const Rational& c) {
    PolyMatrix r = a;
    for (auto& row : r)
        for (auto& p : row) p = p.scaled(c);
    return r;
}

PolyMatrix poly_matrix_neg(const PolyMatrix& a) {
    PolyMatrix r = a;
    for (auto& row : r)
        for (auto& p : row) p = -p;
    return r;
}

PolyMatrix poly_matrix_transpose(const PolyMatrix& a) {
    if (a.empty()) return {};
    std::size_t rows = a.size(), cols = a[0].size();
    PolyMatrix r(cols, std::vector<MultiPoly>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r[j][i] = a[i][j];
    return r;
}

bool poly_matrix_is_zero(const PolyMatrix& a) {
    for (const auto& row : a)
        for (const auto& p : row)
            if (!p.is_zero()) return false;
    return true;
}

bool poly_matrix_eq(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

PolyMatrix poly_matrix_lift(const PolyMatrix& a, const RingPtr& ring) {
    PolyMatrix r = a;
    for (auto& row : r)
        for (auto& p : row) p = p.ring() ? p.lifted(ring) : MultiPoly::zero(ring);
    return r;
}

// --- FormPoly ---------------------------------------------------------------

void FormPoly::add(std::uint32_t mask, const MultiPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms.emplace(mask, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) terms.erase(it);
    }
}

FormPoly FormPoly::operator+(const FormPoly& o) const {
    FormPoly r = *this;
    if (!r.ring) r.ring = o.ring;
    for (const auto& [mask, c] : o.terms) r.add(mask, c);
    return r;
}

FormPoly FormPoly::operator-() const {
    FormPoly r(ring);
    for (const auto& [mask, c] : terms) r.terms.emplace(mask, -c);
    return r;
}

FormPoly FormPoly::scaled(const Rational& c) const {
    FormPoly r(ring);
    if (c.is_zero()) return r;
    for (const auto& [mask, p] : terms) r.terms.emplace(mask, p.scaled(c));
    return r;
}

MultiPoly FormPoly::top_coefficient() const {
    std::uint32_t full = (ring->nvars() >= 32) ? ~0u : ((1u << ring->nvars()) - 1u);
    auto it = terms.find(full);
    return it == terms.end() ? MultiPoly::zero(ring) : it->second;
}

std::string FormPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < ring->nvars(); ++i)
            if (mask & (1u << i)) os << "*d" << ring->vars[static_cast<std::size_t>(i)];
    }
    return os.str();
}

int wedge_sign(std::uint32_t i_mask, std::uint32_t j_mask) {
    if (i_mask & j_mask) return 0;
    // Count transpositions moving each j-index past the larger i-indices.
    int sign = 1;
    for (std::uint32_t j = j_mask; j != 0; j &= j - 1) {
        int bit = std::countr_zero(j);
        std::uint32_t higher = i_mask >> (bit + 1);
        if (std::popcount(higher) % 2 == 1) sign = -sign;
    }
    return sign;
}

FormPoly wedge(const FormPoly& a, const FormPoly& b) {
    FormPoly r(a.ring ? a.ring : b.ring);
    for (const auto& [ia, ca] : a.terms) {
        for (const auto& [ib, cb] : b.terms) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            MultiPoly prod = ca * cb;
            if (s < 0) prod = -prod;
            r.add(ia | ib, prod);
        }
    }
    return r;
}

// --- SuperMatrixForm --------------------------------------------------------

void SuperMatrixForm::add_component(std::uint32_t mask, const PolyMatrix& m) {
    if (poly_matrix_is_zero(m)) return;
    auto it = comps.find(mask);
    if (it == comps.end()) {
        comps.emplace(mask, m);
    } else {
        it->second = poly_matrix_add(it->second, m);
        if (poly_matrix_is_zero(it->second)) comps.erase(it);
    }
}

SuperMatrixForm SuperMatrixForm::identity(const RingPtr& ring, int r0, int r1) {
    SuperMatrixForm m(ring, r0, r1);
    m.comps.emplace(0u, poly_matrix_identity(ring, r0 + r1));
    return m;
}

SuperMatrixForm SuperMatrixForm::from_matrix(const RingPtr& ring, int r0, int r1, const PolyMatrix& mat) {
    assert(static_cast<int>(mat.size()) == r0 + r1);
    SuperMatrixForm m(ring, r0, r1);
    m.add_component(0u, mat);
    return m;
}

SuperMatrixForm SuperMatrixForm::operator+(const SuperMatrixForm& o) const {
    assert(r0 == o.r0 && r1 == o.r1);
    SuperMatrixForm r = *this;
    for (const auto& [mask, m] : o.comps) r.add_component(mask, m);
    return r;
}

SuperMatrixForm SuperMatrixForm::operator-() const {
    SuperMatrixForm r(ring, r0, r1);
    for (const auto& [mask, m] : comps) r.comps.emplace(mask, poly_matrix_neg(m));
    return r;
}

SuperMatrixForm SuperMatrixForm::scaled(const Rational& c) const {
    SuperMatrixForm r(ring, r0, r1);
    if (c.is_zero()) return r;
    for (const auto& [mask, m] : comps) r.comps.emplace(mask, poly_matrix_scaled(m, c));
    return r;
}

FormPoly SuperMatrixForm::entry(int i, int j) const {
    FormPoly f(ring);
    for (const auto& [mask, m] : comps)
        f.add(mask, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return f;
}

SuperMatrixForm SuperMatrixForm::parity_part(int parity) const {
    SuperMatrixForm r(ring, r0, r1);
    for (const auto& [mask, m] : comps) {
        int form_par = std::popcount(mask) & 1;
        PolyMatrix part = poly_matrix_zero(ring, dim(), dim());
        bool any = false;
        for (int i = 0; i < dim(); ++i) {
            for (int j = 0; j < dim(); ++j) {
                int total = (form_par + index_parity(i) + index_parity(j)) & 1;
                if (total != parity) continue;
                const MultiPoly& p = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (p.is_zero()) continue;
                part[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
                any = true;
            }
        }
        if (any) r.add_component(mask, part);
    }
    return r;
}

bool SuperMatrixForm::is_homogeneous(int parity) const {
    return parity_part(1 - parity).is_zero();
}

namespace {

// Block-parity split of a plain polynomial matrix: part 0 keeps entries with
// equal row/column parity, part 1 the rest.
PolyMatrix block_parity_part(const PolyMatrix& m, int r0, int parity, const RingPtr& ring) {
    int n = static_cast<int>(m.size());
    PolyMatrix r = poly_matrix_zero(ring, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int pi = i < r0 ? 0 : 1, pj = j < r0 ? 0 : 1;
            if (((pi + pj) & 1) == parity) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    return r;
}

}  // namespace

SuperMatrixForm wedge_mul(const SuperMatrixForm& a, const SuperMatrixForm& b) {
    if (a.r0 != b.r0 || a.r1 != b.r1 || !same_ring(a.ring, b.ring))
        throw error("wedge_mul: shape or ring mismatch");
    SuperMatrixForm r(a.ring, a.r0, a.r1);
    for (const auto& [ia, ma] : a.comps) {
        PolyMatrix a_even = block_parity_part(ma, a.r0, 0, a.ring);
        PolyMatrix a_odd = block_parity_part(ma, a.r0, 1, a.ring);
        for (const auto& [ib, mb] : b.comps) {
            int s = wedge_sign(ia, ib);
            if (s == 0) continue;
            int jdeg = std::popcount(ib) & 1;
            // (dx_I (x) A)(dx_J (x) B) = (-1)^{|A||J|} dx_I^dx_J (x) AB.
            if (!poly_matrix_is_zero(a_even)) {
                PolyMatrix prod = poly_matrix_mul(a_even, mb);
                if (s < 0) prod = poly_matrix_neg(prod);
                r.add_component(ia | ib, prod);
            }
            if (!poly_matrix_is_zero(a_odd)) {
                PolyMatrix prod = poly_matrix_mul(a_odd, mb);
                int sign = s * (jdeg == 1 ? -1 : 1);
                if (sign < 0) prod = poly_matrix_neg(prod);
                r.add_component(ia | ib, prod);
            }
        }
    }
    return r;
}

FormPoly supertrace(const SuperMatrixForm& m) {
    FormPoly f(m.ring);
    for (const auto& [mask, mat] : m.comps) {
        MultiPoly tr(m.ring);
        for (int i = 0; i < m.dim(); ++i) {
            const MultiPoly& d = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            if (m.index_parity(i) == 0)
                tr += d;
            else
                tr -= d;
        }
        f.add(mask, tr);
    }
    return f;
}

SuperMatrixForm entrywise_d(const PolyMatrix& m, const RingPtr& ring, int r0, int r1) {
    SuperMatrixForm r(ring, r0, r1);
    for (int k = 0; k < ring->nvars(); ++k) {
        PolyMatrix dk = poly_matrix_zero(ring, r0 + r1, r0 + r1);
        bool any = false;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                if (m[i][j].is_zero()) continue;
                MultiPoly d = partial_derivative(m[i][j].lifted(ring), k);
                if (d.is_zero()) continue;
                dk[i][j] = std::move(d);
                any = true;
            }
        if (any) r.add_component(1u << k, dk);
    }
    return r;
}

SuperMatrixForm exp_truncated(const SuperMatrixForm& m) {
    if (m.comps.count(0u) != 0)
        throw error("exp_truncated: argument has a form-degree-zero part");
    int n = m.ring->nvars();
    SuperMatrixForm acc = SuperMatrixForm::identity(m.ring, m.r0, m.r1);
    SuperMatrixForm power = acc;
    Rational factorial(1);
    for (int p = 1; p <= n; ++p) {
        power = wedge_mul(power, m);
        if (power.is_zero()) break;
        factorial *= Rational(p);
        acc = acc + power.scaled(factorial.inverse());
    }
    return acc;
}

}  // namespace mfhrr
