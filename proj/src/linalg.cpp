#include "mfhrr/linalg.hpp"

#include <cassert>
#include <map>

#include "mfhrr/errors.hpp"

namespace mfhrr {

QMatrix q_identity(int n) {
    QMatrix m = q_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

QMatrix q_zero(int rows, int cols) {
    return QMatrix(static_cast<std::size_t>(rows), QVec(static_cast<std::size_t>(cols)));
}

QMatrix q_mul(const QMatrix& a, const QMatrix& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    QMatrix r(n, QVec(m));
    for (std::size_t i = 0; i < n; ++i) {
        assert(a[i].size() == k);
        for (std::size_t j = 0; j < m; ++j) {
            Rational s;
            for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
            r[i][j] = s;
        }
    }
    return r;
}

QVec q_mul_vec(const QMatrix& a, const QVec& v) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        assert(a[i].size() == v.size());
        Rational s;
        for (std::size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
        r[i] = s;
    }
    return r;
}

std::vector<int> q_rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int q_rank(QMatrix m) {
    return static_cast<int>(q_rref(m).size());
}

int q_rank_sparse(std::vector<SparseCol> cols) {
    // pivot row -> index into `pivots`
    std::map<int, std::size_t> pivot_at;
    std::vector<SparseCol> pivots;

    auto axpy = [](const SparseCol& a, const Rational& c, const SparseCol& b) {
        // a + c*b with sorted-row merge
        SparseCol out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, c * b[j].second);
                ++j;
            } else {
                Rational v = a[i].second + c * b[j].second;
                if (!v.is_zero()) out.emplace_back(a[i].first, v);
                ++i;
                ++j;
            }
        }
        return out;
    };

    int rank = 0;
    for (auto& col : cols) {
        SparseCol work = std::move(col);
        while (!work.empty()) {
            int r = work.front().first;
            auto it = pivot_at.find(r);
            if (it == pivot_at.end()) {
                pivot_at.emplace(r, pivots.size());
                pivots.push_back(std::move(work));
                ++rank;
                break;
            }
            const SparseCol& piv = pivots[it->second];
            Rational factor = -(work.front().second / piv.front().second);
            work = axpy(work, factor, piv);
        }
    }
    return rank;
}

Rational q_det(QMatrix m) {
    std::size_t n = m.size();
    for (auto& row : m) {
        assert(row.size() == n);
        (void)row;
    }
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = m[c][c].inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            Rational f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::optional<LinearSolution> q_solve(const QMatrix& a, const QVec& b) {
    std::size_t rows = a.size();
    std::size_t cols = rows == 0 ? 0 : a[0].size();
    assert(b.size() == rows);
    QMatrix aug(rows, QVec(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = q_rref(aug);
    // Inconsistent iff a pivot landed in the augmented column.
    if (!pivots.empty() && pivots.back() == static_cast<int>(cols)) return std::nullopt;

    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    LinearSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (std::size_t k = 0; k < pivots.size(); ++k)
        sol.particular[static_cast<std::size_t>(pivots[k])] = aug[k][cols];

    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols);
        v[f] = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[static_cast<std::size_t>(pivots[k])] = -aug[k][f];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

}  // namespace mfhrr
