#ifndef MFHRR_LINALG_HPP
#define MFHRR_LINALG_HPP

#include <optional>
#include <vector>

#include "mfhrr/rational.hpp"

namespace mfhrr {

// Dense exact linear algebra over the rationals, for desk-scale matrices.
using QVec = std::vector<Rational>;
using QMatrix = std::vector<QVec>;

QMatrix q_identity(int n);
QMatrix q_zero(int rows, int cols);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
QVec q_mul_vec(const QMatrix& a, const QVec& v);

// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<int> q_rref(QMatrix& m);

int q_rank(QMatrix m);

// Rank of a sparse matrix given as columns of (row, value) pairs, each sorted
// by row. Exact elimination that only touches nonzero entries.
using SparseCol = std::vector<std::pair<int, Rational>>;
int q_rank_sparse(std::vector<SparseCol> cols);

Rational q_det(QMatrix m);

// General solution of a*x = b: a particular solution plus a nullspace basis,
// or nullopt when the system is inconsistent.
struct LinearSolution {
    QVec particular;
    std::vector<QVec> nullspace;
};
std::optional<LinearSolution> q_solve(const QMatrix& a, const QVec& b);

}  // namespace mfhrr

#endif
