#pragma once

// Exact dense linear algebra over Q, just enough for kernel computations,
// small solves, and rank checks.

#include <optional>
#include <vector>

#include "cyq/rational.hpp"

namespace cyq {

using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

int matrix_rank(QMatrix m);

// basis of { x : M x = 0 }, each vector scaled to coprime integers with
// positive first nonzero entry; deterministic (free columns in order)
std::vector<QVector> kernel_basis(const QMatrix& m);

// unique solution of a square system, nullopt when singular
std::optional<QVector> solve_square(QMatrix a, QVector b);

Rational determinant(QMatrix m);

// inverse of a square matrix, nullopt when singular
std::optional<QMatrix> matrix_inverse(const QMatrix& m);

// coprime integers, first nonzero positive; zero vector unchanged
QVector normalize_primitive(QVector v);

}  // namespace cyq
