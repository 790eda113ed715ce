#pragma once

#include <vector>

#include "jforge/scalar.hpp"

namespace jforge::linalg {

using Matrix = std::vector<std::vector<Scalar>>;
using Vector = std::vector<Scalar>;

// Exact rank by fraction-free Gaussian elimination.
int rank(Matrix m);

// Basis of the right nullspace of an r x c matrix (vectors of length c).
std::vector<Vector> nullspace(Matrix m);

// Whether b lies in the column span of m.
bool in_column_span(const Matrix& m, const Vector& b);

// Float rank with a relative singular-value threshold (Eigen SVD).
int rank_double(const std::vector<std::vector<double>>& m, double rel_tol);
bool in_column_span_double(const std::vector<std::vector<double>>& m,
                           const std::vector<double>& b, double rel_tol);

// Matrix exponential exp(m) for an n x n double matrix (scaling-and-squaring
// Pade approximant).
std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& m);

// Exact exp(t*m) for nilpotent rational m via the terminating Taylor series;
// throws PreconditionError when m is not nilpotent.
Matrix expm_nilpotent(const Matrix& m, const Scalar& t);

bool is_nilpotent(const Matrix& m);

}  // namespace jforge::linalg
