#pragma once

// Data-parallel inner loops. Every kernel has a serial reference
// (suffix _serial) and an OpenMP version; both sum in the same order, so
// their results are bit-identical for any thread count.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "plurilab/basis.hpp"
#include "plurilab/domains.hpp"

namespace plurilab::kernels {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Column j is scale[j] * (e_1(z_j), ..., e_N(z_j)). Empty scale means 1.
Matrix monomial_matrix_serial(const MultiIndexBasis& basis, const CandidateSet& S,
                              std::span<const double> scale);
Matrix monomial_matrix(const MultiIndexBasis& basis, const CandidateSet& S,
                       std::span<const double> scale);

/// G = sum_k w_k a_k a_k^*, a_k the k-th column of A. Hermitian, both triangles filled.
Matrix gram_serial(const Matrix& A, std::span<const double> w);
Matrix gram(const Matrix& A, std::span<const double> w);

/// ||L^{-1} a_k||^2 for every column a_k of A, L lower triangular.
std::vector<double> solve_column_norms_serial(const Matrix& L, const Matrix& A);
std::vector<double> solve_column_norms(const Matrix& L, const Matrix& A);

/// Squared Euclidean norm of every column.
std::vector<double> column_norms_serial(const Matrix& A);
std::vector<double> column_norms(const Matrix& A);

/// A <- A - q (q^* A), q a unit vector.
void deflate_serial(Matrix& A, const Vector& q);
void deflate(Matrix& A, const Vector& q);

/// Index of the largest value among unmasked entries (mask[i] == true skips i);
/// ties resolve to the lowest index. Returns -1 if nothing is eligible.
std::ptrdiff_t argmax_serial(std::span<const double> v, const std::vector<bool>& mask);
std::ptrdiff_t argmax(std::span<const double> v, const std::vector<bool>& mask);

}  // namespace plurilab::kernels
