#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "plurilab/basis.hpp"
#include "plurilab/domains.hpp"

namespace plurilab {

/// Probability measure on the points of a candidate set.
class DiscreteMeasure {
public:
    DiscreteMeasure(CandidateSetPtr set, std::vector<double> masses);

    /// Uses the set's quadrature masses.
    static DiscreteMeasure reference(CandidateSetPtr set);
    static DiscreteMeasure uniform(CandidateSetPtr set);
    static DiscreteMeasure point_mass(CandidateSetPtr set, std::size_t index);

    const CandidateSet& set() const noexcept { return *set_; }
    const CandidateSetPtr& set_ptr() const noexcept { return set_; }
    std::span<const double> masses() const noexcept { return masses_; }
    double mass(std::size_t i) const { return masses_[i]; }

    /// Indices with mass > floor.
    std::vector<std::size_t> support(double floor = 0.0) const;

private:
    CandidateSetPtr set_;
    std::vector<double> masses_;
};

/// Degree-n Gram matrix of (mu, Q) in the graded-lex monomial basis, with
/// its Cholesky factor G = L L^*.
struct GramSystem {
    int degree = 0;
    MultiIndexBasis basis{1, 0, {}};
    Eigen::MatrixXcd G;
    Eigen::MatrixXcd L;
    double log_det = 0.0;  ///< 2 sum log L_ii

    int dimension() const noexcept { return basis.dimension(); }
    std::size_t size() const noexcept { return basis.size(); }
};

/// qvals holds Q at every point of mu's candidate set. Throws DegenerateError
/// (with numerical rank) when the Cholesky pivots collapse.
GramSystem gram_matrix(const DiscreteMeasure& mu, std::span<const double> qvals, int n);
GramSystem gram_matrix(const DiscreteMeasure& mu, const AdmissibleWeight& Q, int n);

/// Cholesky of a Hermitian Gram matrix with a relative pivot check; no jitter.
GramSystem factor_gram(Eigen::MatrixXcd G, MultiIndexBasis basis, int n);

/// Numerical rank of a Hermitian PSD matrix after diagonal scaling.
std::size_t numerical_rank(const Eigen::MatrixXcd& G);

/// B(z) = e^{-2nQ(z)} P(z)^* G^{-1} P(z) at every point of `at`, through
/// triangular solves against L. qvals are Q at the points of `at`.
std::vector<double> bergman_function(const GramSystem& sys, const CandidateSet& at,
                                     std::span<const double> qvals);

/// Same quantity through an explicitly orthonormalized basis (modified
/// Gram-Schmidt in the weighted L^2(mu) inner product).
std::vector<double> bergman_function_orthonormal(const DiscreteMeasure& mu,
                                                 std::span<const double> mu_qvals, int n,
                                                 const CandidateSet& at,
                                                 std::span<const double> at_qvals);

struct BernsteinMarkov {
    double constant = 0.0;   ///< max over K of sqrt(B)
    std::size_t argmax = 0;  ///< index into K
};

BernsteinMarkov bm_constant(const GramSystem& sys, const CandidateSet& K, std::span<const double> qvals);

/// (d+1)/(2 d n N) log det G.
double normalized_log_det(const GramSystem& sys);

/// log Z_n = log N! + log det G.
double free_energy(const DiscreteMeasure& mu, std::span<const double> qvals, int n);

/// Row-major CSV, real and imaginary parts interleaved.
void write_gram_csv(std::ostream& os, const GramSystem& sys);

}  // namespace plurilab
