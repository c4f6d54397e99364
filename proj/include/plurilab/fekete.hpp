#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "plurilab/domains.hpp"
#include "plurilab/gram.hpp"

namespace plurilab {

enum class FeketeMethod { greedy, greedy_exchange, exhaustive };

std::string to_string(FeketeMethod m);

struct FeketeConfiguration {
    int degree = 0;
    int dimension = 1;
    std::vector<std::size_t> indices;  ///< into the candidate set
    double log_weighted_vdm = 0.0;
    FeketeMethod method = FeketeMethod::greedy;
    int sweeps = 0;        ///< exchange sweeps performed
    std::size_t swaps = 0; ///< accepted exchanges

    std::size_t size() const noexcept { return indices.size(); }
};

// Column-subset maximization of |det A[:, idx]| for a short-wide matrix A
// (rows = basis, columns = weighted candidates). Shared with the
// homogeneous lift.

/// Pivoted Gram-Schmidt: at each step take the column with the largest
/// residual norm (lowest index on ties).
std::vector<std::size_t> greedy_select(const Eigen::MatrixXcd& A);

struct ExchangeResult {
    std::vector<std::size_t> indices;
    int sweeps = 0;
    std::size_t swaps = 0;
};

/// One-point exchanges accepted when log|det| grows by more than 1e-12.
/// A sweep allows up to rows(A) exchanges; max_sweeps = 0 returns idx.
ExchangeResult exchange_select(const Eigen::MatrixXcd& A, std::vector<std::size_t> idx, int max_sweeps);

/// Every rows(A)-subset of columns; throws UnsupportedError above max_subsets.
std::vector<std::size_t> exhaustive_select(const Eigen::MatrixXcd& A, std::uint64_t max_subsets = 5'000'000);

/// log|det A[:, idx]|, -inf if singular.
double log_abs_det_columns(const Eigen::MatrixXcd& A, std::span<const std::size_t> idx);

/// Rows = degree-n basis, column k = e^{-n Q_k} e(z_k).
Eigen::MatrixXcd weighted_vandermonde(const CandidateSet& S, int n, std::span<const double> qvals);

FeketeConfiguration greedy_fekete(const CandidateSet& S, int n, std::span<const double> qvals);
FeketeConfiguration exchange_refine(const FeketeConfiguration& cfg, const CandidateSet& S,
                                    std::span<const double> qvals, int max_sweeps = 50);
FeketeConfiguration exhaustive_fekete(const CandidateSet& S, int n, std::span<const double> qvals);

/// Greedy start followed by exchange refinement.
FeketeConfiguration fekete(const CandidateSet& S, int n, std::span<const double> qvals, int max_sweeps = 50);

/// Flat coordinates and Q values of the selected points.
std::vector<cplx> selected_points(const FeketeConfiguration& cfg, const CandidateSet& S);
std::vector<double> selected_q(const FeketeConfiguration& cfg, std::span<const double> qvals);

/// Mass 1/N at each selected point, as a measure on the whole candidate set.
DiscreteMeasure empirical_measure(const FeketeConfiguration& cfg, CandidateSetPtr S);

/// Least-squares fit of log delta_n against 1, 1/n, log(n)/n, 1/n^2 over
/// n >= 2 (fewer terms when few degrees are available).
struct Extrapolation {
    double log_limit = 0.0;
    int terms = 0;
    int points_used = 0;
};

Extrapolation extrapolate_log_diameter(std::span<const int> degrees, std::span<const double> log_delta);

struct DiameterSequence {
    std::vector<int> degrees;
    std::vector<double> log_vdm;
    std::vector<double> delta;
    std::vector<FeketeConfiguration> configs;
    bool monotone_decreasing = true;
    Extrapolation extrapolation;

    double limit() const;
};

/// Fekete search for n = n_min..n_max.
DiameterSequence diameter_sequence(const CandidateSet& S, std::span<const double> qvals, int n_max,
                                   int n_min = 1, int max_sweeps = 50);

/// Selected points in the domains CSV format.
void write_configuration_csv(std::ostream& os, const FeketeConfiguration& cfg, const CandidateSet& S);

}  // namespace plurilab
