#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plurilab/domains.hpp"
#include "plurilab/gram.hpp"

namespace plurilab {

enum class OptAlgo { multiplicative, vertex_exchange };

std::string to_string(OptAlgo a);
OptAlgo parse_opt_algo(const std::string& s);

struct KwGap {
    double gap = 0.0;       ///< max_K B - N
    double max_b = 0.0;
    std::size_t argmax = 0; ///< index into K
};

/// mu_q are Q on mu's set, k_q are Q on K.
KwGap kw_gap(const DiscreteMeasure& mu, std::span<const double> mu_q, int n, const CandidateSet& K,
             std::span<const double> k_q);
/// K = the candidate set of mu.
KwGap kw_gap(const DiscreteMeasure& mu, std::span<const double> q, int n);

struct OptimalMeasureOptions {
    double tol = 1e-6;          ///< on kw_gap / N
    OptAlgo algo = OptAlgo::multiplicative;
    std::size_t max_iter = 0;   ///< 0 means 10 N |S|
    double mass_floor = 1e-10;
    int floor_every = 100;
};

struct SolveReport {
    explicit SolveReport(DiscreteMeasure mu) : measure(std::move(mu)) {}

    DiscreteMeasure measure;
    int degree = 0;
    std::size_t dimension_n = 0;  ///< N = dim P_n
    std::size_t iterations = 0;
    bool converged = false;
    double kw_gap = 0.0;
    double log_det = 0.0;
    bool det_monotone = true;
    double worst_det_drop = 0.0;  ///< largest relative decrease seen (0 if monotone)
    std::vector<double> bergman;  ///< B at every candidate for the final measure
};

/// Starts from `start` or the uniform measure on S.
SolveReport solve_optimal_measure(CandidateSetPtr S, std::span<const double> q, int n,
                                  const OptimalMeasureOptions& opt = {},
                                  const std::optional<DiscreteMeasure>& start = std::nullopt);

struct SupportCertificate {
    std::vector<std::size_t> support;
    std::vector<double> bergman;          ///< B at each support point
    std::vector<std::size_t> violations;  ///< support points with |B - N| > tol N
    bool ok() const noexcept { return violations.empty(); }
};

SupportCertificate support_certificate(const DiscreteMeasure& mu, std::span<const double> q, int n,
                                       double tol = 1e-6, double mass_floor = 1e-10);

struct OptimalDetSequence {
    std::vector<int> degrees;
    std::vector<double> normalized_log_det;
    std::vector<SolveReport> reports;
};

OptimalDetSequence optimal_det_sequence(CandidateSetPtr S, std::span<const double> q, int n_max,
                                        const OptimalMeasureOptions& opt = {}, int n_min = 1);

/// Masses grouped into decades: counts of masses in (10^{-k-1}, 10^{-k}], k = 0..bins-1,
/// with the last bin collecting everything smaller (zeros excluded).
std::vector<std::size_t> mass_histogram(std::span<const double> masses, int bins = 12);

}  // namespace plurilab
