#pragma once

#include <span>
#include <string>
#include <vector>

#include "plurilab/energy.hpp"
#include "plurilab/gram.hpp"

namespace plurilab {

struct PathReport {
    int degree = 0;
    std::string perturbation;           ///< label for u
    double h = 1e-4;                    ///< finite-difference step
    std::vector<double> t;
    std::vector<double> f;
    std::vector<double> analytic;       ///< (d+1)/(dN) sum mass u B_t
    std::vector<double> finite_diff;    ///< central differences with step h
    std::vector<double> second_diff;    ///< on the t grid, interior points only

    double max_rel_derivative_error() const;
    double max_second_difference() const;
};

/// f_n(t) = -(d+1)/(2dnN) log det G_n^{mu, w e^{-tu}}; q and u are given at
/// every point of mu's set.
PathReport f_n_path(const DiscreteMeasure& mu, std::span<const double> q, std::span<const double> u, int n,
                    std::span<const double> t_grid, double h = 1e-4, std::string label = "u");

/// Uniform grid of `points` values on [lo, hi].
std::vector<double> default_t_grid(int points = 11, double lo = -0.5, double hi = 0.5);

/// Largest second difference of the report (should be <= 0 up to noise).
double concavity_check(const PathReport& r);

struct WeakStarDistance {
    int max_moment = 0;
    double moment = 0.0;      ///< sup over |alpha|,|beta| <= max_moment of the moment difference
    bool has_radial = false;
    double radial_cdf = 0.0;  ///< sup of |F_a - F_ref| over radii (d = 1)
};

WeakStarDistance weak_star_distance(const DiscreteMeasure& a, const DiscreteMeasure& b, int max_moment);
WeakStarDistance weak_star_distance(const DiscreteMeasure& a, const ExtremalModel& ref, int max_moment);

/// int z^alpha conj(z)^beta d mu_{K,Q} (mass 1) for the model.
cplx model_moment(const ExtremalModel& ref, const MultiIndex& alpha, const MultiIndex& beta);

struct BergmanMeasure {
    DiscreteMeasure measure;  ///< (1/N) B dmu, renormalized
    double raw_mass = 1.0;    ///< sum mass B / N before renormalization
};

BergmanMeasure bergman_measure(const DiscreteMeasure& mu, std::span<const double> q, int n);

}  // namespace plurilab
