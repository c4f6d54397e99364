#pragma once

#include <span>
#include <string>
#include <vector>

#include "plurilab/basis.hpp"
#include "plurilab/domains.hpp"
#include "plurilab/fekete.hpp"

namespace plurilab {

/// Closed-form extremal functions. All Monge-Ampere measures carry total
/// mass (2 pi)^d.
class ExtremalModel {
public:
    enum class Kind { disk, weighted_disk, torus, polydisk };

    /// V = log+(|z|/r); mu uniform on |z| = r.
    static ExtremalModel disk(double r);
    /// K = closed unit disk, Q = |z|^2; mu has density 2/pi on |z| <= 1/sqrt 2.
    static ExtremalModel weighted_disk();
    /// V = max_j log+|z_j|; mu Haar on the unit torus.
    static ExtremalModel torus(int d);
    /// V = max_j log+(|z_j|/r_j).
    static ExtremalModel polydisk(std::vector<double> radii);

    Kind kind() const noexcept { return kind_; }
    int dimension() const noexcept { return static_cast<int>(radii_.size()); }
    const std::vector<double>& radii() const noexcept { return radii_; }
    std::string name() const;

    /// Q on K (zero except for the weighted disk).
    double weight(std::span<const cplx> z) const;
    /// Weight that makes a candidate set on K match this model.
    AdmissibleWeight admissible_weight() const;

    /// Radius where the equilibrium measure lives (d = 1): the circle radius,
    /// or the outer radius of the weighted disk's support.
    double support_radius() const;

    /// Compact set description for building candidate sets on K.
    GeometrySpec geometry(int resolution, int radial_resolution = 0, int angular_resolution = 0) const;

    static constexpr double weighted_support = 0.70710678118654752440;  // 1/sqrt 2

private:
    Kind kind_ = Kind::disk;
    std::vector<double> radii_{1.0};
};

double eval_extremal(const ExtremalModel& m, std::span<const cplx> z);

/// E(u, v) = sum_j int (u - v) (dd^c u)^j ^ (dd^c v)^{d-j}. Supported pairs:
/// any two d = 1 models; torus/polydisk pairs of equal dimension.
/// `resolution` is the number of quadrature nodes per direction.
double energy(const ExtremalModel& u, const ExtremalModel& v, int resolution = 256);

/// Log-radii of the torus carrying (dd^c u)^j ^ (dd^c v)^{d-j} for polydisk models.
std::vector<double> mixed_measure_support(const ExtremalModel& u, const ExtremalModel& v, int j);

/// int Q dmu_{K,Q} with mu normalized to mass 1 (d = 1).
double weighted_mass_integral(const ExtremalModel& m, int resolution = 256);

/// d = 1 Robin constant.
double robin_constant(const ExtremalModel& m);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

struct RumelyReport {
    std::string model;
    int n_max = 0;
    double lhs = 0.0;              ///< -log delta^w from the extrapolated Fekete sequence
    double rhs = 0.0;              ///< E(V_{K,Q}, V_T) / (d (2 pi)^d)
    double gap = 0.0;              ///< |lhs - rhs|
    double delta_exact = 0.0;      ///< exp(-rhs)
    double delta_limit = 0.0;      ///< exp(-lhs)
    double delta_at_n_max = 0.0;
    double rel_gap_at_n_max = 0.0; ///< |delta_{n_max} - delta_exact| / delta_exact
    bool monotone = false;         ///< delta_n decreasing in n
    DiameterSequence sequence;
};

/// lhs from Fekete search on S with Q = model weight.
RumelyReport rumely_check(const ExtremalModel& model, const CandidateSet& S, int n_max, int quad_resolution = 256,
                          int max_sweeps = 50);

struct DwReport {
    std::string model;
    double q_integral = 0.0;     ///< int Q dmu, mass-1 convention
    double dw = 0.0;             ///< d^w = exp(-rho)
    double product = 0.0;        ///< exp(-int Q dmu) d^w
    double delta_closed = 0.0;   ///< exp(-E(V_{K,Q}, V_T)/(2 pi))
    double closed_form_gap = 0.0;///< |product - delta_closed|
    double delta_estimate = 0.0; ///< Fekete estimate, if given (else 0)
    double estimate_rel_gap = 0.0;
};

/// d = 1 models only. delta_estimate <= 0 skips the numerical comparison.
DwReport dw_vs_deltaw_check(const ExtremalModel& model, double delta_estimate = 0.0, int quad_resolution = 256);

}  // namespace plurilab
