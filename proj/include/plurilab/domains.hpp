#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plurilab/basis.hpp"

namespace plurilab {

enum class Geometry { interval, circle, disk, torus, polydisk, ball, product, custom };

std::string to_string(Geometry g);

/// Finite discretization of a compact set in C^d. Immutable once built.
class CandidateSet {
public:
    /// coords holds points contiguously, d complex numbers per point.
    /// Throws InvalidInput on duplicates (1e-12) or invalid masses.
    CandidateSet(int dimension, std::vector<cplx> coords, std::optional<std::vector<double>> masses,
                 Geometry tag);

    int dimension() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
    std::span<const cplx> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<cplx>& coords() const noexcept { return coords_; }
    bool has_masses() const noexcept { return masses_.has_value(); }
    const std::vector<double>& masses() const;
    Geometry geometry() const noexcept { return tag_; }

    /// Subset by index, keeping masses (renormalized) when present.
    CandidateSet subset(std::span<const std::size_t> idx) const;

    static constexpr double duplicate_tolerance = 1e-12;

private:
    int dim_;
    std::vector<cplx> coords_;
    std::optional<std::vector<double>> masses_;
    Geometry tag_;
};

using CandidateSetPtr = std::shared_ptr<const CandidateSet>;

enum class IntervalRule { equispaced, chebyshev };

/// Geometry descriptor consumed by build_set.
struct GeometrySpec {
    Geometry kind = Geometry::circle;
    int dimension = 1;
    double radius = 1.0;
    std::vector<double> radii;  ///< polydisk
    double a = -1.0, b = 1.0;   ///< interval
    IntervalRule rule = IntervalRule::equispaced;
    int resolution = 0;          ///< circle/interval/torus point count per coordinate
    int radial_resolution = 0;   ///< disk
    int angular_resolution = 0;  ///< disk
    std::vector<GeometrySpec> factors;  ///< product
};

/// circle(r, m): m equispaced points, masses 1/m.
/// interval([a,b], m, rule): equispaced nodes or Chebyshev extrema
///   (a + (b-a)(1 + cos(k pi/(m-1)))/2, k = 0..m-1), masses 1/m.
/// disk(r, m_r, m_t): center plus m_r rings of m_t points, annulus area masses.
/// torus(d, m): m-th roots of unity per coordinate, masses 1/m^d.
/// polydisk(radii, m): distinguished boundary torus with the given radii.
/// product: coordinate-wise Cartesian product, masses multiplied.
CandidateSet build_set(const GeometrySpec& spec);

/// Q = -log w. Values may be +inf (w = 0).
class AdmissibleWeight {
public:
    enum class Kind { zero, quadratic, radial_table, grid, custom };

    static AdmissibleWeight zero();
    /// Q(z) = scale * |z|^2.
    static AdmissibleWeight quadratic(double scale = 1.0);
    /// Q(|z|) piecewise linear through (radius, value) knots, constant beyond the ends.
    static AdmissibleWeight radial_table(std::vector<std::pair<double, double>> knots);
    /// Values tied to the points of a specific candidate set, by index.
    static AdmissibleWeight grid(std::vector<double> values);
    static AdmissibleWeight custom(std::function<double(std::span<const cplx>)> fn);

    Kind kind() const noexcept { return kind_; }
    double scale() const noexcept { return scale_; }
    bool is_zero() const noexcept { return kind_ == Kind::zero; }
    std::size_t grid_size() const noexcept { return grid_.size(); }

    /// Evaluate at a single point; grid weights need the point index.
    double operator()(std::span<const cplx> z, std::size_t index) const;

private:
    Kind kind_ = Kind::zero;
    double scale_ = 0.0;
    std::vector<std::pair<double, double>> knots_;
    std::vector<double> grid_;
    std::function<double(std::span<const cplx>)> fn_;
};

/// Q at every point of S. NaN from the evaluator is an InvalidInput error.
std::vector<double> eval_weight(const AdmissibleWeight& Q, const CandidateSet& S);

/// Number of points with w > 0.
std::size_t count_positive_weight(std::span<const double> qvals);

/// Throws InvalidInput unless w > 0 on at least m_n points.
void require_nondegenerate_weight(std::span<const double> qvals, int n, int d);

/// CSV with header re_1,im_1,...,re_d,im_d[,mass].
void write_csv(std::ostream& os, const CandidateSet& S);
CandidateSet read_csv(std::istream& is, Geometry tag = Geometry::custom);

}  // namespace plurilab
