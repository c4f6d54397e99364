#include "plurilab/vdm.hpp"

#include <cmath>
#include <limits>

#include "plurilab/error.hpp"

namespace plurilab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

Eigen::MatrixXcd point_matrix(const MultiIndexBasis& basis, std::span<const cplx> points, int d) {
    const std::size_t npts = points.size() / static_cast<std::size_t>(d);
    Eigen::MatrixXcd V(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(npts));
    for (std::size_t j = 0; j < npts; ++j)
        basis.evaluate(points.subspan(j * static_cast<std::size_t>(d), static_cast<std::size_t>(d)),
                       std::span<cplx>(V.col(static_cast<Eigen::Index>(j)).data(), basis.size()));
    return V;
}

void check_points(std::span<const cplx> points, int d, std::uint64_t expected) {
    if (d < 1) throw InvalidInput("dimension must be >= 1");
    if (points.size() % static_cast<std::size_t>(d) != 0)
        throw InvalidInput("point coordinates are not a multiple of the dimension");
    if (points.size() / static_cast<std::size_t>(d) != expected)
        throw InvalidInput("Vandermonde needs exactly " + std::to_string(expected) + " points, got " +
                           std::to_string(points.size() / static_cast<std::size_t>(d)));
}

}  // namespace

LogDet log_abs_det(const Eigen::MatrixXcd& A0) {
    if (A0.rows() != A0.cols()) throw InvalidInput("determinant of a non-square matrix");
    LogDet out;
    const Eigen::Index n = A0.rows();
    if (n == 0) return out;

    // Row then column equilibration by the largest modulus; scales go back into the log.
    Eigen::MatrixXcd A = A0;
    double log_scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = A.row(i).cwiseAbs().maxCoeff();
        if (s == 0.0 || !std::isfinite(s)) {
            out.is_zero = true;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.condition = std::numeric_limits<double>::infinity();
            return out;
        }
        A.row(i) /= s;
        log_scale += std::log(s);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const double s = A.col(j).cwiseAbs().maxCoeff();
        if (s == 0.0) {
            out.is_zero = true;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.condition = std::numeric_limits<double>::infinity();
            return out;
        }
        A.col(j) /= s;
        log_scale += std::log(s);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    const auto& R = qr.matrixQR();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = std::abs(R(i, i));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        sum += std::log(r);
    }
    out.condition = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (lo == 0.0 || lo <= static_cast<double>(n) * eps * hi) {
        out.is_zero = true;
        out.log_abs = -std::numeric_limits<double>::infinity();
        return out;
    }
    out.log_abs = sum + log_scale;
    out.ill_conditioned = out.condition * eps > 1e-6;
    return out;
}

LogDet log_abs_vdm(std::span<const cplx> points, int d, int n) {
    const auto basis = enumerate_basis(n, d);
    check_points(points, d, basis.size());
    return log_abs_det(point_matrix(basis, points, d));
}

LogDet log_abs_weighted_vdm(std::span<const cplx> points, int d, int n, std::span<const double> qvals) {
    const auto basis = enumerate_basis(n, d);
    check_points(points, d, basis.size());
    if (qvals.size() != basis.size()) throw InvalidInput("one Q value per point required");
    double qsum = 0.0;
    for (double q : qvals) {
        if (std::isnan(q)) throw InvalidInput("Q is NaN");
        if (std::isinf(q)) {
            LogDet z;
            z.is_zero = true;
            z.weight_vanishes = true;
            z.log_abs = -std::numeric_limits<double>::infinity();
            return z;
        }
        qsum += q;
    }
    LogDet ld = log_abs_det(point_matrix(basis, points, d));
    if (!ld.is_zero) ld.log_abs -= n * qsum;
    return ld;
}

double diameter_exponent(int d, int n) {
    if (n < 1) throw InvalidInput("n-th order diameter needs n >= 1");
    const double N = static_cast<double>(dimension_counts(n, d).m);
    return (d + 1.0) / (static_cast<double>(d) * n * N);
}

double nth_order_diameter(std::span<const cplx> points, int d, int n, std::span<const double> qvals) {
    const double expo = diameter_exponent(d, n);
    const LogDet ld = log_abs_weighted_vdm(points, d, n, qvals);
    if (ld.is_zero) return 0.0;
    return std::exp(expo * ld.log_abs);
}

LogDet log_abs_homogeneous_vdm(std::span<const cplx> points, int d, int n) {
    const auto basis = enumerate_homogeneous_basis(n, d);
    check_points(points, d, basis.size());
    return log_abs_det(point_matrix(basis, points, d));
}

}  // namespace plurilab
