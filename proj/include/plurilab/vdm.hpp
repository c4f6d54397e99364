#pragma once

#include <Eigen/Dense>
#include <span>

#include "plurilab/basis.hpp"

namespace plurilab {

/// log|det| of a square matrix, never formed as a raw determinant.
struct LogDet {
    double log_abs = 0.0;        ///< -inf when is_zero
    bool is_zero = false;
    double condition = 1.0;      ///< ratio of extreme |R_ii| after equilibration
    bool ill_conditioned = false;///< condition * eps > 1e-6
    bool weight_vanishes = false;///< some point had w = 0
};

/// Equilibrated column-pivoted QR; accumulates log|R_ii|.
LogDet log_abs_det(const Eigen::MatrixXcd& A);

/// Points are passed flat: d complex coordinates per point.
LogDet log_abs_vdm(std::span<const cplx> points, int d, int n);

/// log|VDM| - n * sum Q(zeta_i).
LogDet log_abs_weighted_vdm(std::span<const cplx> points, int d, int n, std::span<const double> qvals);

/// exp((d+1)/(d n N) * log|W|); 0 for degenerate configurations.
double nth_order_diameter(std::span<const cplx> points, int d, int n, std::span<const double> qvals);

/// Exponent (d+1)/(d n N) turning log W into log delta^{w,n}.
double diameter_exponent(int d, int n);

/// Degree-n homogeneous Vandermonde on h_n points.
LogDet log_abs_homogeneous_vdm(std::span<const cplx> points, int d, int n);

}  // namespace plurilab
