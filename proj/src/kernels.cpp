#include "plurilab/kernels.hpp"

#include <limits>

#include <omp.h>

namespace plurilab::kernels {

namespace {

void fill_column(const MultiIndexBasis& basis, const CandidateSet& S, std::span<const double> scale,
                 Matrix& out, Eigen::Index j) {
    const auto idx = static_cast<std::size_t>(j);
    std::span<cplx> col(out.col(j).data(), basis.size());
    basis.evaluate(S.point(idx), col);
    if (!scale.empty()) {
        const double s = scale[idx];
        for (auto& c : col) c *= s;
    }
}

cplx gram_entry(const Matrix& A, std::span<const double> w, Eigen::Index i, Eigen::Index j) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < A.cols(); ++k) acc += w[static_cast<std::size_t>(k)] * A(i, k) * std::conj(A(j, k));
    return acc;
}

double forward_solve_norm(const Matrix& L, const Matrix& A, Eigen::Index k, Vector& y) {
    const Eigen::Index n = L.rows();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cplx acc = A(i, k);
        for (Eigen::Index j = 0; j < i; ++j) acc -= L(i, j) * y(j);
        y(i) = acc / L(i, i);
        s += std::norm(y(i));
    }
    return s;
}

}  // namespace

Matrix monomial_matrix_serial(const MultiIndexBasis& basis, const CandidateSet& S,
                              std::span<const double> scale) {
    Matrix out(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(S.size()));
    for (Eigen::Index j = 0; j < out.cols(); ++j) fill_column(basis, S, scale, out, j);
    return out;
}

Matrix monomial_matrix(const MultiIndexBasis& basis, const CandidateSet& S,
                       std::span<const double> scale) {
    Matrix out(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(S.size()));
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < out.cols(); ++j) fill_column(basis, S, scale, out, j);
    return out;
}

Matrix gram_serial(const Matrix& A, std::span<const double> w) {
    const Eigen::Index n = A.rows();
    Matrix G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            G(i, j) = gram_entry(A, w, i, j);
            G(j, i) = std::conj(G(i, j));
        }
    for (Eigen::Index i = 0; i < n; ++i) G(i, i) = G(i, i).real();
    return G;
}

Matrix gram(const Matrix& A, std::span<const double> w) {
    const Eigen::Index n = A.rows();
    Matrix G(n, n);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            G(i, j) = gram_entry(A, w, i, j);
            G(j, i) = std::conj(G(i, j));
        }
    for (Eigen::Index i = 0; i < n; ++i) G(i, i) = G(i, i).real();
    return G;
}

std::vector<double> solve_column_norms_serial(const Matrix& L, const Matrix& A) {
    std::vector<double> out(static_cast<std::size_t>(A.cols()));
    Vector y(L.rows());
    for (Eigen::Index k = 0; k < A.cols(); ++k) out[static_cast<std::size_t>(k)] = forward_solve_norm(L, A, k, y);
    return out;
}

std::vector<double> solve_column_norms(const Matrix& L, const Matrix& A) {
    std::vector<double> out(static_cast<std::size_t>(A.cols()));
#pragma omp parallel
    {
        Vector y(L.rows());
#pragma omp for schedule(static)
        for (Eigen::Index k = 0; k < A.cols(); ++k) out[static_cast<std::size_t>(k)] = forward_solve_norm(L, A, k, y);
    }
    return out;
}

std::vector<double> column_norms_serial(const Matrix& A) {
    std::vector<double> out(static_cast<std::size_t>(A.cols()));
    for (Eigen::Index k = 0; k < A.cols(); ++k) out[static_cast<std::size_t>(k)] = A.col(k).squaredNorm();
    return out;
}

std::vector<double> column_norms(const Matrix& A) {
    std::vector<double> out(static_cast<std::size_t>(A.cols()));
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < A.cols(); ++k) out[static_cast<std::size_t>(k)] = A.col(k).squaredNorm();
    return out;
}

void deflate_serial(Matrix& A, const Vector& q) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
        const cplx c = q.dot(A.col(k));  // q^* a_k
        A.col(k) -= c * q;
    }
}

void deflate(Matrix& A, const Vector& q) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
        const cplx c = q.dot(A.col(k));
        A.col(k) -= c * q;
    }
}

std::ptrdiff_t argmax_serial(std::span<const double> v, const std::vector<bool>& mask) {
    std::ptrdiff_t best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!mask.empty() && mask[i]) continue;
        if (best < 0 || v[i] > best_val) {
            best = static_cast<std::ptrdiff_t>(i);
            best_val = v[i];
        }
    }
    return best;
}

std::ptrdiff_t argmax(std::span<const double> v, const std::vector<bool>& mask) {
    const int nt = omp_get_max_threads();
    std::vector<std::ptrdiff_t> best(static_cast<std::size_t>(nt), -1);
    std::vector<double> best_val(static_cast<std::size_t>(nt), -std::numeric_limits<double>::infinity());
#pragma omp parallel num_threads(nt)
    {
        const auto t = static_cast<std::size_t>(omp_get_thread_num());
#pragma omp for schedule(static)
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!mask.empty() && mask[i]) continue;
            if (best[t] < 0 || v[i] > best_val[t]) {
                best[t] = static_cast<std::ptrdiff_t>(i);
                best_val[t] = v[i];
            }
        }
    }
    // static schedule gives thread t a lower index range than t+1
    std::ptrdiff_t b = -1;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < best.size(); ++t)
        if (best[t] >= 0 && (b < 0 || best_val[t] > bv)) {
            b = best[t];
            bv = best_val[t];
        }
    return b;
}

}  // namespace plurilab::kernels
