#pragma once

// Independent reference computations used only by the tests. None of these
// route through the library's factorizations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Determinant by Laplace expansion (small matrices only), row-major.
inline cplx det(const std::vector<cplx>& a, int n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    cplx s = 0.0;
    for (int c = 0; c < n; ++c) {
        std::vector<cplx> m;
        for (int r = 1; r < n; ++r)
            for (int k = 0; k < n; ++k)
                if (k != c) m.push_back(a[static_cast<std::size_t>(r * n + k)]);
        const cplx sub = det(m, n - 1);
        s += (c % 2 ? -1.0 : 1.0) * a[static_cast<std::size_t>(c)] * sub;
    }
    return s;
}

/// log prod_{i<j} |z_i - z_j|.
inline double log_vdm_product(const std::vector<cplx>& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) s += std::log(std::abs(z[i] - z[j]));
    return s;
}

/// Monomials of degree <= n in one variable at the points, Laplace determinant.
inline cplx vdm_1d(const std::vector<cplx>& z) {
    const int N = static_cast<int>(z.size());
    std::vector<cplx> a(static_cast<std::size_t>(N * N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a[static_cast<std::size_t>(i * N + j)] = std::pow(z[static_cast<std::size_t>(j)], i);
    return det(a, N);
}

/// Exponent vectors of total degree <= n in d variables, any order.
inline std::vector<std::vector<int>> exponents(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(static_cast<std::size_t>(d), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == d) {
            out.push_back(e);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            e[static_cast<std::size_t>(k)] = a;
            rec(k + 1, left - a);
        }
    };
    rec(0, n);
    return out;
}

/// sum over N-tuples of support points of prod m |VDM|^2 w^{2n}.
/// z holds d coordinates per point.
inline double tuple_sum_free_energy(const std::vector<cplx>& z, int d, const std::vector<double>& m,
                                    const std::vector<double>& q, int n) {
    const auto ex = exponents(n, d);
    const int N = static_cast<int>(ex.size());
    const std::size_t M = m.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(N), 0);
    double total = 0.0;
    std::vector<cplx> a(static_cast<std::size_t>(N * N));
    while (true) {
        double w = 1.0;
        for (int j = 0; j < N; ++j) {
            const std::size_t p = idx[static_cast<std::size_t>(j)];
            w *= m[p] * std::exp(-2.0 * n * q[p]);
            for (int i = 0; i < N; ++i) {
                cplx v = 1.0;
                for (int k = 0; k < d; ++k)
                    v *= std::pow(z[p * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)],
                                  ex[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
                a[static_cast<std::size_t>(i * N + j)] = v;
            }
        }
        if (w > 0) total += w * std::norm(det(a, N));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == M) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return total;
}

/// det of the real Gram matrix sum_k m_k v_k v_k^T for monomials 1..x^n at real points.
inline double real_gram_det(const std::vector<double>& x, const std::vector<double>& m, int n) {
    const int N = n + 1;
    std::vector<cplx> g(static_cast<std::size_t>(N * N), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) g[static_cast<std::size_t>(i * N + j)] += m[k] * std::pow(x[k], i + j);
    return det(g, N).real();
}

/// Maximizer of det G over the 2-simplex on three real points, grid step h.
inline std::vector<double> simplex_grid_argmax(const std::vector<double>& x, int n, double h) {
    const int steps = static_cast<int>(std::lround(1.0 / h));
    std::vector<double> best{1.0 / 3, 1.0 / 3, 1.0 / 3};
    double best_val = -1.0;
    for (int a = 0; a <= steps; ++a)
        for (int b = 0; a + b <= steps; ++b) {
            const std::vector<double> m{a * h, b * h, (steps - a - b) * h};
            const double v = real_gram_det(x, m, n);
            if (v > best_val) {
                best_val = v;
                best = m;
            }
        }
    return best;
}

/// Max over N-subsets of log|W| for d = 1 via the product formula.
inline double exhaustive_log_w(const std::vector<cplx>& z, const std::vector<double>& q, int n) {
    const std::size_t N = static_cast<std::size_t>(n) + 1, M = z.size();
    std::vector<std::size_t> idx(N);
    for (std::size_t k = 0; k < N; ++k) idx[k] = k;
    double best = -INFINITY;
    while (true) {
        std::vector<cplx> pts;
        double qs = 0.0;
        for (auto i : idx) {
            pts.push_back(z[i]);
            qs += q[i];
        }
        best = std::max(best, log_vdm_product(pts) - n * qs);
        std::size_t k = N;
        while (k > 0 && idx[k - 1] == M - N + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < N; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

/// Toric energy of two polydisks: (2 pi)^d sum log(s_k / r_k).
inline double polydisk_energy(const std::vector<double>& r, const std::vector<double>& s) {
    double v = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) v += std::log(s[k] / r[k]);
    return std::pow(2.0 * M_PI, static_cast<double>(r.size())) * v;
}

/// Composite Simpson on [a, b] with 2m panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int m) {
    const double h = (b - a) / (2 * m);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// int |z|^2 d mu for the weighted-disk equilibrium measure (density 2/pi on |z| <= 1/sqrt 2).
inline double weighted_disk_q_integral() {
    const double R = std::sqrt(0.5);
    return simpson([](double r) { return r * r * (2.0 / M_PI) * 2.0 * M_PI * r; }, 0.0, R, 64);
}

/// Robin constant of the weighted disk from continuity of V at the support radius.
inline double weighted_disk_robin() {
    const double R = std::sqrt(0.5);
    return R * R - std::log(R);
}

inline std::vector<cplx> random_disk_points(std::mt19937_64& g, std::size_t m, double r = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> z;
    for (std::size_t k = 0; k < m; ++k) z.push_back(std::polar(r * std::sqrt(u(g)), 2.0 * M_PI * u(g)));
    return z;
}

}  // namespace oracle
