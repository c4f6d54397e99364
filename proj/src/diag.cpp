#include "plurilab/diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "plurilab/error.hpp"

namespace plurilab {

namespace {

struct PathPoint {
    double f;
    double df;
};

PathPoint path_value(const DiscreteMeasure& mu, std::span<const double> q, std::span<const double> u, int n,
                     double t, bool derivative) {
    std::vector<double> qt(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) qt[k] = q[k] + t * u[k];
    GramSystem sys = [&] {
        try {
            return gram_matrix(mu, qt, n);
        } catch (const DegenerateError& e) {
            throw DegenerateError(std::string(e.what()) + " at t = " + std::to_string(t), e.numerical_rank(),
                                  e.dimension());
        }
    }();
    const double d = sys.dimension();
    const double N = static_cast<double>(sys.size());
    PathPoint p{-normalized_log_det(sys), 0.0};
    if (derivative) {
        const auto B = bergman_function(sys, mu.set(), qt);
        double s = 0.0;
        for (std::size_t k = 0; k < B.size(); ++k)
            if (mu.mass(k) > 0) s += mu.mass(k) * u[k] * B[k];
        p.df = (d + 1.0) / (d * N) * s;
    }
    return p;
}

// Radial CDF sup distance between a discrete measure and a reference CDF
// given by its values and left limits.
template <class F, class Fm>
double radial_sup(const DiscreteMeasure& a, std::vector<double> extra_points, F&& ref, Fm&& ref_left) {
    const auto& S = a.set();
    std::vector<std::pair<double, double>> rm;
    for (std::size_t k = 0; k < S.size(); ++k)
        if (a.mass(k) > 0) rm.emplace_back(std::abs(S.point(k)[0]), a.mass(k));
    // Snap radii onto reference jump points so that rounding in r e^{i theta} does not count.
    for (auto& [r, m] : rm)
        for (double e : extra_points)
            if (std::abs(r - e) <= 1e-12 * std::max(1.0, e)) r = e;
    std::sort(rm.begin(), rm.end());
    std::vector<double> pts = std::move(extra_points);
    for (auto& p : rm) pts.push_back(p.first);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double sup = 0.0, cum = 0.0;
    std::size_t i = 0;
    for (double r : pts) {
        const double before = cum;
        while (i < rm.size() && rm[i].first <= r) cum += rm[i++].second;
        sup = std::max({sup, std::abs(before - ref_left(r)), std::abs(cum - ref(r))});
    }
    return sup;
}

std::vector<std::pair<MultiIndex, MultiIndex>> moment_pairs(int d, int K) {
    const auto b = enumerate_basis(K, d);
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    for (const auto& al : b.indices())
        for (const auto& be : b.indices()) out.emplace_back(al, be);
    return out;
}

cplx discrete_moment(const DiscreteMeasure& mu, const MultiIndex& al, const MultiIndex& be) {
    const auto& S = mu.set();
    cplx s = 0.0;
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (mu.mass(k) == 0) continue;
        const auto z = S.point(k);
        cplx v = 1.0;
        for (std::size_t c = 0; c < z.size(); ++c) v *= std::pow(z[c], al[c]) * std::pow(std::conj(z[c]), be[c]);
        s += mu.mass(k) * v;
    }
    return s;
}

}  // namespace

double PathReport::max_rel_derivative_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double scale = std::max({std::abs(analytic[i]), std::abs(finite_diff[i]), 1e-300});
        const double err = std::abs(analytic[i] - finite_diff[i]);
        e = std::max(e, err == 0.0 ? 0.0 : err / scale);
    }
    return e;
}

double PathReport::max_second_difference() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : second_diff) m = std::max(m, v);
    return m;
}

std::vector<double> default_t_grid(int points, double lo, double hi) {
    if (points < 2 || !(hi > lo)) throw InvalidInput("t grid needs >= 2 points and lo < hi");
    std::vector<double> t(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return t;
}

PathReport f_n_path(const DiscreteMeasure& mu, std::span<const double> q, std::span<const double> u, int n,
                    std::span<const double> t_grid, double h, std::string label) {
    const std::size_t M = mu.set().size();
    if (q.size() != M || u.size() != M) throw InvalidInput("q and u need one value per point");
    if (t_grid.empty()) throw InvalidInput("empty t grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw InvalidInput("t grid must be strictly increasing");
    for (std::size_t k = 0; k < M; ++k)
        if (mu.mass(k) > 0 && !std::isfinite(u[k])) throw InvalidInput("u must be finite on the support");
    if (!(h > 0)) throw InvalidInput("step must be positive");

    PathReport r;
    r.degree = n;
    r.perturbation = std::move(label);
    r.h = h;
    r.t.assign(t_grid.begin(), t_grid.end());
    const std::size_t T = t_grid.size();
    r.f.resize(T);
    r.analytic.resize(T);
    r.finite_diff.resize(T);
    std::vector<std::string> errors(T);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < T; ++i) {
        try {
            const auto p = path_value(mu, q, u, n, t_grid[i], true);
            r.f[i] = p.f;
            r.analytic[i] = p.df;
            const double fp = path_value(mu, q, u, n, t_grid[i] + h, false).f;
            const double fm = path_value(mu, q, u, n, t_grid[i] - h, false).f;
            r.finite_diff[i] = (fp - fm) / (2.0 * h);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw DegenerateError(e, 0, 0);
    for (std::size_t i = 1; i + 1 < T; ++i) {
        const double h0 = r.t[i] - r.t[i - 1], h1 = r.t[i + 1] - r.t[i];
        // Second divided difference, exact for quadratics on nonuniform grids.
        r.second_diff.push_back(2.0 * ((r.f[i + 1] - r.f[i]) / h1 - (r.f[i] - r.f[i - 1]) / h0) / (h0 + h1));
    }
    return r;
}

double concavity_check(const PathReport& r) {
    if (r.t.size() < 3) throw InvalidInput("concavity check needs at least 3 grid points");
    return r.max_second_difference();
}

WeakStarDistance weak_star_distance(const DiscreteMeasure& a, const DiscreteMeasure& b, int max_moment) {
    const int d = a.set().dimension();
    if (b.set().dimension() != d) throw InvalidInput("measures live in different dimensions");
    if (max_moment < 0) throw InvalidInput("max_moment must be >= 0");
    WeakStarDistance out;
    out.max_moment = max_moment;
    for (const auto& [al, be] : moment_pairs(d, max_moment))
        out.moment = std::max(out.moment, std::abs(discrete_moment(a, al, be) - discrete_moment(b, al, be)));
    if (d == 1) {
        out.has_radial = true;
        std::vector<std::pair<double, double>> rb;
        for (std::size_t k = 0; k < b.set().size(); ++k)
            if (b.mass(k) > 0) rb.emplace_back(std::abs(b.set().point(k)[0]), b.mass(k));
        std::sort(rb.begin(), rb.end());
        std::vector<double> jumps;
        for (auto& p : rb) jumps.push_back(p.first);
        auto cdf = [&](double r) {
            double s = 0.0;
            for (auto& p : rb)
                if (p.first <= r) s += p.second;
            return s;
        };
        auto cdf_left = [&](double r) {
            double s = 0.0;
            for (auto& p : rb)
                if (p.first < r) s += p.second;
            return s;
        };
        out.radial_cdf = radial_sup(a, jumps, cdf, cdf_left);
    }
    return out;
}

cplx model_moment(const ExtremalModel& ref, const MultiIndex& al, const MultiIndex& be) {
    if (al != be) return 0.0;
    if (ref.kind() == ExtremalModel::Kind::weighted_disk) {
        const int a = al[0];
        return std::pow(0.5, a) / (a + 1.0);
    }
    double v = 1.0;
    for (std::size_t k = 0; k < al.size(); ++k) v *= std::pow(ref.radii()[k], 2 * al[k]);
    return v;
}

WeakStarDistance weak_star_distance(const DiscreteMeasure& a, const ExtremalModel& ref, int max_moment) {
    const int d = a.set().dimension();
    if (ref.dimension() != d) throw InvalidInput("measure and model live in different dimensions");
    if (max_moment < 0) throw InvalidInput("max_moment must be >= 0");
    WeakStarDistance out;
    out.max_moment = max_moment;
    for (const auto& [al, be] : moment_pairs(d, max_moment))
        out.moment = std::max(out.moment, std::abs(discrete_moment(a, al, be) - model_moment(ref, al, be)));
    if (d == 1) {
        out.has_radial = true;
        if (ref.kind() == ExtremalModel::Kind::weighted_disk) {
            auto F = [](double r) { return std::min(2.0 * r * r, 1.0); };
            out.radial_cdf = radial_sup(a, {}, F, F);
        } else {
            const double r0 = ref.radii()[0];
            out.radial_cdf = radial_sup(
                a, {r0}, [&](double r) { return r >= r0 ? 1.0 : 0.0; }, [&](double r) { return r > r0 ? 1.0 : 0.0; });
        }
    }
    return out;
}

BergmanMeasure bergman_measure(const DiscreteMeasure& mu, std::span<const double> q, int n) {
    const auto sys = gram_matrix(mu, q, n);
    const auto B = bergman_function(sys, mu.set(), q);
    const auto N = static_cast<double>(sys.size());
    std::vector<double> m(B.size());
    double total = 0.0;
    for (std::size_t k = 0; k < B.size(); ++k) {
        m[k] = mu.mass(k) * B[k] / N;
        total += m[k];
    }
    for (auto& x : m) x /= total;
    return {DiscreteMeasure(mu.set_ptr(), std::move(m)), total};
}

}  // namespace plurilab
