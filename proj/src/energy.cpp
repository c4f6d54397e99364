#include "plurilab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "plurilab/error.hpp"

namespace plurilab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_polydisk_type(const ExtremalModel& m) {
    return m.kind() != ExtremalModel::Kind::weighted_disk;
}

double eval1(const ExtremalModel& m, cplx z) { return eval_extremal(m, std::span<const cplx>(&z, 1)); }

// int f d nu for the d = 1 equilibrium measure of m, nu of mass 2 pi.
template <class F>
double integrate_measure(const ExtremalModel& m, F&& f, int res, std::span<const double> kinks) {
    if (m.kind() != ExtremalModel::Kind::weighted_disk) {
        const double r = m.radii()[0];
        double s = 0.0;
        for (int k = 0; k < res; ++k) s += f(std::polar(r, two_pi * k / res));
        return two_pi * s / res;
    }
    // Density 4 (mass 2 pi) on |z| <= R, polar Gauss-Legendre x trapezoid, split at kinks.
    const double R = ExtremalModel::weighted_support;
    std::vector<double> br{0.0};
    for (double k : kinks)
        if (k > 0 && k < R) br.push_back(k);
    br.push_back(R);
    std::sort(br.begin(), br.end());
    std::vector<double> x, w;
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < br.size(); ++s) {
        if (br[s + 1] - br[s] <= 0) continue;
        gauss_legendre(res, br[s], br[s + 1], x, w);
        for (std::size_t i = 0; i < x.size(); ++i) {
            double ang = 0.0;
            for (int k = 0; k < res; ++k) ang += f(std::polar(x[i], two_pi * k / res));
            total += w[i] * x[i] * 4.0 * (two_pi * ang / res);
        }
    }
    return total;
}

}  // namespace

ExtremalModel ExtremalModel::disk(double r) {
    if (!(r > 0) || !std::isfinite(r)) throw InvalidInput("disk radius must be positive");
    ExtremalModel m;
    m.kind_ = Kind::disk;
    m.radii_ = {r};
    return m;
}

ExtremalModel ExtremalModel::weighted_disk() {
    ExtremalModel m;
    m.kind_ = Kind::weighted_disk;
    m.radii_ = {1.0};
    return m;
}

ExtremalModel ExtremalModel::torus(int d) {
    if (d < 1) throw InvalidInput("dimension must be >= 1");
    ExtremalModel m;
    m.kind_ = Kind::torus;
    m.radii_.assign(static_cast<std::size_t>(d), 1.0);
    return m;
}

ExtremalModel ExtremalModel::polydisk(std::vector<double> radii) {
    if (radii.empty()) throw InvalidInput("polydisk needs at least one radius");
    for (double r : radii)
        if (!(r > 0) || !std::isfinite(r)) throw InvalidInput("polydisk radii must be positive");
    ExtremalModel m;
    m.kind_ = Kind::polydisk;
    m.radii_ = std::move(radii);
    return m;
}

std::string ExtremalModel::name() const {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') s.pop_back();
        return s;
    };
    switch (kind_) {
        case Kind::disk: return "disk(" + num(radii_[0]) + ")";
        case Kind::weighted_disk: return "weighted_disk_quadratic";
        case Kind::torus: return "torus(" + std::to_string(dimension()) + ")";
        case Kind::polydisk: {
            std::string s = "polydisk(";
            for (std::size_t k = 0; k < radii_.size(); ++k) s += (k ? "," : "") + num(radii_[k]);
            return s + ")";
        }
    }
    return "?";
}

double ExtremalModel::weight(std::span<const cplx> z) const {
    if (kind_ != Kind::weighted_disk) return 0.0;
    return std::norm(z[0]);
}

AdmissibleWeight ExtremalModel::admissible_weight() const {
    return kind_ == Kind::weighted_disk ? AdmissibleWeight::quadratic(1.0) : AdmissibleWeight::zero();
}

double ExtremalModel::support_radius() const {
    if (dimension() != 1) throw UnsupportedError("support radius is defined for d = 1 models");
    return kind_ == Kind::weighted_disk ? weighted_support : radii_[0];
}

GeometrySpec ExtremalModel::geometry(int resolution, int radial_resolution, int angular_resolution) const {
    GeometrySpec g;
    g.dimension = dimension();
    g.resolution = resolution;
    switch (kind_) {
        case Kind::disk:
        case Kind::weighted_disk:
            g.radius = radii_[0];
            if (radial_resolution > 0) {
                g.kind = Geometry::disk;
                g.radial_resolution = radial_resolution;
                g.angular_resolution = angular_resolution;
            } else {
                g.kind = Geometry::circle;
            }
            break;
        case Kind::torus: g.kind = Geometry::torus; break;
        case Kind::polydisk:
            g.kind = Geometry::polydisk;
            g.radii = radii_;
            break;
    }
    return g;
}

double eval_extremal(const ExtremalModel& m, std::span<const cplx> z) {
    if (static_cast<int>(z.size()) != m.dimension()) throw InvalidInput("point dimension does not match the model");
    if (m.kind() == ExtremalModel::Kind::weighted_disk) {
        const double r = std::abs(z[0]);
        if (r <= ExtremalModel::weighted_support) return r * r;
        return std::log(r) + 0.5 + 0.5 * std::log(2.0);
    }
    double v = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) v = std::max(v, std::log(std::abs(z[k]) / m.radii()[k]));
    return v;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw InvalidInput("Gauss-Legendre needs at least one node");
    // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    const double h = 0.5 * (b - a), c = 0.5 * (b + a);
    for (int k = 0; k < n; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        x[static_cast<std::size_t>(k)] = c + h * es.eigenvalues()(k);
        w[static_cast<std::size_t>(k)] = 2.0 * v0 * v0 * h;
    }
}

std::vector<double> mixed_measure_support(const ExtremalModel& u, const ExtremalModel& v, int j) {
    if (!is_polydisk_type(u) || !is_polydisk_type(v) || u.dimension() != v.dimension())
        throw UnsupportedError("mixed measures are closed-form only for polydisk pairs of equal dimension");
    const int d = u.dimension();
    if (j < 0 || j > d) throw InvalidInput("mixed-measure index out of range");
    std::vector<double> a(static_cast<std::size_t>(d) + 1, 0.0), b(a);
    for (int k = 0; k < d; ++k) {
        a[static_cast<std::size_t>(k) + 1] = std::log(u.radii()[static_cast<std::size_t>(k)]);
        b[static_cast<std::size_t>(k) + 1] = std::log(v.radii()[static_cast<std::size_t>(k)]);
    }
    // u = max(0, x_k - a_k), v = max(0, x_k - b_k) in log coordinates; term 0 is the constant.
    // The measure sits where j+1 terms of u and d-j+1 terms of v tie, sharing one index.
    const int T = d + 1;
    const double tol = 1e-12;
    for (unsigned fmask = 0; fmask < (1u << T); ++fmask) {
        if (std::popcount(fmask) != j + 1) continue;
        for (int c = 0; c < T; ++c) {
            if (!(fmask >> c & 1u)) continue;
            const unsigned gmask = (((1u << T) - 1) & ~fmask) | (1u << c);
            if (std::popcount(gmask) != d - j + 1) continue;
            std::vector<double> x(static_cast<std::size_t>(T), 0.0);  // x[0] unused
            double mu = 0.0, mv = 0.0;
            if (c == 0) {
                mu = mv = 0.0;
            } else if (fmask & 1u) {
                mu = 0.0;
                mv = a[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)];
            } else {
                mv = 0.0;
                mu = b[static_cast<std::size_t>(c)] - a[static_cast<std::size_t>(c)];
            }
            for (int k = 1; k < T; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                x[uk] = (fmask >> k & 1u) ? a[uk] + mu : b[uk] + mv;
            }
            bool ok = (fmask & 1u) ? std::abs(mu) <= tol : 0.0 <= mu + tol;
            ok = ok && ((gmask & 1u) ? std::abs(mv) <= tol : 0.0 <= mv + tol);
            for (int k = 1; k < T && ok; ++k) {
                const auto uk = static_cast<std::size_t>(k);
                const double tu = x[uk] - a[uk], tv = x[uk] - b[uk];
                ok = ((fmask >> k & 1u) ? std::abs(tu - mu) <= tol : tu <= mu + tol) &&
                     ((gmask >> k & 1u) ? std::abs(tv - mv) <= tol : tv <= mv + tol);
            }
            if (ok) return {x.begin() + 1, x.end()};
        }
    }
    throw Error("no mixed-measure support found");
}

double energy(const ExtremalModel& u, const ExtremalModel& v, int resolution) {
    if (resolution < 1) throw InvalidInput("quadrature resolution must be >= 1");
    if (u.dimension() != v.dimension()) throw UnsupportedError("energy needs models of equal dimension");
    const int d = u.dimension();
    if (d == 1) {
        const double kinks[2] = {u.support_radius(), v.support_radius()};
        auto diff = [&](cplx z) { return eval1(u, z) - eval1(v, z); };
        return integrate_measure(u, diff, resolution, kinks) + integrate_measure(v, diff, resolution, kinks);
    }
    if (!is_polydisk_type(u) || !is_polydisk_type(v))
        throw UnsupportedError("energy for d >= 2 supports torus/polydisk pairs only");
    // Each mixed measure is (2 pi)^d times Haar on one torus where u - v is constant;
    // the trapezoid rule on that torus is exact, so one node per direction suffices.
    const double mass = std::pow(two_pi, d);
    double e = 0.0;
    std::vector<cplx> z(static_cast<std::size_t>(d));
    for (int j = 0; j <= d; ++j) {
        const auto x = mixed_measure_support(u, v, j);
        for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::exp(x[static_cast<std::size_t>(k)]);
        e += mass * (eval_extremal(u, z) - eval_extremal(v, z));
    }
    return e;
}

double weighted_mass_integral(const ExtremalModel& m, int resolution) {
    if (m.dimension() != 1) throw UnsupportedError("weighted mass integral is implemented for d = 1");
    if (m.kind() != ExtremalModel::Kind::weighted_disk) return 0.0;
    const double kinks[1] = {ExtremalModel::weighted_support};
    return integrate_measure(m, [&](cplx z) { return m.weight(std::span<const cplx>(&z, 1)); }, resolution, kinks) /
           two_pi;
}

double robin_constant(const ExtremalModel& m) {
    if (m.dimension() != 1) throw UnsupportedError("Robin constants are defined here for d = 1 only");
    if (m.kind() == ExtremalModel::Kind::weighted_disk) return 0.5 + 0.5 * std::log(2.0);
    return -std::log(m.radii()[0]);
}

RumelyReport rumely_check(const ExtremalModel& model, const CandidateSet& S, int n_max, int quad_resolution,
                          int max_sweeps) {
    if (S.dimension() != model.dimension()) throw InvalidInput("candidate set and model dimensions differ");
    const int d = model.dimension();
    const auto q = eval_weight(model.admissible_weight(), S);
    RumelyReport rep;
    rep.model = model.name();
    rep.n_max = n_max;
    rep.rhs = energy(model, ExtremalModel::torus(d), quad_resolution) / (d * std::pow(two_pi, d));
    rep.delta_exact = std::exp(-rep.rhs);
    rep.sequence = diameter_sequence(S, q, n_max, 1, max_sweeps);
    rep.lhs = -rep.sequence.extrapolation.log_limit;
    rep.delta_limit = std::exp(-rep.lhs);
    rep.gap = std::abs(rep.lhs - rep.rhs);
    rep.delta_at_n_max = rep.sequence.delta.back();
    rep.rel_gap_at_n_max = std::abs(rep.delta_at_n_max - rep.delta_exact) / rep.delta_exact;
    rep.monotone = rep.sequence.monotone_decreasing;
    return rep;
}

DwReport dw_vs_deltaw_check(const ExtremalModel& model, double delta_estimate, int quad_resolution) {
    if (model.dimension() != 1) throw UnsupportedError("the d^w comparison is implemented for d = 1 models");
    DwReport r;
    r.model = model.name();
    // Appendix convention: equilibrium measure of mass 1.
    r.q_integral = weighted_mass_integral(model, quad_resolution);
    r.dw = std::exp(-robin_constant(model));
    r.product = std::exp(-r.q_integral) * r.dw;
    r.delta_closed = std::exp(-energy(model, ExtremalModel::disk(1.0), quad_resolution) / two_pi);
    r.closed_form_gap = std::abs(r.product - r.delta_closed);
    if (delta_estimate > 0) {
        r.delta_estimate = delta_estimate;
        r.estimate_rel_gap = std::abs(delta_estimate - r.delta_closed) / r.delta_closed;
    }
    return r;
}

}  // namespace plurilab
