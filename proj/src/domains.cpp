#include "plurilab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "plurilab/error.hpp"

namespace plurilab {

std::string to_string(Geometry g) {
    switch (g) {
        case Geometry::interval: return "interval";
        case Geometry::circle: return "circle";
        case Geometry::disk: return "disk";
        case Geometry::torus: return "torus";
        case Geometry::polydisk: return "polydisk";
        case Geometry::ball: return "ball";
        case Geometry::product: return "product";
        case Geometry::custom: return "custom";
    }
    return "custom";
}

CandidateSet::CandidateSet(int dimension, std::vector<cplx> coords,
                           std::optional<std::vector<double>> masses, Geometry tag)
    : dim_(dimension), coords_(std::move(coords)), masses_(std::move(masses)), tag_(tag) {
    if (dim_ < 1) throw InvalidInput("candidate set dimension must be >= 1");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw InvalidInput("coordinate count is not a multiple of the dimension");
    const std::size_t m = size();
    if (m == 0) throw InvalidInput("candidate set is empty");
    for (const auto& c : coords_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidInput("candidate point has a non-finite coordinate");

    if (masses_) {
        if (masses_->size() != m) throw InvalidInput("mass count differs from point count");
        double total = 0.0;
        for (double w : *masses_) {
            if (!(w >= 0.0)) throw InvalidInput("quadrature masses must be nonnegative");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("quadrature masses must sum to 1");
    }

    // Duplicate scan: sort by Re(z_1), then compare within a tolerance window.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return point(a)[0].real() < point(b)[0].real();
    });
    const double tol2 = duplicate_tolerance * duplicate_tolerance;
    for (std::size_t i = 0; i < m; ++i) {
        const auto p = point(order[i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto q = point(order[j]);
            if (q[0].real() - p[0].real() > duplicate_tolerance) break;
            double dist2 = 0.0;
            for (int k = 0; k < dim_; ++k) dist2 += std::norm(p[k] - q[k]);
            if (dist2 <= tol2) throw InvalidInput("duplicate candidate points");
        }
    }
}

const std::vector<double>& CandidateSet::masses() const {
    if (!masses_) throw InvalidInput("candidate set carries no quadrature masses");
    return *masses_;
}

CandidateSet CandidateSet::subset(std::span<const std::size_t> idx) const {
    std::vector<cplx> c;
    c.reserve(idx.size() * static_cast<std::size_t>(dim_));
    for (std::size_t i : idx) {
        if (i >= size()) throw InvalidInput("subset index out of range");
        auto p = point(i);
        c.insert(c.end(), p.begin(), p.end());
    }
    std::optional<std::vector<double>> m;
    if (masses_) {
        std::vector<double> w;
        for (std::size_t i : idx) w.push_back((*masses_)[i]);
        const double s = std::accumulate(w.begin(), w.end(), 0.0);
        if (s > 0) {
            for (auto& x : w) x /= s;
            m = std::move(w);
        }
    }
    return CandidateSet(dim_, std::move(c), std::move(m), tag_);
}

namespace {

std::vector<cplx> circle_points(double r, int m) {
    std::vector<cplx> pts(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) pts[k] = std::polar(r, 2.0 * std::numbers::pi * k / m);
    return pts;
}

CandidateSet product_of(const std::vector<CandidateSet>& sets, Geometry tag) {
    if (sets.empty()) throw InvalidInput("empty product");
    int dim = 0;
    std::size_t count = 1;
    bool all_masses = true;
    for (const auto& s : sets) {
        dim += s.dimension();
        count *= s.size();
        all_masses = all_masses && s.has_masses();
    }
    std::vector<cplx> coords;
    coords.reserve(count * static_cast<std::size_t>(dim));
    std::vector<double> masses;
    std::vector<std::size_t> idx(sets.size(), 0);
    for (std::size_t c = 0; c < count; ++c) {
        double w = 1.0;
        for (std::size_t f = 0; f < sets.size(); ++f) {
            auto p = sets[f].point(idx[f]);
            coords.insert(coords.end(), p.begin(), p.end());
            if (all_masses) w *= sets[f].masses()[idx[f]];
        }
        if (all_masses) masses.push_back(w);
        // odometer, last factor fastest
        for (std::size_t f = sets.size(); f-- > 0;) {
            if (++idx[f] < sets[f].size()) break;
            idx[f] = 0;
        }
    }
    std::optional<std::vector<double>> m;
    if (all_masses) {
        const double s = std::accumulate(masses.begin(), masses.end(), 0.0);
        for (auto& x : masses) x /= s;
        m = std::move(masses);
    }
    return CandidateSet(dim, std::move(coords), std::move(m), tag);
}

void require_resolution(int m) {
    if (m < 1) throw InvalidInput("resolution must be >= 1");
}

}  // namespace

CandidateSet build_set(const GeometrySpec& spec) {
    switch (spec.kind) {
        case Geometry::circle: {
            require_resolution(spec.resolution);
            if (!(spec.radius > 0)) throw InvalidInput("radius must be positive");
            const int m = spec.resolution;
            return CandidateSet(1, circle_points(spec.radius, m),
                                std::vector<double>(static_cast<std::size_t>(m), 1.0 / m),
                                Geometry::circle);
        }
        case Geometry::interval: {
            require_resolution(spec.resolution);
            if (!(spec.a < spec.b)) throw InvalidInput("interval requires a < b");
            const int m = spec.resolution;
            std::vector<cplx> pts(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) {
                double x;
                if (m == 1) {
                    x = 0.5 * (spec.a + spec.b);
                } else if (spec.rule == IntervalRule::equispaced) {
                    x = spec.a + (spec.b - spec.a) * k / (m - 1);
                } else {
                    const double c = std::cos(std::numbers::pi * k / (m - 1));
                    x = 0.5 * (spec.a + spec.b) + 0.5 * (spec.b - spec.a) * c;
                }
                pts[k] = x;
            }
            return CandidateSet(1, std::move(pts),
                                std::vector<double>(static_cast<std::size_t>(m), 1.0 / m),
                                Geometry::interval);
        }
        case Geometry::disk: {
            require_resolution(spec.radial_resolution);
            require_resolution(spec.angular_resolution);
            if (!(spec.radius > 0)) throw InvalidInput("radius must be positive");
            const int mr = spec.radial_resolution, mt = spec.angular_resolution;
            const double r = spec.radius, h = r / mr;
            std::vector<cplx> pts{0.0};
            std::vector<double> w{std::numbers::pi * 0.25 * h * h};
            for (int i = 1; i <= mr; ++i) {
                const double lo = (i - 0.5) * h, hi = std::min((i + 0.5) * h, r);
                const double ring = std::numbers::pi * (hi * hi - lo * lo) / mt;
                for (int k = 0; k < mt; ++k) {
                    pts.push_back(std::polar(i * h, 2.0 * std::numbers::pi * k / mt));
                    w.push_back(ring);
                }
            }
            const double s = std::accumulate(w.begin(), w.end(), 0.0);
            for (auto& x : w) x /= s;
            return CandidateSet(1, std::move(pts), std::move(w), Geometry::disk);
        }
        case Geometry::torus:
        case Geometry::polydisk: {
            require_resolution(spec.resolution);
            std::vector<double> radii = spec.radii;
            if (spec.kind == Geometry::torus || radii.empty()) {
                if (spec.dimension < 1) throw InvalidInput("dimension must be >= 1");
                radii.assign(static_cast<std::size_t>(spec.dimension),
                             spec.kind == Geometry::torus ? 1.0 : spec.radius);
            }
            std::vector<CandidateSet> factors;
            for (double r : radii) {
                if (!(r > 0)) throw InvalidInput("radius must be positive");
                factors.emplace_back(1, circle_points(r, spec.resolution),
                                     std::vector<double>(static_cast<std::size_t>(spec.resolution),
                                                         1.0 / spec.resolution),
                                     Geometry::circle);
            }
            return product_of(factors, spec.kind);
        }
        case Geometry::product: {
            if (spec.factors.empty()) throw InvalidInput("empty product");
            std::vector<CandidateSet> factors;
            for (const auto& f : spec.factors) factors.push_back(build_set(f));
            return product_of(factors, Geometry::product);
        }
        case Geometry::ball:
        case Geometry::custom:
            break;
    }
    throw InvalidInput("geometry '" + to_string(spec.kind) + "' has no builder; load it from CSV");
}

AdmissibleWeight AdmissibleWeight::zero() { return {}; }

AdmissibleWeight AdmissibleWeight::quadratic(double scale) {
    if (!std::isfinite(scale)) throw InvalidInput("quadratic weight scale must be finite");
    AdmissibleWeight w;
    w.kind_ = Kind::quadratic;
    w.scale_ = scale;
    return w;
}

AdmissibleWeight AdmissibleWeight::radial_table(std::vector<std::pair<double, double>> knots) {
    if (knots.empty()) throw InvalidInput("radial table needs at least one knot");
    std::sort(knots.begin(), knots.end());
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw InvalidInput("radial table radii must be distinct");
    AdmissibleWeight w;
    w.kind_ = Kind::radial_table;
    w.knots_ = std::move(knots);
    return w;
}

AdmissibleWeight AdmissibleWeight::grid(std::vector<double> values) {
    AdmissibleWeight w;
    w.kind_ = Kind::grid;
    w.grid_ = std::move(values);
    return w;
}

AdmissibleWeight AdmissibleWeight::custom(std::function<double(std::span<const cplx>)> fn) {
    if (!fn) throw InvalidInput("custom weight needs an evaluator");
    AdmissibleWeight w;
    w.kind_ = Kind::custom;
    w.fn_ = std::move(fn);
    return w;
}

double AdmissibleWeight::operator()(std::span<const cplx> z, std::size_t index) const {
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::quadratic: {
            double s = 0.0;
            for (const auto& c : z) s += std::norm(c);
            return scale_ * s;
        }
        case Kind::radial_table: {
            double r2 = 0.0;
            for (const auto& c : z) r2 += std::norm(c);
            const double r = std::sqrt(r2);
            if (r <= knots_.front().first) return knots_.front().second;
            if (r >= knots_.back().first) return knots_.back().second;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), r,
                                       [](double x, const auto& k) { return x < k.first; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double t = (r - lo.first) / (hi.first - lo.first);
            return lo.second + t * (hi.second - lo.second);
        }
        case Kind::grid:
            if (index >= grid_.size()) throw InvalidInput("grid weight index out of range");
            return grid_[index];
        case Kind::custom: return fn_(z);
    }
    return 0.0;
}

std::vector<double> eval_weight(const AdmissibleWeight& Q, const CandidateSet& S) {
    if (Q.kind() == AdmissibleWeight::Kind::grid && Q.grid_size() != S.size())
        throw InvalidInput("grid weight size differs from candidate set size");
    std::vector<double> q(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) {
        const double v = Q(S.point(i), i);
        if (std::isnan(v)) throw InvalidInput("weight evaluator returned NaN");
        if (v == -std::numeric_limits<double>::infinity())
            throw InvalidInput("weight evaluator returned -inf (w = +inf)");
        q[i] = v;
    }
    return q;
}

std::size_t count_positive_weight(std::span<const double> qvals) {
    return static_cast<std::size_t>(
        std::count_if(qvals.begin(), qvals.end(), [](double q) { return std::isfinite(q); }));
}

void require_nondegenerate_weight(std::span<const double> qvals, int n, int d) {
    const auto need = dimension_counts(n, d).m;
    if (count_positive_weight(qvals) < need)
        throw InvalidInput("weight vanishes on too many candidates: need w > 0 on at least " +
                           std::to_string(need) + " points");
}

void write_csv(std::ostream& os, const CandidateSet& S) {
    const int d = S.dimension();
    for (int k = 1; k <= d; ++k) os << (k > 1 ? "," : "") << "re_" << k << ",im_" << k;
    if (S.has_masses()) os << ",mass";
    os << '\n';
    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < S.size(); ++i) {
        line.str({});
        auto p = S.point(i);
        for (int k = 0; k < d; ++k) line << (k ? "," : "") << p[k].real() << ',' << p[k].imag();
        if (S.has_masses()) line << ',' << S.masses()[i];
        os << line.str() << '\n';
    }
}

CandidateSet read_csv(std::istream& is, Geometry tag) {
    std::string header;
    if (!std::getline(is, header)) throw InvalidInput("CSV is empty");
    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) {
            while (!c.empty() && (c.back() == '\r' || c.back() == ' ')) c.pop_back();
            cols.push_back(c);
        }
    }
    const bool has_mass = !cols.empty() && cols.back() == "mass";
    const std::size_t ncoord = cols.size() - (has_mass ? 1 : 0);
    if (ncoord == 0 || ncoord % 2 != 0) throw InvalidInput("CSV header must be re_1,im_1,...[,mass]");
    const int d = static_cast<int>(ncoord / 2);
    for (int k = 1; k <= d; ++k)
        if (cols[2 * (k - 1)] != "re_" + std::to_string(k) ||
            cols[2 * (k - 1) + 1] != "im_" + std::to_string(k))
            throw InvalidInput("CSV header must be re_1,im_1,...[,mass]");

    std::vector<cplx> coords;
    std::vector<double> masses;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InvalidInput("CSV cell is not a number: '" + cell + "'");
            }
        }
        if (vals.size() != cols.size()) throw InvalidInput("CSV row has wrong number of cells");
        for (int k = 0; k < d; ++k) coords.emplace_back(vals[2 * k], vals[2 * k + 1]);
        if (has_mass) masses.push_back(vals.back());
    }
    std::optional<std::vector<double>> m;
    if (has_mass) m = std::move(masses);
    return CandidateSet(d, std::move(coords), std::move(m), tag);
}

}  // namespace plurilab
