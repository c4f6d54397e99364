#include "plurilab/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>

#include "plurilab/error.hpp"
#include "plurilab/fekete.hpp"
#include "plurilab/kernels.hpp"
#include "plurilab/simplex.hpp"
#include "plurilab/vdm.hpp"

namespace plurilab {

namespace {

struct Sampled {
    std::vector<cplx> f;               // w^a z^alpha per point
    std::vector<std::vector<cplx>> g;  // w^a e_j per lower monomial j, per point
    std::vector<std::size_t> pts;      // points with w > 0
};

Sampled sample(const CandidateSet& S, const MultiIndex& alpha, const std::vector<MultiIndex>& lower,
               std::span<const double> q, int a) {
    Sampled s;
    std::vector<MultiIndex> all = lower;
    all.push_back(alpha);
    const MultiIndexBasis b(S.dimension(), a, all);
    std::vector<cplx> v(all.size());
    s.g.resize(lower.size());
    for (std::size_t k = 0; k < S.size(); ++k) {
        double w = 1.0;
        if (!q.empty()) {
            if (std::isinf(q[k])) continue;
            w = std::exp(-a * q[k]);
        }
        b.evaluate(S.point(k), v);
        s.pts.push_back(k);
        s.f.push_back(w * v.back());
        for (std::size_t j = 0; j < lower.size(); ++j) s.g[j].push_back(w * v[j]);
    }
    return s;
}

std::vector<double> abs_values(const Sampled& s, std::span<const cplx> c) {
    std::vector<double> out(s.f.size());
    for (std::size_t k = 0; k < s.f.size(); ++k) {
        cplx p = s.f[k];
        for (std::size_t j = 0; j < c.size(); ++j) p += c[j] * s.g[j][k];
        out[k] = std::abs(p);
    }
    return out;
}

cplx value_at(const Sampled& s, std::span<const cplx> c, std::size_t k) {
    cplx p = s.f[k];
    for (std::size_t j = 0; j < c.size(); ++j) p += c[j] * s.g[j][k];
    return p;
}

}  // namespace

std::string to_string(ChebClass c) {
    switch (c) {
        case ChebClass::plain: return "plain";
        case ChebClass::homogeneous: return "homogeneous";
        case ChebClass::weighted: return "weighted";
    }
    return "?";
}

ChebClass parse_cheb_class(const std::string& s) {
    if (s == "plain") return ChebClass::plain;
    if (s == "homogeneous") return ChebClass::homogeneous;
    if (s == "weighted") return ChebClass::weighted;
    throw InvalidInput("unknown Chebyshev class '" + s + "'");
}

double facet_error_bound(int facets) { return 1.0 / std::cos(std::numbers::pi / facets); }

bool conjugation_symmetric(const CandidateSet& S, std::span<const double> q) {
    const int d = S.dimension();
    const std::size_t M = S.size();
    std::vector<std::size_t> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return S.point(i)[0].real() < S.point(j)[0].real(); });
    const double tol = CandidateSet::duplicate_tolerance;
    for (std::size_t k = 0; k < M; ++k) {
        const auto p = S.point(k);
        const double re = p[0].real();
        auto lo = std::lower_bound(order.begin(), order.end(), re - tol,
                                   [&](std::size_t i, double v) { return S.point(i)[0].real() < v; });
        bool found = false;
        for (auto it = lo; it != order.end() && S.point(*it)[0].real() <= re + tol; ++it) {
            const auto r = S.point(*it);
            double dist = 0.0;
            for (int c = 0; c < d; ++c) dist += std::norm(r[static_cast<std::size_t>(c)] - std::conj(p[static_cast<std::size_t>(c)]));
            if (std::sqrt(dist) > tol) continue;
            if (!q.empty() && !(q[*it] == q[k] || std::abs(q[*it] - q[k]) <= 1e-12 * std::max(1.0, std::abs(q[k]))))
                return false;
            found = true;
            break;
        }
        if (!found) return false;
    }
    return true;
}

ChebyshevRecord chebyshev_constant(const CandidateSet& S, const MultiIndex& alpha, ChebClass cls,
                                   std::span<const double> qvals, const ChebyshevOptions& opt) {
    const int d = S.dimension();
    if (static_cast<int>(alpha.size()) != d) throw InvalidInput("multi-index has the wrong dimension");
    const int a = total_degree(alpha);
    if (a < 1) throw InvalidInput("Chebyshev constants need |alpha| >= 1");
    if (cls == ChebClass::weighted && qvals.size() != S.size())
        throw InvalidInput("weighted Chebyshev constants need one Q value per point");
    if (opt.facets < 3) throw InvalidInput("at least 3 facets required");
    check_degree_cap(a, d);

    ChebyshevRecord rec;
    rec.alpha = alpha;
    rec.cls = cls;
    rec.facets = opt.facets;
    const auto basis = cls == ChebClass::homogeneous ? enumerate_homogeneous_basis(a, d) : enumerate_basis(a, d);
    const auto pos = basis.find(alpha);
    for (std::ptrdiff_t j = 0; j < pos; ++j) rec.lower.push_back(basis[static_cast<std::size_t>(j)]);

    const std::span<const double> q = cls == ChebClass::weighted ? qvals : std::span<const double>{};
    const Sampled s = sample(S, alpha, rec.lower, q, a);
    if (s.pts.empty()) throw InvalidInput("weight vanishes on every candidate");

    const std::size_t J = rec.lower.size();
    rec.coefficients.assign(J, cplx(0.0));
    {
        const auto v = abs_values(s, rec.coefficients);
        rec.value = *std::max_element(v.begin(), v.end());
    }
    if (J == 0) {
        rec.lower_bound = rec.value;
        rec.tau = std::pow(rec.value, 1.0 / a);
        return rec;
    }

    rec.real_coefficients = conjugation_symmetric(S, q);
    const std::size_t nvar = rec.real_coefficients ? J : 2 * J;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nvar + 1));
    rhs(0) = 1.0;
    SimplexLP lp(rhs);

    // Facet (k, phi): Re(e^{-i phi} p(z_k)) <= s, stored as the dual column (1, -grad) with cost Re(e^{-i phi} f_k).
    auto add_facet = [&](std::size_t k, double phi) {
        const cplx h = std::polar(1.0, -phi);
        Eigen::VectorXd col(static_cast<Eigen::Index>(nvar + 1));
        col(0) = 1.0;
        for (std::size_t j = 0; j < J; ++j) {
            const cplx t = h * s.g[j][k];
            col(static_cast<Eigen::Index>(1 + j)) = -t.real();
            if (!rec.real_coefficients) col(static_cast<Eigen::Index>(1 + J + j)) = t.imag();
        }
        lp.add_column(col, (h * s.f[k]).real());
    };
    for (std::size_t k = 0; k < s.f.size(); ++k)
        for (int t = 0; t < opt.facets; ++t) add_facet(k, 2.0 * std::numbers::pi * t / opt.facets);

    double bound = 0.0;
    std::vector<cplx> c(J);
    for (int round = 0; round < opt.max_rounds; ++round) {
        const auto st = lp.solve();
        if (st != SimplexLP::Status::optimal)
            throw Error("Chebyshev LP did not reach an optimum (status " + std::to_string(static_cast<int>(st)) + ")");
        ++rec.rounds;
        const auto& y = lp.duals();
        bound = std::max(bound, y(0));
        for (std::size_t j = 0; j < J; ++j)
            c[j] = rec.real_coefficients ? cplx(y(static_cast<Eigen::Index>(1 + j)), 0.0)
                                         : cplx(y(static_cast<Eigen::Index>(1 + j)), y(static_cast<Eigen::Index>(1 + J + j)));
        const auto v = abs_values(s, c);
        const double Y = *std::max_element(v.begin(), v.end());
        if (Y < rec.value) {
            rec.value = Y;
            rec.coefficients = c;
        }
        if ((rec.value - bound) <= opt.rel_gap * rec.value) break;

        // Cut at the phase of the worst violators.
        std::vector<std::size_t> viol;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] > y(0) * (1.0 + 1e-13)) viol.push_back(k);
        if (viol.empty()) break;
        std::stable_sort(viol.begin(), viol.end(), [&](auto i, auto j) { return v[i] > v[j]; });
        if (viol.size() > opt.cuts_per_round) viol.resize(opt.cuts_per_round);
        for (auto k : viol) {
            add_facet(k, std::arg(value_at(s, c, k)));
            ++rec.cuts;
        }
    }
    rec.lower_bound = std::min(bound, rec.value);
    rec.tau = std::pow(rec.value, 1.0 / a);
    return rec;
}

double chebyshev_norm(const CandidateSet& S, const ChebyshevRecord& rec, std::span<const double> qvals) {
    const int a = total_degree(rec.alpha);
    const std::span<const double> q = rec.cls == ChebClass::weighted ? qvals : std::span<const double>{};
    const Sampled s = sample(S, rec.alpha, rec.lower, q, a);
    const auto v = abs_values(s, rec.coefficients);
    return *std::max_element(v.begin(), v.end());
}

std::vector<SubmultiplicativityViolation> submultiplicativity_audit(std::span<const ChebyshevRecord> records,
                                                                    double rel_tol) {
    std::map<std::pair<ChebClass, MultiIndex>, double> table;
    for (const auto& r : records) table[{r.cls, r.alpha}] = r.value;
    std::vector<SubmultiplicativityViolation> out;
    for (std::size_t i = 0; i < records.size(); ++i)
        for (std::size_t j = i; j < records.size(); ++j) {
            const auto& A = records[i];
            const auto& B = records[j];
            if (A.cls != B.cls || A.alpha.size() != B.alpha.size()) continue;
            MultiIndex sum(A.alpha.size());
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = A.alpha[k] + B.alpha[k];
            const auto it = table.find({A.cls, sum});
            if (it == table.end()) continue;
            const double rhs = A.value * B.value;
            if (it->second > rhs * (1.0 + rel_tol)) out.push_back({A.alpha, B.alpha, it->second, rhs});
        }
    return out;
}

std::vector<ChebyshevRecord> degree_records(const CandidateSet& S, int n, ChebClass cls,
                                            std::span<const double> qvals, const ChebyshevOptions& opt) {
    const auto hb = enumerate_homogeneous_basis(n, S.dimension());
    std::vector<ChebyshevRecord> out(hb.size());
    std::vector<std::string> errors(hb.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < hb.size(); ++i) {
        try {
            out[i] = chebyshev_constant(S, hb[i], cls, qvals, opt);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);
    return out;
}

double tau_geometric_mean(std::span<const ChebyshevRecord> recs) {
    if (recs.empty()) throw InvalidInput("no records");
    double s = 0.0;
    for (const auto& r : recs) s += std::log(r.tau);
    return std::exp(s / static_cast<double>(recs.size()));
}

double tau_geometric_mean(const CandidateSet& S, std::span<const double> qvals, ChebClass cls, int n,
                          const ChebyshevOptions& opt) {
    const auto recs = degree_records(S, n, cls, qvals, opt);
    return tau_geometric_mean(recs);
}

double chebyshev_diameter(std::span<const ChebyshevRecord> recs, int n, int d) {
    const auto counts = dimension_counts(n, d);
    double s = 0.0;
    std::size_t used = 0;
    for (const auto& r : recs) {
        const int a = total_degree(r.alpha);
        if (a < 1 || a > n) continue;
        s += std::log(r.value);
        ++used;
    }
    if (used != counts.m - 1) throw InvalidInput("need one record for every 1 <= |alpha| <= n");
    return std::exp(s / static_cast<double>(counts.l));
}

LiftedSet homogeneous_lift(const CandidateSet& S, std::span<const double> qvals, int m_t) {
    if (m_t < 1) throw InvalidInput("phase resolution must be >= 1");
    if (qvals.size() != S.size()) throw InvalidInput("one Q value per point required");
    const int d = S.dimension();
    std::vector<cplx> coords;
    std::vector<std::size_t> base;
    std::size_t dropped = 0;
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (std::isinf(qvals[k])) {
            ++dropped;
            continue;
        }
        const double w = std::exp(-qvals[k]);
        const auto lam = S.point(k);
        for (int j = 0; j < m_t; ++j) {
            const cplx t = std::polar(w, 2.0 * std::numbers::pi * j / m_t);
            coords.push_back(t);
            for (int c = 0; c < d; ++c) coords.push_back(t * lam[static_cast<std::size_t>(c)]);
            base.push_back(k);
        }
    }
    if (base.empty()) throw InvalidInput("weight vanishes on every point; lift is empty");
    return {CandidateSet(d + 1, std::move(coords), std::nullopt, Geometry::custom), std::move(base), dropped};
}

Eigen::MatrixXcd homogeneous_vandermonde(const CandidateSet& S, int n) {
    return kernels::monomial_matrix(enumerate_homogeneous_basis(n, S.dimension()), S, {});
}

double LiftReport::max_rel_gap() const {
    double g = 0.0;
    for (const auto& r : rows) g = std::max(g, r.rel_gap);
    return g;
}

LiftReport lift_identity_check(const CandidateSet& S, std::span<const double> qvals, int n_max, int m_t,
                               bool exhaustive) {
    if (n_max < 1) throw InvalidInput("n_max must be >= 1");
    const int d = S.dimension();
    const auto lift = homogeneous_lift(S, qvals, m_t);
    LiftReport rep;
    rep.exhaustive = exhaustive;
    rep.dropped = lift.dropped;
    for (int n = 1; n <= n_max; ++n) {
        const auto A = weighted_vandermonde(S, n, qvals);
        const auto H = homogeneous_vandermonde(lift.set, n);
        auto pick = [&](const Eigen::MatrixXcd& X) {
            return exhaustive ? exhaustive_select(X) : exchange_select(X, greedy_select(X), 50).indices;
        };
        LiftRow row;
        row.degree = n;
        row.weighted_log_vdm = log_abs_det_columns(A, pick(A));
        row.homogeneous_log_vdm = log_abs_det_columns(H, pick(H));
        const double e = diameter_exponent(d, n);
        row.weighted_delta = std::exp(e * row.weighted_log_vdm);
        row.lifted_delta = std::exp(e * row.homogeneous_log_vdm);
        row.rel_gap = std::abs(row.lifted_delta - row.weighted_delta) / row.weighted_delta;
        rep.rows.push_back(row);
    }
    return rep;
}

void write_records_csv(std::ostream& os, std::span<const ChebyshevRecord> records) {
    const auto old = os.precision(17);
    os << "alpha,class,Y,tau\n";
    for (const auto& r : records) {
        for (std::size_t k = 0; k < r.alpha.size(); ++k) os << (k ? ";" : "") << r.alpha[k];
        os << ',' << to_string(r.cls) << ',' << r.value << ',' << r.tau << '\n';
    }
    os.precision(old);
}

}  // namespace plurilab
