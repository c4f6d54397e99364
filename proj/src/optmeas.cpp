#include "plurilab/optmeas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plurilab/error.hpp"
#include "plurilab/fekete.hpp"
#include "plurilab/kernels.hpp"

namespace plurilab {

namespace {

struct State {
    GramSystem sys;
    std::vector<double> B;
};

State evaluate(const Eigen::MatrixXcd& V, const MultiIndexBasis& basis, int n, std::span<const double> m) {
    State s{factor_gram(kernels::gram(V, m), basis, n), {}};
    s.B = kernels::solve_column_norms(s.sys.L, V);
    return s;
}

void apply_floor(std::vector<double>& m, double floor) {
    double total = 0.0;
    for (auto& x : m) {
        if (x < floor) x = 0.0;
        total += x;
    }
    for (auto& x : m) x /= total;
}

// Change in log det G when mu -> (1-a) mu + a delta_j, with B = B(z_j).
double step_gain(double a, double B, double N) {
    return (N - 1.0) * std::log1p(-a) + std::log1p(a * (B - 1.0));
}

}  // namespace

std::string to_string(OptAlgo a) {
    return a == OptAlgo::multiplicative ? "multiplicative" : "vertex_exchange";
}

OptAlgo parse_opt_algo(const std::string& s) {
    if (s == "multiplicative") return OptAlgo::multiplicative;
    if (s == "vertex_exchange") return OptAlgo::vertex_exchange;
    throw InvalidInput("unknown optimal-measure algorithm '" + s + "'");
}

KwGap kw_gap(const DiscreteMeasure& mu, std::span<const double> mu_q, int n, const CandidateSet& K,
             std::span<const double> k_q) {
    const auto sys = gram_matrix(mu, mu_q, n);
    const auto B = bergman_function(sys, K, k_q);
    KwGap g;
    g.argmax = static_cast<std::size_t>(kernels::argmax(B, {}));
    g.max_b = B[g.argmax];
    g.gap = g.max_b - static_cast<double>(sys.size());
    return g;
}

KwGap kw_gap(const DiscreteMeasure& mu, std::span<const double> q, int n) {
    return kw_gap(mu, q, n, mu.set(), q);
}

SolveReport solve_optimal_measure(CandidateSetPtr S, std::span<const double> q, int n,
                                  const OptimalMeasureOptions& opt, const std::optional<DiscreteMeasure>& start) {
    if (!S) throw InvalidInput("missing candidate set");
    if (!(opt.tol > 0)) throw InvalidInput("tolerance must be positive");
    const auto V = weighted_vandermonde(*S, n, q);
    const auto basis = enumerate_basis(n, S->dimension());
    const auto N = static_cast<double>(basis.size());
    const std::size_t M = S->size();
    const std::size_t cap = opt.max_iter ? opt.max_iter : 10 * basis.size() * M;

    std::vector<double> m;
    if (start) {
        if (&start->set() != S.get() && start->set().size() != M) throw InvalidInput("start measure on a different set");
        m.assign(start->masses().begin(), start->masses().end());
    } else {
        m.assign(M, 1.0 / static_cast<double>(M));
    }

    State st = evaluate(V, basis, n, m);
    SolveReport rep(DiscreteMeasure(S, m));
    rep.degree = n;
    rep.dimension_n = basis.size();
    std::size_t it = 0;
    auto gap_of = [&] { return *std::max_element(st.B.begin(), st.B.end()) - N; };
    double gap = gap_of();

    while (gap / N > opt.tol && it < cap) {
        const double prev = st.sys.log_det;
        if (opt.algo == OptAlgo::multiplicative) {
            for (std::size_t k = 0; k < M; ++k) m[k] *= st.B[k] / N;
            double total = 0.0;
            for (double x : m) total += x;
            for (auto& x : m) x /= total;
        } else {
            // Forward step toward the largest B, away step from the smallest B on the support.
            const auto up = static_cast<std::size_t>(kernels::argmax(st.B, {}));
            std::size_t down = up;
            double bmin = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < M; ++k)
                if (m[k] > 0 && st.B[k] < bmin) {
                    bmin = st.B[k];
                    down = k;
                }
            const double Bu = st.B[up];
            const double a_up = (Bu - N) / (N * (Bu - 1.0));
            // for B <= 1 the gain keeps growing as a decreases, so the step runs to the clip
            double a_dn = bmin > 1.0 ? (bmin - N) / (N * (bmin - 1.0)) : -std::numeric_limits<double>::infinity();
            bool drop = false;
            if (down != up && m[down] < 1.0 && bmin < N) {
                const double lim = -m[down] / (1.0 - m[down]);
                drop = a_dn <= lim;
                a_dn = std::max(a_dn, lim);
            } else {
                a_dn = 0.0;
            }
            const double g_up = a_up > 0 ? step_gain(a_up, Bu, N) : 0.0;
            const double g_dn = a_dn < 0 ? step_gain(a_dn, bmin, N) : 0.0;
            const std::size_t j = g_up >= g_dn ? up : down;
            const double a = g_up >= g_dn ? a_up : a_dn;
            for (auto& x : m) x *= (1.0 - a);
            m[j] += a;
            // a clipped away step removes the point exactly; rounding would leave a residue
            if (m[j] < 0 || (j == down && drop)) m[j] = 0.0;
        }
        ++it;
        if (opt.floor_every > 0 && it % static_cast<std::size_t>(opt.floor_every) == 0) apply_floor(m, opt.mass_floor);
        st = evaluate(V, basis, n, m);
        const double drop = prev - st.sys.log_det;
        if (drop > 1e-12 * std::max(1.0, std::abs(prev))) {
            rep.det_monotone = false;
            rep.worst_det_drop = std::max(rep.worst_det_drop, drop);
        }
        gap = gap_of();
    }

    rep.measure = DiscreteMeasure(S, m);
    rep.iterations = it;
    rep.converged = gap / N <= opt.tol;
    rep.kw_gap = gap;
    rep.log_det = st.sys.log_det;
    rep.bergman = std::move(st.B);
    return rep;
}

SupportCertificate support_certificate(const DiscreteMeasure& mu, std::span<const double> q, int n, double tol,
                                       double mass_floor) {
    const auto sys = gram_matrix(mu, q, n);
    const auto B = bergman_function(sys, mu.set(), q);
    const auto N = static_cast<double>(sys.size());
    SupportCertificate c;
    c.support = mu.support(mass_floor);
    for (auto i : c.support) {
        c.bergman.push_back(B[i]);
        if (std::abs(B[i] - N) > tol * N) c.violations.push_back(i);
    }
    return c;
}

OptimalDetSequence optimal_det_sequence(CandidateSetPtr S, std::span<const double> q, int n_max,
                                        const OptimalMeasureOptions& opt, int n_min) {
    if (n_min < 1 || n_max < n_min) throw InvalidInput("need 1 <= n_min <= n_max");
    OptimalDetSequence seq;
    for (int n = n_min; n <= n_max; ++n) {
        auto rep = solve_optimal_measure(S, q, n, opt);
        const double d = S->dimension();
        const double N = static_cast<double>(rep.dimension_n);
        seq.degrees.push_back(n);
        seq.normalized_log_det.push_back((d + 1.0) / (2.0 * d * n * N) * rep.log_det);
        seq.reports.push_back(std::move(rep));
    }
    return seq;
}

std::vector<std::size_t> mass_histogram(std::span<const double> masses, int bins) {
    std::vector<std::size_t> h(static_cast<std::size_t>(bins), 0);
    for (double x : masses) {
        if (x <= 0) continue;
        int k = static_cast<int>(std::floor(-std::log10(x)));
        if (std::pow(10.0, -k) < x) --k;  // x exactly a power of ten
        k = std::clamp(k, 0, bins - 1);
        ++h[static_cast<std::size_t>(k)];
    }
    return h;
}

}  // namespace plurilab
