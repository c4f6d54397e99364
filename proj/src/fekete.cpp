#include "plurilab/fekete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "plurilab/error.hpp"
#include "plurilab/kernels.hpp"
#include "plurilab/vdm.hpp"

namespace plurilab {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

Eigen::MatrixXcd columns(const Eigen::MatrixXcd& A, std::span<const std::size_t> idx) {
    Eigen::MatrixXcd B(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) B.col(static_cast<Eigen::Index>(k)) = A.col(static_cast<Eigen::Index>(idx[k]));
    return B;
}

double lu_log_abs_det(const Eigen::MatrixXcd& B) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(B);
    const auto& U = lu.matrixLU();
    double s = 0.0;
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        const double a = std::abs(U(i, i));
        if (a == 0.0) return neg_inf;
        s += std::log(a);
    }
    return s;
}

void check_q(const CandidateSet& S, std::span<const double> qvals) {
    if (qvals.size() != S.size()) throw InvalidInput("one Q value per candidate required");
}

FeketeConfiguration make_config(const Eigen::MatrixXcd& A, int n, int d, std::vector<std::size_t> idx,
                                FeketeMethod m) {
    FeketeConfiguration cfg;
    cfg.degree = n;
    cfg.dimension = d;
    cfg.indices = std::move(idx);
    cfg.method = m;
    const LogDet ld = log_abs_det(columns(A, cfg.indices));
    if (ld.is_zero) throw InvalidInput("selected configuration is degenerate");
    cfg.log_weighted_vdm = ld.log_abs;
    return cfg;
}

}  // namespace

std::string to_string(FeketeMethod m) {
    switch (m) {
        case FeketeMethod::greedy: return "greedy";
        case FeketeMethod::greedy_exchange: return "greedy+exchange";
        case FeketeMethod::exhaustive: return "exhaustive";
    }
    return "?";
}

double log_abs_det_columns(const Eigen::MatrixXcd& A, std::span<const std::size_t> idx) {
    if (static_cast<Eigen::Index>(idx.size()) != A.rows()) throw InvalidInput("column subset must be square");
    const LogDet ld = log_abs_det(columns(A, idx));
    return ld.is_zero ? neg_inf : ld.log_abs;
}

std::vector<std::size_t> greedy_select(const Eigen::MatrixXcd& A0) {
    const Eigen::Index N = A0.rows(), M = A0.cols();
    if (M < N) throw InvalidInput("fewer candidates than basis functions");
    Eigen::MatrixXcd A = A0;
    const auto norms0 = kernels::column_norms(A0);
    Eigen::MatrixXcd Qb(N, N);
    std::vector<bool> taken(static_cast<std::size_t>(M), false);
    std::vector<std::size_t> sel;
    sel.reserve(static_cast<std::size_t>(N));

    for (Eigen::Index k = 0; k < N; ++k) {
        const auto norms = kernels::column_norms(A);
        const auto j = kernels::argmax(norms, taken);
        const auto uj = static_cast<std::size_t>(j);
        if (j < 0 || !(norms[uj] > 1e-26 * norms0[uj]))
            throw InvalidInput("insufficient nondegenerate candidates for degree-" + std::to_string(N) +
                               "-dimensional space");
        kernels::Vector q = A.col(j);
        for (Eigen::Index i = 0; i < k; ++i) q -= Qb.col(i) * Qb.col(i).dot(q);
        q /= q.norm();
        Qb.col(k) = q;
        kernels::deflate(A, q);
        taken[uj] = true;
        sel.push_back(uj);
    }
    return sel;
}

ExchangeResult exchange_select(const Eigen::MatrixXcd& A, std::vector<std::size_t> idx, int max_sweeps) {
    const Eigen::Index N = A.rows(), M = A.cols();
    if (static_cast<Eigen::Index>(idx.size()) != N) throw InvalidInput("exchange needs exactly N indices");
    ExchangeResult res;
    res.indices = std::move(idx);
    if (max_sweeps <= 0) return res;

    std::vector<bool> taken(static_cast<std::size_t>(M), false);
    for (auto i : res.indices) {
        if (i >= static_cast<std::size_t>(M) || taken[i]) throw InvalidInput("invalid or repeated index");
        taken[i] = true;
    }
    double current = lu_log_abs_det(columns(A, res.indices));
    if (!std::isfinite(current)) throw InvalidInput("exchange start configuration is degenerate");

    const std::size_t cap = static_cast<std::size_t>(max_sweeps) * static_cast<std::size_t>(N);
    for (std::size_t step = 0; step < cap; ++step) {
        // |R(i,c)| is the factor by which |det| changes when column c replaces position i.
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(columns(A, res.indices));
        const Eigen::MatrixXcd R = lu.solve(A);
        std::vector<double> best(static_cast<std::size_t>(M), 0.0);
        std::vector<Eigen::Index> best_row(static_cast<std::size_t>(M), 0);
#pragma omp parallel for schedule(static)
        for (Eigen::Index c = 0; c < M; ++c) {
            const auto uc = static_cast<std::size_t>(c);
            if (taken[uc]) continue;
            for (Eigen::Index i = 0; i < N; ++i) {
                const double a = std::abs(R(i, c));
                if (a > best[uc]) {
                    best[uc] = a;
                    best_row[uc] = i;
                }
            }
        }
        const auto c = kernels::argmax(best, taken);
        if (c < 0) break;
        const auto uc = static_cast<std::size_t>(c);
        if (!(std::log(best[uc]) > 1e-12)) break;
        const auto i = static_cast<std::size_t>(best_row[uc]);
        const double next = lu_log_abs_det(columns(A, [&] {
            auto t = res.indices;
            t[i] = uc;
            return t;
        }()));
        if (!(next >= current)) break;  // rounding noise; stop rather than cycle
        taken[res.indices[i]] = false;
        taken[uc] = true;
        res.indices[i] = uc;
        current = next;
        ++res.swaps;
    }
    res.sweeps = static_cast<int>((res.swaps + static_cast<std::size_t>(N)) / static_cast<std::size_t>(N));
    return res;
}

std::vector<std::size_t> exhaustive_select(const Eigen::MatrixXcd& A, std::uint64_t max_subsets) {
    const auto N = static_cast<std::size_t>(A.rows()), M = static_cast<std::size_t>(A.cols());
    if (M < N) throw InvalidInput("fewer candidates than basis functions");
    if (binomial(M, N) > max_subsets)
        throw UnsupportedError("exhaustive search over " + std::to_string(binomial(M, N)) + " subsets exceeds cap");
    std::vector<std::size_t> idx(N), best;
    for (std::size_t k = 0; k < N; ++k) idx[k] = k;
    double best_val = neg_inf;
    while (true) {
        const double v = lu_log_abs_det(columns(A, idx));
        if (v > best_val) {
            best_val = v;
            best = idx;
        }
        std::size_t k = N;
        while (k > 0 && idx[k - 1] == M - N + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < N; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!std::isfinite(best_val)) throw InvalidInput("every configuration is degenerate");
    return best;
}

Eigen::MatrixXcd weighted_vandermonde(const CandidateSet& S, int n, std::span<const double> qvals) {
    check_q(S, qvals);
    check_degree_cap(n, S.dimension());
    const auto basis = enumerate_basis(n, S.dimension());
    std::vector<double> scale(qvals.size());
    for (std::size_t k = 0; k < qvals.size(); ++k) {
        if (std::isnan(qvals[k])) throw InvalidInput("Q is NaN");
        scale[k] = std::isinf(qvals[k]) ? 0.0 : std::exp(-n * qvals[k]);
    }
    return kernels::monomial_matrix(basis, S, scale);
}

FeketeConfiguration greedy_fekete(const CandidateSet& S, int n, std::span<const double> qvals) {
    const auto A = weighted_vandermonde(S, n, qvals);
    return make_config(A, n, S.dimension(), greedy_select(A), FeketeMethod::greedy);
}

FeketeConfiguration exchange_refine(const FeketeConfiguration& cfg, const CandidateSet& S,
                                    std::span<const double> qvals, int max_sweeps) {
    if (max_sweeps <= 0) return cfg;
    const auto A = weighted_vandermonde(S, cfg.degree, qvals);
    auto ex = exchange_select(A, cfg.indices, max_sweeps);
    auto out = make_config(A, cfg.degree, S.dimension(), std::move(ex.indices),
                           cfg.method == FeketeMethod::exhaustive ? FeketeMethod::exhaustive
                                                                  : FeketeMethod::greedy_exchange);
    out.sweeps = ex.sweeps;
    out.swaps = ex.swaps;
    // The exchange only accepts improvements; guard against re-evaluation noise.
    if (out.log_weighted_vdm < cfg.log_weighted_vdm - 1e-9) return cfg;
    return out;
}

FeketeConfiguration exhaustive_fekete(const CandidateSet& S, int n, std::span<const double> qvals) {
    const auto A = weighted_vandermonde(S, n, qvals);
    return make_config(A, n, S.dimension(), exhaustive_select(A), FeketeMethod::exhaustive);
}

FeketeConfiguration fekete(const CandidateSet& S, int n, std::span<const double> qvals, int max_sweeps) {
    const auto A = weighted_vandermonde(S, n, qvals);
    auto ex = exchange_select(A, greedy_select(A), max_sweeps);
    auto cfg = make_config(A, n, S.dimension(), std::move(ex.indices),
                           max_sweeps > 0 ? FeketeMethod::greedy_exchange : FeketeMethod::greedy);
    cfg.sweeps = ex.sweeps;
    cfg.swaps = ex.swaps;
    return cfg;
}

std::vector<cplx> selected_points(const FeketeConfiguration& cfg, const CandidateSet& S) {
    std::vector<cplx> out;
    out.reserve(cfg.size() * static_cast<std::size_t>(S.dimension()));
    for (auto i : cfg.indices) {
        const auto p = S.point(i);
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

std::vector<double> selected_q(const FeketeConfiguration& cfg, std::span<const double> qvals) {
    std::vector<double> out;
    out.reserve(cfg.size());
    for (auto i : cfg.indices) out.push_back(qvals[i]);
    return out;
}

DiscreteMeasure empirical_measure(const FeketeConfiguration& cfg, CandidateSetPtr S) {
    std::vector<double> m(S->size(), 0.0);
    const double w = 1.0 / static_cast<double>(cfg.size());
    for (auto i : cfg.indices) m.at(i) = w;
    return DiscreteMeasure(std::move(S), std::move(m));
}

Extrapolation extrapolate_log_diameter(std::span<const int> degrees, std::span<const double> log_delta) {
    if (degrees.size() != log_delta.size() || degrees.empty()) throw InvalidInput("bad diameter sequence");
    std::vector<std::size_t> use;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (degrees[i] >= 2) use.push_back(i);
    Extrapolation ex;
    if (use.size() < 2) {
        ex.log_limit = log_delta.back();
        ex.terms = 0;
        ex.points_used = 1;
        return ex;
    }
    // Keep at least one spare degree of freedom.
    const int terms = static_cast<int>(std::min<std::size_t>(4, use.size() - 1));
    Eigen::MatrixXd X(static_cast<Eigen::Index>(use.size()), terms);
    Eigen::VectorXd y(static_cast<Eigen::Index>(use.size()));
    for (std::size_t r = 0; r < use.size(); ++r) {
        const double n = degrees[use[r]];
        const double cols[4] = {1.0, 1.0 / n, std::log(n) / n, 1.0 / (n * n)};
        for (int c = 0; c < terms; ++c) X(static_cast<Eigen::Index>(r), c) = cols[c];
        y(static_cast<Eigen::Index>(r)) = log_delta[use[r]];
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    ex.log_limit = coef(0);
    ex.terms = terms;
    ex.points_used = static_cast<int>(use.size());
    return ex;
}

double DiameterSequence::limit() const { return std::exp(extrapolation.log_limit); }

DiameterSequence diameter_sequence(const CandidateSet& S, std::span<const double> qvals, int n_max, int n_min,
                                   int max_sweeps) {
    if (n_min < 1 || n_max < n_min) throw InvalidInput("need 1 <= n_min <= n_max");
    DiameterSequence seq;
    std::vector<double> logd;
    for (int n = n_min; n <= n_max; ++n) {
        auto cfg = fekete(S, n, qvals, max_sweeps);
        const double ld = diameter_exponent(S.dimension(), n) * cfg.log_weighted_vdm;
        seq.degrees.push_back(n);
        seq.log_vdm.push_back(cfg.log_weighted_vdm);
        seq.delta.push_back(std::exp(ld));
        logd.push_back(ld);
        seq.configs.push_back(std::move(cfg));
    }
    for (std::size_t i = 1; i < seq.delta.size(); ++i)
        if (seq.delta[i] > seq.delta[i - 1]) seq.monotone_decreasing = false;
    seq.extrapolation = extrapolate_log_diameter(seq.degrees, logd);
    return seq;
}

void write_configuration_csv(std::ostream& os, const FeketeConfiguration& cfg, const CandidateSet& S) {
    write_csv(os, S.subset(cfg.indices));
}

}  // namespace plurilab
