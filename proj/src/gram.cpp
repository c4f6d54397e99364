#include "plurilab/gram.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "plurilab/error.hpp"
#include "plurilab/kernels.hpp"

namespace plurilab {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

std::vector<double> weight_scale(std::span<const double> qvals, int n) {
    std::vector<double> s(qvals.size());
    for (std::size_t i = 0; i < qvals.size(); ++i)
        s[i] = std::isinf(qvals[i]) ? 0.0 : std::exp(-n * qvals[i]);
    return s;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(CandidateSetPtr set, std::vector<double> masses)
    : set_(std::move(set)), masses_(std::move(masses)) {
    if (!set_) throw InvalidInput("measure needs a candidate set");
    if (masses_.size() != set_->size()) throw InvalidInput("one mass per candidate point required");
    double total = 0.0;
    for (double m : masses_) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidInput("masses must be finite and nonnegative");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("masses must sum to 1");
}

DiscreteMeasure DiscreteMeasure::reference(CandidateSetPtr set) {
    auto m = set->masses();
    return DiscreteMeasure(std::move(set), m);
}

DiscreteMeasure DiscreteMeasure::uniform(CandidateSetPtr set) {
    const std::size_t m = set->size();
    return DiscreteMeasure(std::move(set), std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

DiscreteMeasure DiscreteMeasure::point_mass(CandidateSetPtr set, std::size_t index) {
    std::vector<double> m(set->size(), 0.0);
    if (index >= m.size()) throw InvalidInput("point-mass index out of range");
    m[index] = 1.0;
    return DiscreteMeasure(std::move(set), std::move(m));
}

std::vector<std::size_t> DiscreteMeasure::support(double floor) const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < masses_.size(); ++i)
        if (masses_[i] > floor) s.push_back(i);
    return s;
}

std::size_t numerical_rank(const Eigen::MatrixXcd& G) {
    const Eigen::Index n = G.rows();
    Eigen::VectorXd dinv(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double g = G(i, i).real();
        dinv(i) = g > 0 ? 1.0 / std::sqrt(g) : 0.0;
    }
    const Eigen::MatrixXcd S = dinv.asDiagonal() * G * dinv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double top = ev.maxCoeff();
    if (!(top > 0)) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (ev(i) > static_cast<double>(n) * 64.0 * eps * top) ++r;
    return r;
}

GramSystem factor_gram(Eigen::MatrixXcd G, MultiIndexBasis basis, int n) {
    const auto N = static_cast<std::size_t>(G.rows());
    GramSystem sys;
    sys.degree = n;
    sys.basis = std::move(basis);

    Eigen::LLT<Eigen::MatrixXcd> llt(G);
    bool ok = llt.info() == Eigen::Success;
    Eigen::MatrixXcd L;
    double log_det = 0.0;
    if (ok) {
        L = llt.matrixL();
        // Relative pivot test: L_ii^2 / G_ii is the fraction of e_i not already
        // spanned by e_1..e_{i-1} in L^2(w^{2n} mu).
        const double tol = 64.0 * static_cast<double>(N) * eps;
        for (Eigen::Index i = 0; i < L.rows(); ++i) {
            const double lii = L(i, i).real();
            const double gii = G(i, i).real();
            if (!(lii > 0) || !(gii > 0) || lii * lii / gii < tol) {
                ok = false;
                break;
            }
            log_det += 2.0 * std::log(lii);
        }
    }
    if (!ok) {
        const std::size_t rank = numerical_rank(G);
        throw DegenerateError("degenerate Gram matrix: numerical rank " + std::to_string(rank) + " < " +
                                  std::to_string(N),
                              rank, N);
    }
    sys.G = std::move(G);
    sys.L = std::move(L);
    sys.log_det = log_det;
    return sys;
}

GramSystem gram_matrix(const DiscreteMeasure& mu, std::span<const double> qvals, int n) {
    const CandidateSet& S = mu.set();
    if (qvals.size() != S.size()) throw InvalidInput("one Q value per measure point required");
    check_degree_cap(n, S.dimension());
    auto basis = enumerate_basis(n, S.dimension());
    const auto scale = weight_scale(qvals, n);
    const auto V = kernels::monomial_matrix(basis, S, scale);
    return factor_gram(kernels::gram(V, mu.masses()), std::move(basis), n);
}

GramSystem gram_matrix(const DiscreteMeasure& mu, const AdmissibleWeight& Q, int n) {
    const auto q = eval_weight(Q, mu.set());
    return gram_matrix(mu, q, n);
}

std::vector<double> bergman_function(const GramSystem& sys, const CandidateSet& at,
                                     std::span<const double> qvals) {
    if (qvals.size() != at.size()) throw InvalidInput("one Q value per evaluation point required");
    if (at.dimension() != sys.dimension()) throw InvalidInput("dimension mismatch");
    const auto scale = weight_scale(qvals, sys.degree);
    const auto V = kernels::monomial_matrix(sys.basis, at, scale);
    return kernels::solve_column_norms(sys.L, V);
}

std::vector<double> bergman_function_orthonormal(const DiscreteMeasure& mu,
                                                 std::span<const double> mu_qvals, int n,
                                                 const CandidateSet& at,
                                                 std::span<const double> at_qvals) {
    const CandidateSet& S = mu.set();
    const auto basis = enumerate_basis(n, S.dimension());
    const auto N = static_cast<Eigen::Index>(basis.size());

    // Columns of X are the basis polynomials sampled as sqrt(mass) w^n e_i on
    // the support; MGS on X gives orthonormal polynomials q_j = sum_i C(i,j) e_i.
    const auto scale = weight_scale(mu_qvals, n);
    std::vector<double> s2(scale.size());
    for (std::size_t k = 0; k < scale.size(); ++k) s2[k] = scale[k] * std::sqrt(mu.mass(k));
    const Eigen::MatrixXcd X = kernels::monomial_matrix(basis, S, s2).transpose();  // M x N

    Eigen::MatrixXcd Qm = X;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(N, N);
    for (Eigen::Index j = 0; j < N; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < j; ++i) {
                const cplx r = Qm.col(i).dot(Qm.col(j));
                Qm.col(j) -= r * Qm.col(i);
                C.col(j) -= r * C.col(i);
            }
        const double nrm = Qm.col(j).norm();
        if (!(nrm > 64.0 * static_cast<double>(N) * eps * X.col(j).norm()))
            throw DegenerateError("degenerate measure in Gram-Schmidt", static_cast<std::size_t>(j),
                                  static_cast<std::size_t>(N));
        Qm.col(j) /= nrm;
        C.col(j) /= nrm;
    }

    const auto at_scale = weight_scale(at_qvals, n);
    const auto P = kernels::monomial_matrix(basis, at, at_scale);  // N x M'
    const Eigen::MatrixXcd vals = C.transpose() * P;               // q_j(z) w^n(z)
    std::vector<double> B(at.size());
    for (Eigen::Index k = 0; k < vals.cols(); ++k) B[static_cast<std::size_t>(k)] = vals.col(k).squaredNorm();
    return B;
}

BernsteinMarkov bm_constant(const GramSystem& sys, const CandidateSet& K, std::span<const double> qvals) {
    const auto B = bergman_function(sys, K, qvals);
    const auto i = kernels::argmax(B, {});
    BernsteinMarkov out;
    out.argmax = static_cast<std::size_t>(i);
    out.constant = std::sqrt(B[out.argmax]);
    return out;
}

double normalized_log_det(const GramSystem& sys) {
    if (sys.degree < 1) throw InvalidInput("normalized log det needs n >= 1");
    const double d = sys.dimension();
    const double N = static_cast<double>(sys.size());
    return (d + 1.0) / (2.0 * d * sys.degree * N) * sys.log_det;
}

double free_energy(const DiscreteMeasure& mu, std::span<const double> qvals, int n) {
    const auto sys = gram_matrix(mu, qvals, n);
    return std::lgamma(static_cast<double>(sys.size()) + 1.0) + sys.log_det;
}

void write_gram_csv(std::ostream& os, const GramSystem& sys) {
    const auto old = os.precision(17);
    for (Eigen::Index i = 0; i < sys.G.rows(); ++i) {
        for (Eigen::Index j = 0; j < sys.G.cols(); ++j) {
            if (j) os << ',';
            os << sys.G(i, j).real() << ',' << sys.G(i, j).imag();
        }
        os << '\n';
    }
    os.precision(old);
}

}  // namespace plurilab
