#include "plurilab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plurilab/error.hpp"

namespace plurilab {

namespace {
constexpr double pivot_tol = 1e-9;
constexpr std::size_t bland_after = 50;  // consecutive degenerate pivots
}  // namespace

SimplexLP::SimplexLP(Eigen::VectorXd rhs) : rhs_(std::move(rhs)) {
    if (rhs_.size() == 0) throw InvalidInput("LP needs at least one row");
    // One artificial per row, signed so that it starts at |c_i| >= 0.
    const auto m = static_cast<std::size_t>(rhs_.size());
    for (std::size_t i = 0; i < m; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(rhs_.size());
        e(static_cast<Eigen::Index>(i)) = rhs_(static_cast<Eigen::Index>(i)) < 0 ? -1.0 : 1.0;
        cols_.push_back({std::move(e), 0.0, true});
        basis_.push_back(i);
    }
    in_basis_.assign(m, true);
}

void SimplexLP::add_column(const Eigen::VectorXd& a, double cost) {
    if (a.size() != rhs_.size()) throw InvalidInput("LP column has the wrong length");
    if (!a.allFinite() || !std::isfinite(cost)) throw InvalidInput("LP column is not finite");
    cols_.push_back({a, cost, false});
    in_basis_.push_back(false);
    scale_ = std::max(scale_, std::abs(cost));
}

void SimplexLP::refactor() {
    const Eigen::Index m = rhs_.size();
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = cols_[basis_[static_cast<std::size_t>(i)]].a;
    lu_.compute(B);
    xb_ = lu_.solve(rhs_);
}

double SimplexLP::cost_of(std::size_t j, bool phase_one) const {
    if (phase_one) return cols_[j].artificial ? -1.0 : 0.0;
    return cols_[j].artificial ? 0.0 : cols_[j].cost;
}

bool SimplexLP::phase(bool phase_one, std::size_t max_iter, Status& st) {
    const Eigen::Index m = rhs_.size();
    std::size_t degenerate = 0;
    const double dtol = 1e-11 * (phase_one ? 1.0 : scale_);
    while (true) {
        refactor();
        Eigen::VectorXd cb(m);
        for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost_of(basis_[static_cast<std::size_t>(i)], phase_one);
        y_ = lu_.transpose().solve(cb);

        // Pricing: Dantzig, switching to Bland's rule while stalling.
        const bool bland = degenerate >= bland_after;
        std::ptrdiff_t enter = -1;
        double best = dtol;
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (in_basis_[j] || cols_[j].artificial) continue;
            const double dj = cost_of(j, phase_one) - y_.dot(cols_[j].a);
            if (dj > best) {
                enter = static_cast<std::ptrdiff_t>(j);
                best = dj;
                if (bland) break;
            }
        }
        if (enter < 0) {
            st = Status::optimal;
            return true;
        }
        if (iterations_ >= max_iter) {
            st = Status::iteration_limit;
            return false;
        }

        const Eigen::VectorXd u = lu_.solve(cols_[static_cast<std::size_t>(enter)].a);
        Eigen::Index leave = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (u(i) <= pivot_tol) continue;
            const double r = std::max(xb_(i), 0.0) / u(i);
            const bool tie = leave >= 0 && std::abs(r - ratio) <= 1e-14 * std::max(1.0, ratio);
            if (r < ratio && !tie) {
                ratio = r;
                leave = i;
            } else if (tie && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
                leave = i;
            }
        }
        if (leave < 0) {
            st = Status::unbounded;
            return false;
        }
        degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
        in_basis_[basis_[static_cast<std::size_t>(leave)]] = false;
        basis_[static_cast<std::size_t>(leave)] = static_cast<std::size_t>(enter);
        in_basis_[static_cast<std::size_t>(enter)] = true;
        ++iterations_;
    }
}

void SimplexLP::drive_out_artificials() {
    const Eigen::Index m = rhs_.size();
    refactor();
    for (Eigen::Index r = 0; r < m; ++r) {
        if (!cols_[basis_[static_cast<std::size_t>(r)]].artificial) continue;
        // Row r of B^{-1} A; any structural column with a usable entry can replace the artificial.
        Eigen::VectorXd er = Eigen::VectorXd::Zero(m);
        er(r) = 1.0;
        const Eigen::VectorXd row = lu_.transpose().solve(er);
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (in_basis_[j] || cols_[j].artificial) continue;
            if (std::abs(row.dot(cols_[j].a)) > 1e-7) {
                in_basis_[basis_[static_cast<std::size_t>(r)]] = false;
                basis_[static_cast<std::size_t>(r)] = j;
                in_basis_[j] = true;
                refactor();
                break;
            }
        }
        // Otherwise the row is redundant and the artificial stays basic at zero.
    }
}

SimplexLP::Status SimplexLP::solve(std::size_t max_iter) {
    Status st = Status::optimal;
    const std::size_t limit = iterations_ + max_iter;
    if (!feasible_) {
        if (!phase(true, limit, st)) return st;
        refactor();
        double infeas = 0.0;
        for (Eigen::Index i = 0; i < rhs_.size(); ++i)
            if (cols_[basis_[static_cast<std::size_t>(i)]].artificial) infeas += std::abs(xb_(i));
        if (infeas > 1e-9 * std::max(1.0, rhs_.cwiseAbs().maxCoeff())) return Status::infeasible;
        drive_out_artificials();
        feasible_ = true;
    }
    phase(false, limit, st);
    refactor();
    return st;
}

double SimplexLP::objective() const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < rhs_.size(); ++i) {
        const auto j = basis_[static_cast<std::size_t>(i)];
        if (!cols_[j].artificial) v += cols_[j].cost * xb_(i);
    }
    return v;
}

std::vector<double> SimplexLP::primal() const {
    std::vector<double> x;
    std::vector<std::size_t> pos(cols_.size(), 0);
    for (std::size_t j = 0, k = 0; j < cols_.size(); ++j)
        if (!cols_[j].artificial) pos[j] = k++;
    x.assign(cols_.size() - rows(), 0.0);
    for (Eigen::Index i = 0; i < rhs_.size(); ++i) {
        const auto j = basis_[static_cast<std::size_t>(i)];
        if (!cols_[j].artificial) x[pos[j]] = xb_(i);
    }
    return x;
}

}  // namespace plurilab
