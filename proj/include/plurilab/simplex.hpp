#pragma once

#include <Eigen/Dense>
#include <vector>

namespace plurilab {

/// Dense revised simplex for   max b^T x   s.t.  A x = c,  x >= 0.
/// Columns can be appended between solves; the last basis is kept, so a
/// re-solve after adding columns starts from a feasible point.
class SimplexLP {
public:
    enum class Status { optimal, unbounded, infeasible, iteration_limit };

    explicit SimplexLP(Eigen::VectorXd rhs);

    std::size_t rows() const noexcept { return static_cast<std::size_t>(rhs_.size()); }
    std::size_t columns() const noexcept { return cols_.size(); }

    void add_column(const Eigen::VectorXd& a, double cost);

    Status solve(std::size_t max_iter = 100000);

    double objective() const;
    /// Value of every structural column.
    std::vector<double> primal() const;
    /// Multipliers y with y^T a_j >= b_j for all j at optimality; the
    /// optimal objective equals c^T y.
    const Eigen::VectorXd& duals() const noexcept { return y_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    struct Column {
        Eigen::VectorXd a;
        double cost;
        bool artificial;
    };

    bool phase(bool phase_one, std::size_t max_iter, Status& st);
    void refactor();
    double cost_of(std::size_t j, bool phase_one) const;
    void drive_out_artificials();

    Eigen::VectorXd rhs_;
    std::vector<Column> cols_;
    std::vector<std::size_t> basis_;   ///< column index per row
    std::vector<bool> in_basis_;
    Eigen::VectorXd xb_;               ///< basic values
    Eigen::VectorXd y_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    bool initialized_ = false;
    bool feasible_ = false;
    std::size_t iterations_ = 0;
    double scale_ = 1.0;
};

}  // namespace plurilab
