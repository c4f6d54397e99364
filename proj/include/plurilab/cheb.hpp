#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "plurilab/basis.hpp"
#include "plurilab/domains.hpp"

namespace plurilab {

enum class ChebClass { plain, homogeneous, weighted };

std::string to_string(ChebClass c);
ChebClass parse_cheb_class(const std::string& s);

struct ChebyshevRecord {
    MultiIndex alpha;
    ChebClass cls = ChebClass::plain;
    double value = 0.0;      ///< achieved max over S of |w^{|alpha|} p|
    double tau = 0.0;        ///< value^{1/|alpha|}
    double lower_bound = 0.0;///< LP optimum of the polygonal relaxation
    std::vector<MultiIndex> lower;   ///< monomials allowed besides e_alpha
    std::vector<cplx> coefficients;  ///< of `lower`; e_alpha has coefficient 1
    int facets = 0;           ///< initial uniform facet count
    std::size_t cuts = 0;     ///< facets added by refinement
    int rounds = 0;
    bool real_coefficients = false;

    /// Relative gap between the achieved max and the LP bound.
    double gap() const noexcept { return value > 0 ? (value - lower_bound) / value : 0.0; }
};

struct ChebyshevOptions {
    int facets = 16;
    int max_rounds = 200;
    double rel_gap = 1e-10;
    std::size_t cuts_per_round = 64;
};

/// sec(pi / facets): worst-case ratio of |z| to its polygonal surrogate.
double facet_error_bound(int facets);

/// Minimizes max over S of |e_alpha + sum c_j e_j| (times e^{-|alpha| Q} for
/// the weighted class). The e_j run over the monomials preceding alpha in the
/// graded-lex basis; for the homogeneous class only those of degree |alpha|.
/// qvals may be empty unless cls == weighted.
ChebyshevRecord chebyshev_constant(const CandidateSet& S, const MultiIndex& alpha, ChebClass cls,
                                   std::span<const double> qvals, const ChebyshevOptions& opt = {});

/// max over S of |w^{|alpha|} p| for given coefficients of the record's lower monomials.
double chebyshev_norm(const CandidateSet& S, const ChebyshevRecord& rec, std::span<const double> qvals);

struct SubmultiplicativityViolation {
    MultiIndex alpha, beta;
    double lhs = 0.0;  ///< Y(alpha + beta)
    double rhs = 0.0;  ///< Y(alpha) Y(beta)
};

std::vector<SubmultiplicativityViolation> submultiplicativity_audit(std::span<const ChebyshevRecord> records,
                                                                    double rel_tol = 1e-9);

/// All records with |alpha| = n.
std::vector<ChebyshevRecord> degree_records(const CandidateSet& S, int n, ChebClass cls,
                                            std::span<const double> qvals, const ChebyshevOptions& opt = {});

/// (prod_{|alpha|=n} tau(alpha))^{1/h_n}.
double tau_geometric_mean(std::span<const ChebyshevRecord> degree_n_records);
double tau_geometric_mean(const CandidateSet& S, std::span<const double> qvals, ChebClass cls, int n,
                          const ChebyshevOptions& opt = {});

/// (prod_{1<=|alpha|<=n} Y(alpha))^{1/l_n}: the Chebyshev-constant route to delta.
double chebyshev_diameter(std::span<const ChebyshevRecord> records_up_to_n, int n, int d);

/// True when conjugating every coordinate maps S onto itself with equal Q.
bool conjugation_symmetric(const CandidateSet& S, std::span<const double> qvals);

struct LiftedSet {
    CandidateSet set;
    std::vector<std::size_t> base_index;  ///< base point of each lifted point
    std::size_t dropped = 0;              ///< base points with w = 0
};

/// Degree-n homogeneous monomials (rows) at the points of a set (columns).
Eigen::MatrixXcd homogeneous_vandermonde(const CandidateSet& S, int n);

/// Points (t, t lambda) with t = w(lambda) e^{2 pi i k / m_t}.
LiftedSet homogeneous_lift(const CandidateSet& S, std::span<const double> qvals, int m_t);

struct LiftRow {
    int degree = 0;
    double weighted_log_vdm = 0.0;     ///< max log|W| over S
    double homogeneous_log_vdm = 0.0;  ///< max log|VDMH| over the lift
    double weighted_delta = 0.0;
    double lifted_delta = 0.0;
    double rel_gap = 0.0;
};

struct LiftReport {
    std::vector<LiftRow> rows;
    bool exhaustive = false;
    std::size_t dropped = 0;
    double max_rel_gap() const;
};

/// Compares delta^{w,n}(K) with the lift's normalized homogeneous diameter
/// for n = 1..n_max. exhaustive = true enumerates all subsets on both sides.
LiftReport lift_identity_check(const CandidateSet& S, std::span<const double> qvals, int n_max, int m_t,
                               bool exhaustive);

void write_records_csv(std::ostream& os, std::span<const ChebyshevRecord> records);

}  // namespace plurilab
