#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace plurilab {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

/// Total degree |alpha|.
int total_degree(const MultiIndex& alpha);

/// Monomials of total degree <= n in d variables, graded by degree and
/// lexicographic (first variable highest power first) within each degree.
class MultiIndexBasis {
public:
    MultiIndexBasis(int dimension, int degree, std::vector<MultiIndex> indices);

    int dimension() const noexcept { return dim_; }
    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return indices_.size(); }
    const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    int degree_of(std::size_t i) const { return degrees_[i]; }

    /// Position of alpha in the list, or -1.
    std::ptrdiff_t find(const MultiIndex& alpha) const;

    /// Evaluate every monomial at z, writing into out (size() entries).
    void evaluate(std::span<const cplx> z, std::span<cplx> out) const;

private:
    int dim_;
    int degree_;
    std::vector<MultiIndex> indices_;
    std::vector<int> degrees_;
};

MultiIndexBasis enumerate_basis(int n, int d);

/// Monomials of total degree exactly n in d variables, lexicographic.
MultiIndexBasis enumerate_homogeneous_basis(int n, int d);

struct DimensionCounts {
    std::uint64_t m;  ///< dim P_n = C(n+d, n)
    std::uint64_t h;  ///< number of monomials of degree exactly n
    std::uint64_t l;  ///< sum of the degrees of all basis monomials
    std::uint64_t r;  ///< n * h
};

/// Checked 64-bit counts; throws OverflowError rather than wrapping.
DimensionCounts dimension_counts(int n, int d);

/// C(a, b) in checked 64-bit arithmetic.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b);

/// Largest degree usable in binary64 with monomial bases: 30 (d=1), 12 (d=2),
/// 8 (d=3), 6 (d>=4).
int default_degree_cap(int d);

/// Process-wide switch; set by the CLI flag --override-degree-cap.
void set_degree_cap_override(bool on);
bool degree_cap_overridden();

/// Throws InvalidInput if n exceeds the cap for d and no override is active.
void check_degree_cap(int n, int d);

}  // namespace plurilab
