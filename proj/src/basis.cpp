#include "plurilab/basis.hpp"

#include <atomic>
#include <numeric>
#include <string>

#include "plurilab/error.hpp"

namespace plurilab {

namespace {

void check_args(int n, int d) {
    if (d < 1) throw InvalidInput("dimension must be >= 1");
    if (n < 0) throw InvalidInput("degree must be >= 0");
}

// All alpha with |alpha| == k, first coordinate descending.
void append_degree(int k, int d, std::vector<MultiIndex>& out) {
    MultiIndex alpha(d, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == d - 1) {
            alpha[pos] = remaining;
            out.push_back(alpha);
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            alpha[pos] = a;
            self(self, pos + 1, remaining - a);
        }
    };
    rec(rec, 0, k);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit overflow in dimension count");
    return r;
}

}  // namespace

int total_degree(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

MultiIndexBasis::MultiIndexBasis(int dimension, int degree, std::vector<MultiIndex> indices)
    : dim_(dimension), degree_(degree), indices_(std::move(indices)) {
    degrees_.reserve(indices_.size());
    for (const auto& a : indices_) degrees_.push_back(total_degree(a));
}

std::ptrdiff_t MultiIndexBasis::find(const MultiIndex& alpha) const {
    for (std::size_t i = 0; i < indices_.size(); ++i)
        if (indices_[i] == alpha) return static_cast<std::ptrdiff_t>(i);
    return -1;
}

void MultiIndexBasis::evaluate(std::span<const cplx> z, std::span<cplx> out) const {
    // powers[k * (degree+1) + p] = z_k^p
    const int stride = degree_ + 1;
    std::vector<cplx> powers(static_cast<std::size_t>(dim_ * stride));
    for (int k = 0; k < dim_; ++k) {
        cplx acc = 1.0;
        for (int p = 0; p <= degree_; ++p) {
            powers[k * stride + p] = acc;
            acc *= z[k];
        }
    }
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        cplx v = 1.0;
        for (int k = 0; k < dim_; ++k) v *= powers[k * stride + indices_[i][k]];
        out[i] = v;
    }
}

MultiIndexBasis enumerate_basis(int n, int d) {
    check_args(n, d);
    std::vector<MultiIndex> out;
    out.reserve(dimension_counts(n, d).m);
    for (int k = 0; k <= n; ++k) append_degree(k, d, out);
    return MultiIndexBasis(d, n, std::move(out));
}

MultiIndexBasis enumerate_homogeneous_basis(int n, int d) {
    check_args(n, d);
    std::vector<MultiIndex> out;
    append_degree(n, d, out);
    return MultiIndexBasis(d, n, std::move(out));
}

std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        // r * (a - b + i) is divisible by i; reduce first to delay overflow.
        const std::uint64_t num = a - b + i;
        const std::uint64_t g = std::gcd(r, i);
        const std::uint64_t r1 = r / g;
        const std::uint64_t i1 = i / g;
        r = checked_mul(r1, num / i1);
    }
    return r;
}

DimensionCounts dimension_counts(int n, int d) {
    check_args(n, d);
    const auto un = static_cast<std::uint64_t>(n);
    const auto ud = static_cast<std::uint64_t>(d);
    DimensionCounts c{};
    c.m = binomial(un + ud, un);
    c.h = n == 0 ? 1 : binomial(un + ud - 1, un);
    c.l = checked_mul(ud, binomial(ud + un, ud + 1));
    c.r = checked_mul(un, c.h);
    return c;
}

namespace {
std::atomic<bool> g_cap_override{false};
}

int default_degree_cap(int d) {
    switch (d) {
        case 1: return 30;
        case 2: return 12;
        case 3: return 8;
        default: return 6;
    }
}

void set_degree_cap_override(bool on) { g_cap_override.store(on); }
bool degree_cap_overridden() { return g_cap_override.load(); }

void check_degree_cap(int n, int d) {
    if (!g_cap_override.load() && n > default_degree_cap(d))
        throw InvalidInput("degree " + std::to_string(n) + " exceeds the cap " +
                           std::to_string(default_degree_cap(d)) + " for d = " + std::to_string(d) +
                           " (use --override-degree-cap)");
}

}  // namespace plurilab
