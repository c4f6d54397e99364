#include <doctest.h>

#include <set>

#include "plurilab/basis.hpp"
#include "plurilab/error.hpp"

using namespace plurilab;

TEST_CASE("basis enumeration order") {
    const auto b = enumerate_basis(2, 2);
    const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(b.indices() == want);
    CHECK(b.find({1, 1}) == 4);
    CHECK(b.find({3, 0}) == -1);

    const auto c = enumerate_basis(1, 3);
    const std::vector<MultiIndex> want3{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(c.indices() == want3);

    CHECK(enumerate_basis(0, 5).size() == 1);
}

TEST_CASE("dimension counts") {
    auto k = dimension_counts(2, 2);
    CHECK(k.m == 6);
    CHECK(k.h == 3);
    CHECK(k.l == 8);
    CHECK(k.r == 6);
    k = dimension_counts(1, 3);
    CHECK(k.m == 4);
    CHECK(k.h == 3);
    CHECK(k.l == 3);
    CHECK(k.r == 3);
    CHECK(dimension_counts(0, 4).m == 1);
    CHECK(dimension_counts(0, 4).l == 0);
}

TEST_CASE("count identities hold exactly") {
    for (int d = 1; d <= 6; ++d)
        for (int n = 0; n <= 30; ++n) {
            const auto k = dimension_counts(n, d);
            CHECK(k.l * static_cast<std::uint64_t>(d + 1) == static_cast<std::uint64_t>(d) * n * k.m);
            std::uint64_t s = 0;
            for (int j = 1; j <= n; ++j) s += static_cast<std::uint64_t>(j) * dimension_counts(j, d).h;
            CHECK(k.l == s);
        }
}

TEST_CASE("enumeration is a bijection onto the degree-n monomials") {
    for (int d = 1; d <= 4; ++d)
        for (int n = 0; n <= 6; ++n) {
            const auto b = enumerate_basis(n, d);
            const auto k = dimension_counts(n, d);
            REQUIRE(b.size() == k.m);
            std::set<MultiIndex> seen(b.indices().begin(), b.indices().end());
            CHECK(seen.size() == b.size());
            std::uint64_t deg = 0;
            for (std::size_t i = 0; i < b.size(); ++i) {
                CHECK(b.degree_of(i) == total_degree(b[i]));
                if (i) CHECK(b.degree_of(i) >= b.degree_of(i - 1));
                deg += static_cast<std::uint64_t>(b.degree_of(i));
            }
            CHECK(deg == k.l);
            CHECK(enumerate_homogeneous_basis(n, d).size() == k.h);
        }
}

TEST_CASE("overflow and invalid arguments") {
    CHECK_THROWS_AS(dimension_counts(200, 200), OverflowError);
    CHECK_THROWS_AS(binomial(200, 100), OverflowError);
    CHECK_THROWS_AS(enumerate_basis(2, 0), InvalidInput);
    CHECK_THROWS_AS(enumerate_basis(-1, 2), InvalidInput);
    CHECK(binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("degree cap") {
    CHECK(default_degree_cap(1) == 30);
    CHECK(default_degree_cap(2) == 12);
    CHECK(default_degree_cap(3) == 8);
    CHECK(default_degree_cap(5) == 6);
    CHECK_THROWS_AS(check_degree_cap(31, 1), InvalidInput);
    CHECK_NOTHROW(check_degree_cap(30, 1));
    set_degree_cap_override(true);
    CHECK_NOTHROW(check_degree_cap(31, 1));
    set_degree_cap_override(false);
}

TEST_CASE("monomial evaluation") {
    const auto b = enumerate_basis(2, 2);
    const std::vector<cplx> z{{2.0, 0.0}, {0.0, 1.0}};
    std::vector<cplx> out(b.size());
    b.evaluate(z, out);
    CHECK(out[0] == cplx(1, 0));
    CHECK(out[3] == cplx(4, 0));
    CHECK(std::abs(out[4] - cplx(0, 2)) < 1e-15);
    CHECK(std::abs(out[5] - cplx(-1, 0)) < 1e-15);
}
