#include <doctest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "plurilab/error.hpp"
#include "plurilab/fekete.hpp"
#include "plurilab/vdm.hpp"

using namespace plurilab;

namespace {

CandidateSet circle(double r, int m) {
    GeometrySpec g;
    g.kind = Geometry::circle;
    g.radius = r;
    g.resolution = m;
    return build_set(g);
}

std::vector<cplx> flat(const CandidateSet& S) { return S.coords(); }

}  // namespace

TEST_CASE("circle Fekete points are near roots of unity") {
    const auto S = circle(1.0, 101);
    const std::vector<double> q(101, 0.0);
    const int n = 4;
    const auto cfg = fekete(S, n, q);
    CHECK(cfg.size() == 5);
    CHECK(cfg.log_weighted_vdm >= 2.5 * std::log(5.0) - 0.05);
    CHECK(cfg.log_weighted_vdm <= 2.5 * std::log(5.0) + 1e-12);
    std::vector<double> ang;
    for (auto i : cfg.indices) ang.push_back(std::arg(S.point(i)[0]));
    std::sort(ang.begin(), ang.end());
    const double step = 2 * M_PI / 101;
    for (std::size_t k = 1; k < ang.size(); ++k) CHECK(std::abs(ang[k] - ang[k - 1] - 2 * M_PI / 5) <= step + 1e-12);
}

TEST_CASE("whole set when |S| = N") {
    const auto S = circle(1.0, 4);
    const std::vector<double> q(4, 0.0);
    const auto cfg = fekete(S, 3, q);
    auto idx = cfg.indices;
    std::sort(idx.begin(), idx.end());
    CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(cfg.log_weighted_vdm == doctest::Approx(2.0 * std::log(4.0)));
}

TEST_CASE("weighted disk Fekete points stay in the support") {
    GeometrySpec g;
    g.kind = Geometry::disk;
    g.radial_resolution = 20;
    g.angular_resolution = 32;
    const auto S = build_set(g);
    const auto q = eval_weight(AdmissibleWeight::quadratic(), S);
    const auto cfg = fekete(S, 6, q);
    for (auto i : cfg.indices) CHECK(std::abs(S.point(i)[0]) <= std::sqrt(0.5) + 1.0 / 20 + 1e-12);
}

TEST_CASE("greedy plus exchange against exhaustive search") {
    std::mt19937_64 g(31);
    int match = 0, total = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t M = 6 + static_cast<std::size_t>(rep) % 9;
        const auto z = oracle::random_disk_points(g, M);
        const CandidateSet S(1, z, std::nullopt, Geometry::custom);
        std::vector<double> q(M);
        std::uniform_real_distribution<double> u(0, 0.7);
        for (auto& x : q) x = u(g);
        for (int n = 1; n <= 3; ++n) {
            const double best = oracle::exhaustive_log_w(z, q, n);
            const auto ex = exhaustive_fekete(S, n, q);
            CHECK(ex.log_weighted_vdm == doctest::Approx(best).epsilon(1e-10));
            const auto h = fekete(S, n, q);
            CHECK(h.log_weighted_vdm <= best + 1e-9);
            ++total;
            if (h.log_weighted_vdm >= best - 1e-9) ++match;
        }
    }
    CHECK(match >= 0.95 * total);
}

TEST_CASE("exchange never decreases and respects max_sweeps") {
    const auto S = circle(1.0, 24);
    const std::vector<double> q(24, 0.0);
    const auto A = weighted_vandermonde(S, 3, q);
    const std::vector<std::size_t> start{0, 1, 2, 3};
    const double before = log_abs_det_columns(A, start);
    const auto r = exchange_select(A, start, 50);
    CHECK(log_abs_det_columns(A, r.indices) >= before);
    CHECK(r.swaps > 0);
    CHECK(exchange_select(A, start, 0).indices == start);

    // random start reaches the same value as the greedy start
    const auto ref = fekete(S, 3, q);
    const auto from_random = exchange_select(A, {5, 6, 17, 20}, 50);
    CHECK(log_abs_det_columns(A, from_random.indices) == doctest::Approx(ref.log_weighted_vdm).epsilon(1e-6));

    // an exhaustive optimum is a fixed point
    const auto opt = exhaustive_fekete(S, 3, q);
    const auto fx = exchange_refine(opt, S, q);
    CHECK(fx.swaps == 0);
}

TEST_CASE("empirical measure of a Fekete configuration") {
    const auto S = std::make_shared<const CandidateSet>(circle(1.0, 40));
    const std::vector<double> q(40, 0.0);
    const auto cfg = fekete(*S, 4, q);
    const auto mu = empirical_measure(cfg, S);
    double s = 0;
    for (auto i : cfg.indices) {
        CHECK(mu.mass(i) == doctest::Approx(0.2));
        s += mu.mass(i);
    }
    CHECK(s == doctest::Approx(1.0));
    const auto sys = gram_matrix(mu, q, 4);
    const auto B = bergman_function(sys, *S, q);
    for (auto i : cfg.indices) CHECK(B[i] == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("diameter sequences") {
    const auto S = circle(1.0, 201);
    const std::vector<double> q(201, 0.0);
    const auto seq = diameter_sequence(S, q, 12, 1);
    for (std::size_t i = 0; i < seq.degrees.size(); ++i) {
        const int n = seq.degrees[i];
        CHECK(seq.delta[i] == doctest::Approx(std::pow(n + 1.0, 1.0 / n)).epsilon(5e-3));
    }
    CHECK(seq.monotone_decreasing);

    const auto Sr = circle(0.3, 201);
    const auto sr = diameter_sequence(Sr, q, 6, 1);
    for (std::size_t i = 0; i < sr.delta.size(); ++i) CHECK(sr.delta[i] == doctest::Approx(0.3 * seq.delta[i]).epsilon(1e-9));

    GeometrySpec iv;
    iv.kind = Geometry::interval;
    iv.resolution = 51;
    const auto I = build_set(iv);
    const std::vector<double> qi(51, 0.0);
    CHECK(diameter_sequence(I, qi, 1, 1).delta[0] == doctest::Approx(2.0));
}

TEST_CASE("extrapolation recovers a synthetic limit") {
    std::vector<int> n;
    std::vector<double> v;
    for (int k = 2; k <= 20; ++k) {
        n.push_back(k);
        v.push_back(-0.5 + 0.8 / k + 0.3 * std::log(k) / k - 0.2 / (k * k));
    }
    const auto e = extrapolate_log_diameter(n, v);
    CHECK(e.terms == 4);
    CHECK(e.log_limit == doctest::Approx(-0.5).epsilon(1e-9));
}
