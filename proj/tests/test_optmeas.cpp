#include <doctest.h>

#include <memory>

#include "oracles.hpp"
#include "plurilab/error.hpp"
#include "plurilab/fekete.hpp"
#include "plurilab/optmeas.hpp"

using namespace plurilab;

namespace {

CandidateSetPtr three() {
    return std::make_shared<const CandidateSet>(1, std::vector<cplx>{-1.0, 0.0, 1.0}, std::nullopt, Geometry::custom);
}

CandidateSetPtr circle(int m) {
    GeometrySpec g;
    g.kind = Geometry::circle;
    g.resolution = m;
    return std::make_shared<const CandidateSet>(build_set(g));
}

}  // namespace

TEST_CASE("KW gap") {
    const auto S = circle(9);
    const std::vector<double> q(9, 0.0);
    CHECK(std::abs(kw_gap(DiscreteMeasure::reference(S), q, 3).gap) < 1e-12);
    CHECK_THROWS_AS(kw_gap(DiscreteMeasure::point_mass(S, 0), q, 2), DegenerateError);

    const auto T = three();
    const std::vector<double> q3(3, 0.0);
    const DiscreteMeasure mu(T, {0.5, 0.0, 0.5});
    CHECK(std::abs(kw_gap(mu, q3, 1).gap) < 1e-12);
}

TEST_CASE("optimal measures on three points against a simplex grid") {
    const auto T = three();
    const std::vector<double> q(3, 0.0);
    const std::vector<double> x{-1.0, 0.0, 1.0};
    for (auto algo : {OptAlgo::multiplicative, OptAlgo::vertex_exchange}) {
        OptimalMeasureOptions opt;
        opt.algo = algo;
        opt.tol = 1e-7;
        for (int n : {1, 2}) {
            const auto r = solve_optimal_measure(T, q, n, opt);
            const auto grid = oracle::simplex_grid_argmax(x, n, 1e-3);
            CHECK(r.converged);
            CHECK(r.kw_gap / r.dimension_n <= 1e-6);
            CHECK(r.det_monotone);
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(std::abs(r.measure.mass(k) - grid[k]) <= 1e-3 + 1e-12);
                CHECK(std::abs(r.measure.mass(k) - (n == 1 ? (k == 1 ? 0.0 : 0.5) : 1.0 / 3)) <= 1e-4);
            }
        }
    }
}

TEST_CASE("uniform circle measure is stationary") {
    const auto S = circle(15);
    const std::vector<double> q(15, 0.0);
    const auto r = solve_optimal_measure(S, q, 4);
    CHECK(r.iterations == 0);
    CHECK(r.converged);
}

TEST_CASE("solver invariants on a weighted disk") {
    GeometrySpec g;
    g.kind = Geometry::disk;
    g.radial_resolution = 6;
    g.angular_resolution = 12;
    const auto S = std::make_shared<const CandidateSet>(build_set(g));
    const auto q = eval_weight(AdmissibleWeight::quadratic(), *S);
    for (auto algo : {OptAlgo::multiplicative, OptAlgo::vertex_exchange}) {
        OptimalMeasureOptions opt;
        opt.algo = algo;
        opt.tol = 1e-6;
        const auto r = solve_optimal_measure(S, q, 3, opt);
        CHECK(r.converged);
        CHECK(r.det_monotone);
        const double N = 4;
        double tr = 0, mx = 0;
        for (std::size_t k = 0; k < S->size(); ++k) {
            tr += r.measure.mass(k) * r.bergman[k];
            mx = std::max(mx, r.bergman[k]);
        }
        CHECK(tr == doctest::Approx(N).epsilon(1e-10));
        CHECK(mx <= N * (1 + opt.tol) + 1e-9);
        // the multiplicative iteration leaves geometrically decaying residue masses
        const auto cert = support_certificate(r.measure, q, 3, 1e-3, 1e-6);
        CHECK(cert.ok());

        // Fekete determinant does not beat the optimal determinant
        const auto f = fekete(*S, 3, q);
        const auto fs = gram_matrix(empirical_measure(f, S), q, 3);
        CHECK(fs.log_det <= r.log_det + 1e-6);
    }
}

TEST_CASE("optimal determinant sequence on the circle") {
    const auto S = circle(41);
    const std::vector<double> q(41, 0.0);
    const auto seq = optimal_det_sequence(S, q, 6);
    for (double v : seq.normalized_log_det) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("optimal determinants on an interval decrease toward log(1/2)") {
    GeometrySpec g;
    g.kind = Geometry::interval;
    g.resolution = 201;
    g.rule = IntervalRule::chebyshev;
    const auto S = std::make_shared<const CandidateSet>(build_set(g));
    const std::vector<double> q(201, 0.0);
    OptimalMeasureOptions opt;
    opt.tol = 1e-5;
    const auto seq = optimal_det_sequence(S, q, 8, opt);
    for (std::size_t i = 1; i < seq.normalized_log_det.size(); ++i)
        CHECK(seq.normalized_log_det[i] < seq.normalized_log_det[i - 1]);
    CHECK(seq.normalized_log_det.back() > std::log(0.5));
}

TEST_CASE("mass histogram") {
    const std::vector<double> m{0.5, 0.05, 0.04, 1e-20, 0.0};
    const auto h = mass_histogram(m, 3);
    REQUIRE(h.size() == 3);
    CHECK(h[0] == 1);
    CHECK(h[1] == 2);
    CHECK(h[2] == 1);
}
