#include <doctest.h>

#include "oracles.hpp"
#include "plurilab/energy.hpp"
#include "plurilab/error.hpp"

using namespace plurilab;

TEST_CASE("extremal function values") {
    const auto d = ExtremalModel::disk(0.5);
    const std::vector<cplx> z{2.0}, in{0.25};
    CHECK(eval_extremal(d, z) == doctest::Approx(std::log(4.0)));
    CHECK(eval_extremal(d, in) == 0.0);
    const auto w = ExtremalModel::weighted_disk();
    const std::vector<cplx> a{0.5}, b{1e6};
    CHECK(eval_extremal(w, a) == doctest::Approx(0.25));
    CHECK(eval_extremal(w, b) - std::log(1e6) == doctest::Approx(0.5 + 0.5 * std::log(2.0)).epsilon(1e-12));
    const auto t = ExtremalModel::torus(2);
    const std::vector<cplx> p{2.0, cplx(0, 3)};
    CHECK(eval_extremal(t, p) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("Robin constants") {
    CHECK(robin_constant(ExtremalModel::disk(1.0)) == doctest::Approx(0.0));
    CHECK(robin_constant(ExtremalModel::disk(0.5)) == doctest::Approx(std::log(2.0)));
    CHECK(robin_constant(ExtremalModel::weighted_disk()) == doctest::Approx(oracle::weighted_disk_robin()).epsilon(1e-14));
}

TEST_CASE("one-variable energies") {
    const auto T = ExtremalModel::torus(1);
    const auto h = ExtremalModel::disk(0.5);
    const auto W = ExtremalModel::weighted_disk();
    CHECK(energy(T, T) == doctest::Approx(0.0));
    CHECK(energy(h, T) / (2 * M_PI) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(energy(T, h) == doctest::Approx(-energy(h, T)).epsilon(1e-12));
    const double rhs = 0.75 + 0.5 * std::log(2.0);
    CHECK(energy(W, T) / (2 * M_PI) == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(energy(W, T) == doctest::Approx(-energy(T, W)).epsilon(1e-10));
}

TEST_CASE("cocycle and monotonicity") {
    const auto a = ExtremalModel::disk(0.5), b = ExtremalModel::disk(0.8), c = ExtremalModel::weighted_disk();
    const double cyc = energy(a, b) + energy(b, c) + energy(c, a);
    CHECK(std::abs(cyc) < 1e-9);
    // V_a >= V_b pointwise when r_a < r_b
    CHECK(energy(a, b) >= 0.0);
    CHECK(energy(ExtremalModel::disk(0.3), b) > energy(a, b));
}

TEST_CASE("quadrature converges") {
    const auto W = ExtremalModel::weighted_disk(), T = ExtremalModel::torus(1);
    const double exact = 2 * M_PI * (0.75 + 0.5 * std::log(2.0));
    CHECK(std::abs(energy(W, T, 512) - exact) <= 1e-10);
    CHECK(std::abs(energy(W, T, 16) - exact) <= 1e-10);
    CHECK(weighted_mass_integral(W) == doctest::Approx(oracle::weighted_disk_q_integral()).epsilon(1e-12));
    CHECK(oracle::weighted_disk_q_integral() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("polydisk energies against the toric formula") {
    const std::vector<std::vector<double>> cases{{0.5, 1.0}, {2.0, 0.7}, {1.0, 1.0}};
    const std::vector<std::vector<double>> others{{1.0, 1.0}, {0.4, 3.0}, {1.5, 0.9}};
    for (const auto& r : cases)
        for (const auto& s : others) {
            const double e = energy(ExtremalModel::polydisk(r), ExtremalModel::polydisk(s));
            CHECK(e == doctest::Approx(oracle::polydisk_energy(r, s)).epsilon(1e-12));
        }
    const std::vector<double> r3{0.5, 0.8, 1.2}, s3{1.0, 1.0, 1.0};
    CHECK(energy(ExtremalModel::polydisk(r3), ExtremalModel::torus(3)) ==
          doctest::Approx(oracle::polydisk_energy(r3, s3)).epsilon(1e-12));
}

TEST_CASE("unsupported pairs") {
    CHECK_THROWS_AS(energy(ExtremalModel::torus(2), ExtremalModel::torus(1)), UnsupportedError);
    CHECK_THROWS_AS(energy(ExtremalModel::weighted_disk(), ExtremalModel::torus(2)), UnsupportedError);
}

TEST_CASE("Gauss-Legendre") {
    std::vector<double> x, w;
    gauss_legendre(8, 0.0, 2.0, x, w);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 15);
    CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-13));
}

TEST_CASE("d^w against delta^w in closed form") {
    const auto r = dw_vs_deltaw_check(ExtremalModel::weighted_disk());
    CHECK(r.q_integral == doctest::Approx(0.25));
    CHECK(r.dw == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.closed_form_gap <= 1e-10);
    CHECK(r.delta_closed == doctest::Approx(std::exp(-0.75) / std::sqrt(2.0)).epsilon(1e-12));

    const auto u = dw_vs_deltaw_check(ExtremalModel::disk(0.5));
    CHECK(u.q_integral == 0.0);
    CHECK(u.product == doctest::Approx(0.5));
    CHECK(u.closed_form_gap <= 1e-12);
}

TEST_CASE("Rumely check on a circle") {
    GeometrySpec g;
    g.kind = Geometry::circle;
    g.radius = 0.5;
    g.resolution = 101;
    const auto S = build_set(g);
    const auto r = rumely_check(ExtremalModel::disk(0.5), S, 10);
    CHECK(r.rhs == doctest::Approx(std::log(2.0)));
    CHECK(r.delta_exact == doctest::Approx(0.5));
    CHECK(r.monotone);
    CHECK(r.delta_at_n_max == doctest::Approx(0.5 * std::pow(11.0, 0.1)).epsilon(5e-3));
    CHECK(r.gap < 0.02);
}
