#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plurilab/vdm.hpp"

using namespace plurilab;

namespace {

std::vector<cplx> roots(int m, double r = 1.0, double phase = 0.0) {
    std::vector<cplx> z;
    for (int k = 0; k < m; ++k) z.push_back(std::polar(r, phase + 2 * M_PI * k / m));
    return z;
}

}  // namespace

TEST_CASE("small Vandermonde values") {
    const std::vector<cplx> z{0.0, 1.0, 2.0};
    CHECK(log_abs_vdm(z, 1, 2).log_abs == doctest::Approx(std::log(2.0)));
    CHECK(log_abs_vdm(roots(3), 1, 2).log_abs == doctest::Approx(1.5 * std::log(3.0)));
    const std::vector<cplx> dup{0.0, 1.0, 1.0};
    CHECK(log_abs_vdm(dup, 1, 2).is_zero);
    CHECK(std::isinf(log_abs_vdm(dup, 1, 2).log_abs));
}

TEST_CASE("weighted Vandermonde") {
    const auto z = roots(4);
    const std::vector<double> q0(4, 0.0);
    CHECK(log_abs_weighted_vdm(z, 1, 3, q0).log_abs == doctest::Approx(log_abs_vdm(z, 1, 3).log_abs));

    // Q = -log c multiplies W by c^{nN}
    const double c = 1.7;
    const std::vector<double> qc(4, -std::log(c));
    CHECK(log_abs_weighted_vdm(z, 1, 3, qc).log_abs ==
          doctest::Approx(log_abs_vdm(z, 1, 3).log_abs + 3 * 4 * std::log(c)));

    const double s = std::sqrt(0.5);
    const std::vector<cplx> pm{s, -s};
    const std::vector<double> q{0.5, 0.5};
    CHECK(log_abs_weighted_vdm(pm, 1, 1, q).log_abs == doctest::Approx(std::log(std::sqrt(2.0)) - 1.0));
}

TEST_CASE("nth order diameter") {
    const std::vector<double> q0(3, 0.0);
    CHECK(nth_order_diameter(roots(3), 1, 2, q0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(nth_order_diameter(roots(3, 0.4), 1, 2, q0) == doctest::Approx(0.4 * std::sqrt(3.0)));
    const std::vector<cplx> dup{0.0, 1.0, 1.0};
    CHECK(nth_order_diameter(dup, 1, 2, q0) == 0.0);
    CHECK(diameter_exponent(1, 2) == doctest::Approx(2.0 / 6.0));
    CHECK(diameter_exponent(2, 1) == doctest::Approx(3.0 / 6.0));
}

TEST_CASE("product formula agrees with the QR route") {
    std::mt19937_64 g(11);
    for (int N : {2, 5, 10, 20, 35, 50}) {
        // spread points so the problem stays well posed: jittered circle of radius 1
        std::vector<cplx> z = roots(N, 1.0, 0.3);
        std::uniform_real_distribution<double> u(-0.2, 0.2);
        for (auto& p : z) p *= std::polar(1.0 + u(g), u(g) / N);
        const double want = oracle::log_vdm_product(z);
        const double got = log_abs_vdm(z, 1, N - 1).log_abs;
        CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
    std::mt19937_64 h(5);
    for (int rep = 0; rep < 10; ++rep) {
        const auto z = oracle::random_disk_points(h, 8);
        const double want = oracle::log_vdm_product(z);
        CHECK(log_abs_vdm(z, 1, 7).log_abs == doctest::Approx(want).epsilon(1e-10));
        CHECK(std::log(std::abs(oracle::vdm_1d(z))) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("translation invariance in one variable") {
    std::mt19937_64 g(3);
    const auto z = oracle::random_disk_points(g, 6);
    auto w = z;
    for (auto& p : w) p += cplx(0.3, -0.2);
    CHECK(log_abs_vdm(w, 1, 5).log_abs == doctest::Approx(log_abs_vdm(z, 1, 5).log_abs).epsilon(1e-11));
}

TEST_CASE("homogeneous Vandermonde") {
    const std::vector<cplx> e{1.0, 0.0, 0.0, 1.0};
    CHECK(log_abs_homogeneous_vdm(e, 2, 1).log_abs == doctest::Approx(0.0));

    // (t_j, t_j lambda_j) for degree n: VDMH = prod t_j^n * VDM(lambda)
    std::mt19937_64 g(8);
    const int n = 3;
    const auto lam = oracle::random_disk_points(g, n + 1);
    std::vector<cplx> pts;
    double logt = 0;
    for (std::size_t j = 0; j < lam.size(); ++j) {
        const cplx t = std::polar(0.5 + 0.1 * j, 0.7 * j);
        pts.push_back(t);
        pts.push_back(t * lam[j]);
        logt += n * std::log(std::abs(t));
    }
    CHECK(log_abs_homogeneous_vdm(pts, 2, n).log_abs ==
          doctest::Approx(logt + oracle::log_vdm_product(lam)).epsilon(1e-11));

    // points on one line through the origin
    const std::vector<cplx> line{1.0, 2.0, 2.0, 4.0};
    CHECK(log_abs_homogeneous_vdm(line, 2, 1).is_zero);
}
