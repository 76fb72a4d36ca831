#include <doctest.h>

#include <cmath>
#include <random>

#include "artifact/special.hpp"
#include "oracles.hpp"

using namespace artifact;
using cd = std::complex<double>;

namespace {

// |mid(b) - series(x)| at 256 bits.
double series_gap(double x, const Ball& b) {
    mpfr_t s;
    mpfr_init2(s, 256);
    oracle::bessel_I_3_2_series(s, x);
    mpfr_sub(s, s, b.mid(), MPFR_RNDN);
    double out = std::fabs(mpfr_get_d(s, MPFR_RNDU));
    mpfr_clear(s);
    return out;
}

}  // namespace

TEST_CASE("I_{3/2} closed form against the power series") {
    for (double x = 0.1; x <= 20.0 + 1e-12; x += 0.1) {
        Ball b = bessel_I_3_2(x, 256);
        CHECK(series_gap(x, b) < 1e-12);
        CHECK(b.rad_d() < 1e-60);
    }
}

TEST_CASE("I_{3/2} near zero follows the leading series term") {
    for (double x : {1e-3, 1e-4, 1e-6}) {
        double lead = std::pow(x / 2.0, 1.5) / std::tgamma(2.5);
        CHECK(bessel_I_3_2(x, 256).mid_d() == doctest::Approx(lead).epsilon(x));
    }
    CHECK_THROWS_AS(bessel_I_3_2(0.0, 128), std::domain_error);
    CHECK_THROWS_AS(bessel_I_3_2(-1.0, 128), std::domain_error);
}

TEST_CASE("I_{3/2} radius shrinks with precision") {
    for (double x : {0.3, 2.0, 11.5}) {
        double prev = INFINITY;
        for (mpfr_prec_t p : {64, 96, 128, 192, 256, 512}) {
            double r = bessel_I_3_2(x, p).rad_d();
            CHECK(r <= prev);
            prev = r;
        }
    }
}

TEST_CASE("complex gamma") {
    CHECK(std::abs(cgamma(5.0) - 24.0) < 1e-12);
    CHECK(std::abs(cgamma(0.5) - std::sqrt(M_PI)) < 1e-13);
    cd z(0.3, 1.7);
    CHECK(std::abs(cgamma(z + 1.0) - z * cgamma(z)) < 1e-13 * std::abs(cgamma(z + 1.0)));
}

TEST_CASE("Whittaker W_{0,mu} equals sqrt(z/pi) K_mu(z/2)") {
    for (double mu : {0.1, 0.25, 0.7})
        for (double z : {0.5, 2.0, 7.0}) {
            CDValue w = whittaker_W({0.0, mu, z, 64});
            double ref = std::sqrt(z / M_PI) * std::cyl_bessel_k(mu, z / 2.0);
            CHECK(std::abs(w.mid - ref) < 1e-10 * std::max(1.0, ref));
        }
}

TEST_CASE("Whittaker degenerate case and mu symmetry") {
    for (double z : {0.3, 1.0, 5.0}) {
        CHECK(std::abs(whittaker_W({0.0, 0.5, z, 64}).mid - std::exp(-z / 2.0)) < 1e-12);
        CHECK(std::abs(whittaker_W({0.25, -0.25, z, 64}).mid - std::pow(z, 0.25) * std::exp(-z / 2.0)) < 1e-12);
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        double kappa = U(rng) < 0.5 ? 0.25 : -0.25;
        cd mu(0.0, 2.0 * U(rng));
        double z = 0.2 + 10.0 * U(rng);
        CDValue a = whittaker_W({kappa, mu, z, 64});
        CDValue b = whittaker_W({kappa, -mu, z, 64});
        CHECK(std::abs(a.mid - b.mid) < 1e-8);
    }
    CHECK_THROWS_AS(whittaker_W({0.25, 0.0, 0.0, 64}), std::invalid_argument);
}

TEST_CASE("xi: closed form and regulated quadrature agree on the grid") {
    for (double x : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0})
        for (double t : {0.0, 0.4, 1.0}) {
            CDValue c = xi_closed_form({x, t, 64});
            XiQuadratureReport q = xi_quadrature({x, t, 64});
            CHECK(q.value.converged);
            CHECK(std::abs(c.mid - q.value.mid) / std::abs(c.mid) < 1e-3);
            CHECK(q.raw.size() == 5);
        }
    CDValue v = xi_closed_form({1.0, 0.0, 64});
    CHECK(std::isfinite(std::abs(v.mid)));
    CHECK(std::abs(v.mid) > 0.0);
    CHECK_THROWS_AS(xi_closed_form({0.0, 0.0, 64}), std::invalid_argument);
    CHECK_THROWS_AS(xi_quadrature({1.0, 0.0, 64}, 0.0), std::invalid_argument);
}

TEST_CASE("density is |xi|^2 / pi") {
    for (double x : {-1.5, 0.7}) {
        DValue d = whittaker_density(x, 0.4);
        double m = std::abs(xi_closed_form({x, 0.4, 64}).mid);
        CHECK(d.mid == doctest::Approx(m * m / M_PI));
        CHECK(d.mid >= 0.0);
    }
}
