#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qtheta/specfun.hpp"

using namespace qtheta;

namespace {

// K_{it}(x) = int_0^inf e^{-x cosh u} cos(t u) du
double bessel_quadrature(double t, double x)
{
    const double u_max = std::acosh(60.0 / x + 1.0);
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double u) { return std::exp(-x * std::cosh(u)) * std::cos(t * u); }, 0.0, u_max, 15, 1e-14);
}

}  // namespace

TEST_CASE("K_0(1) against its tabulated value")
{
    CHECK(bessel_K_imag(0.0, 1.0) == doctest::Approx(0.4210244382).epsilon(1e-10));
}

TEST_CASE("K_it matches direct quadrature of its integral representation")
{
    for (double t : {0.0, 0.5, 2.0, 6.0})
        for (double x : {0.3, 1.0, 4.0, 12.0}) {
            CAPTURE(t);
            CAPTURE(x);
            const double q = bessel_quadrature(t, x);
            const double scale = std::exp(-x) + 1e-300;
            CHECK(std::abs(bessel_K_imag(t, x) - q) <= 1e-10 * std::max(std::abs(q), scale));
            CHECK(bessel_K_imag_scaled(t, x) * std::exp(-std::numbers::pi * t / 2) == doctest::Approx(bessel_K_imag(t, x)).epsilon(1e-12));
        }
}

TEST_CASE("series and cosh-integral paths of K_it agree")
{
    for (double t : {0.25, 1.0, 3.0})
        for (double x : {0.1, 0.8, 2.5}) {
            const double a = bessel_K_scaled_series(t, x, 40), b = bessel_K_scaled_cosh(t, x, 40);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
}

TEST_CASE("incomplete gamma closed form")
{
    CHECK(incomplete_gamma_Q(2, 1.0) == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-14));
    CHECK(incomplete_gamma_Q(1, 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK(incomplete_gamma_Q(3, 0.0) == doctest::Approx(1.0));
    // Q(s+1, x) = Q(s, x) + x^s e^-x / s!
    CHECK(incomplete_gamma_Q(3, 2.5)
          == doctest::Approx(incomplete_gamma_Q(2, 2.5) + 2.5 * 2.5 * std::exp(-2.5) / 2.0).epsilon(1e-14));
}

TEST_CASE("spherical function: normalisation, route agreement and the Legendre equation")
{
    for (double t : {0.0, 1.0, 4.0}) CHECK(spherical_Xi(t, 0.0) == doctest::Approx(1.0));

    for (double t : {0.0, 0.5, 2.0})
        for (double u : {0.05, 0.5, 3.0}) {
            const double mehler = spherical_Xi_route(t, u, XiRoute::Mehler, 40);
            if (u < 1.0)  // the hypergeometric series converges for u < 1
                CHECK(spherical_Xi_route(t, u, XiRoute::Series, 40) == doctest::Approx(mehler).epsilon(1e-10));
            CHECK(spherical_Xi(t, u) == doctest::Approx(mehler).epsilon(1e-10));
        }
    for (double t : {0.5, 3.0})
        for (double u : {20.0, 500.0}) {
            const double mehler = spherical_Xi_route(t, u, XiRoute::Mehler, 40);
            CHECK(spherical_Xi_route(t, u, XiRoute::LargeArgument, 40) == doctest::Approx(mehler).epsilon(1e-8));
        }

    // in u: u(u+1) X'' + (2u+1) X' + (1/4 + t^2) X = 0
    for (double t : {0.3, 1.7})
        for (double u : {0.4, 1.5, 6.0}) {
            const double h = 1e-3 * (1.0 + u);
            const double xm = spherical_Xi(t, u - h), x0 = spherical_Xi(t, u), xp = spherical_Xi(t, u + h);
            const double d1 = (xp - xm) / (2 * h), d2 = (xp - 2 * x0 + xm) / (h * h);
            const double residual = u * (u + 1) * d2 + (2 * u + 1) * d1 + (0.25 + t * t) * x0;
            const double scale = std::abs(u * (u + 1) * d2) + std::abs((2 * u + 1) * d1) + std::abs((0.25 + t * t) * x0);
            CHECK(std::abs(residual) <= 1e-5 * scale);
        }
}

TEST_CASE("appendix envelopes are positive and finite on the default grids")
{
    const AppendixReport r = verify_appendix_bounds();
    CHECK(r.envelopes_positive);
    CHECK(std::isfinite(r.bessel_max()));
    CHECK(std::isfinite(r.xi_max()));
    CHECK(r.bessel_max() > 0.0);
    CHECK(bessel_envelope(0, 1.0, 1.0) > 0.0);
    CHECK(xi_envelope(2, 1.0, 1.0) > 0.0);
}

TEST_CASE("precision settings are validated")
{
    Precision p;
    p.rel_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    Precision q;
    q.working_digits = 2;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    CHECK_THROWS(bessel_K_imag(1.0, -1.0));
}
