#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qtheta/frozen_constants.hpp"
#include "qtheta/testfn.hpp"

using namespace qtheta;

namespace {

constexpr double kPi = std::numbers::pi;

const SpectralWindow& long3()
{
    static const SpectralWindow w = SpectralWindow::long_window(3.0);
    return w;
}

}  // namespace

TEST_CASE("alpha = 0 gives the Gaussian on both routes")
{
    const auto w = SpectralWindow::unit(0.0);
    for (double P : {0.5, 1.0, 2.0, 5.0})
        for (double tau : {-P, -0.3 * P, 0.0, 0.7 * P}) {
            if (tau == 0.0)
                continue;
            CHECK(phi_abel(P, tau, w).value == doctest::Approx(std::exp(-2 * kPi * P)).epsilon(1e-9));
            CHECK(phi_spectral(P, tau, w).value == doctest::Approx(std::exp(-2 * kPi * P)).epsilon(1e-9));
        }
}

TEST_CASE("Abel and spectral routes agree off the Gaussian")
{
    const SpectralWindow windows[] = {long3(), SpectralWindow::unit(kPi / 4),
                                      SpectralWindow::cosine_sum(kPi / 4, {1.0, 0.5}, {0.0, 1.0})};
    for (const auto& w : windows)
        for (double tau : {-1.0, 0.5, 2.0})
            for (double ratio : {1.01, 2.0, 6.0}) {
                const double P = ratio * std::abs(tau);
                const double a = phi_abel(P, tau, w).value, s = phi_spectral(P, tau, w).value;
                CHECK(std::abs(a - s) <= 1e-6 * std::max(std::abs(a), 1e-30));
            }
}

TEST_CASE("Q_P is the derivative of Q")
{
    for (double tau : {-0.5, 1.0})
        for (double P : {1.2, 3.0}) {
            const double h = 1e-4;
            const double fd = (Q_eval(P + h, tau, long3()) - Q_eval(P - h, tau, long3())) / (2 * h);
            CHECK(Q_P(P, tau, long3()) == doctest::Approx(fd).epsilon(1e-6));
        }
}

TEST_CASE("Phi is the Abel transform of Q_P")
{
    for (double tau : {-1.0, 0.5})
        for (double P : {1.5, 4.0}) {
            // Q_P decays like e^{-c w^2}; w <= 12 leaves nothing measurable
            const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [&](double w) { return Q_P(w * w + P, tau, long3()); }, 0.0, 12.0, 10, 1e-13);
            const double abel = -2.0 * std::sqrt(2.0) / kPi * I;
            CHECK(phi_abel(P, tau, long3()).value == doctest::Approx(abel).epsilon(1e-7));
        }
}

TEST_CASE("envelopes dominate the test function")
{
    for (double P : {0.5, 1.0, 3.0, 10.0, 30.0})
        for (double s : {-1.0, -0.5, 0.2, 1.0}) {
            const double tau = s * P;
            const double phi = std::abs(phi_abel(P, tau, long3()).value);
            CHECK(phi <= phi_envelope(P, long3()) * (1 + 1e-12));
            CHECK(phi <= phi_envelope_sup(0.9 * P, 1.1 * P, long3()) * (1 + 1e-12));
            CHECK(abel_tail_bound(P, 1.0, long3()) >= abel_tail_bound(P, 2.0, long3()));
        }
}

TEST_CASE("decay of Q and Phi stays within the frozen constants")
{
    for (double tau : {0.25, 1.0, 4.0})
        for (double ratio : {1.0, 3.0, 30.0}) {
            const double P = ratio * tau, weight = std::pow(1.0 + P, 6);
            CHECK(std::abs(Q_eval(P, tau, long3())) * weight <= frozen::kQDecay);
            CHECK(std::abs(phi_abel(P, tau, long3()).value) * weight <= frozen::kPhiDecay);
        }
}

TEST_CASE("Selberg transform recovers the spectral window")
{
    const double ts[] = {0.0, 1.0, 3.0};
    const auto fwd = selberg_forward(long3(), 1.0, ts);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(fwd[i] == doctest::Approx(h_transform(ts[i], 1.0, long3())).epsilon(1e-4));
}

TEST_CASE("Fourier kernel is even in r and peaks at zero")
{
    for (double alpha : {0.0, kPi / 4}) {
        const double peak = fourier_kernel(0.0, 1.0, alpha);
        for (double r : {0.5, 2.0}) {
            CHECK(fourier_kernel(r, 1.0, alpha) == doctest::Approx(fourier_kernel(-r, 1.0, alpha)));
            CHECK(std::abs(fourier_kernel(r, 1.0, alpha)) <= std::abs(peak));
        }
    }
}

TEST_CASE("PDE residual is small and converges at second order")
{
    const std::array<double, 4> p{1.0, 0.5, 0.4, 0.3};
    const PdeResult r = pde_residual(p, long3(), 1e-3);
    CHECK(std::abs(r.residual) <= 1e-6 * r.scale);
    const double ratio = pde_residual(p, long3(), 0.01, false).residual / pde_residual(p, long3(), 0.005, false).residual;
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("windows: bounds and argument checks")
{
    const SpectralWindow ws[] = {long3(), SpectralWindow::gaussian(kPi / 4, 2.0),
                                 SpectralWindow::cosine_sum(0.2, {1.0, -0.3}, {0.0, 2.0})};
    for (const auto& w : ws)
        for (double t : {0.0, 0.7, 3.0, 12.0}) CHECK(std::abs(w.shape(t)) <= w.shape_bound(t) * (1 + 1e-12));
    CHECK_THROWS_AS(SpectralWindow::unit(kPi / 2), std::invalid_argument);
    CHECK_THROWS_AS(SpectralWindow::long_window(0.5), std::invalid_argument);
    CHECK_THROWS_AS(phi_abel(0.5, 1.0, long3()), std::invalid_argument);
}
