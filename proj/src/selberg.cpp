#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtheta/detail/mp.hpp"
#include "qtheta/detail/specfun_impl.hpp"
#include "qtheta/testfn.hpp"

namespace qtheta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNodes = 20;

struct RadialNodes {
    std::vector<double> s, weight;  // weight includes the Jacobian 2s and k(u)
};

// k(u) = |tau| Phi(|tau| (2u + 1)) sampled on Gauss panels in s = sqrt(u)
RadialNodes radial_kernel(const SpectralWindow& w, double atau, const Precision& prec)
{
    // cut where the Phi envelope has dropped by 1e-13
    const double env0 = phi_envelope(atau, w);
    double s_max = 0.5;
    while (phi_envelope(atau * (2.0 * s_max * s_max + 1.0), w) * (1.0 + s_max) > 1e-13 * env0) s_max += 0.25;

    // phase rates: Xi_t(s^2) in s is bounded by the t-oscillation handled through
    // the panel count, the kernel's own phase grows like 4 m |tau| s
    const double m = 2.0 * kPi * std::sin(w.alpha());
    const detail::GaussRule<double> rule = detail::gauss_legendre(kNodes, detail::Num<double>{});
    RadialNodes out;
    double a = 0.0;
    while (a < s_max) {
        const double rate = 4.0 * m * atau * (a + 0.25) + 4.0 * w.max_freq() + 1.0;
        const double b = std::min(s_max, a + std::min(0.25, 6.0 / rate));
        const double half = (b - a) / 2, mid = (a + b) / 2;
        for (int i = 0; i < kNodes; ++i) {
            const double s = mid + half * rule.x[static_cast<std::size_t>(i)];
            const double P = atau * (2.0 * s * s + 1.0);
            const double k = atau * phi_abel(P, atau, w, prec).value;
            out.s.push_back(s);
            out.weight.push_back(half * rule.w[static_cast<std::size_t>(i)] * 2.0 * s * k);
        }
        a = b;
    }
    return out;
}

}  // namespace

std::vector<double> selberg_forward(const SpectralWindow& w, double tau, std::span<const double> ts,
                                    const Precision& prec)
{
    if (tau == 0.0 || !std::isfinite(tau))
        throw std::invalid_argument("selberg_forward: tau must be a nonzero real");
    const RadialNodes nodes = radial_kernel(w, std::abs(tau), prec);
    std::vector<double> out;
    for (double t : ts) {
        // the t-oscillation of Xi_t(s^2) is about 2t per unit s; refuse what the panels cannot resolve
        if (std::abs(t) > 60.0)
            throw std::invalid_argument("selberg_forward: |t| > 60 is not resolved by the radial panels");
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.s.size(); ++i) {
            double err = 0.0;
            sum += nodes.weight[i] * detail::xi_double(t, nodes.s[i] * nodes.s[i], err);
        }
        out.push_back(4.0 * kPi * sum);
    }
    return out;
}

double selberg_forward(const SpectralWindow& w, double tau, double t, const Precision& prec)
{
    const double ts[1] = {t};
    return selberg_forward(w, tau, std::span<const double>(ts), prec).front();
}

PdeResult pde_residual(const std::array<double, 4>& coords, const SpectralWindow& w, double step, bool richardson)
{
    const auto [a, b, c, d] = coords;
    PdeResult out;
    out.P = a * a + b * b + c * c + d * d;
    out.tau = a * a - b * b - c * c + d * d;
    if (!(std::abs(out.tau) >= 0.1) || !(out.P >= 1.2 * std::abs(out.tau)))
        throw std::invalid_argument("pde_residual: need |tau| >= 0.1 and P >= 1.2 |tau|");
    if (!(step > 0.0))
        throw std::invalid_argument("pde_residual: step must be positive");

    auto phi = [&](std::array<double, 4> x) {
        const double P = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        const double tau = x[0] * x[0] - x[1] * x[1] - x[2] * x[2] + x[3] * x[3];
        return phi_abel(P, tau, w).value;
    };
    out.phi = phi(coords);
    // (1/4)(d_a^2 - d_b^2 - d_c^2 + d_d^2) by central differences
    auto laplacian = [&](double h) {
        constexpr double sign[4] = {1.0, -1.0, -1.0, 1.0};
        double acc = 0.0;
        for (int i = 0; i < 4; ++i) {
            std::array<double, 4> up = coords, down = coords;
            up[static_cast<std::size_t>(i)] += h;
            down[static_cast<std::size_t>(i)] -= h;
            acc += sign[i] * (phi(up) - 2.0 * out.phi + phi(down)) / (h * h);
        }
        return acc / 4.0;
    };
    double lap = laplacian(step);
    if (richardson)
        lap = (4.0 * laplacian(step / 2.0) - lap) / 3.0;
    const double mass = 4.0 * kPi * kPi * out.tau * out.phi;
    out.residual = -lap + mass;
    out.scale = std::abs(lap) + std::abs(mass);
    return out;
}

}  // namespace qtheta
