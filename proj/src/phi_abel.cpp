#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qtheta/testfn.hpp"

namespace qtheta {

// Phi = -(sqrt2/pi) int_0^inf v^-1/2 Q_P(v + P) dv = -(2 sqrt2/pi) int_0^inf Q_P(w^2 + P) dw.
// The w-integral is taken on panels and extended until the majorant tail is small.
PhiValue phi_abel(double P, double tau, const SpectralWindow& w, const Precision& prec)
{
    prec.validate();
    if (!std::isfinite(P) || !std::isfinite(tau) || P < std::abs(tau))
        throw std::invalid_argument("phi_abel: need finite P >= |tau|");
    PhiValue out;
    out.route = PhiRoute::Abel;
    double atau = std::abs(tau);
    if (atau < kTauFloor) {
        atau = kTauFloor;
        out.tau_floored = true;
    }
    P = std::max(P, atau);
    const double tol = std::max(prec.rel_tol, 1e-14);

    const double k = 2.0 * std::numbers::pi * std::cos(w.alpha());
    const double m = 2.0 * std::numbers::pi * std::sin(w.alpha());
    // panel width resolves both the Gaussian factor e^{-k w^2} and the phase m w^2
    const double width = 0.5 / std::sqrt(1.0 + k + m);
    auto f = [&](double x) { return Q_P(x * x + P, atau, w); };

    double I = 0.0, quad_err = 0.0, W = 0.0, next = 1.0;
    for (;;) {
        const int panels = std::max(1, static_cast<int>(std::ceil((next - W) / width)));
        const double step = (next - W) / panels;
        for (int i = 0; i < panels; ++i) {
            double err = 0.0;
            const double a = W + i * step;
            I += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, a + step, 0, 0.0, &err);
            quad_err += err;
        }
        W = next;
        const double tail = abel_tail_bound(P, W, w);
        const double scale = std::max(std::abs(2.0 * std::numbers::sqrt2 / std::numbers::pi * I), prec.abs_floor);
        if (tail <= 0.1 * tol * scale) {
            out.error = tail + 2.0 * std::numbers::sqrt2 / std::numbers::pi * quad_err;
            break;
        }
        if (W > 1e4) {
            std::ostringstream os;
            os << "phi_abel: tail bound " << tail << " not below the tolerance at P=" << P << " tau=" << tau;
            throw PrecisionError(os.str());
        }
        next = 2.0 * W;
    }
    out.value = -2.0 * std::numbers::sqrt2 / std::numbers::pi * I;
    return out;
}

}  // namespace qtheta
