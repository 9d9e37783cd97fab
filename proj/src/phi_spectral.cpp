#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qtheta/detail/specfun_impl.hpp"
#include "qtheta/testfn.hpp"

namespace qtheta {

namespace {

using detail::MpReal;
using detail::Num;

constexpr double kPi = std::numbers::pi;
constexpr double kLn10 = 2.302585092994046;

// Phi = (1 / (2 pi |tau|)) int_0^inf h(t; tau) Xi_t(u) t tanh(pi t) dt
//
// The integrand is O(envelope) while Phi can be smaller by dozens of orders of
// magnitude, so each node is evaluated at the precision its own size demands
// and the sum is carried in extended precision.
class SpectralIntegral {
public:
    SpectralIntegral(double P, double atau, const SpectralWindow& w)
        : w_(w), atau_(atau), x_(2.0 * kPi * atau), u_((P - atau) / (2.0 * atau))
    {
        theta_ = 2.0 * std::asinh(std::sqrt(u_));
    }

    // log of the integrand size at t (|Xi| <= 1)
    double log_env(double t) const
    {
        const double a = w_.alpha();
        const double shape = w_.kind() == SpectralWindow::Kind::Gaussian
                                 ? -t * t / (2.0 * w_.sigma() * w_.sigma())
                                 : std::log(w_.shape_bound(t));
        const double ch = (a - kPi / 2) * t + std::log1p(std::exp(-2.0 * a * t)) - std::log(2.0);
        return shape + ch + std::log(2.0 * std::sqrt(atau_)) + detail::k_log_scale(t, x_)
               + std::log(std::max(t, 1e-300) * std::tanh(kPi * t));
    }

    // local oscillation rate of the integrand, used to size panels
    double omega(double t) const
    {
        return theta_ + std::acosh(std::max(1.0, t / x_)) + w_.max_freq() + 1.0;
    }

    double decay_rate(double t) const
    {
        double r = kPi / 2 - w_.alpha();
        if (w_.kind() == SpectralWindow::Kind::Gaussian)
            r += t / (w_.sigma() * w_.sigma());
        return r;
    }

    double peak() const
    {
        double best = -1e300;
        for (double t = 0.0;; t += 0.25) {
            const double le = log_env(std::max(t, 1e-3));
            best = std::max(best, le);
            if ((t > x_ + 1.0 && le < best - 20.0) || t > 1e5)
                return std::exp(best);
        }
    }

    // integral with absolute error about `target`
    double run(double target) const
    {
        // truncation point and peak size
        double t = 0.0, best = -1e300, t_end = 0.0;
        const double log_cut = std::log(0.01 * target);
        for (;; t += 0.25) {
            const double le = log_env(std::max(t, 1e-3));
            best = std::max(best, le);
            if (t > x_ + 1.0 && le - std::log(decay_rate(t)) < log_cut && le < best) {
                t_end = t;
                break;
            }
            if (t > 1e5)
                throw PrecisionError("phi_spectral: the spectral envelope does not decay");
        }
        const double rel_digits = std::max(0.0, (best - std::log(target)) / kLn10) + 2.0;
        const int n = static_cast<int>(std::ceil(rel_digits)) + 12;
        const int acc_digits = static_cast<int>(std::ceil(std::max(best, 0.0) / kLn10 + rel_digits)) + 10;
        const Num<MpReal> num(std::max(acc_digits, 20));
        const detail::GaussRule<MpReal> rule = detail::gauss_legendre(n, num);

        // panels: first [0, 1/2] (poles of tanh at +-i/2), then no wider than the
        // distance to the origin and n / (1.5 omega)
        std::vector<double> edges{0.0, 0.5};
        while (edges.back() < t_end) {
            const double a = edges.back();
            double width = std::max(a, 0.5);
            for (int it = 0; it < 2; ++it) width = std::min(std::max(a, 0.5), n / (1.5 * omega(a + width)));
            edges.push_back(std::min(t_end, a + width));
        }
        const double nodes = static_cast<double>(n) * (edges.size() - 1);
        const double allowed = target / nodes;

        MpReal sum = num(0.0);
        for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
            const MpReal lo = num(edges[p]), hi = num(edges[p + 1]);
            const MpReal half = (hi - lo) / 2, mid = (hi + lo) / 2;
            for (int i = 0; i < n; ++i) {
                const MpReal tm = mid + half * rule.x[static_cast<std::size_t>(i)];
                const MpReal wm = half * rule.w[static_cast<std::size_t>(i)];
                const double td = detail::to_double(tm), wd = detail::to_double(wm);
                const double size = wd * std::exp(log_env(td));
                if (size < 1e-3 * allowed)
                    continue;
                sum += node(tm, wm, td, wd, size, allowed, num);
            }
        }
        return detail::to_double(sum);
    }

private:
    MpReal node(const MpReal& tm, const MpReal& wm, double td, double wd, double size, double allowed,
                const Num<MpReal>& acc) const
    {
        // double attempt
        double eK = 0.0, eX = 0.0;
        const double kd = detail::k_scaled_double(td, x_, eK);
        const double xd = detail::xi_double(td, u_, eX);
        const double a = w_.alpha();
        const double ch = 0.5 * (std::exp((a - kPi / 2) * td) + std::exp((-a - kPi / 2) * td));
        const double pref = w_.shape(td) * ch * 2.0 * std::sqrt(atau_) * td * std::tanh(kPi * td);
        const double kscale = std::exp(detail::k_log_scale(td, x_));
        const double err = wd * std::abs(pref) * (eK * kscale + std::abs(kd) * eX)
                           + size * (1e-15 + omega(td) * td * 2.2e-16);
        if (err <= allowed && std::isfinite(kd) && std::isfinite(xd))
            return acc(wd * pref * kd * xd);

        const int d = std::max(20, static_cast<int>(std::ceil(std::log10(size / allowed))) + 3);
        const Num<MpReal> num(d);
        const MpReal t = num(tm);
        using std::cos;
        using std::exp;
        using std::sqrt;
        using std::tanh;
        MpReal shape = num(1.0);
        if (w_.kind() == SpectralWindow::Kind::CosineSum) {
            shape = num(0.0);
            for (std::size_t j = 0; j < w_.coeffs().size(); ++j)
                shape += num(w_.coeffs()[j]) * cos(num(w_.freqs()[j]) * t);
        } else if (w_.kind() == SpectralWindow::Kind::Gaussian) {
            const MpReal s = num(w_.sigma());
            shape = exp(-t * t / (2 * s * s));
        }
        const MpReal half_pi = num.pi() / 2, am = num(a);
        const MpReal chm = (exp((am - half_pi) * t) + exp((-am - half_pi) * t)) / 2;
        const MpReal prefm = shape * chm * 2 * sqrt(num(atau_)) * t * tanh(num.pi() * t);
        const MpReal K = detail::k_scaled_mp(t, x_, d);
        const MpReal X = detail::xi_mp(t, u_, d);
        return MpReal(wm, static_cast<unsigned>(acc.digits10)) * prefm * K * X;
    }

    const SpectralWindow& w_;
    double atau_, x_, u_, theta_ = 0.0;
};

}  // namespace

PhiValue phi_spectral(double P, double tau, const SpectralWindow& w, const Precision& prec)
{
    prec.validate();
    if (!std::isfinite(P) || !std::isfinite(tau) || P < std::abs(tau))
        throw std::invalid_argument("phi_spectral: need finite P >= |tau|");
    PhiValue out;
    out.route = PhiRoute::Spectral;
    double atau = std::abs(tau);
    if (atau < kTauFloor) {
        atau = kTauFloor;
        out.tau_floored = true;
    }
    P = std::max(P, atau);
    const SpectralIntegral integral(P, atau, w);
    const double norm = 1.0 / (2.0 * kPi * atau);
    const double tol = prec.rel_tol;

    // first pass against the envelope peak, then tighten to the value found
    double target = 1e-3 * tol * integral.peak();
    for (int pass = 0; pass < 8; ++pass) {
        const double I = integral.run(target);
        const double want = 0.5 * tol * std::max(std::abs(I), prec.abs_floor / norm);
        if (target <= want) {
            out.value = I * norm;
            out.error = target * norm;
            return out;
        }
        // |I| is resolved when it clearly exceeds the current error; otherwise dig deeper
        target = std::abs(I) > 10.0 * target ? want : std::max(target * 1e-12, want);
    }
    std::ostringstream os;
    os << "phi_spectral: no convergence at P=" << P << " tau=" << tau;
    throw PrecisionError(os.str());
}

}  // namespace qtheta
