#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtheta/detail/specfun_impl.hpp"

namespace qtheta {

namespace {

constexpr int kDigits = 30;

// central differences of order j = 0, 1, 2 at step h; f is evaluated in extended
// precision so the differences themselves lose nothing
template <class F>
void derivatives(F&& f, double at, double h, double out[3])
{
    using detail::MpReal;
    const MpReal m = f(at - h), c = f(at), p = f(at + h);
    out[0] = detail::to_double(c);
    out[1] = detail::to_double((p - m) / (2 * h));
    out[2] = detail::to_double((p - 2 * c + m) / (h * h));
}

void record(EnvelopeMax& best, double ratio, double t, double arg)
{
    if (!(ratio <= best.ratio))  // also catches NaN
        best = {ratio, t, arg};
}

}  // namespace

double bessel_envelope(int j, double t, double x)
{
    const double at = std::abs(t);
    return (1.0 + std::abs(std::log(x))) * std::pow((1.0 + at) / x, j) * std::exp(-std::numbers::pi * at / 2.0);
}

double xi_envelope(int j, double t, double u)
{
    const double poly = j == 0 ? 1.0 : 1.0 + t * t;
    if (u <= 2.0)
        return poly * (j == 2 ? 1.0 / u : 1.0);
    return poly * std::log(u) * std::pow(u, -0.5 - j);
}

double AppendixReport::bessel_max() const
{
    return std::max({bessel[0].ratio, bessel[1].ratio, bessel[2].ratio});
}

double AppendixReport::xi_max() const
{
    return std::max({xi[0].ratio, xi[1].ratio, xi[2].ratio});
}

AppendixReport verify_appendix_bounds(const AppendixGrid& grid)
{
    AppendixReport rep;
    for (double t : grid.bessel_t) {
        for (double x : grid.bessel_x) {
            // scaled K against the envelope without its e^{-pi|t|/2} factor
            const double h = 1e-3 * x / (1.0 + std::abs(t));
            double d[3];
            derivatives([&](double xx) { return detail::k_scaled_mp(t, xx, kDigits); }, x, h, d);
            const double scale = std::exp(std::numbers::pi * std::abs(t) / 2.0);
            for (int j = 0; j < 3; ++j) {
                const double env = bessel_envelope(j, t, x) * scale;
                rep.envelopes_positive = rep.envelopes_positive && env > 0.0;
                record(rep.bessel[j], std::abs(d[j]) / env, t, x);
            }
        }
    }
    for (double t : grid.xi_t) {
        for (double u : grid.xi_u) {
            // the oscillation length is ~ sqrt(u)/t near 0 and ~ u/t at infinity
            const double h = 1e-3 * std::min(u, std::sqrt(u)) / (1.0 + std::abs(t));
            double d[3];
            derivatives([&](double uu) { return detail::xi_mp(t, uu, kDigits); }, u, h, d);
            for (int j = 0; j < 3; ++j) {
                const double env = xi_envelope(j, t, u);
                rep.envelopes_positive = rep.envelopes_positive && env > 0.0;
                record(rep.xi[j], std::abs(d[j]) / env, t, u);
            }
        }
    }
    return rep;
}

}  // namespace qtheta
