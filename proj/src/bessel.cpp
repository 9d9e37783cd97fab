#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qtheta/detail/specfun_impl.hpp"

namespace qtheta {

namespace detail {

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr double kStrip = 1.35;  // half-width of the analyticity strip used for the trapezoid step

template <class R>
R euler_gamma(const Num<R>& num);

template <>
double euler_gamma(const Num<double>&)
{
    return 0.57721566490153286;
}

template <>
MpReal euler_gamma(const Num<MpReal>& num)
{
    MpReal g(0, static_cast<unsigned>(num.digits10));
    mpfr_const_euler(g.backend().data(), MPFR_RNDN);
    return g;
}

// e^{-x cosh u} cos(t u) by the trapezoid rule on [0, U]; scaled by e^{pi t/2}.
// The working precision must absorb the e^{-pi t/2} cancellation.
template <class R>
R cosh_path(const std::type_identity_t<R>& order, double x, const Num<R>& num)
{
    using std::cos;
    using std::cosh;
    using std::exp;
    const double t = to_double(order);
    const int D = num.digits10;
    const double h = 2.0 * std::numbers::pi * kStrip
                     / (t * kStrip + D * kLn10 + x * (1.0 - std::cos(kStrip)) + 5.0
                        + std::log(2.0 + std::abs(std::log(x))));
    const double U = std::acosh(1.0 + (D * kLn10 + 10.0) / x);  // e^{-x(cosh U - 1)} negligible
    const R hh = num(h), xx = num(x), tt = num(order);
    R sum = exp(-xx) / 2;
    const int n = static_cast<int>(std::ceil(U / h));
    for (int j = 1; j <= n; ++j) {
        const R u = hh * j;
        sum += exp(-xx * cosh(u)) * cos(tt * u);
    }
    return sum * hh * exp(num.pi() * tt / 2);
}

// K_0 from its logarithmic series, scaled by 1
template <class R>
R k0_series(double x, const Num<R>& num)
{
    using std::abs;
    using std::log;
    const R q = num(x) * num(x) / 4;
    R term = num(1.0), i0 = num(1.0), rest = num(0.0), harmonic = num(0.0);
    const double stop = std::pow(10.0, -num.digits10 - 2);
    for (int m = 1; m < 100000; ++m) {
        term = term * q / (m * m);
        harmonic += R(num(1.0)) / m;
        i0 += term;
        rest += term * harmonic;
        if (m > x && to_double(abs(term)) * (1.0 + m) < stop * to_double(i0))
            break;
    }
    return -(log(num(x) / 2) + euler_gamma(num)) * i0 + rest;
}

// e^{pi t/2} K_{it}(x) = -sqrt(2 pi / (t (1 - e^{-2 pi t}))) Im(e^{i psi} S),
// psi = t log(x/2) - arg Gamma(1+it), S = sum_m (x/2)^{2m} / (m! (1+it)_m)
template <class R>
R series_path(const std::type_identity_t<R>& order, double x, const Num<R>& num)
{
    using std::abs;
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    const double t = to_double(order);
    if (t == 0.0)
        return k0_series(x, num);
    const R tt = num(order), xx = num(x);
    const R q = xx * xx / 4;
    R re = num(1.0), im = num(0.0);
    R sre = re, sim = im;
    const double stop = std::pow(10.0, -num.digits10 - 2);
    double maxabs = 1.0;
    for (int m = 1; m < 100000; ++m) {
        const R f = q / (m * (tt * tt + m * m));
        const R nre = (re * m + im * tt) * f;
        const R nim = (im * m - re * tt) * f;
        re = nre;
        im = nim;
        sre += re;
        sim += im;
        const double mag = std::abs(to_double(re)) + std::abs(to_double(im));
        maxabs = std::max(maxabs, mag);
        if (m > x && mag < stop * maxabs)
            break;
    }
    const Cx<R> lg = lngamma_mod(Cx<R>{num(1.0), tt}, num);
    const R psi = tt * log(xx / 2) - lg.im;
    const R pref = sqrt(2 * num.pi() / (tt * (1 - exp(-2 * num.pi() * tt))));
    return -pref * (sin(psi) * sre + cos(psi) * sim);
}

struct SeriesPlan {
    double loss = 0.0;   // decimal digits lost to cancellation
    double terms = 0.0;  // rough number of series terms
};

SeriesPlan plan_series(double t, double x, int digits)
{
    SeriesPlan plan;
    if (t == 0.0) {
        // K_0 series: terms up to ~ I_0(x) ~ e^x against K_0(x) ~ e^-x
        plan.loss = std::max(0.0, 2.0 * x / kLn10 - 0.5 * std::log10(1.0 + x));
        plan.terms = x + 2.0 * digits;
        return plan;
    }
    const double lx = std::log(x / 2.0);
    double lt = 0.0, best = 0.0;
    int m = 1;
    for (; m < 100000; ++m) {
        lt += 2.0 * lx - std::log(static_cast<double>(m)) - 0.5 * std::log(double(m) * m + t * t);
        best = std::max(best, lt);
        if (m > x && lt < best - (digits + 40) * kLn10)
            break;
    }
    const double lpref = 0.5 * std::log(2.0 * std::numbers::pi / (t * (-std::expm1(-2.0 * std::numbers::pi * t))));
    // |Im(e^{i psi} S)| ~ scale / pref
    const double lim = k_log_scale(t, x) - lpref;
    plan.loss = std::max(0.0, (best - lim) / kLn10) + std::log10(2.0 + std::abs(t * lx) + t * std::log(1.0 + t));
    plan.terms = m;
    return plan;
}

double cosh_extra_digits(double t)
{
    return std::numbers::pi * t / (2.0 * kLn10);
}

double cosh_nodes(double t, double x, int digits)
{
    const double h = 2.0 * std::numbers::pi * kStrip
                     / (t * kStrip + digits * kLn10 + x * (1.0 - std::cos(kStrip)) + 5.0
                        + std::log(2.0 + std::abs(std::log(x))));
    return std::acosh(1.0 + (digits * kLn10 + 10.0) / x) / h + 1.0;
}

enum class KRoute { Series, Cosh };

KRoute choose_route(double t, double x, int digits)
{
    if (t < 0.5)
        return KRoute::Cosh;
    const SeriesPlan sp = plan_series(t, x, digits);
    const double ds = digits + sp.loss + 5.0;
    const double dc = digits + cosh_extra_digits(t) + 5.0;
    const double cost_s = (sp.terms * 2.0 + 4.0 * ds) * std::pow(ds, 1.6);
    const double cost_c = cosh_nodes(t, x, static_cast<int>(dc)) * 12.0 * std::pow(dc, 1.6);
    return cost_s <= cost_c ? KRoute::Series : KRoute::Cosh;
}

int series_digits(double t, double x, int digits)
{
    return digits + static_cast<int>(std::ceil(plan_series(t, x, digits).loss)) + 5;
}

int cosh_digits(double t, int digits)
{
    return digits + static_cast<int>(std::ceil(cosh_extra_digits(t))) + 5;
}

}  // namespace

double k_log_scale(double t, double x)
{
    t = std::abs(t);
    const double d2 = x * x - t * t;
    const double expo = t < x ? -std::sqrt(d2) + t * std::acos(t / x) : 0.0;
    return expo - 0.25 * std::log(std::max(std::abs(d2), 1.0)) + std::log(1.0 + std::abs(std::log(x))) + 1.0;
}

MpReal k_scaled_mp(double t, double x, int digits)
{
    return k_scaled_mp(MpReal(t, 20), x, digits);
}

MpReal k_scaled_mp(const MpReal& order, double x, int digits)
{
    const MpReal ord = abs(order);
    const double t = to_double(ord);
    if (choose_route(t, x, digits) == KRoute::Cosh)
        return cosh_path(ord, x, Num<MpReal>(cosh_digits(t, digits)));
    return series_path(ord, x, Num<MpReal>(series_digits(t, x, digits)));
}

double k_scaled_double(double t, double x, double& err)
{
    t = std::abs(t);
    if (choose_route(t, x, 15) == KRoute::Cosh) {
        err = std::pow(10.0, cosh_extra_digits(t) - 15.0);
        return cosh_path(t, x, Num<double>{});
    }
    err = std::pow(10.0, plan_series(t, x, 15).loss - 15.0);
    return series_path(t, x, Num<double>{});
}

}  // namespace detail

double bessel_K_scaled_series(double t, double x, int digits)
{
    if (!(x > 0.0))
        throw std::invalid_argument("bessel K: x must be positive");
    t = std::abs(t);
    return detail::to_double(detail::series_path(detail::MpReal(t, 20), x, detail::Num<detail::MpReal>(detail::series_digits(t, x, digits))));
}

double bessel_K_scaled_cosh(double t, double x, int digits)
{
    if (!(x > 0.0))
        throw std::invalid_argument("bessel K: x must be positive");
    t = std::abs(t);
    return detail::to_double(detail::cosh_path(detail::MpReal(t, 20), x, detail::Num<detail::MpReal>(detail::cosh_digits(t, digits))));
}

double bessel_K_imag_scaled(double t, double x, const Precision& prec)
{
    prec.validate();
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(t))
        throw std::invalid_argument("bessel K: need finite t and x > 0");
    t = std::abs(t);
    const int D = std::max(prec.working_digits, static_cast<int>(std::ceil(-std::log10(prec.rel_tol))) + 4);
    const double v = detail::to_double(detail::k_scaled_mp(t, x, D));
    if (x >= 0.5 && x <= 2.0 && t <= 10.0) {
        const double a = bessel_K_scaled_series(t, x, D);
        const double b = bessel_K_scaled_cosh(t, x, D);
        const double scale = std::max({std::abs(v), std::exp(detail::k_log_scale(t, x)), prec.abs_floor});
        if (std::abs(a - b) > prec.rel_tol * scale) {
            std::ostringstream os;
            os.precision(17);
            os << "bessel K_{it}(x) paths disagree at t=" << t << " x=" << x << ": series " << a << " cosh " << b
               << " (tolerance " << prec.rel_tol * scale << ")";
            throw PrecisionError(os.str());
        }
    }
    return v;
}

double bessel_K_imag(double t, double x, const Precision& prec)
{
    return bessel_K_imag_scaled(t, x, prec) * std::exp(-std::numbers::pi * std::abs(t) / 2.0);
}

}  // namespace qtheta
