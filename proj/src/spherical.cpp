#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qtheta/detail/specfun_impl.hpp"

namespace qtheta {

std::string to_string(XiRoute r)
{
    switch (r) {
    case XiRoute::Series: return "series";
    case XiRoute::Mehler: return "mehler";
    case XiRoute::LargeArgument: return "large-argument";
    }
    return "?";
}

namespace detail {

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr int kMehlerNodes = 24;

// 2F1(1/2+it, 1/2-it; 1; -u) term by term; needs u < 1
template <class R>
R xi_series(const std::type_identity_t<R>& order, double u, const Num<R>& num)
{
    const double t = to_double(order);
    const R tt2 = num(order) * num(order);
    const R mu = -num(u);
    R term = num(1.0), sum = num(1.0);
    const double stop = std::pow(10.0, -num.digits10 - 2);
    double maxabs = 1.0;
    for (int k = 1; k < 1000000; ++k) {
        const double kh = k - 0.5;
        term = term * (tt2 + kh * kh) / (static_cast<double>(k) * k) * mu;
        sum += term;
        const double mag = std::abs(to_double(term));
        maxabs = std::max(maxabs, mag);
        if (k > t * std::sqrt(u) && mag < stop * maxabs)
            break;
    }
    return sum;
}

template <class R>
R rho(const R& r)  // r / sinh r
{
    using std::sinh;
    if (to_double(r) == 0.0)
        return r * 0 + 1;
    return r / sinh(r);
}

int mehler_panels(double t, double theta, int digits)
{
    const double budget = (4.0 * kMehlerNodes / std::numbers::e) * std::pow(10.0, -(digits + 2.0) / (2.0 * kMehlerNodes));
    const double analytic = theta * std::pow(10.0, (digits + 2.0) / (2.0 * kMehlerNodes)) / std::numbers::pi;
    return std::max({static_cast<int>(std::ceil(t * theta / budget)), static_cast<int>(std::ceil(analytic)), 2});
}

// Mehler: Xi = (sqrt2/pi) int_0^theta cos(t a) / sqrt(cosh theta - cosh a) da. With a = theta sin(phi)
// the endpoint singularity cancels and
//   Xi = (2/pi) int_0^{pi/2} sqrt(rho(theta(1-s)/2) rho(theta(1+s)/2)) cos(t theta s) dphi,  s = sin(phi)
template <class R>
R xi_mehler(const std::type_identity_t<R>& order, double u, const Num<R>& num)
{
    const double t = to_double(order);
    using std::asinh;
    using std::cos;
    using std::sin;
    using std::sqrt;
    const R theta = 2 * asinh(sqrt(num(u)));
    const R tt = num(order);
    const GaussRule<R> rule = gauss_legendre(kMehlerNodes, num);
    const int panels = mehler_panels(t, to_double(theta), num.digits10);
    const R quarter = num.pi() / 4;
    const R total = integrate_panels(rule, num(0.0), num.pi() / 2, panels, [&](const R& phi) {
        const R s = sin(phi);
        const R h = sin(quarter - phi / 2);
        const R one_minus = 2 * h * h;  // 1 - sin(phi) without cancellation
        const R r1 = theta * one_minus / 2;
        const R r2 = theta * (2 - one_minus) / 2;
        return sqrt(rho(r1) * rho(r2)) * cos(tt * theta * s);
    });
    return 2 * total / num.pi();
}

// Connection formula for z = 2u+1 large:
//   P_{-1/2+it}(z) = 2 Re[ Gamma(it) / (sqrt(pi) Gamma(1/2+it)) (2z)^{-1/2+it} F(1/4-it/2, 3/4-it/2; 1-it; z^-2) ]
template <class R>
R xi_large(const std::type_identity_t<R>& order, double u, const Num<R>& num)
{
    const double t = to_double(order);
    using std::exp;
    using std::log;
    using std::sqrt;
    const R tt = num(order);
    const R z = 1 + 2 * num(u);
    const R w = 1 / (z * z);
    const Cx<R> lg1 = lngamma_mod(Cx<R>{num(1.0), tt}, num);
    const Cx<R> lgh = lngamma_mod(Cx<R>{num(0.5), tt}, num);
    const Cx<R> lit = clog(Cx<R>{num(0.0), tt});
    Cx<R> la = lg1 - lit - lgh;
    la.re = la.re - log(num.pi()) / 2;
    const R l2z = log(2 * z);
    la.re = la.re - l2z / 2;
    la.im = la.im + tt * l2z;
    const Cx<R> pre = cexp(la);

    const Cx<R> a{num(0.25), -tt / 2}, b{num(0.75), -tt / 2}, c{num(1.0), -tt};
    Cx<R> term{num(1.0), num(0.0)}, sum = term;
    const double stop = std::pow(10.0, -num.digits10 - 2);
    const double wd = to_double(w);
    double maxabs = 1.0;
    const Cx<R> one{num(1.0), num(0.0)};
    Cx<R> ak = a, bk = b, ck = c;
    for (int k = 0; k < 1000000; ++k) {
        term = term * ak * bk / (ck * Cx<R>{num(k + 1.0), num(0.0)}) * w;
        sum = sum + term;
        ak = ak + one;
        bk = bk + one;
        ck = ck + one;
        const double mag = std::sqrt(to_double(term.norm2()));
        maxabs = std::max(maxabs, mag);
        if (k > t * wd && mag < stop * maxabs)
            break;
    }
    return 2 * (pre * sum).re;
}

// log10 of the largest series term
double series_loss(double t, double u)
{
    double lt = 0.0, best = 0.0;
    const double lu = std::log(u);
    for (int k = 1; k < 10000000; ++k) {
        const double kh = k - 0.5;
        const double step = std::log((kh * kh + t * t) / (double(k) * k)) + lu;
        if (step < 0.0)
            break;
        lt += step;
        best = std::max(best, lt);
    }
    return best / kLn10;
}
double large_loss(double t, double u) { return t / (4.0 * (1 + 2 * u) * (1 + 2 * u) * kLn10) + 1.0; }

XiRoute choose(double t, double u, int digits)
{
    if (t < 1.0)
        return u <= 0.5 ? XiRoute::Series : XiRoute::Mehler;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double cost_s = inf, cost_z = inf;
    if (u < 0.9) {
        const double d = digits + series_loss(t, u);
        cost_s = (t * std::sqrt(u) + d / std::log10(1.0 / u)) * std::pow(d, 1.6);
    }
    if (u >= 0.1) {
        const double z = 1 + 2 * u;
        const double d = digits + large_loss(t, u);
        cost_z = (t / (z * z) + d / std::log10(z * z) + 3.0 * d) * 4.0 * std::pow(d, 1.6);
    }
    const double theta = 2 * std::asinh(std::sqrt(u));
    const double cost_m = mehler_panels(t, theta, digits) * kMehlerNodes * 8.0 * std::pow(double(digits), 1.6);
    if (cost_s <= cost_z && cost_s <= cost_m)
        return XiRoute::Series;
    return cost_z <= cost_m ? XiRoute::LargeArgument : XiRoute::Mehler;
}

double route_loss(XiRoute r, double t, double u)
{
    switch (r) {
    case XiRoute::Series: return series_loss(t, u);
    case XiRoute::LargeArgument: return large_loss(t, u) + std::max(0.0, -std::log10(t));
    case XiRoute::Mehler: return 1.0 + 0.5 * std::log10(1.0 + t);
    }
    return 0.0;
}

template <class R>
R eval(XiRoute r, const std::type_identity_t<R>& order, double u, const Num<R>& num)
{
    switch (r) {
    case XiRoute::Series: return xi_series<R>(order, u, num);
    case XiRoute::Mehler: return xi_mehler<R>(order, u, num);
    case XiRoute::LargeArgument: return xi_large<R>(order, u, num);
    }
    return num(0.0);
}

void check_args(double t, double u)
{
    if (!(u >= 0.0) || !std::isfinite(u) || !std::isfinite(t))
        throw std::invalid_argument("spherical Xi: need finite t and u >= 0");
}

MpReal route_mp(const MpReal& order, double u, XiRoute route, int digits)
{
    const double t = to_double(order);
    if (route == XiRoute::Series && !(u < 1.0))
        throw std::invalid_argument("spherical Xi: the hypergeometric series needs u < 1");
    if (route == XiRoute::LargeArgument && !(t > 0.0 && u > 0.0))
        throw std::invalid_argument("spherical Xi: the large-argument expansion needs t > 0 and u > 0");
    const int d = digits + static_cast<int>(std::ceil(route_loss(route, t, u))) + 5;
    return eval<MpReal>(route, order, u, Num<MpReal>(d));
}

}  // namespace

MpReal xi_route_mp(double t, double u, XiRoute route, int digits)
{
    check_args(t, u);
    return route_mp(MpReal(std::abs(t), 20), u, route, digits);
}

MpReal xi_mp(double t, double u, int digits)
{
    return xi_mp(MpReal(t, 20), u, digits);
}

MpReal xi_mp(const MpReal& order, double u, int digits)
{
    const MpReal ord = abs(order);
    const double t = to_double(ord);
    check_args(t, u);
    if (u == 0.0)
        return MpReal(1, static_cast<unsigned>(digits));
    return route_mp(ord, u, choose(t, u, digits), digits);
}

double xi_double(double t, double u, double& err)
{
    check_args(t, u);
    t = std::abs(t);
    if (u == 0.0) {
        err = 0.0;
        return 1.0;
    }
    // in double every route costs about the same; pick the one losing the fewest digits
    XiRoute r = XiRoute::Mehler;
    if (t < 1.0)
        r = choose(t, u, 15);
    else if (u < 0.9 && series_loss(t, u) < 1.0)
        r = XiRoute::Series;
    else if (u >= 1.0 && route_loss(XiRoute::LargeArgument, t, u) < 1.5)
        r = XiRoute::LargeArgument;
    err = std::pow(10.0, route_loss(r, t, u) - 15.0);
    return eval<double>(r, t, u, Num<double>{});
}

}  // namespace detail

double spherical_Xi(double t, double u, const Precision& prec)
{
    prec.validate();
    const int D = std::max(prec.working_digits, static_cast<int>(std::ceil(-std::log10(prec.rel_tol))) + 4);
    return detail::to_double(detail::xi_mp(t, u, D));
}

double spherical_Xi_route(double t, double u, XiRoute route, int digits)
{
    return detail::to_double(detail::xi_route_mp(t, u, route, digits));
}

}  // namespace qtheta
