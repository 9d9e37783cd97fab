#pragma once

// Extended precision plumbing shared by the special functions.
//
// Every MpReal is created with an explicit precision and arithmetic keeps the
// precision of its operands, so the library never touches the process-wide
// default precision (which Boost keeps as global mutable state).

#include <cmath>
#include <numbers>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace qtheta::detail {

using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

inline double to_double(double v) { return v; }
inline double to_double(const MpReal& v) { return v.convert_to<double>(); }

// Builds constants and converts doubles at one fixed precision.
template <class R>
struct Num;

template <>
struct Num<double> {
    int digits10 = 16;
    double operator()(double v) const { return v; }
    double pi() const { return std::numbers::pi; }
    double bernoulli_2k(int k) const;  // B_{2k}
};

template <>
struct Num<MpReal> {
    int digits10 = 30;
    explicit Num(int d) : digits10(d < 16 ? 16 : d) {}
    MpReal operator()(double v) const { return MpReal(v, static_cast<unsigned>(digits10)); }
    MpReal operator()(const MpReal& v) const { return MpReal(v, static_cast<unsigned>(digits10)); }
    MpReal pi() const;
    MpReal bernoulli_2k(int k) const;
};

template <class R>
struct Cx {
    R re, im;

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(const R& s) const { return {re * s, im * s}; }
    Cx operator/(const Cx& o) const
    {
        const R d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Cx conj() const { return {re, -im}; }
    R norm2() const { return re * re + im * im; }
};

template <class R>
Cx<R> cexp(const Cx<R>& z)
{
    using std::cos;
    using std::exp;
    using std::sin;
    const R m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

// principal branch
template <class R>
Cx<R> clog(const Cx<R>& z)
{
    using std::atan2;
    using std::log;
    return {log(z.norm2()) / 2, atan2(z.im, z.re)};
}

// log Gamma(z) for Re z > 0, modulo 2 pi i (callers only exponentiate it or need
// the imaginary part modulo 2 pi)
template <class R>
Cx<R> lngamma_mod(const Cx<R>& z, const Num<R>& num)
{
    using std::log;
    const int D = num.digits10;
    // |B_2k| / (2k(2k-1) w^(2k-1)) with 2k ~ 1.2 D and |w| >= D/2 falls below 10^-D
    const double shift_to = 0.5 * D + 10.0;
    const int K = static_cast<int>(0.6 * D) + 10;
    Cx<R> w = z;
    Cx<R> prod{num(1.0), num(0.0)};
    bool shifted = false;
    while (to_double(w.re) < shift_to) {
        prod = prod * w;
        w.re = w.re + 1;
        shifted = true;
    }
    const Cx<R> lw = clog(w);
    Cx<R> s = (w - Cx<R>{num(0.5), num(0.0)}) * lw - w;
    s.re = s.re + log(2 * num.pi()) / 2;
    const Cx<R> inv = Cx<R>{num(1.0), num(0.0)} / w;
    const Cx<R> inv2 = inv * inv;
    Cx<R> p = inv;
    for (int k = 1; k <= K; ++k) {
        const R c = num.bernoulli_2k(k) / R(num(2.0 * k * (2.0 * k - 1.0)));
        s = s + p * c;
        p = p * inv2;
    }
    if (shifted)
        s = s - clog(prod);
    return s;
}

// Gauss-Legendre rule on [-1, 1]
template <class R>
struct GaussRule {
    std::vector<R> x, w;
};

template <class R>
GaussRule<R> gauss_legendre(int n, const Num<R>& num)
{
    using std::abs;
    using std::cos;
    GaussRule<R> rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double tol = std::pow(10.0, -num.digits10 + 2);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        R z = num(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
        R dp;
        for (int it = 0; it < 100; ++it) {
            R p0 = num(1.0), p1 = z;
            for (int k = 2; k <= n; ++k) {
                R p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            const R dz = p1 / dp;
            z = z - dz;
            if (abs(to_double(dz)) < tol)
                break;
        }
        {
            R p0 = num(1.0), p1 = z;
            for (int k = 2; k <= n; ++k) {
                R p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
        }
        const R wt = 2 / ((1 - z * z) * dp * dp);
        rule.x[i] = -z;
        rule.w[i] = wt;
        rule.x[n - 1 - i] = z;
        rule.w[n - 1 - i] = wt;
    }
    return rule;
}

// composite rule: `panels` equal panels on [a, b]
template <class R, class F>
R integrate_panels(const GaussRule<R>& rule, const R& a, const R& b, int panels, F&& f)
{
    const R width = (b - a) / panels;
    const R half = width / 2;
    R total = a * 0;
    for (int p = 0; p < panels; ++p) {
        const R mid = a + width * p + half;
        R acc = a * 0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
        total += acc * half;
    }
    return total;
}

}  // namespace qtheta::detail
