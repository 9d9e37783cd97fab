#include "qtheta/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qtheta {

double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

TailoredMatrix::TailoredMatrix(const std::array<Rational, 4>& m) : m_(m)
{
    P_ = (m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3]) / Rational(2);
    tau_ = m_[0] * m_[3] - m_[1] * m_[2];
    diamond_ = P_ * P_ - tau_ * tau_;
}

TailoredMatrix TailoredMatrix::from_entries(Rational m11, Rational m12, Rational m21, Rational m22)
{
    return TailoredMatrix({m11, m12, m21, m22});
}

TailoredMatrix TailoredMatrix::from_coords(Rational a, Rational b, Rational c, Rational d)
{
    return TailoredMatrix({d + c, b + a, b - a, d - c});
}

TailoredMatrix TailoredMatrix::operator+(const TailoredMatrix& o) const
{
    return TailoredMatrix({m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]});
}

TailoredMatrix TailoredMatrix::operator*(const TailoredMatrix& o) const
{
    return TailoredMatrix({m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                           m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]});
}

TailoredMatrix TailoredMatrix::scaled(const Rational& s) const
{
    return TailoredMatrix({m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s});
}

std::string TailoredMatrix::str() const
{
    std::ostringstream os;
    os << "(" << m_[0] << " " << m_[1] << "; " << m_[2] << " " << m_[3] << ")";
    return os.str();
}

Invariants invariants(const TailoredMatrix& g)
{
    Invariants inv{g.P(), g.tau(), g.diamond(), std::nullopt};
    if (g.tau() != Rational(0)) {
        const Rational t = boost::abs(g.tau());
        inv.u = (g.P() - t) / (Rational(2) * t);
    }
    return inv;
}

Rational diamond_from_coords(const TailoredMatrix& g)
{
    const Rational a = g.a(), b = g.b(), c = g.c(), d = g.d();
    return Rational(4) * (a * a + d * d) * (b * b + c * c);
}

HalfPlanePoint::HalfPlanePoint(double x_, double y_) : x(x_), y(y_)
{
    if (!(y_ > 0.0) || !std::isfinite(y_) || !std::isfinite(x_))
        throw std::invalid_argument("half-plane point needs finite x and y > 0");
}

double hyperbolic_u(const HalfPlanePoint& z, const HalfPlanePoint& w)
{
    const double dx = z.x - w.x, dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

HalfPlanePoint mobius(const RealMatrix& m, const HalfPlanePoint& z)
{
    // (a z + b)/(c z + d) for det > 0
    const double cx = m[2] * z.x + m[3], cy = m[2] * z.y;
    const double den = cx * cx + cy * cy;
    const double nx = m[0] * z.x + m[1], ny = m[0] * z.y;
    const double det = m[0] * m[3] - m[1] * m[2];
    return {(nx * cx + ny * cy) / den, det * z.y / den};
}

std::optional<Rational> rational_from_double(double v, std::int64_t max_den)
{
    if (!std::isfinite(v) || std::abs(v) > 1e12)
        return std::nullopt;
    // continued fraction convergents
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = v;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(r);
        const auto ai = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den)
            break;
        if (static_cast<double>(p2) / static_cast<double>(q2) == v)
            return Rational(p2, q2);
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = r - fl;
        if (frac == 0.0)
            break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

GroupElement::GroupElement(const RealMatrix& m) : m_(m)
{
    const double det = m[0] * m[3] - m[1] * m[2];
    if (std::abs(det - 1.0) > 1e-12)
        throw std::invalid_argument("group element must have determinant 1");
    const HalfPlanePoint z = mobius(m_, HalfPlanePoint(0.0, 1.0));
    x_ = z.x;
    y_ = z.y;
    // k = a(y)^-1 n(-x) g
    const double sy = std::sqrt(y_);
    const double k11 = (m[0] - x_ * m[2]) / sy;
    const double k12 = (m[1] - x_ * m[3]) / sy;
    theta_ = std::atan2(k12, k11);

    const double c = std::cos(theta_), s = std::sin(theta_);
    const RealMatrix rebuilt{sy * c - x_ / sy * s, sy * s + x_ / sy * c, -s / sy, c / sy};
    double scale = 1.0;
    for (double e : m) scale = std::max(scale, std::abs(e));
    for (int i = 0; i < 4; ++i)
        if (std::abs(rebuilt[i] - m[i]) > 1e-12 * scale * scale)
            throw std::runtime_error("Iwasawa reconstruction failed");

    std::array<Rational, 4> ex;
    for (int i = 0; i < 4; ++i) {
        auto r = rational_from_double(m[i]);
        if (!r)
            return;
        ex[i] = *r;
    }
    if (ex[0] * ex[3] - ex[1] * ex[2] == Rational(1))
        exact_ = ex;
}

GroupElement GroupElement::from_entries(const RealMatrix& m)
{
    return GroupElement(m);
}

GroupElement GroupElement::from_rational(const std::array<Rational, 4>& m)
{
    if (m[0] * m[3] - m[1] * m[2] != Rational(1))
        throw std::invalid_argument("rational group element must have determinant exactly 1");
    GroupElement g(RealMatrix{to_double(m[0]), to_double(m[1]), to_double(m[2]), to_double(m[3])});
    g.exact_ = m;
    return g;
}

GroupElement GroupElement::iwasawa(double x, double y, double theta)
{
    if (!(y > 0.0))
        throw std::invalid_argument("Iwasawa coordinate y must be positive");
    const double sy = std::sqrt(y);
    const double c = std::cos(theta), s = std::sin(theta);
    return GroupElement(RealMatrix{sy * c - x / sy * s, sy * s + x / sy * c, -s / sy, c / sy});
}

GroupElement GroupElement::operator*(const GroupElement& o) const
{
    const auto& a = m_;
    const auto& b = o.m_;
    if (exact_ && o.exact_) {
        const auto& p = *exact_;
        const auto& q = *o.exact_;
        return from_rational({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
                              p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]});
    }
    return GroupElement(RealMatrix{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                                   a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

std::string GroupElement::descriptor() const
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "x=%.6g;y=%.6g;theta=%.6g", x_, y_, theta_);
    return buf;
}

bool is_squarefree(std::int64_t n)
{
    if (n < 1)
        return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return false;
        }
    }
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            out.push_back(d);
    return out;
}

double covolume_gamma0(std::int64_t N)
{
    if (!is_squarefree(N))
        throw std::invalid_argument("covolume_gamma0: N must be squarefree");
    double index = static_cast<double>(N);
    for (auto p : prime_factors(N))
        index *= 1.0 + 1.0 / static_cast<double>(p);
    return M_PI / 3.0 * index;
}

}  // namespace qtheta
