#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace qtheta {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& r);

// 2x2 matrix stored by entries; tailored coordinates [a,b,c]+d are derived:
//   m11 = d+c, m12 = b+a, m21 = b-a, m22 = d-c
class TailoredMatrix {
public:
    TailoredMatrix() = default;

    static TailoredMatrix from_entries(Rational m11, Rational m12, Rational m21, Rational m22);
    static TailoredMatrix from_coords(Rational a, Rational b, Rational c, Rational d);
    static TailoredMatrix identity() { return from_entries(1, 0, 0, 1); }

    const Rational& m11() const { return m_[0]; }
    const Rational& m12() const { return m_[1]; }
    const Rational& m21() const { return m_[2]; }
    const Rational& m22() const { return m_[3]; }
    const std::array<Rational, 4>& entries() const { return m_; }

    Rational a() const { return (m_[1] - m_[2]) / Rational(2); }
    Rational b() const { return (m_[1] + m_[2]) / Rational(2); }
    Rational c() const { return (m_[0] - m_[3]) / Rational(2); }
    Rational d() const { return (m_[0] + m_[3]) / Rational(2); }

    const Rational& P() const { return P_; }
    const Rational& tau() const { return tau_; }
    const Rational& diamond() const { return diamond_; }

    TailoredMatrix operator+(const TailoredMatrix& o) const;
    TailoredMatrix operator*(const TailoredMatrix& o) const;
    TailoredMatrix scaled(const Rational& s) const;
    bool operator==(const TailoredMatrix& o) const { return m_ == o.m_; }

    std::string str() const;

private:
    explicit TailoredMatrix(const std::array<Rational, 4>& m);
    std::array<Rational, 4> m_{Rational(0), Rational(0), Rational(0), Rational(0)};
    Rational P_{0}, tau_{0}, diamond_{0};
};

struct Invariants {
    Rational P;
    Rational tau;
    Rational diamond;
    std::optional<Rational> u;  // absent when tau == 0
};

Invariants invariants(const TailoredMatrix& g);

// independent evaluation of 4(a^2+d^2)(b^2+c^2)
Rational diamond_from_coords(const TailoredMatrix& g);

struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double x_, double y_);
};

double hyperbolic_u(const HalfPlanePoint& z, const HalfPlanePoint& w);

using RealMatrix = std::array<double, 4>;  // row major m11 m12 m21 m22

HalfPlanePoint mobius(const RealMatrix& m, const HalfPlanePoint& z);

// Element of SL2(R). Entries are kept in double; when they are rational with
// small denominators an exact copy is kept as well so lattice work can stay exact.
class GroupElement {
public:
    GroupElement() : GroupElement(RealMatrix{1, 0, 0, 1}) {}

    static GroupElement from_entries(const RealMatrix& m);
    static GroupElement from_rational(const std::array<Rational, 4>& m);
    // g = n(x) a(y) k(theta), so that g i = x + i y
    static GroupElement iwasawa(double x, double y, double theta = 0.0);
    static GroupElement identity() { return GroupElement(); }

    const RealMatrix& entries() const { return m_; }
    RealMatrix inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }
    const std::optional<std::array<Rational, 4>>& exact() const { return exact_; }

    double x() const { return x_; }
    double y() const { return y_; }
    double theta() const { return theta_; }
    HalfPlanePoint point() const { return {x_, y_}; }

    GroupElement operator*(const GroupElement& o) const;

    std::string descriptor() const;

private:
    explicit GroupElement(const RealMatrix& m);
    RealMatrix m_;
    std::optional<std::array<Rational, 4>> exact_;
    double x_ = 0.0, y_ = 1.0, theta_ = 0.0;
};

// Recognise a double as p/q with q <= max_den; used to keep diag(2, 1/2) etc. exact.
std::optional<Rational> rational_from_double(double v, std::int64_t max_den = 4096);

bool is_squarefree(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

struct LatticeSpec {
    std::int64_t N = 1;
    std::int64_t ell = 1;
    GroupElement g;

    LatticeSpec() = default;
    LatticeSpec(std::int64_t N_, std::int64_t ell_, GroupElement g_ = GroupElement());

    // element with coefficient vector k in the basis E11, E12/ell, (N/ell)E21, E22
    TailoredMatrix element(const std::array<std::int64_t, 4>& k) const;
    // ell * det for coefficient vector k; always an integer
    std::int64_t det_key(const std::array<std::int64_t, 4>& k) const;
};

struct LatticeBasis {
    std::array<TailoredMatrix, 4> basis;
    std::array<std::array<double, 4>, 4> gram;  // P of the conjugated element, as a quadratic form
    Rational covolume;
};

LatticeBasis lattice_basis(const LatticeSpec& spec);

double covolume_gamma0(std::int64_t N);

struct HeightResult {
    double H = 0.0;
    // integer matrix (Q a, b; N c, Q d) of determinant Q, acting projectively
    std::array<std::int64_t, 4> witness{1, 0, 0, 1};
    std::int64_t Q = 1;
    HalfPlanePoint image;
};

HeightResult height(const HalfPlanePoint& z, std::int64_t N);

}  // namespace qtheta
