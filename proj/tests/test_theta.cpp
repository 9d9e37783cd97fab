#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qtheta/theta.hpp"

using namespace qtheta;

namespace {

constexpr double kPi = std::numbers::pi;

double theta3_fourth(double y)
{
    double s = 0.0;
    for (int m = -40; m <= 40; ++m) s += std::exp(-kPi * y * m * m);
    return std::pow(s, 4);
}

// sum over det classes of (sum_{m != 0, det m = n} e^{-pi y |m|^2})^2 over the box |m_ij| <= 6
double l2_box(double y)
{
    std::map<int, double> classes;
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
            for (int c = -6; c <= 6; ++c)
                for (int d = -6; d <= 6; ++d) {
                    if (a == 0 && b == 0 && c == 0 && d == 0)
                        continue;
                    classes[a * d - b * c] += std::exp(-kPi * y * (a * a + b * b + c * c + d * d));
                }
    double s = 0.0;
    for (const auto& [n, v] : classes) s += v * v;
    return s;
}

}  // namespace

TEST_CASE("Gaussian window at level one reproduces theta_3^4")
{
    ThetaConfig cfg;
    for (double y : {0.7, 1.0, 2.0}) {
        const auto v = theta_eval(cfg, HalfPlanePoint(0.0, y));
        CHECK(v.value.real() == doctest::Approx(y * theta3_fourth(y)).epsilon(1e-9));
        CHECK(std::abs(v.value.imag()) <= 1e-12);
        CHECK(v.tail_bound <= 1e-10 * std::abs(v.value));
    }
}

TEST_CASE("theta on the imaginary axis is real and positive; it is 1-periodic")
{
    ThetaConfig cfg;
    cfg.spec = LatticeSpec(6, 1);
    cfg.window = SpectralWindow::long_window(3.0);
    const auto on_axis = theta_eval(cfg, HalfPlanePoint(0.0, 0.9)).value;
    CHECK(on_axis.real() > 0.0);
    CHECK(std::abs(on_axis.imag()) <= 1e-9 * on_axis.real());
    const auto a = theta_eval(cfg, HalfPlanePoint(0.21, 0.9)).value;
    const auto b = theta_eval(cfg, HalfPlanePoint(1.21, 0.9)).value;
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(a));
}

TEST_CASE("theta is invariant under Gamma0(N)")
{
    ThetaConfig cfg;
    cfg.spec = LatticeSpec(5, 1);
    const std::complex<double> z(0.1234, 0.8);
    const auto base = theta_eval(cfg, HalfPlanePoint(z.real(), z.imag())).value;
    const std::complex<double> moved = (2.0 * z + 1.0) / (5.0 * z + 3.0);
    const auto image = theta_eval(cfg, HalfPlanePoint(moved.real(), moved.imag())).value;
    CHECK(std::abs(image - base) <= 1e-8 * std::abs(base));
}

TEST_CASE("theta depends on g only through the conjugated lattice")
{
    ThetaConfig cfg;
    cfg.window = SpectralWindow::long_window(3.0);
    const HalfPlanePoint z(0.3, 1.1);
    const auto plain = theta_eval(cfg, z).value;
    // SL2(Z) normalises M2(Z)
    cfg.spec = LatticeSpec(1, 1, GroupElement::from_rational({2, 1, 1, 1}));
    const auto moved = theta_eval(cfg, z).value;
    CHECK(std::abs(moved - plain) <= 1e-9 * std::abs(plain));
}

TEST_CASE("L2 integrand against the box oracle")
{
    ThetaConfig cfg;
    for (double y : {0.8, 1.0, 1.5}) {
        const auto v = l2_integrand(cfg, y);
        CHECK(v.value == doctest::Approx(l2_box(y)).epsilon(1e-8));
        CHECK(v.error_bound <= 1e-8 * v.value);
    }
}

TEST_CASE("L2 integrand is nonnegative and decreasing in y")
{
    ThetaConfig cfg;
    cfg.spec = LatticeSpec(6, 1);
    cfg.window = SpectralWindow::long_window(3.0);
    const double a = l2_integrand(cfg, 10.0).value, b = l2_integrand(cfg, 100.0).value;
    CHECK(a >= 0.0);
    CHECK(b >= 0.0);
    CHECK(b <= a);
}

TEST_CASE("L2 integrand is consistent with class sums from the region enumeration")
{
    // Cauchy-Schwarz: each class square is at most (class size) * (sum of squares)
    ThetaConfig cfg;
    const double y = 1.0;
    const auto v = l2_integrand(cfg, y);
    const auto members = enumerate_region(LatticeSpec(1, 1), Region(RegionKind::Omega, 1.0, 4.0));
    std::map<std::int64_t, std::pair<double, double>> cls;  // (sum, sum of squares) per det
    for (const auto& m : members) {
        const double phi = std::exp(-2 * kPi * y * m.conj.P);
        cls[m.det_key].first += phi;
        cls[m.det_key].second += phi * phi;
    }
    double partial = 0.0, cs = 0.0;
    std::map<std::int64_t, std::size_t> sizes;
    for (const auto& m : members) ++sizes[m.det_key];
    for (const auto& [k, s] : cls) {
        partial += s.first * s.first;
        cs += static_cast<double>(sizes[k]) * s.second;
    }
    CHECK(partial <= v.value * (1 + 1e-12));
    CHECK(v.value - partial <= 1e-10 * v.value);
    CHECK(partial <= cs * (1 + 1e-12));
}

TEST_CASE("theta arguments are validated")
{
    ThetaConfig cfg;
    CHECK_THROWS_AS(l2_integrand(cfg, 0.0), std::invalid_argument);
    cfg.tol = 0.0;
    CHECK_THROWS_AS(theta_eval(cfg, HalfPlanePoint(0.0, 1.0)), std::invalid_argument);
}

TEST_CASE("geometric fourth-moment count")
{
    const auto g1 = GroupElement(), g2 = GroupElement::iwasawa(0.1, 1.3);
    const CountReport r = geometric_fourth_moment_bound(g1, g2, 6, 10.0);
    REQUIRE_FALSE(r.rows.empty());
    CHECK(r.proposition == "fourth-moment");

    // counts grow with the heart window at fixed (ell, L, delta, g)
    std::map<std::tuple<std::int64_t, double, double, std::string>, std::pair<double, std::uint64_t>> last;
    for (const auto& row : r.rows) {
        REQUIRE(row.heart.has_value());
        const auto key = std::make_tuple(row.ell, row.L, row.delta, row.g);
        const auto it = last.find(key);
        if (it != last.end() && *row.heart >= it->second.first)
            CHECK(row.count >= it->second.second);
        if (it != last.end() && *row.heart <= it->second.first)
            CHECK(row.count <= it->second.second);
        last[key] = {*row.heart, row.count};
        CHECK(row.ratio == doctest::Approx(row.count / row.rhs));
    }

    FourthMomentOptions big;
    big.budget.max_candidates *= 4;
    const CountReport again = geometric_fourth_moment_bound(g1, g2, 6, 10.0, big);
    REQUIRE(again.rows.size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(again.rows[i].count == r.rows[i].count);

    CHECK_THROWS_AS(geometric_fourth_moment_bound(g1, g2, 4, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(geometric_fourth_moment_bound(g1, g2, 6, 2.0), std::invalid_argument);
}
