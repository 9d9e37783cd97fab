#include <doctest.h>

#include <cmath>
#include <random>

#include "qtheta/algebra.hpp"

using namespace qtheta;

namespace {

TailoredMatrix random_matrix(std::mt19937_64& rng, int range)
{
    std::uniform_int_distribution<int> d(-range, range);
    std::uniform_int_distribution<int> den(1, 4);
    auto q = [&] { return Rational(d(rng), den(rng)); };
    return TailoredMatrix::from_entries(q(), q(), q(), q());
}

}  // namespace

TEST_CASE("tailored coordinates round trip through the entries")
{
    const auto g = TailoredMatrix::from_coords(Rational(1, 2), 2, -3, Rational(5, 3));
    CHECK(g.a() == Rational(1, 2));
    CHECK(g.b() == Rational(2));
    CHECK(g.c() == Rational(-3));
    CHECK(g.d() == Rational(5, 3));
    CHECK(g.m11() == g.d() + g.c());
    CHECK(g.m12() == g.b() + g.a());
    CHECK(g.m21() == g.b() - g.a());
    CHECK(g.m22() == g.d() - g.c());
}

TEST_CASE("P, tau and diamond of small matrices")
{
    const auto id = TailoredMatrix::identity();
    CHECK(id.P() == Rational(1));
    CHECK(id.tau() == Rational(1));
    CHECK(id.diamond() == Rational(0));

    // [[0, 1], [-1, 0]] is the pure rotation part a = 1
    const auto j = TailoredMatrix::from_entries(0, 1, -1, 0);
    CHECK(j.P() == Rational(1));
    CHECK(j.tau() == Rational(1));

    const auto e12 = TailoredMatrix::from_entries(0, 1, 0, 0);
    CHECK(e12.P() == Rational(1, 2));
    CHECK(e12.tau() == Rational(0));
    CHECK(e12.diamond() == Rational(1, 4));
    CHECK_FALSE(invariants(e12).u.has_value());
}

TEST_CASE("invariant identities hold on random rational matrices")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto g = random_matrix(rng, 9);
        const auto& m = g.entries();
        CHECK(g.tau() == m[0] * m[3] - m[1] * m[2]);
        CHECK(g.P() == (m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]) / Rational(2));
        CHECK(g.diamond() == g.P() * g.P() - g.tau() * g.tau());
        CHECK(g.diamond() == diamond_from_coords(g));
        CHECK(g.P() >= boost::abs(g.tau()));

        const auto h = random_matrix(rng, 9);
        CHECK((g * h).tau() == g.tau() * h.tau());
        CHECK((g + h).a() == g.a() + h.a());
        CHECK(g.scaled(3).P() == g.P() * Rational(9));
    }
}

TEST_CASE("arithmetic helpers")
{
    CHECK(is_squarefree(1));
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
    CHECK(prime_factors(30) == std::vector<std::int64_t>{2, 3, 5});
    CHECK(divisors(6) == std::vector<std::int64_t>{1, 2, 3, 6});
    CHECK(covolume_gamma0(6) / covolume_gamma0(1) == doctest::Approx(12.0));
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK_FALSE(rational_from_double(std::sqrt(2.0)).has_value());
}

TEST_CASE("group elements: Iwasawa form, Mobius action and the point-pair invariant")
{
    const auto g = GroupElement::iwasawa(0.3, 2.0, 0.7);
    const auto z = mobius(g.entries(), HalfPlanePoint(0.0, 1.0));
    CHECK(z.x == doctest::Approx(0.3));
    CHECK(z.y == doctest::Approx(2.0));
    const auto& m = g.entries();
    CHECK(m[0] * m[3] - m[1] * m[2] == doctest::Approx(1.0));

    const HalfPlanePoint p(0.1, 0.5), q(-0.7, 1.9);
    CHECK(hyperbolic_u(p, p) == doctest::Approx(0.0));
    CHECK(hyperbolic_u(mobius(m, p), mobius(m, q)) == doctest::Approx(hyperbolic_u(p, q)).epsilon(1e-12));

    const auto diag = GroupElement::iwasawa(0.0, 4.0);
    REQUIRE(diag.exact().has_value());
    CHECK((*diag.exact())[0] == Rational(2));
    CHECK((*diag.exact())[3] == Rational(1, 2));
}

TEST_CASE("partially dualised lattice basis")
{
    const LatticeSpec spec(6, 2);
    const auto e = spec.element({1, 1, 1, 1});
    CHECK(e.m11() == Rational(1));
    CHECK(e.m12() == Rational(1, 2));
    CHECK(e.m21() == Rational(3));
    CHECK(e.m22() == Rational(1));
    CHECK(spec.det_key({1, 1, 1, 1}) == -1);
    CHECK(Rational(spec.det_key({2, 3, 1, 5})) == spec.element({2, 3, 1, 5}).tau() * 2);
    // entries Z, Z/ell, (N/ell)Z, Z: covolume N / ell^2 relative to M2(Z)
    CHECK(lattice_basis(spec).covolume / lattice_basis(LatticeSpec(1, 1)).covolume == Rational(3, 2));
}

TEST_CASE("height and reduction under Gamma0(N) with Atkin-Lehner")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.01, 3.0);
    for (std::int64_t N : {1, 2, 6}) {
        for (int i = 0; i < 100; ++i) {
            const HalfPlanePoint z(ux(rng), uy(rng));
            const auto h = height(z, N);
            CHECK(h.H >= z.y * (1 - 1e-12));
            CHECK(h.image.y == doctest::Approx(h.H));
            CHECK(h.H >= std::sqrt(3.0) / (2.0 * N) - 1e-12);
            // a Gamma0(N) translate has the same height
            const RealMatrix gamma{1, 1, static_cast<double>(N), static_cast<double>(N + 1)};
            CHECK(height(mobius(gamma, z), N).H == doctest::Approx(h.H).epsilon(1e-9));
        }
    }
    CHECK(height(HalfPlanePoint(0.0, 1.0), 1).H == doctest::Approx(1.0));
}
