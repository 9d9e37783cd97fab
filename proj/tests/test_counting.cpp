#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "qtheta/counting.hpp"

using namespace qtheta;

namespace {

struct BoxMember {
    std::array<std::int64_t, 4> k;
    std::int64_t det_key;
    double rot, dil;
    bool upper;
};

// every coefficient vector in a box that provably covers the region, tested directly
std::vector<BoxMember> box_members(const LatticeSpec& spec, RegionKind kind, double delta, double L)
{
    const RealMatrix& g = spec.g.entries();
    const RealMatrix gi = spec.g.inverse();
    double frob = 0.0;
    for (double v : g) frob += v * v;
    // |m| <= |g|_F |g^-1|_F |g^-1 m g|, and |g^-1|_F = |g|_F in SL2
    const double entry = frob * std::sqrt(2.0) * L;
    const auto R0 = static_cast<std::int64_t>(entry) + 1;
    const auto R1 = static_cast<std::int64_t>(entry * spec.ell) + 1;
    const auto R2 = static_cast<std::int64_t>(entry * spec.ell / spec.N) + 1;
    std::vector<BoxMember> out;
    for (std::int64_t k0 = -R0; k0 <= R0; ++k0)
        for (std::int64_t k1 = -R1; k1 <= R1; ++k1)
            for (std::int64_t k2 = -R2; k2 <= R2; ++k2)
                for (std::int64_t k3 = -R0; k3 <= R0; ++k3) {
                    if (k0 == 0 && k1 == 0 && k2 == 0 && k3 == 0)
                        continue;
                    const double m[4] = {double(k0), double(k1) / spec.ell, double(k2 * (spec.N / spec.ell)),
                                         double(k3)};
                    // g^-1 m g
                    const double t[4] = {gi[0] * m[0] + gi[1] * m[2], gi[0] * m[1] + gi[1] * m[3],
                                         gi[2] * m[0] + gi[3] * m[2], gi[2] * m[1] + gi[3] * m[3]};
                    const double c[4] = {t[0] * g[0] + t[1] * g[2], t[0] * g[1] + t[1] * g[3],
                                         t[2] * g[0] + t[3] * g[2], t[2] * g[1] + t[3] * g[3]};
                    const double rot = 0.25 * ((c[1] + c[2]) * (c[1] + c[2]) + (c[0] - c[3]) * (c[0] - c[3]));
                    const double dil = 0.25 * ((c[1] - c[2]) * (c[1] - c[2]) + (c[0] + c[3]) * (c[0] + c[3]));
                    const double part = kind == RegionKind::Omega ? rot : dil;
                    if (rot + dil <= L * L * (1 + 1e-12) && part <= delta * L * L * (1 + 1e-12))
                        out.push_back({{k0, k1, k2, k3}, spec.ell * k0 * k3 - k1 * k2 * (spec.N / spec.ell), rot, dil,
                                       k2 == 0});
                }
    return out;
}

std::uint64_t box_pairs(const std::vector<BoxMember>& members, std::optional<double> heart, double L,
                        bool upper_only)
{
    std::uint64_t n = 0;
    for (const auto& u : members)
        for (const auto& v : members) {
            if (u.det_key != v.det_key || (upper_only && !(u.upper && v.upper)))
                continue;
            if (heart && std::abs(4 * u.rot * u.dil - 4 * v.rot * v.dil) > *heart * std::pow(L, 4) * (1 + 1e-12) + 1e-12)
                continue;
            ++n;
        }
    return n;
}

}  // namespace

TEST_CASE("golden counts at level one")
{
    const LatticeSpec spec(1, 1);
    CHECK(enumerate_region(spec, Region(RegionKind::Omega, 1.0, 1.0)).size() == 32);
    CHECK(pair_count(spec, RegionSet::Omega, 1.0, 1.0).count == 608);
    CHECK(pair_count(spec, RegionSet::Omega, 1.0, 1.0, PairConstraint{0.0}).count == 352);
}

TEST_CASE("upper-triangular pairs at level one: 204 by an independent box count")
{
    const LatticeSpec spec(1, 1);
    const auto box = box_members(spec, RegionKind::Omega, 1.0, 1.0);
    std::map<std::int64_t, int> classes;
    for (const auto& m : box)
        if (m.upper)
            ++classes[m.det_key];
    std::uint64_t oracle = 0;
    for (const auto& [key, n] : classes) oracle += static_cast<std::uint64_t>(n) * n;
    CHECK(oracle == 204);
    CHECK(upper_triangular_pair_count(spec, RegionSet::Omega, 1.0, 1.0).count == oracle);
}

TEST_CASE("enumeration and pair counts agree with a coefficient box")
{
    const GroupElement gs[] = {GroupElement(), GroupElement::iwasawa(0.0, 4.0), GroupElement::iwasawa(0.25, 1.5)};
    for (const auto& g : gs)
        for (auto [N, ell] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {2, 1}, {2, 2}, {6, 1}, {6, 3}, {5, 5}})
            for (RegionKind kind : {RegionKind::Omega, RegionKind::Psi})
                for (auto [delta, L] : {std::pair{1.0, 1.0}, {0.25, 2.0}, {0.0625, 2.5}}) {
                    CAPTURE(N);
                    CAPTURE(ell);
                    CAPTURE(delta);
                    CAPTURE(L);
                    const LatticeSpec spec(N, ell, g);
                    const auto box = box_members(spec, kind, delta, L);
                    const auto got = enumerate_region(spec, Region(kind, delta, L));
                    std::size_t strict = 0;
                    for (const auto& e : got) strict += e.boundary ? 0 : 1;
                    CHECK(strict <= box.size());
                    CHECK(got.size() >= box.size());
                    if (g.exact())
                        CHECK(got.size() == box.size());
                    if (kind == RegionKind::Omega && g.exact()) {
                        const RegionSet set = RegionSet::Omega;
                        CHECK(pair_count(spec, set, delta, L).count == box_pairs(box, std::nullopt, L, false));
                        CHECK(pair_count(spec, set, delta, L, {delta}).count == box_pairs(box, delta, L, false));
                        CHECK(upper_triangular_pair_count(spec, set, delta, L).count
                              == box_pairs(box, std::nullopt, L, true));
                    }
                }
}

TEST_CASE("pair counts grow with the heart window and are bounded by the free count")
{
    const LatticeSpec spec(6, 1);
    std::uint64_t last = 0;
    for (double h : {0.0, 0.0625, 0.25, 1.0, 4.0}) {
        const auto c = pair_count(spec, RegionSet::Omega, 0.25, 3.0, {h}).count;
        CHECK(c >= last);
        last = c;
    }
    CHECK(last <= pair_count(spec, RegionSet::Omega, 0.25, 3.0).count);
    // union of the two regions holds at least as many pairs as either
    CHECK(pair_count(spec, RegionSet::Union, 0.25, 3.0).count >= pair_count(spec, RegionSet::Psi, 0.25, 3.0).count);
}

TEST_CASE("successive minima bracket the first nonzero point")
{
    for (auto [N, ell] : {std::pair<std::int64_t, std::int64_t>{1, 1}, {6, 1}, {6, 6}, {10, 5}})
        for (RegionKind kind : {RegionKind::Omega, RegionKind::Psi})
            for (double delta : {1.0, 0.25}) {
                const LatticeSpec spec(N, ell, GroupElement::iwasawa(0.0, 4.0));
                const auto lambda = successive_minima(spec, kind, delta);
                REQUIRE(lambda.size() == 4);
                for (std::size_t i = 1; i < 4; ++i) CHECK(lambda[i] >= lambda[i - 1]);
                CHECK(enumerate_region(spec, Region(kind, delta, lambda[0] * (1 - 1e-9))).empty());
                CHECK_FALSE(enumerate_region(spec, Region(kind, delta, lambda[0] * (1 + 1e-9))).empty());
                CHECK(body_point_count(spec, kind, delta, lambda[0] * (1 - 1e-9)) == 1);
                const auto tf = successive_minima(spec, kind, delta, Sublattice::TraceFree);
                CHECK(tf[0] >= lambda[0] * (1 - 1e-12));
            }
}

TEST_CASE("enumeration budget is enforced")
{
    CHECK_THROWS_AS(enumerate_region(LatticeSpec(1, 1), Region(RegionKind::Omega, 1.0, 20.0), EnumerationBudget{100}),
                    EnumerationBudgetExceeded);
}

TEST_CASE("region arguments are validated")
{
    CHECK_THROWS_AS(Region(RegionKind::Omega, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Region(RegionKind::Omega, 1.0, 0.0), std::invalid_argument);
}
