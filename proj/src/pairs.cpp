#include "qtheta/detail/enumerator.hpp"
#include "qtheta/detail/pairs.hpp"

#include <algorithm>

namespace qtheta {

namespace detail {

std::uint64_t count_window_pairs(std::vector<PairRecord>& recs, std::optional<long double> window)
{
    std::sort(recs.begin(), recs.end());
    std::uint64_t total = 0;
    std::size_t start = 0;
    while (start < recs.size()) {
        std::size_t end = start;
        while (end < recs.size() && recs[end].det == recs[start].det) ++end;
        const auto m = static_cast<std::uint64_t>(end - start);
        if (!window) {
            total += m * m;
        } else {
            // for each i, count j in the class with |d_j - d_i| <= window
            std::size_t lo = start, hi = start;
            for (std::size_t i = start; i < end; ++i) {
                const long double di = recs[i].dia;
                while (recs[lo].dia < di - *window) ++lo;
                if (hi < i) hi = i;
                while (hi + 1 < end && recs[hi + 1].dia <= di + *window) ++hi;
                total += hi - lo + 1;
            }
        }
        start = end;
    }
    return total;
}

}  // namespace detail

namespace {

PairCount pair_count_impl(const LatticeSpec& spec, RegionSet regions, double delta, double L,
                          const PairConstraint& constraint, const EnumerationBudget& budget, bool upper_only)
{
    (void)Region(RegionKind::Omega, delta, L);  // validates delta, L
    if (constraint.heart && !(*constraint.heart >= 0.0))
        throw std::invalid_argument("heart must be nonnegative");
    const detail::Conjugator cj(spec);
    const detail::BallScanner scanner(cj, detail::sublattice_basis(Sublattice::Full));
    std::vector<detail::PairRecord> strict, slack;
    scanner.scan(L * L, budget, [&](const detail::ScaledPoint& p) {
        if (p.coeff == detail::Coeff{0, 0, 0, 0})
            return;
        if (upper_only && p.coeff[2] != 0)
            return;
        detail::Membership m;
        if (regions != RegionSet::Psi) {
            const auto a = detail::region_membership(cj, p, RegionKind::Omega, delta, L);
            m.strict |= a.strict;
            m.slack |= a.slack;
        }
        if (regions != RegionSet::Omega) {
            const auto a = detail::region_membership(cj, p, RegionKind::Psi, delta, L);
            m.strict |= a.strict;
            m.slack |= a.slack;
        }
        if (!m.slack)
            return;
        const long double dia = cj.exact() ? static_cast<long double>(p.rot4) * static_cast<long double>(p.dil4)
                                           : 4.0L * p.rot * p.dil;
        if (m.strict)
            strict.push_back({p.det_key, dia});
        slack.push_back({p.det_key, dia});
    });

    PairCount out;
    out.exact = cj.exact();
    std::optional<long double> window, window_slack;
    if (constraint.heart) {
        const long double L4 = static_cast<long double>(L) * L * L * L;
        long double w = static_cast<long double>(*constraint.heart) * L4;
        if (cj.exact()) {
            // diamond' = rot4 * dil4 / (den4^2 / 4)
            const long double d = static_cast<long double>(cj.den4());
            w *= d * d / 4.0L;
        }
        window = w;
        window_slack = cj.exact() ? w : w + static_cast<long double>(detail::kSlack) * std::max(1.0L, w);
    }
    out.count = detail::count_window_pairs(strict, window);
    out.slack_count = cj.exact() ? out.count : detail::count_window_pairs(slack, window_slack);
    return out;
}

}  // namespace

PairCount pair_count(const LatticeSpec& spec, RegionSet regions, double delta, double L,
                     const PairConstraint& constraint, const EnumerationBudget& budget)
{
    return pair_count_impl(spec, regions, delta, L, constraint, budget, false);
}

PairCount upper_triangular_pair_count(const LatticeSpec& spec, RegionSet regions, double delta, double L,
                                      const PairConstraint& constraint, const EnumerationBudget& budget)
{
    return pair_count_impl(spec, regions, delta, L, constraint, budget, true);
}

}  // namespace qtheta
