#include "qtheta/detail/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#include "qtheta/detail/enumerator.hpp"

namespace qtheta::detail {

namespace {

void check_ascending(const std::vector<double>& Ls)
{
    if (Ls.empty() || !std::is_sorted(Ls.begin(), Ls.end()) || !(Ls.front() > 0.0))
        throw std::invalid_argument("sweep: L grid must be positive and ascending");
}

// smallest L index whose region contains the point, or Ls.size()
class LIndexer {
public:
    LIndexer(const Conjugator& cj, const std::vector<double>& Ls) : cj_(cj)
    {
        for (double L : Ls) {
            const long double L2 = static_cast<long double>(L) * L;
            thr_.push_back(cj.exact() ? L2 * static_cast<long double>(cj.den4()) : L2);
        }
    }

    std::size_t index(const ScaledPoint& p, RegionKind kind, double delta) const
    {
        long double need;
        if (cj_.exact()) {
            const auto part = static_cast<long double>(kind == RegionKind::Omega ? p.rot4 : p.dil4);
            need = std::max(static_cast<long double>(p.P4), part / static_cast<long double>(delta));
        } else {
            const double part = kind == RegionKind::Omega ? p.rot : p.dil;
            need = std::max<long double>(p.P, static_cast<long double>(part) / delta);
        }
        return static_cast<std::size_t>(std::lower_bound(thr_.begin(), thr_.end(), need) - thr_.begin());
    }

private:
    const Conjugator& cj_;
    std::vector<long double> thr_;
};

}  // namespace

std::array<Table2, 2> region_pair_sweep(const LatticeSpec& spec, const std::vector<double>& deltas,
                                        const std::vector<double>& Ls, const EnumerationBudget& budget)
{
    check_ascending(Ls);
    const Conjugator cj(spec);
    const BallScanner scanner(cj, sublattice_basis(Sublattice::Full));
    const LIndexer idx(cj, Ls);
    const double Lmax = Ls.back();
    const auto key_off = static_cast<std::int64_t>(spec.ell * Lmax * Lmax) + 1;
    const std::size_t nkeys = static_cast<std::size_t>(2 * key_off + 1);
    const std::size_t nL = Ls.size(), nd = deltas.size();
    // hist[(region * nd + di) * nkeys + key][L]
    std::vector<std::uint32_t> hist(2 * nd * nkeys * nL, 0);

    scanner.scan(Lmax * Lmax, budget, [&](const ScaledPoint& p) {
        if (p.coeff == Coeff{0, 0, 0, 0})
            return;
        const auto key = static_cast<std::size_t>(p.det_key + key_off);
        for (int r = 0; r < 2; ++r)
            for (std::size_t di = 0; di < nd; ++di) {
                const std::size_t j = idx.index(p, r == 0 ? RegionKind::Omega : RegionKind::Psi, deltas[di]);
                if (j < nL)
                    ++hist[((r * nd + di) * nkeys + key) * nL + j];
            }
    });

    std::array<Table2, 2> out;
    for (int r = 0; r < 2; ++r) {
        out[r].assign(nd, std::vector<std::uint64_t>(nL, 0));
        for (std::size_t di = 0; di < nd; ++di)
            for (std::size_t key = 0; key < nkeys; ++key) {
                const std::uint32_t* h = &hist[((r * nd + di) * nkeys + key) * nL];
                std::uint64_t cum = 0;
                for (std::size_t j = 0; j < nL; ++j) {
                    cum += h[j];
                    out[r][di][j] += cum * cum;
                }
            }
    }
    return out;
}

Table2 tracefree_sweep(const LatticeSpec& spec, const std::vector<double>& deltas, const std::vector<double>& Ls,
                       const EnumerationBudget& budget)
{
    check_ascending(Ls);
    const Conjugator cj(spec);
    const BallScanner scanner(cj, sublattice_basis(Sublattice::TraceFree));
    const LIndexer idx(cj, Ls);
    const std::size_t nL = Ls.size(), nd = deltas.size();
    Table2 out(nd, std::vector<std::uint64_t>(nL, 0));
    scanner.scan(Ls.back() * Ls.back(), budget, [&](const ScaledPoint& p) {
        for (std::size_t di = 0; di < nd; ++di) {
            const std::size_t j = idx.index(p, RegionKind::Psi, deltas[di]);
            if (j < nL)
                ++out[di][j];
        }
    });
    for (auto& row : out)
        for (std::size_t j = 1; j < nL; ++j) row[j] += row[j - 1];
    return out;
}

namespace {

struct HeartRecord {
    double dia;
    std::int32_t det;
    std::uint8_t lidx;
    bool operator<(const HeartRecord& o) const
    {
        return det != o.det ? det < o.det : (dia != o.dia ? dia < o.dia : lidx < o.lidx);
    }
};

}  // namespace

Table3 heart_sweep(const LatticeSpec& spec, const std::vector<double>& deltas, const std::vector<double>& Ls,
                   const std::vector<double>& heart_factors, bool upper_only, const EnumerationBudget& budget)
{
    check_ascending(Ls);
    if (Ls.size() > 250)
        throw std::invalid_argument("heart sweep: too many L values");
    const Conjugator cj(spec);
    const BallScanner scanner(cj, sublattice_basis(Sublattice::Full));
    const LIndexer idx(cj, Ls);
    const std::size_t nL = Ls.size(), nd = deltas.size(), nh = heart_factors.size();
    Table3 out(nd, std::vector<std::vector<std::uint64_t>>(nL, std::vector<std::uint64_t>(nh, 0)));
    const double Lmax = Ls.back();
    const long double scale = cj.exact() ? static_cast<long double>(cj.den4()) * cj.den4() / 4.0L : 1.0L;

    for (std::size_t di = 0; di < nd; ++di) {
        const double delta = deltas[di];
        std::vector<HeartRecord> recs;
        scanner.scan(Lmax * Lmax, budget, [&](const ScaledPoint& p) {
            if (p.coeff == Coeff{0, 0, 0, 0})
                return;
            if (upper_only && p.coeff[2] != 0)
                return;
            const std::size_t j = std::min(idx.index(p, RegionKind::Omega, delta), idx.index(p, RegionKind::Psi, delta));
            if (j >= nL)
                return;
            double dia;
            if (cj.exact()) {
                const long double d = static_cast<long double>(p.rot4) * static_cast<long double>(p.dil4);
                if (d > 9.0e15L)
                    throw std::overflow_error("heart sweep: scaled diamond exceeds exact double range");
                dia = static_cast<double>(d);
            } else {
                dia = 4.0 * p.rot * p.dil;
            }
            recs.push_back({dia, static_cast<std::int32_t>(p.det_key), static_cast<std::uint8_t>(j)});
        });
        std::sort(recs.begin(), recs.end());

        std::vector<double> cls;
        std::size_t start = 0;
        while (start < recs.size()) {
            std::size_t end = start;
            while (end < recs.size() && recs[end].det == recs[start].det) ++end;
            for (std::size_t j = 0; j < nL; ++j) {
                cls.clear();
                for (std::size_t i = start; i < end; ++i)
                    if (recs[i].lidx <= j)
                        cls.push_back(recs[i].dia);
                if (cls.empty())
                    continue;
                const long double L4 = static_cast<long double>(Ls[j]) * Ls[j] * Ls[j] * Ls[j];
                for (std::size_t h = 0; h < nh; ++h) {
                    const long double w = static_cast<long double>(heart_factors[h]) * delta * L4 * scale;
                    std::uint64_t total = 0;
                    std::size_t lo = 0, hi = 0;
                    for (std::size_t i = 0; i < cls.size(); ++i) {
                        while (static_cast<long double>(cls[lo]) < cls[i] - w) ++lo;
                        if (hi < i) hi = i;
                        while (hi + 1 < cls.size() && static_cast<long double>(cls[hi + 1]) <= cls[i] + w) ++hi;
                        total += hi - lo + 1;
                    }
                    out[di][j][h] += total;
                }
            }
            start = end;
        }
    }
    return out;
}

}  // namespace qtheta::detail
