#include "qtheta/detail/enumerator.hpp"

#include <algorithm>
#include <cmath>

namespace qtheta {

namespace {

// incremental rank over Q of integer vectors in Z^4
class RankTracker {
public:
    bool add(const detail::Coeff& v)
    {
        std::array<Rational, 4> r;
        for (int i = 0; i < 4; ++i) r[i] = Rational(v[i]);
        for (const auto& [piv, row] : rows_) {
            if (r[piv] == Rational(0))
                continue;
            const Rational f = r[piv] / row[piv];
            for (int i = 0; i < 4; ++i) r[i] -= f * row[i];
        }
        for (int i = 0; i < 4; ++i)
            if (r[i] != Rational(0)) {
                rows_.push_back({i, r});
                return true;
            }
        return false;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<std::pair<int, std::array<Rational, 4>>> rows_;
};

struct Candidate {
    long double gauge2;
    detail::Coeff coeff;
    bool operator<(const Candidate& o) const { return gauge2 != o.gauge2 ? gauge2 < o.gauge2 : coeff < o.coeff; }
};

}  // namespace

// Candidates inside the ball P' <= R^2 contain every vector of gauge <= R; sorting
// them by gauge and keeping each vector independent of the previous ones yields
// the successive minima exactly. R is doubled until enough vectors are found.
std::vector<double> successive_minima(const LatticeSpec& spec, RegionKind kind, double delta, Sublattice sub,
                                      const MinimaOptions& opts)
{
    (void)Region(kind, delta, 1.0);
    const detail::Conjugator cj(spec);
    const auto basis = detail::sublattice_basis(sub);
    const int n = static_cast<int>(basis.size());
    const detail::BallScanner scanner(cj, basis);

    double R2 = 1.0;
    for (int round = 0; round <= opts.max_doublings; ++round, R2 *= 4.0) {
        std::vector<Candidate> cands;
        scanner.scan(R2, opts.budget, [&](const detail::ScaledPoint& p) {
            // one representative of each pair +-v
            const auto it = std::find_if(p.coeff.begin(), p.coeff.end(), [](std::int64_t c) { return c != 0; });
            if (it == p.coeff.end() || *it < 0)
                return;
            long double g2;
            if (cj.exact()) {
                const long double part = static_cast<long double>(kind == RegionKind::Omega ? p.rot4 : p.dil4);
                g2 = std::max(static_cast<long double>(p.P4), part / delta) / static_cast<long double>(cj.den4());
            } else {
                const double part = kind == RegionKind::Omega ? p.rot : p.dil;
                g2 = std::max<long double>(p.P, part / delta);
            }
            if (g2 <= R2)
                cands.push_back({g2, p.coeff});
        });
        std::sort(cands.begin(), cands.end());
        RankTracker rank;
        std::vector<double> minima;
        for (const auto& c : cands) {
            if (rank.add(c.coeff))
                minima.push_back(std::sqrt(static_cast<double>(c.gauge2)));
            if (rank.rank() == n)
                return minima;
        }
    }
    throw MinimaSearchFailed("successive minima: search radius exhausted before reaching full rank");
}

}  // namespace qtheta
