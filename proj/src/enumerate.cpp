#include "qtheta/detail/enumerator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qtheta {

std::string to_string(RegionKind k)
{
    return k == RegionKind::Omega ? "omega" : "psi";
}

std::string to_string(RegionSet s)
{
    switch (s) {
    case RegionSet::Omega: return "omega";
    case RegionSet::Psi: return "psi";
    case RegionSet::Union: return "union";
    }
    return "?";
}

Region::Region(RegionKind k, double delta_, double L_, bool exclude_zero_)
    : kind(k), delta(delta_), L(L_), exclude_zero(exclude_zero_)
{
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("region delta must lie in (0, 1]");
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("region L must be positive");
}

namespace detail {

Conjugator::Conjugator(const LatticeSpec& spec) : spec_(spec)
{
    const std::int64_t ell = spec.ell, N = spec.N;
    const std::array<std::array<std::int64_t, 4>, 4> mform{{
        {ell, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, N, 0}, {0, 0, 0, ell}}};

    if (const auto& ex = spec.g.exact()) {
        std::int64_t q = 1;
        for (const auto& r : *ex) q = std::lcm(q, r.denominator());
        std::array<std::int64_t, 4> G{};
        for (int i = 0; i < 4; ++i) G[i] = ((*ex)[i] * q).numerator();
        const std::array<std::int64_t, 4> adj{G[3], -G[1], -G[2], G[0]};
        const std::int64_t S = q * q * ell;
        if (S < (std::int64_t(1) << 20)) {
            exact_ = true;
            den4_ = 4 * S * S;
            for (int b = 0; b < 4; ++b) {
                const auto& m = mform[b];
                const std::array<std::int64_t, 4> t{adj[0] * m[0] + adj[1] * m[2], adj[0] * m[1] + adj[1] * m[3],
                                                    adj[2] * m[0] + adj[3] * m[2], adj[2] * m[1] + adj[3] * m[3]};
                int_conj_[b] = {t[0] * G[0] + t[1] * G[2], t[0] * G[1] + t[1] * G[3], t[2] * G[0] + t[3] * G[2],
                                t[2] * G[1] + t[3] * G[3]};
            }
        }
    }
    const RealMatrix gi = spec.g.inverse();
    const RealMatrix& ge = spec.g.entries();
    for (int b = 0; b < 4; ++b) {
        std::array<double, 4> m{};
        for (int e = 0; e < 4; ++e) m[e] = static_cast<double>(mform[b][e]) / static_cast<double>(ell);
        const std::array<double, 4> t{gi[0] * m[0] + gi[1] * m[2], gi[0] * m[1] + gi[1] * m[3],
                                      gi[2] * m[0] + gi[3] * m[2], gi[2] * m[1] + gi[3] * m[3]};
        real_conj_[b] = {t[0] * ge[0] + t[1] * ge[2], t[0] * ge[1] + t[1] * ge[3], t[2] * ge[0] + t[3] * ge[2],
                         t[2] * ge[1] + t[3] * ge[3]};
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int e = 0; e < 4; ++e) s += real_conj_[i][e] * real_conj_[j][e];
            gram_[i][j] = 0.5 * s;
        }
}

void Conjugator::fill(ScaledPoint& p) const
{
    p.det_key = spec_.det_key(p.coeff);
    p.tau = static_cast<double>(p.det_key) / static_cast<double>(spec_.ell);
    if (exact_) {
        std::array<std::int64_t, 4> m{0, 0, 0, 0};
        for (int b = 0; b < 4; ++b)
            if (p.coeff[b] != 0)
                for (int e = 0; e < 4; ++e) m[e] += p.coeff[b] * int_conj_[b][e];
        const std::int64_t s1 = m[1] + m[2], s2 = m[0] - m[3], s3 = m[1] - m[2], s4 = m[0] + m[3];
        p.rot4 = s1 * s1 + s2 * s2;
        p.dil4 = s3 * s3 + s4 * s4;
        p.P4 = p.rot4 + p.dil4;
        const double den = static_cast<double>(den4_);
        p.P = static_cast<double>(p.P4) / den;
        p.rot = static_cast<double>(p.rot4) / den;
        p.dil = static_cast<double>(p.dil4) / den;
        return;
    }
    std::array<double, 4> m{0, 0, 0, 0};
    for (int b = 0; b < 4; ++b)
        if (p.coeff[b] != 0)
            for (int e = 0; e < 4; ++e) m[e] += static_cast<double>(p.coeff[b]) * real_conj_[b][e];
    const double s1 = m[1] + m[2], s2 = m[0] - m[3], s3 = m[1] - m[2], s4 = m[0] + m[3];
    p.rot = 0.25 * (s1 * s1 + s2 * s2);
    p.dil = 0.25 * (s3 * s3 + s4 * s4);
    p.P = p.rot + p.dil;
}

Membership region_membership(const Conjugator& cj, const ScaledPoint& p, RegionKind kind, double delta, double L)
{
    const long double L2 = static_cast<long double>(L) * L;
    const long double part_bound = static_cast<long double>(delta) * L2;
    if (cj.exact()) {
        const std::int64_t part = kind == RegionKind::Omega ? p.rot4 : p.dil4;
        const bool in = le_bound(p.P4, cj.den4(), L2) && le_bound(part, cj.den4(), part_bound);
        return {in, in};
    }
    const double part = kind == RegionKind::Omega ? p.rot : p.dil;
    Membership m;
    m.strict = p.P <= static_cast<double>(L2) && part <= static_cast<double>(part_bound);
    m.slack = le_slack(p.P, static_cast<double>(L2)) && le_slack(part, static_cast<double>(part_bound));
    return m;
}

std::vector<Coeff> sublattice_basis(Sublattice sub)
{
    if (sub == Sublattice::Full)
        return {Coeff{1, 0, 0, 0}, Coeff{0, 1, 0, 0}, Coeff{0, 0, 1, 0}, Coeff{0, 0, 0, 1}};
    return {Coeff{1, 0, 0, -1}, Coeff{0, 1, 0, 0}, Coeff{0, 0, 1, 0}};
}

BallScanner::BallScanner(const Conjugator& cj, std::vector<Coeff> basis)
    : cj_(cj), basis_(std::move(basis)), n_(static_cast<int>(basis_.size()))
{
    const auto& G = cj.gram();
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    s += static_cast<double>(basis_[i][a]) * G[a][b] * static_cast<double>(basis_[j][b]);
            q_[i][j] = s;
        }
    for (int i = 0; i < n_; ++i) {
        if (!(q_[i][i] > 0.0))
            throw std::runtime_error("conjugated Gram matrix is not positive definite");
        for (int j = i + 1; j < n_; ++j) {
            q_[j][i] = q_[i][j];
            q_[i][j] /= q_[i][i];
        }
        for (int k = i + 1; k < n_; ++k)
            for (int l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
}

}  // namespace detail

std::vector<RegionElement> enumerate_region(const LatticeSpec& spec, const Region& region,
                                            const EnumerationBudget& budget)
{
    const detail::Conjugator cj(spec);
    const detail::BallScanner scanner(cj, detail::sublattice_basis(Sublattice::Full));
    std::vector<RegionElement> out;
    scanner.scan(region.L * region.L, budget, [&](const detail::ScaledPoint& p) {
        if (region.exclude_zero && p.coeff == detail::Coeff{0, 0, 0, 0})
            return;
        const auto m = detail::region_membership(cj, p, region.kind, region.delta, region.L);
        if (!m.slack)
            return;
        RegionElement e;
        e.coeff = p.coeff;
        e.gamma = spec.element(p.coeff);
        e.det_key = p.det_key;
        e.conj = {p.P, p.tau, p.rot, p.dil};
        e.boundary = !m.strict;
        out.push_back(std::move(e));
    });
    std::sort(out.begin(), out.end(), [](const RegionElement& a, const RegionElement& b) { return a.coeff < b.coeff; });
    return out;
}

std::uint64_t body_point_count(const LatticeSpec& spec, RegionKind kind, double delta, double L, Sublattice sub,
                               const EnumerationBudget& budget)
{
    const detail::Conjugator cj(spec);
    const detail::BallScanner scanner(cj, detail::sublattice_basis(sub));
    std::uint64_t n = 0;
    scanner.scan(L * L, budget, [&](const detail::ScaledPoint& p) {
        if (detail::region_membership(cj, p, kind, delta, L).strict)
            ++n;
    });
    return n;
}

}  // namespace qtheta
