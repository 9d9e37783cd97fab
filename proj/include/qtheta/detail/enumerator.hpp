#pragma once

// Fincke-Pohst scan of R(ell;g) (or a sublattice) under the quadratic form P o conj_g.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qtheta/algebra.hpp"
#include "qtheta/counting.hpp"

namespace qtheta::detail {

using Coeff = std::array<std::int64_t, 4>;

struct ScaledPoint {
    Coeff coeff{};
    std::int64_t det_key = 0;
    // exact numerators over den4 = 4 S^2 (valid in exact mode)
    std::int64_t P4 = 0, rot4 = 0, dil4 = 0;
    double P = 0.0, rot = 0.0, dil = 0.0, tau = 0.0;
};

class Conjugator {
public:
    explicit Conjugator(const LatticeSpec& spec);

    bool exact() const { return exact_; }
    std::int64_t den4() const { return den4_; }
    const LatticeSpec& spec() const { return spec_; }
    const std::array<std::array<double, 4>, 4>& gram() const { return gram_; }

    void fill(ScaledPoint& p) const;

private:
    LatticeSpec spec_;
    bool exact_ = false;
    std::int64_t den4_ = 1;
    std::array<std::array<std::int64_t, 4>, 4> int_conj_{};  // integer conjugates of the basis, scaled by S
    std::array<std::array<double, 4>, 4> real_conj_{};
    std::array<std::array<double, 4>, 4> gram_{};
};

inline constexpr double kSlack = 1e-9;

inline bool le_bound(std::int64_t num, std::int64_t den4, long double bound)
{
    return static_cast<long double>(num) <= static_cast<long double>(den4) * bound;
}

inline bool le_slack(double v, double bound)
{
    return v <= bound + kSlack * std::max(1.0, std::abs(bound));
}

struct Membership {
    bool strict = false;
    bool slack = false;
};

Membership region_membership(const Conjugator& cj, const ScaledPoint& p, RegionKind kind, double delta,
                             double L);

// basis vectors of the sublattice, as coefficient vectors in the standard basis
std::vector<Coeff> sublattice_basis(Sublattice sub);

class BallScanner {
public:
    BallScanner(const Conjugator& cj, std::vector<Coeff> basis);

    // visits every lattice point with P' <= bound2 (a hair more, for rounding); zero included
    template <class F>
    void scan(double bound2, const EnumerationBudget& budget, F&& visit) const;

private:
    const Conjugator& cj_;
    std::vector<Coeff> basis_;
    int n_;
    std::array<std::array<double, 4>, 4> q_{};  // Cholesky form: q_ii diag, q_ij (i<j) mu coefficients
};

template <class F>
void BallScanner::scan(double bound2, const EnumerationBudget& budget, F&& visit) const
{
    const double bound = bound2 * (1.0 + 1e-9) + 1e-12;
    std::array<std::int64_t, 4> x{0, 0, 0, 0};
    std::array<double, 4> center{}, remain{}, upper{};
    std::uint64_t candidates = 0;
    int i = n_ - 1;
    remain[i] = bound;
    center[i] = 0.0;

    auto init_level = [&](int lvl) {
        double c = 0.0;
        for (int j = lvl + 1; j < n_; ++j) c -= q_[lvl][j] * static_cast<double>(x[j]);
        center[lvl] = c;
        const double r = std::sqrt(std::max(0.0, remain[lvl] / q_[lvl][lvl]));
        x[lvl] = static_cast<std::int64_t>(std::ceil(c - r));
        upper[lvl] = c + r;
    };
    init_level(i);
    while (true) {
        if (static_cast<double>(x[i]) > upper[i]) {
            if (++i >= n_)
                break;
            ++x[i];
            continue;
        }
        const double t = static_cast<double>(x[i]) - center[i];
        const double used = q_[i][i] * t * t;
        if (i == 0) {
            if (++candidates > budget.max_candidates)
                throw EnumerationBudgetExceeded("lattice enumeration exceeded the candidate budget");
            ScaledPoint p;
            p.coeff = {0, 0, 0, 0};
            for (int k = 0; k < n_; ++k)
                for (int e = 0; e < 4; ++e) p.coeff[e] += x[k] * basis_[k][e];
            cj_.fill(p);
            visit(p);
            ++x[0];
            continue;
        }
        remain[i - 1] = remain[i] - used;
        --i;
        init_level(i);
    }
}

}  // namespace qtheta::detail
