#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtheta/algebra.hpp"

namespace qtheta {

enum class RegionKind { Omega, Psi };
enum class RegionSet { Omega, Psi, Union };

std::string to_string(RegionKind k);
std::string to_string(RegionSet s);

struct Region {
    RegionKind kind = RegionKind::Omega;
    double delta = 1.0;
    double L = 1.0;
    bool exclude_zero = true;

    Region() = default;
    Region(RegionKind k, double delta_, double L_, bool exclude_zero_ = true);
};

struct PairConstraint {
    std::optional<double> heart;  // |diamond1 - diamond2| <= heart * L^4 when present
};

struct EnumerationBudget {
    std::uint64_t max_candidates = 400'000'000;
};

class EnumerationBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// invariants of the conjugated element g^-1 gamma g
struct ConjugatedInvariants {
    double P = 0.0;
    double tau = 0.0;
    double rot = 0.0;  // b'^2 + c'^2
    double dil = 0.0;  // a'^2 + d'^2
    double diamond() const { return 4.0 * rot * dil; }
};

struct RegionElement {
    std::array<std::int64_t, 4> coeff{};
    TailoredMatrix gamma;  // unconjugated
    std::int64_t det_key = 0;  // ell * det
    ConjugatedInvariants conj;
    bool boundary = false;  // inside only thanks to the 1e-9 slack (irrational g)
};

std::vector<RegionElement> enumerate_region(const LatticeSpec& spec, const Region& region,
                                            const EnumerationBudget& budget = {});

struct PairCount {
    std::uint64_t count = 0;        // strict region membership
    std::uint64_t slack_count = 0;  // with 1e-9 boundary slack; equals count when exact
    bool exact = true;              // g rational, all comparisons exact
};

PairCount pair_count(const LatticeSpec& spec, RegionSet regions, double delta, double L,
                     const PairConstraint& constraint = {}, const EnumerationBudget& budget = {});

PairCount upper_triangular_pair_count(const LatticeSpec& spec, RegionSet regions, double delta, double L,
                                      const PairConstraint& constraint = {},
                                      const EnumerationBudget& budget = {});

enum class Sublattice { Full, TraceFree };

struct MinimaOptions {
    int max_doublings = 12;
    EnumerationBudget budget{};
};

class MinimaSearchFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// successive minima of the body {P' <= 1, part' <= delta} (L = 1) with respect to
// R(ell;g) or its trace-free part
std::vector<double> successive_minima(const LatticeSpec& spec, RegionKind kind, double delta,
                                      Sublattice sub = Sublattice::Full, const MinimaOptions& opts = {});

// number of lattice points (zero included) in L * body
std::uint64_t body_point_count(const LatticeSpec& spec, RegionKind kind, double delta, double L,
                               Sublattice sub = Sublattice::Full, const EnumerationBudget& budget = {});

}  // namespace qtheta
