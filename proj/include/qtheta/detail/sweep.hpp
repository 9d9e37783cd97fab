#pragma once

// One enumeration per lattice serving a whole (delta, L[, heart]) grid.

#include <array>
#include <cstdint>
#include <vector>

#include "qtheta/algebra.hpp"
#include "qtheta/counting.hpp"

namespace qtheta::detail {

using Table2 = std::vector<std::vector<std::uint64_t>>;               // [delta][L]
using Table3 = std::vector<std::vector<std::vector<std::uint64_t>>>;  // [delta][L][heart]

// det-equal ordered pair counts in Omega* and Psi*; Ls ascending
std::array<Table2, 2> region_pair_sweep(const LatticeSpec& spec, const std::vector<double>& deltas,
                                        const std::vector<double>& Ls, const EnumerationBudget& budget);

// |R(ell;g)^0 cap Psi(delta, L)|, zero included
Table2 tracefree_sweep(const LatticeSpec& spec, const std::vector<double>& deltas, const std::vector<double>& Ls,
                       const EnumerationBudget& budget);

// union-region pair counts with the diamond window heart = factor * delta
Table3 heart_sweep(const LatticeSpec& spec, const std::vector<double>& deltas, const std::vector<double>& Ls,
                   const std::vector<double>& heart_factors, bool upper_only, const EnumerationBudget& budget);

}  // namespace qtheta::detail
