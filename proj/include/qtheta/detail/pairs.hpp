#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qtheta::detail {

struct PairRecord {
    std::int64_t det = 0;
    long double dia = 0.0L;  // conjugated diamond, possibly as a scaled integer
    bool operator<(const PairRecord& o) const { return det != o.det ? det < o.det : dia < o.dia; }
};

// ordered pairs with equal det and |dia_i - dia_j| <= window (no window: det only); sorts recs
std::uint64_t count_window_pairs(std::vector<PairRecord>& recs, std::optional<long double> window);

}  // namespace qtheta::detail
