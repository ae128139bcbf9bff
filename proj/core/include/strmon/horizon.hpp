#ifndef STRMON_HORIZON_HPP
#define STRMON_HORIZON_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "strmon/formula.hpp"

namespace strmon {

/// Inclusive integer time range.
struct TimeDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// For every node of the tree rooted at `root`, the exact sorted set of
/// evaluation times its envelope is needed at when the root is evaluated at
/// time t. Computed top-down: the root needs {t}; Always/Eventually children
/// need the union of t' + [a;b] over parent times t'; Until left children
/// need t' + [0;b], right children t' + [a;b]; And/Or children inherit.
///
/// When `domain` is given, every window is clipped to it (finite traces bound
/// every horizon); without it, an unbounded interval raises
/// UnboundedHorizonError.
std::unordered_map<const Formula*, std::vector<std::int64_t>> required_times(
    const FormulaPtr& root, std::int64_t t,
    std::optional<TimeDomain> domain = std::nullopt);

}  // namespace strmon

#endif  // STRMON_HORIZON_HPP
