#ifndef STRMON_PREDICATE_MONITOR_HPP
#define STRMON_PREDICATE_MONITOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "strmon/envelope.hpp"
#include "strmon/formula.hpp"
#include "strmon/signal.hpp"

namespace strmon {

/// Vector norm bounding the momentary spatial perturbation.
enum class Norm { L2, Linf };

struct MonitorConfig {
  std::int64_t dt_max = 0;
  Norm norm = Norm::L2;
  double bisection_tol = 1e-9;
  double bisection_hi = 1e6;
  /// Worker cap for leaf-envelope computation; results are identical for any
  /// value.
  int jobs = 1;
  /// Use per-window scans instead of the monotone-queue pass (test oracle).
  bool naive_windows = false;
};

/// Throws ConfigError on invalid knobs, or when a signed-distance predicate
/// appears under an L-infinity norm (signed distances are Euclidean).
void validate_config(const MonitorConfig& cfg, const Formula& root);
void validate_config(const MonitorConfig& cfg, const PredicateFunction& p);

/// Largest spatial perturbation the predicate tolerates at state z: the
/// biggest r >= 0 such that h stays non-negative on the whole r-ball around
/// z; any negative value signals h(z) < 0.
///   Linear          -> (a.z + b) / dual_norm(a)      (exact)
///   SignedDistance  -> h(z)                          (exact for convex sets)
///   Lipschitz       -> h(z) / L                      (sound under-estimate)
double spatial_margin(const PredicateFunction& p, std::span<const double> z,
                      const MonitorConfig& cfg);

/// The newly introduced temporal offsets at level dt over s support
/// dimensions: [-dt;dt]^s minus the open interior box. Deterministic order,
/// each offset exactly once.
std::vector<std::vector<std::int64_t>> shell_offsets(std::int64_t dt, int s);

/// Streaming variant used by the hot loop; `fn` receives each offset as a
/// span valid only during the call.
void for_each_shell_offset(
    std::int64_t dt, int s,
    const std::function<void(std::span<const std::int64_t>)>& fn);

struct ShellViolation {
  std::int64_t level = 0;
  std::vector<std::int64_t> offset;  // per support dimension
  double margin = 0.0;
};

struct PredicateEnvelopeResult {
  Envelope envelope;
  /// Strict padding ran out of trace before dt_max; the envelope holds the
  /// levels that were fully resolvable.
  bool domain_truncated = false;
  /// First offset whose margin went negative, recorded for explainability.
  std::optional<ShellViolation> violation;
};

/// Predicate-level robustness envelope: sweeps dt = 0..dt_max, enumerates
/// each temporal shell over the predicate's support dimensions, takes the
/// worst per-shift spatial margin, and folds it into the running minimum.
/// Stops at the first negative margin (the envelope so far is the result;
/// empty when the unperturbed margin is already negative).
PredicateEnvelopeResult predicate_envelope(const PredicateFunction& p,
                                           const Signal& sig, std::int64_t t,
                                           const MonitorConfig& cfg);

}  // namespace strmon

#endif  // STRMON_PREDICATE_MONITOR_HPP
