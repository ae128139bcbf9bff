#ifndef STRMON_FORMULA_MONITOR_HPP
#define STRMON_FORMULA_MONITOR_HPP

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "strmon/envelope.hpp"
#include "strmon/formula.hpp"
#include "strmon/horizon.hpp"
#include "strmon/predicate_monitor.hpp"
#include "strmon/signal.hpp"

namespace strmon {

/// Per-node envelopes, keyed by the exact evaluation times required_times
/// reported. Any lookup outside that set throws.
class EnvelopeTable {
 public:
  void reserve_node(const Formula* node, std::vector<std::int64_t> times);
  Envelope& slot(const Formula* node, std::int64_t t);
  const Envelope& at(const Formula* node, std::int64_t t) const;
  const std::vector<std::int64_t>& times(const Formula* node) const;

 private:
  struct NodeEnvelopes {
    std::vector<std::int64_t> times;  // sorted
    std::vector<Envelope> envs;
  };
  std::unordered_map<const Formula*, NodeEnvelopes> nodes_;
};

/// Wall time spent per node kind, in milliseconds.
using KindTimings = std::array<double, 7>;
const char* kind_name(NodeKind kind);

struct MonitorResult {
  Envelope root;
  EnvelopeTable table;
  KindTimings timing_ms{};
  /// Some predicate envelope ran out of trace under strict padding.
  bool domain_truncated = false;
  /// Negative-margin observations at the leaves, for explanation output.
  std::size_t leaf_violations = 0;
};

/// Robustness envelope of the specification at time t: predicate envelopes at
/// the leaves, then postorder propagation (pointwise min/max for conjunction
/// and disjunction, window extrema for always/eventually, and the
/// prefix-minimum sweep for until). Temporal windows are clipped to the
/// signal domain.
MonitorResult monitor_full(const FormulaPtr& root, const Signal& sig,
                           std::int64_t t, const MonitorConfig& cfg);

Envelope monitor(const FormulaPtr& root, const Signal& sig, std::int64_t t,
                 const MonitorConfig& cfg);

struct ExplainResult {
  /// One envelope per labeled top-level conjunct, in conjunct order.
  std::vector<std::pair<std::string, Envelope>> subformulas;
  Envelope root;
  KindTimings timing_ms{};
  bool domain_truncated = false;
};

/// Envelopes of the top-level conjuncts alongside the root envelope. Labels
/// default to conjunct1..k when not supplied.
ExplainResult explain(const FormulaPtr& root, const Signal& sig,
                      std::int64_t t, const MonitorConfig& cfg,
                      const std::vector<std::string>& labels = {});

/// output[i] = extremum of values[i+a .. i+b]; linear total work.
enum class ExtremumMode { Min, Max };
std::vector<double> sliding_extremum(std::span<const double> values,
                                     std::int64_t a, std::int64_t b,
                                     ExtremumMode mode);

/// Reference per-window scan with the same contract (the test oracle).
std::vector<double> sliding_extremum_naive(std::span<const double> values,
                                           std::int64_t a, std::int64_t b,
                                           ExtremumMode mode);

}  // namespace strmon

#endif  // STRMON_FORMULA_MONITOR_HPP
