#ifndef STRMON_ENVELOPE_HPP
#define STRMON_ENVELOPE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace strmon {

/// One admissible joint perturbation level: a spatial bound dx (extended
/// non-negative real) and a temporal bound dt (non-negative integer).
/// Ordered by the product order: p dominates q iff p.dx >= q.dx and
/// p.dt >= q.dt.
struct PerturbationLevel {
  double dx = 0.0;
  std::int64_t dt = 0;

  friend bool operator==(const PerturbationLevel&,
                         const PerturbationLevel&) = default;
};

/// p >= q in the product order.
bool dominates(const PerturbationLevel& p, const PerturbationLevel& q);
/// p > q: dominates and not equal.
bool strictly_dominates(const PerturbationLevel& p, const PerturbationLevel& q);

/// Set-valued robustness of a signal against a specification, stored densely:
/// entry k is the largest admissible spatial perturbation when the temporal
/// perturbation level is k. Invariants:
///   - entries are non-increasing,
///   - entries lie in [0, +inf],
///   - the empty envelope encodes a violated specification.
class Envelope {
 public:
  Envelope() = default;
  explicit Envelope(std::vector<double> dx);

  /// Envelope of the trivially true specification: +inf at every level.
  static Envelope top(std::int64_t dt_max);

  bool empty() const { return dx_.empty(); }
  std::size_t size() const { return dx_.size(); }
  double operator[](std::size_t dt) const { return dx_[dt]; }
  std::span<const double> values() const { return dx_; }

  friend bool operator==(const Envelope&, const Envelope&) = default;

 private:
  std::vector<double> dx_;
};

/// Lower envelope: pointwise minimum on the common temporal domain.
/// The empty envelope is absorbing.
Envelope env_min(const Envelope& a, const Envelope& b);

/// Upper envelope: pointwise maximum over defined entries; the longer
/// operand's tail survives. The empty envelope is neutral.
Envelope env_max(const Envelope& a, const Envelope& b);

/// Maximal points of the envelope's step set: entry k is dropped whenever
/// entry k+1 has the same value; the last entry is always kept.
/// Result is ordered by increasing dt.
std::vector<PerturbationLevel> pareto_strict(const Envelope& e);

/// Maximal points of an arbitrary finite point set under the product order.
/// Result is deduplicated and ordered by increasing dt.
std::vector<PerturbationLevel> raster_maximal_points(
    std::vector<PerturbationLevel> points);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace strmon

#endif  // STRMON_ENVELOPE_HPP
