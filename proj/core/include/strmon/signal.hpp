#ifndef STRMON_SIGNAL_HPP
#define STRMON_SIGNAL_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace strmon {

/// How accesses outside the recorded time domain behave.
///   Strict: reject (the default; boundary holds can mask envelope errors).
///   Clamp:  return the boundary row.
enum class PaddingPolicy { Strict, Clamp };

/// Per-dimension integer time shift: component i of the shifted signal at
/// time t reads the original dimension i at time t - deltas[i].
struct TemporalShift {
  std::vector<std::int64_t> deltas;
};

/// Finite-domain, integer-indexed, n-dimensional real-valued trace.
/// Immutable after construction; safe for concurrent reads.
class Signal {
 public:
  /// Rows are time-ordered, one per integer index in [t_lo, t_lo + rows - 1];
  /// each row has n finite values.
  Signal(std::int64_t t_lo, std::vector<std::vector<double>> rows,
         PaddingPolicy padding = PaddingPolicy::Strict);

  std::int64_t t_lo() const { return t_lo_; }
  std::int64_t t_hi() const { return t_hi_; }
  int dim() const { return n_; }
  PaddingPolicy padding() const { return padding_; }
  std::int64_t length() const { return t_hi_ - t_lo_ + 1; }

  bool in_domain(std::int64_t t) const { return t >= t_lo_ && t <= t_hi_; }

  /// Single component access; applies the padding policy.
  double value(int dim, std::int64_t t) const;

  /// Component access that never throws: out-of-domain times clamp to the
  /// boundary regardless of policy. Used where the caller has already decided
  /// how to treat the domain edge.
  double value_clamped(int dim, std::int64_t t) const {
    if (t < t_lo_) t = t_lo_;
    if (t > t_hi_) t = t_hi_;
    return data_[static_cast<std::size_t>(t - t_lo_) *
                     static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(dim)];
  }

  /// Full row at time t.
  std::vector<double> sample(std::int64_t t) const;

  /// Row with asynchronous per-dimension shifts: component i reads time
  /// t - shift.deltas[i].
  std::vector<double> sample_shifted(std::int64_t t,
                                     const TemporalShift& shift) const;

  /// Same signal with a different padding policy.
  Signal with_padding(PaddingPolicy padding) const;

 private:
  std::int64_t t_lo_;
  std::int64_t t_hi_;
  int n_;
  PaddingPolicy padding_;
  std::vector<double> data_;  // row-major, length() * n_
};

/// Reads a trace from CSV with header `t,x1,...,xn`, one row per integer
/// time, times strictly increasing by 1.
Signal load_csv(const std::filesystem::path& path,
                PaddingPolicy padding = PaddingPolicy::Strict);

/// Writes the signal in the same CSV dialect (shortest round-trip decimals).
void save_csv(const Signal& sig, const std::filesystem::path& path);

}  // namespace strmon

#endif  // STRMON_SIGNAL_HPP
