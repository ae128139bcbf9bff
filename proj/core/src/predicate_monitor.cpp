#include "strmon/predicate_monitor.hpp"

#include <cmath>

#include "strmon/errors.hpp"

namespace strmon {

namespace {

bool has_signed_distance(const Formula& f) {
  if (f.kind == NodeKind::Predicate)
    return std::holds_alternative<SignedDistancePredicate>(f.predicate.fn);
  for (const auto& child : f.children)
    if (has_signed_distance(*child)) return true;
  return false;
}

void validate_knobs(const MonitorConfig& cfg) {
  if (cfg.dt_max < 0) throw ConfigError("dt_max must be non-negative");
  if (cfg.bisection_tol <= 0.0)
    throw ConfigError("bisection tolerance must be positive");
  if (cfg.bisection_hi <= 0.0)
    throw ConfigError("bisection upper bracket must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
}

double dual_norm(const std::vector<double>& a, Norm norm) {
  double s = 0.0;
  if (norm == Norm::L2) {
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }
  // Dual of L-infinity is L1.
  for (double v : a) s += std::fabs(v);
  return s;
}

}  // namespace

void validate_config(const MonitorConfig& cfg, const Formula& root) {
  validate_knobs(cfg);
  if (cfg.norm == Norm::Linf && has_signed_distance(root))
    throw ConfigError(
        "signed-distance predicates are Euclidean; use the L2 norm");
}

void validate_config(const MonitorConfig& cfg, const PredicateFunction& p) {
  validate_knobs(cfg);
  if (cfg.norm == Norm::Linf &&
      std::holds_alternative<SignedDistancePredicate>(p.fn))
    throw ConfigError(
        "signed-distance predicates are Euclidean; use the L2 norm");
}

double spatial_margin(const PredicateFunction& p, std::span<const double> z,
                      const MonitorConfig& cfg) {
  return std::visit(
      [&](const auto& fn) -> double {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, LinearPredicate>) {
          double h = fn.b;
          for (std::size_t i = 0; i < fn.a.size(); ++i) h += fn.a[i] * z[i];
          return h / dual_norm(fn.a, cfg.norm);
        } else if constexpr (std::is_same_v<T, SignedDistancePredicate>) {
          return evaluate_predicate(p, z);
        } else {
          // Bisection on the certified bound h(z) - L*r converges to h/L.
          return fn.evaluator(z) / fn.lipschitz;
        }
      },
      p.fn);
}

void for_each_shell_offset(
    std::int64_t dt, int s,
    const std::function<void(std::span<const std::int64_t>)>& fn) {
  if (s < 1) throw Error("shell needs at least one support dimension");
  std::vector<std::int64_t> offset(static_cast<std::size_t>(s), 0);
  if (dt == 0) {
    fn(offset);
    return;
  }

  // Each shell offset has a unique first coordinate j that attains |dt|;
  // coordinates before j are strictly interior, coordinates after j are free.
  for (int j = 0; j < s; ++j) {
    for (const std::int64_t pinned : {-dt, dt}) {
      offset.assign(static_cast<std::size_t>(s), 0);
      for (int i = 0; i < j; ++i)
        offset[static_cast<std::size_t>(i)] = -dt + 1;
      offset[static_cast<std::size_t>(j)] = pinned;
      for (int i = j + 1; i < s; ++i)
        offset[static_cast<std::size_t>(i)] = -dt;

      while (true) {
        fn(offset);
        // Odometer over the free coordinates (all except j), rightmost first.
        int i = s - 1;
        for (; i >= 0; --i) {
          if (i == j) continue;
          const std::int64_t hi = i < j ? dt - 1 : dt;
          const std::int64_t lo = i < j ? -dt + 1 : -dt;
          if (offset[static_cast<std::size_t>(i)] < hi) {
            ++offset[static_cast<std::size_t>(i)];
            break;
          }
          offset[static_cast<std::size_t>(i)] = lo;
        }
        if (i < 0) break;
      }
    }
  }
}

std::vector<std::vector<std::int64_t>> shell_offsets(std::int64_t dt, int s) {
  std::vector<std::vector<std::int64_t>> out;
  for_each_shell_offset(dt, s, [&](std::span<const std::int64_t> offset) {
    out.emplace_back(offset.begin(), offset.end());
  });
  return out;
}

PredicateEnvelopeResult predicate_envelope(const PredicateFunction& p,
                                           const Signal& sig, std::int64_t t,
                                           const MonitorConfig& cfg) {
  validate_config(cfg, p);
  if (!sig.in_domain(t))
    throw OutOfDomainError("evaluation time " + std::to_string(t) +
                           " outside signal domain");

  const std::vector<int>& support = p.support;
  if (support.empty())
    throw Error("predicate support is empty");
  const int s = static_cast<int>(support.size());
  const bool strict = sig.padding() == PaddingPolicy::Strict;

  std::vector<double> z(static_cast<std::size_t>(sig.dim()));
  for (int i = 0; i < sig.dim(); ++i) z[static_cast<std::size_t>(i)] = sig.value(i, t);

  PredicateEnvelopeResult result;
  std::vector<double> dx;
  dx.reserve(static_cast<std::size_t>(cfg.dt_max) + 1);
  double prev = kInf;

  for (std::int64_t level = 0; level <= cfg.dt_max; ++level) {
    if (strict && (t - level < sig.t_lo() || t + level > sig.t_hi())) {
      result.domain_truncated = true;
      break;
    }

    double level_min = kInf;
    bool violated = false;
    for_each_shell_offset(
        level, s, [&](std::span<const std::int64_t> offset) {
          if (violated) return;
          for (int k = 0; k < s; ++k) {
            const int dim = support[static_cast<std::size_t>(k)];
            z[static_cast<std::size_t>(dim)] =
                sig.value_clamped(dim, t - offset[static_cast<std::size_t>(k)]);
          }
          const double m = spatial_margin(p, z, cfg);
          if (m < 0.0) {
            violated = true;
            result.violation = ShellViolation{
                level, {offset.begin(), offset.end()}, m};
            return;
          }
          level_min = std::min(level_min, m);
        });
    if (violated) break;

    const double entry = std::min(level_min, prev);
    dx.push_back(entry);
    prev = entry;
  }

  result.envelope = Envelope(std::move(dx));
  return result;
}

}  // namespace strmon
