#ifndef STRMON_TESTS_HELPERS_HPP
#define STRMON_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "strmon/envelope.hpp"
#include "strmon/formula.hpp"
#include "strmon/formula_monitor.hpp"
#include "strmon/oracle.hpp"
#include "strmon/predicate_monitor.hpp"
#include "strmon/signal.hpp"

namespace strmon::test {

using Rng = std::mt19937_64;

inline Signal make_signal(std::int64_t t_lo,
                          std::vector<std::vector<double>> rows,
                          PaddingPolicy padding = PaddingPolicy::Strict) {
  return Signal(t_lo, std::move(rows), padding);
}

/// 1-D ramp x(t) = t on [lo, hi].
inline Signal ramp_signal(std::int64_t lo, std::int64_t hi,
                          PaddingPolicy padding = PaddingPolicy::Strict) {
  std::vector<std::vector<double>> rows;
  for (std::int64_t t = lo; t <= hi; ++t)
    rows.push_back({static_cast<double>(t)});
  return Signal(lo, std::move(rows), padding);
}

inline Signal random_signal(Rng& rng, int n, std::int64_t t_lo,
                            std::int64_t len, double amplitude,
                            PaddingPolicy padding = PaddingPolicy::Clamp) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<std::vector<double>> rows;
  for (std::int64_t i = 0; i < len; ++i) {
    std::vector<double> row;
    for (int d = 0; d < n; ++d) row.push_back(dist(rng));
    rows.push_back(std::move(row));
  }
  return Signal(t_lo, std::move(rows), padding);
}

/// Random monotone envelope with entries on a grid.
inline Envelope random_grid_envelope(Rng& rng, std::int64_t max_len,
                                     double step, double cap) {
  std::uniform_int_distribution<std::int64_t> len_dist(0, max_len);
  const std::int64_t len = len_dist(rng);
  const int levels = static_cast<int>(std::llround(cap / step));
  std::uniform_int_distribution<int> level_dist(0, levels);
  std::vector<int> picks;
  for (std::int64_t i = 0; i < len; ++i) picks.push_back(level_dist(rng));
  std::sort(picks.rbegin(), picks.rend());
  std::vector<double> dx;
  for (int p : picks) dx.push_back(p * step);
  return Envelope(std::move(dx));
}

/// Grid points of the downward closure of an envelope (dx quantized to
/// `step`, capped at `cap`).
inline std::vector<PerturbationLevel> rasterize_down(const Envelope& e,
                                                     double step, double cap) {
  std::vector<PerturbationLevel> out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double top = std::min(e[k], cap);
    const int levels = static_cast<int>(std::floor(top / step + 1e-9));
    for (int i = 0; i <= levels; ++i)
      out.push_back({i * step, static_cast<std::int64_t>(k)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reference recursive evaluator: no table, no memoization, envelope algebra
// only. Used to check the table-driven engine bit-for-bit.
// ---------------------------------------------------------------------------

inline Envelope ref_monitor(const Formula& f, const Signal& sig,
                            std::int64_t t, const MonitorConfig& cfg) {
  const std::int64_t hi = sig.t_hi();
  switch (f.kind) {
    case NodeKind::True:
      return Envelope::top(cfg.dt_max);
    case NodeKind::Predicate:
      return predicate_envelope(f.predicate, sig, t, cfg).envelope;
    case NodeKind::And: {
      Envelope acc = ref_monitor(*f.children[0], sig, t, cfg);
      for (std::size_t i = 1; i < f.children.size(); ++i)
        acc = env_min(acc, ref_monitor(*f.children[i], sig, t, cfg));
      return acc;
    }
    case NodeKind::Or: {
      Envelope acc = ref_monitor(*f.children[0], sig, t, cfg);
      for (std::size_t i = 1; i < f.children.size(); ++i)
        acc = env_max(acc, ref_monitor(*f.children[i], sig, t, cfg));
      return acc;
    }
    case NodeKind::Always: {
      const std::int64_t w_lo = t + f.interval.a;
      const std::int64_t w_hi =
          f.interval.unbounded ? hi : std::min(t + f.interval.b, hi);
      Envelope acc = Envelope::top(cfg.dt_max);
      for (std::int64_t tau = w_lo; tau <= w_hi; ++tau)
        acc = env_min(acc, ref_monitor(*f.children[0], sig, tau, cfg));
      return acc;
    }
    case NodeKind::Eventually: {
      const std::int64_t w_lo = t + f.interval.a;
      const std::int64_t w_hi =
          f.interval.unbounded ? hi : std::min(t + f.interval.b, hi);
      Envelope acc;  // empty
      for (std::int64_t tau = w_lo; tau <= w_hi; ++tau)
        acc = env_max(acc, ref_monitor(*f.children[0], sig, tau, cfg));
      return acc;
    }
    case NodeKind::Until: {
      const std::int64_t k_max = std::min(f.interval.b, hi - t);
      Envelope acc;  // empty
      Envelope prefix = Envelope::top(cfg.dt_max);
      for (std::int64_t k = 0; k <= k_max; ++k) {
        prefix = env_min(prefix, ref_monitor(*f.children[0], sig, t + k, cfg));
        if (k >= f.interval.a)
          acc = env_max(acc, env_min(prefix, ref_monitor(*f.children[1], sig,
                                                         t + k, cfg)));
      }
      return acc;
    }
  }
  return Envelope{};
}

/// Reference predicate envelope that enumerates shells over all signal
/// dimensions instead of the predicate's support (the support-losslessness
/// oracle). Clamped reads; mirrors the production sweep otherwise.
inline Envelope full_dim_envelope(const PredicateFunction& p,
                                  const Signal& sig, std::int64_t t,
                                  const MonitorConfig& cfg) {
  std::vector<double> dx;
  double prev = kInf;
  std::vector<double> z(static_cast<std::size_t>(sig.dim()));
  for (std::int64_t level = 0; level <= cfg.dt_max; ++level) {
    double level_min = kInf;
    bool violated = false;
    for_each_shell_offset(
        level, sig.dim(), [&](std::span<const std::int64_t> off) {
          if (violated) return;
          for (int d = 0; d < sig.dim(); ++d)
            z[static_cast<std::size_t>(d)] =
                sig.value_clamped(d, t - off[static_cast<std::size_t>(d)]);
          const double m = spatial_margin(p, z, cfg);
          if (m < 0)
            violated = true;
          else
            level_min = std::min(level_min, m);
        });
    if (violated) break;
    prev = std::min(level_min, prev);
    dx.push_back(prev);
  }
  return Envelope(std::move(dx));
}

// ---------------------------------------------------------------------------
// Random formulas. Leaves are linear atoms (optionally axis-aligned box
// groups encoded as And/Or of halfplanes, exact under the L-infinity norm).
// ---------------------------------------------------------------------------

struct FormulaGenOptions {
  int n = 2;
  int max_depth = 3;
  std::int64_t max_window = 3;
  double coeff_range = 1.5;
  double offset_range = 2.0;
  bool allow_box_groups = true;
};

inline FormulaPtr random_linear_leaf(Rng& rng, const FormulaGenOptions& opt) {
  std::uniform_real_distribution<double> coeff(-opt.coeff_range,
                                               opt.coeff_range);
  std::uniform_real_distribution<double> offset(-opt.offset_range,
                                                opt.offset_range);
  std::vector<double> a(static_cast<std::size_t>(opt.n), 0.0);
  std::uniform_int_distribution<int> pick(0, opt.n - 1);
  a[static_cast<std::size_t>(pick(rng))] = coeff(rng) >= 0 ? 1.0 : -1.0;
  // Sometimes a dense direction.
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
    for (auto& c : a) c = coeff(rng);
  bool any = false;
  for (double c : a) any = any || c != 0.0;
  if (!any) a[0] = 1.0;
  return Formula::make_predicate(PredicateFunction::linear(std::move(a),
                                                           offset(rng)));
}

/// Axis-aligned box over all n dimensions as a conjunction (reach) or
/// disjunction (avoid) of halfplane atoms; exact under the L-infinity norm.
inline FormulaPtr random_box_group(Rng& rng, const FormulaGenOptions& opt) {
  std::uniform_real_distribution<double> center(-opt.offset_range,
                                                opt.offset_range);
  std::uniform_real_distribution<double> radius(0.3, opt.offset_range);
  const bool reach = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  std::vector<FormulaPtr> atoms;
  for (int d = 0; d < opt.n; ++d) {
    const double c = center(rng);
    const double r = radius(rng);
    std::vector<double> plus(static_cast<std::size_t>(opt.n), 0.0);
    std::vector<double> minus(static_cast<std::size_t>(opt.n), 0.0);
    plus[static_cast<std::size_t>(d)] = 1.0;
    minus[static_cast<std::size_t>(d)] = -1.0;
    if (reach) {
      // Inside: x_d >= c - r and x_d <= c + r.
      atoms.push_back(Formula::make_predicate(
          PredicateFunction::linear(plus, -(c - r))));
      atoms.push_back(Formula::make_predicate(
          PredicateFunction::linear(minus, c + r)));
    } else {
      // Outside via either face.
      atoms.push_back(Formula::make_predicate(
          PredicateFunction::linear(minus, c - r)));
      atoms.push_back(Formula::make_predicate(
          PredicateFunction::linear(plus, -(c + r))));
    }
  }
  return reach ? Formula::make_and(std::move(atoms))
               : Formula::make_or(std::move(atoms));
}

inline FormulaPtr random_formula(Rng& rng, const FormulaGenOptions& opt,
                                 int depth = 0) {
  std::uniform_int_distribution<int> kind_dist(0, depth >= opt.max_depth ? 1
                                                                         : 7);
  std::uniform_int_distribution<std::int64_t> lo_dist(0, opt.max_window);
  auto window = [&]() {
    Interval i;
    i.a = lo_dist(rng);
    i.b = i.a + lo_dist(rng);
    return i;
  };
  switch (kind_dist(rng)) {
    case 0:
    case 1: {
      if (opt.allow_box_groups &&
          std::uniform_int_distribution<int>(0, 3)(rng) == 0)
        return random_box_group(rng, opt);
      return random_linear_leaf(rng, opt);
    }
    case 2:
      return std::uniform_int_distribution<int>(0, 9)(rng) == 0
                 ? Formula::make_true()
                 : random_linear_leaf(rng, opt);
    case 3:
      return Formula::make_and({random_formula(rng, opt, depth + 1),
                                random_formula(rng, opt, depth + 1)});
    case 4:
      return Formula::make_or({random_formula(rng, opt, depth + 1),
                               random_formula(rng, opt, depth + 1)});
    case 5:
      return Formula::make_always(window(),
                                  random_formula(rng, opt, depth + 1));
    case 6:
      return Formula::make_eventually(window(),
                                      random_formula(rng, opt, depth + 1));
    default:
      return Formula::make_until(window(), random_formula(rng, opt, depth + 1),
                                 random_formula(rng, opt, depth + 1));
  }
}

inline void count_kinds(const Formula& f, std::array<int, 7>& counts) {
  counts[static_cast<std::size_t>(f.kind)]++;
  for (const auto& c : f.children) count_kinds(*c, counts);
}

}  // namespace strmon::test

#endif  // STRMON_TESTS_HELPERS_HPP
