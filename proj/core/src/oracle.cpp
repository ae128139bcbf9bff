#include "strmon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "strmon/errors.hpp"
#include "strmon/horizon.hpp"

namespace strmon {

namespace {

// Inclusive window [t+a, min(t+b, hi)]; empty when lo > hi.
struct Window {
  std::int64_t lo;
  std::int64_t hi;
};

Window clipped_window(const Interval& i, std::int64_t t, std::int64_t hi) {
  return {t + i.a, i.unbounded ? hi : std::min(t + i.b, hi)};
}

// State provider: fills z with the (possibly perturbed) signal state at time
// tau.
class StateView {
 public:
  StateView(const Signal& sig, const PerturbationSample* sample)
      : sig_(sig), sample_(sample) {
    if (sample_ && static_cast<int>(sample_->dt.deltas.size()) != sig.dim())
      throw Error("temporal shift dimension mismatch");
  }

  void state_at(std::int64_t tau, std::vector<double>& z) const {
    z.resize(static_cast<std::size_t>(sig_.dim()));
    for (int i = 0; i < sig_.dim(); ++i) {
      const std::int64_t shift =
          sample_ ? sample_->dt.deltas[static_cast<std::size_t>(i)] : 0;
      z[static_cast<std::size_t>(i)] = sig_.value(i, tau - shift);
    }
    if (sample_) {
      auto it = sample_->dx_signal.find(tau);
      if (it != sample_->dx_signal.end()) {
        for (int i = 0; i < sig_.dim(); ++i)
          z[static_cast<std::size_t>(i)] +=
              it->second[static_cast<std::size_t>(i)];
      }
    }
  }

 private:
  const Signal& sig_;
  const PerturbationSample* sample_;
};

bool eval_qualitative(const Formula& f, std::int64_t t, const StateView& view,
                      std::int64_t hi, std::vector<double>& scratch) {
  switch (f.kind) {
    case NodeKind::True:
      return true;
    case NodeKind::Predicate:
      view.state_at(t, scratch);
      return evaluate_predicate(f.predicate, scratch) >= 0.0;
    case NodeKind::And:
      for (const auto& c : f.children)
        if (!eval_qualitative(*c, t, view, hi, scratch)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children)
        if (eval_qualitative(*c, t, view, hi, scratch)) return true;
      return false;
    case NodeKind::Always: {
      const Window w = clipped_window(f.interval, t, hi);
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        if (!eval_qualitative(*f.children[0], tau, view, hi, scratch))
          return false;
      return true;
    }
    case NodeKind::Eventually: {
      const Window w = clipped_window(f.interval, t, hi);
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        if (eval_qualitative(*f.children[0], tau, view, hi, scratch))
          return true;
      return false;
    }
    case NodeKind::Until: {
      const Window w = clipped_window(f.interval, t, hi);
      // Prefix of the left child up to and including the witness time.
      std::int64_t prefix_ok_until = t - 1;
      for (std::int64_t witness = w.lo; witness <= w.hi; ++witness) {
        while (prefix_ok_until < witness &&
               eval_qualitative(*f.children[0], prefix_ok_until + 1, view, hi,
                                scratch))
          ++prefix_ok_until;
        if (prefix_ok_until < witness) return false;
        if (eval_qualitative(*f.children[1], witness, view, hi, scratch))
          return true;
      }
      return false;
    }
  }
  return false;
}

double scalar_margin(const PredicateFunction& p, std::span<const double> z) {
  return std::visit(
      [&](const auto& fn) -> double {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, LinearPredicate>) {
          double h = fn.b;
          double norm_sq = 0.0;
          for (std::size_t i = 0; i < fn.a.size(); ++i) {
            h += fn.a[i] * z[i];
            norm_sq += fn.a[i] * fn.a[i];
          }
          return h / std::sqrt(norm_sq);
        } else if constexpr (std::is_same_v<T, SignedDistancePredicate>) {
          const double sd = signed_distance(z, fn.region);
          return fn.orientation == Orientation::Avoid ? sd : -sd;
        } else {
          throw UnsupportedError(
              "classical spatial semantics need an exact signed distance; "
              "Lipschitz predicates provide none");
        }
      },
      p.fn);
}

double eval_classical(const Formula& f, std::int64_t t, const StateView& view,
                      std::int64_t hi, std::vector<double>& scratch) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (f.kind) {
    case NodeKind::True:
      return inf;
    case NodeKind::Predicate:
      view.state_at(t, scratch);
      return scalar_margin(f.predicate, scratch);
    case NodeKind::And: {
      double acc = inf;
      for (const auto& c : f.children)
        acc = std::min(acc, eval_classical(*c, t, view, hi, scratch));
      return acc;
    }
    case NodeKind::Or: {
      double acc = -inf;
      for (const auto& c : f.children)
        acc = std::max(acc, eval_classical(*c, t, view, hi, scratch));
      return acc;
    }
    case NodeKind::Always: {
      const Window w = clipped_window(f.interval, t, hi);
      double acc = inf;
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        acc = std::min(acc, eval_classical(*f.children[0], tau, view, hi,
                                           scratch));
      return acc;
    }
    case NodeKind::Eventually: {
      const Window w = clipped_window(f.interval, t, hi);
      double acc = -inf;
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        acc = std::max(acc, eval_classical(*f.children[0], tau, view, hi,
                                           scratch));
      return acc;
    }
    case NodeKind::Until: {
      const Window w = clipped_window(f.interval, t, hi);
      double best = -inf;
      double prefix = inf;
      for (std::int64_t witness = t; witness <= w.hi; ++witness) {
        prefix = std::min(
            prefix, eval_classical(*f.children[0], witness, view, hi, scratch));
        if (witness >= w.lo)
          best = std::max(best,
                          std::min(prefix, eval_classical(*f.children[1],
                                                          witness, view, hi,
                                                          scratch)));
      }
      return best;
    }
  }
  return -inf;
}

}  // namespace

bool qualitative(const FormulaPtr& root, const Signal& sig, std::int64_t t) {
  if (!sig.in_domain(t))
    throw OutOfDomainError("evaluation time outside signal domain");
  StateView view(sig, nullptr);
  std::vector<double> scratch;
  return eval_qualitative(*root, t, view, sig.t_hi(), scratch);
}

bool qualitative_perturbed(const FormulaPtr& root, const Signal& sig,
                           const PerturbationSample& sample, std::int64_t t) {
  if (!sig.in_domain(t))
    throw OutOfDomainError("evaluation time outside signal domain");
  StateView view(sig, &sample);
  std::vector<double> scratch;
  return eval_qualitative(*root, t, view, sig.t_hi(), scratch);
}

double classical_spatial(const FormulaPtr& root, const Signal& sig,
                         std::int64_t t) {
  if (!sig.in_domain(t))
    throw OutOfDomainError("evaluation time outside signal domain");
  StateView view(sig, nullptr);
  std::vector<double> scratch;
  return eval_classical(*root, t, view, sig.t_hi(), scratch);
}

// ---------------------------------------------------------------------------
// Brute-force rasterized STR.
// ---------------------------------------------------------------------------

namespace {

void collect_leaves(const Formula* f, std::vector<const Formula*>& leaves) {
  if (f->kind == NodeKind::Predicate) {
    leaves.push_back(f);
    return;
  }
  for (const auto& c : f->children) collect_leaves(c.get(), leaves);
}

// Atom assignment: for each relevant time, one truth bit per leaf active at
// that time.
struct AtomTable {
  std::vector<std::int64_t> times;                   // sorted relevant times
  std::unordered_map<std::int64_t, std::size_t> time_index;
  std::vector<std::vector<std::size_t>> active;      // per time: leaf indices
  std::vector<std::unordered_map<std::size_t, int>> bit_of;  // leaf -> bit
};

bool eval_with_atoms(const Formula& f, std::int64_t t, const AtomTable& table,
                     const std::vector<const Formula*>& leaves,
                     const std::vector<std::uint64_t>& chosen,
                     std::int64_t hi) {
  switch (f.kind) {
    case NodeKind::True:
      return true;
    case NodeKind::Predicate: {
      const std::size_t ti = table.time_index.at(t);
      std::size_t leaf_idx = 0;
      for (; leaf_idx < leaves.size(); ++leaf_idx)
        if (leaves[leaf_idx] == &f) break;
      const int bit = table.bit_of[ti].at(leaf_idx);
      return (chosen[ti] >> bit) & 1u;
    }
    case NodeKind::And:
      for (const auto& c : f.children)
        if (!eval_with_atoms(*c, t, table, leaves, chosen, hi)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children)
        if (eval_with_atoms(*c, t, table, leaves, chosen, hi)) return true;
      return false;
    case NodeKind::Always: {
      const Window w = clipped_window(f.interval, t, hi);
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        if (!eval_with_atoms(*f.children[0], tau, table, leaves, chosen, hi))
          return false;
      return true;
    }
    case NodeKind::Eventually: {
      const Window w = clipped_window(f.interval, t, hi);
      for (std::int64_t tau = w.lo; tau <= w.hi; ++tau)
        if (eval_with_atoms(*f.children[0], tau, table, leaves, chosen, hi))
          return true;
      return false;
    }
    case NodeKind::Until: {
      const Window w = clipped_window(f.interval, t, hi);
      std::int64_t prefix_ok_until = t - 1;
      for (std::int64_t witness = w.lo; witness <= w.hi; ++witness) {
        while (prefix_ok_until < witness &&
               eval_with_atoms(*f.children[0], prefix_ok_until + 1, table,
                               leaves, chosen, hi))
          ++prefix_ok_until;
        if (prefix_ok_until < witness) return false;
        if (eval_with_atoms(*f.children[1], witness, table, leaves, chosen,
                            hi))
          return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

std::vector<PerturbationLevel> brute_force_str(
    const FormulaPtr& root, const Signal& sig, std::int64_t t,
    std::int64_t dt_max, const BruteForceGrid& grid,
    const OracleBudget& budget) {
  const int n = sig.dim();
  if (n > budget.max_dim)
    throw BudgetExceededError("brute-force oracle budget: dimension " +
                              std::to_string(n) + " > " +
                              std::to_string(budget.max_dim));
  if (sig.length() > budget.max_trace)
    throw BudgetExceededError("brute-force oracle budget: trace length " +
                              std::to_string(sig.length()) + " > " +
                              std::to_string(budget.max_trace));
  if (dt_max > budget.max_dt)
    throw BudgetExceededError("brute-force oracle budget: dt_max " +
                              std::to_string(dt_max) + " > " +
                              std::to_string(budget.max_dt));
  if (grid.step < budget.min_grid_step)
    throw BudgetExceededError("brute-force oracle budget: grid step " +
                              std::to_string(grid.step) + " < " +
                              std::to_string(budget.min_grid_step));
  if (grid.step <= 0.0 || grid.cap < 0.0)
    throw Error("brute-force grid needs step > 0 and cap >= 0");

  // Relevant times: where predicate leaves are read.
  auto req = required_times(root, t, TimeDomain{sig.t_lo(), sig.t_hi()});
  std::vector<const Formula*> leaves;
  collect_leaves(root.get(), leaves);

  AtomTable table;
  {
    std::vector<std::int64_t> all;
    for (std::size_t li = 0; li < leaves.size(); ++li) {
      const auto& times = req.at(leaves[li]);
      all.insert(all.end(), times.begin(), times.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    table.times = std::move(all);
    table.active.resize(table.times.size());
    table.bit_of.resize(table.times.size());
    for (std::size_t ti = 0; ti < table.times.size(); ++ti)
      table.time_index[table.times[ti]] = ti;
    for (std::size_t li = 0; li < leaves.size(); ++li) {
      for (std::int64_t tau : req.at(leaves[li])) {
        const std::size_t ti = table.time_index.at(tau);
        table.bit_of[ti][li] = static_cast<int>(table.active[ti].size());
        table.active[ti].push_back(li);
      }
    }
  }

  const std::int64_t hi = sig.t_hi();
  std::vector<double> scratch;

  // Membership of one cell for one fixed shift: patterns per time from the
  // extreme spatial offsets, dominated patterns dropped (the formula is
  // monotone in its atoms), then every remaining joint choice must satisfy.
  auto member_for_shift = [&](const TemporalShift& shift,
                              double dx) -> bool {
    std::vector<std::vector<std::uint64_t>> options(table.times.size());
    std::vector<double> vertex(static_cast<std::size_t>(n));
    PerturbationSample sample;
    sample.dt = shift;

    // Extreme points plus the nominal zero offset; the zero offset keeps the
    // admitted set inside the dx = 0 column (the unperturbed signal is within
    // every budget).
    const int vertex_count = dx == 0.0 ? 1 : (1 << n) + 1;
    for (std::size_t ti = 0; ti < table.times.size(); ++ti) {
      const std::int64_t tau = table.times[ti];
      std::vector<std::uint64_t> patterns;
      for (int v = 0; v < vertex_count; ++v) {
        const bool zero_offset = v == (1 << n);
        for (int i = 0; i < n; ++i)
          vertex[static_cast<std::size_t>(i)] =
              zero_offset ? 0.0 : (((v >> i) & 1) ? dx : -dx);
        // State at tau under this shift and offset.
        scratch.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          scratch[static_cast<std::size_t>(i)] =
              sig.value(i, tau - shift.deltas[static_cast<std::size_t>(i)]) +
              vertex[static_cast<std::size_t>(i)];
        std::uint64_t pattern = 0;
        for (std::size_t k = 0; k < table.active[ti].size(); ++k) {
          const Formula* leaf = leaves[table.active[ti][k]];
          if (evaluate_predicate(leaf->predicate, scratch) >= 0.0)
            pattern |= std::uint64_t{1} << k;
        }
        patterns.push_back(pattern);
      }
      std::sort(patterns.begin(), patterns.end());
      patterns.erase(std::unique(patterns.begin(), patterns.end()),
                     patterns.end());
      // Keep minimal patterns only: drop p when some q != p has q & p == q.
      std::vector<std::uint64_t> minimal;
      for (std::uint64_t p : patterns) {
        bool keep = true;
        for (std::uint64_t q : patterns)
          if (q != p && (q & p) == q) {
            keep = false;
            break;
          }
        if (keep) minimal.push_back(p);
      }
      options[ti] = std::move(minimal);
    }

    std::uint64_t combos = 1;
    for (const auto& opt : options) {
      combos *= opt.empty() ? 1 : opt.size();
      if (combos > budget.max_assignments)
        throw BudgetExceededError(
            "brute-force oracle budget: joint vertex assignments exceed " +
            std::to_string(budget.max_assignments));
    }

    std::vector<std::uint64_t> chosen(table.times.size(), 0);
    std::function<bool(std::size_t)> all_satisfied =
        [&](std::size_t ti) -> bool {
      if (ti == table.times.size())
        return eval_with_atoms(*root, t, table, leaves, chosen, hi);
      if (options[ti].empty()) return all_satisfied(ti + 1);
      for (std::uint64_t p : options[ti]) {
        chosen[ti] = p;
        if (!all_satisfied(ti + 1)) return false;
      }
      return true;
    };
    return all_satisfied(0);
  };

  // Shift box enumeration for one dt level.
  auto shifts_for = [&](std::int64_t dt) {
    std::vector<TemporalShift> shifts;
    TemporalShift cur;
    cur.deltas.assign(static_cast<std::size_t>(n), -dt);
    while (true) {
      shifts.push_back(cur);
      int i = n - 1;
      for (; i >= 0; --i) {
        if (cur.deltas[static_cast<std::size_t>(i)] < dt) {
          ++cur.deltas[static_cast<std::size_t>(i)];
          break;
        }
        cur.deltas[static_cast<std::size_t>(i)] = -dt;
      }
      if (i < 0) break;
    }
    return shifts;
  };

  const std::size_t dx_levels =
      static_cast<std::size_t>(std::floor(grid.cap / grid.step + 1e-9)) + 1;

  std::vector<PerturbationLevel> admitted;
  for (std::int64_t dt = 0; dt <= dt_max; ++dt) {
    const auto shifts = shifts_for(dt);
    for (std::size_t xi = 0; xi < dx_levels; ++xi) {
      const double dx = static_cast<double>(xi) * grid.step;
      bool ok = true;
      for (const TemporalShift& shift : shifts) {
        if (!member_for_shift(shift, dx)) {
          ok = false;
          break;
        }
      }
      if (ok) admitted.push_back({dx, dt});
    }
  }
  return raster_maximal_points(std::move(admitted));
}

}  // namespace strmon
