#include "strmon/formula_monitor.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

#include "strmon/errors.hpp"
#include "strmon/parallel.hpp"

namespace strmon {

namespace {

// Internal sentinel for "no entry at this level"; envelope entries are never
// negative, so -inf is unambiguous and behaves correctly under min/max.
constexpr double kAbsent = -std::numeric_limits<double>::infinity();

double entry_or_absent(const Envelope& e, std::int64_t level) {
  return level < static_cast<std::int64_t>(e.size())
             ? e[static_cast<std::size_t>(level)]
             : kAbsent;
}

Envelope assemble(std::vector<double> levels) {
  std::size_t len = 0;
  while (len < levels.size() && levels[len] != kAbsent) ++len;
  levels.resize(len);
  return Envelope(std::move(levels));
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void validate_dims(const Formula& f, int n) {
  if (f.kind == NodeKind::Predicate) {
    if (const auto* lin = std::get_if<LinearPredicate>(&f.predicate.fn)) {
      if (static_cast<int>(lin->a.size()) != n)
        throw DimensionError("linear predicate coefficient count " +
                             std::to_string(lin->a.size()) +
                             " does not match signal dimension " +
                             std::to_string(n));
    }
    for (int dim : f.predicate.support)
      if (dim < 0 || dim >= n)
        throw DimensionError("predicate reads dimension x" +
                             std::to_string(dim + 1) +
                             " beyond signal dimension " + std::to_string(n));
  }
  for (const auto& child : f.children) validate_dims(*child, n);
}

void postorder(const Formula* node, std::vector<const Formula*>& out,
               std::unordered_map<const Formula*, bool>& seen) {
  if (seen[node]) return;
  seen[node] = true;
  for (const auto& child : node->children) postorder(child.get(), out, seen);
  out.push_back(node);
}

struct Engine {
  const Signal& sig;
  const MonitorConfig& cfg;
  std::unordered_map<const Formula*, std::vector<std::int64_t>> req;
  EnvelopeTable table;
  KindTimings timing{};
  bool truncated = false;
  std::size_t violations = 0;

  void run(const FormulaPtr& root, std::int64_t t) {
    req = required_times(root, t,
                         TimeDomain{sig.t_lo(), sig.t_hi()});

    std::vector<const Formula*> order;
    std::unordered_map<const Formula*, bool> seen;
    postorder(root.get(), order, seen);

    for (const Formula* node : order)
      table.reserve_node(node, req.at(node));

    compute_leaves(order);

    for (const Formula* node : order) {
      if (node->kind == NodeKind::True || node->kind == NodeKind::Predicate)
        continue;
      const auto start = Clock::now();
      switch (node->kind) {
        case NodeKind::And:
        case NodeKind::Or:
          compute_boolean(node);
          break;
        case NodeKind::Always:
        case NodeKind::Eventually:
          compute_window(node);
          break;
        case NodeKind::Until:
          compute_until(node);
          break;
        default:
          break;
      }
      timing[static_cast<std::size_t>(node->kind)] += ms_since(start);
    }
  }

  void compute_leaves(const std::vector<const Formula*>& order) {
    struct Task {
      const Formula* node;
      std::int64_t time;
    };
    std::vector<Task> tasks;
    for (const Formula* node : order) {
      if (node->kind != NodeKind::True && node->kind != NodeKind::Predicate)
        continue;
      for (std::int64_t time : req.at(node)) tasks.push_back({node, time});
    }

    std::vector<double> task_ms(tasks.size(), 0.0);
    std::vector<unsigned char> task_truncated(tasks.size(), 0);
    std::vector<unsigned char> task_violated(tasks.size(), 0);

    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t i) {
      const auto start = Clock::now();
      const Task& task = tasks[i];
      if (task.node->kind == NodeKind::True) {
        table.slot(task.node, task.time) = Envelope::top(cfg.dt_max);
      } else {
        PredicateEnvelopeResult r =
            predicate_envelope(task.node->predicate, sig, task.time, cfg);
        task_truncated[i] = r.domain_truncated ? 1 : 0;
        task_violated[i] = r.violation.has_value() ? 1 : 0;
        table.slot(task.node, task.time) = std::move(r.envelope);
      }
      task_ms[i] = ms_since(start);
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
      timing[static_cast<std::size_t>(tasks[i].node->kind)] += task_ms[i];
      truncated = truncated || task_truncated[i] != 0;
      violations += task_violated[i];
    }
  }

  void compute_boolean(const Formula* node) {
    const bool is_and = node->kind == NodeKind::And;
    for (std::int64_t time : req.at(node)) {
      Envelope acc = table.at(node->children[0].get(), time);
      for (std::size_t c = 1; c < node->children.size(); ++c) {
        const Envelope& e = table.at(node->children[c].get(), time);
        acc = is_and ? env_min(acc, e) : env_max(acc, e);
      }
      table.slot(node, time) = std::move(acc);
    }
  }

  // Window bounds for an evaluation time, clipped to the signal domain.
  std::pair<std::int64_t, std::int64_t> window_of(const Formula* node,
                                                  std::int64_t t) const {
    const std::int64_t lo = t + node->interval.a;
    const std::int64_t hi = node->interval.unbounded
                                ? sig.t_hi()
                                : std::min(t + node->interval.b, sig.t_hi());
    return {lo, hi};
  }

  void compute_window(const Formula* node) {
    const Formula* child = node->children[0].get();
    const bool is_min = node->kind == NodeKind::Always;
    const std::vector<std::int64_t>& times = req.at(node);

    // Value a window position contributes when the window is empty:
    // vacuous truth for always, violation for eventually.
    const double empty_value = is_min ? kInf : kAbsent;

    std::size_t run_begin = 0;
    while (run_begin < times.size()) {
      std::size_t run_end = run_begin;
      while (run_end + 1 < times.size() &&
             times[run_end + 1] == times[run_end] + 1)
        ++run_end;

      const std::int64_t r0 = times[run_begin];
      const std::int64_t r1 = times[run_end];
      const std::size_t count = static_cast<std::size_t>(r1 - r0 + 1);
      std::vector<std::vector<double>> levels(
          count, std::vector<double>(static_cast<std::size_t>(cfg.dt_max) + 1,
                                     empty_value));

      for (std::int64_t level = 0; level <= cfg.dt_max; ++level) {
        if (cfg.naive_windows) {
          for (std::int64_t t = r0; t <= r1; ++t) {
            auto [w_lo, w_hi] = window_of(node, t);
            double acc = empty_value;
            for (std::int64_t tau = w_lo; tau <= w_hi; ++tau) {
              const double v = entry_or_absent(table.at(child, tau), level);
              acc = is_min ? std::min(acc, v) : std::max(acc, v);
            }
            levels[static_cast<std::size_t>(t - r0)]
                  [static_cast<std::size_t>(level)] = acc;
          }
          continue;
        }

        // Monotone-queue pass; both window edges advance monotonically.
        std::deque<std::pair<std::int64_t, double>> dq;
        std::int64_t cursor = r0 + node->interval.a;
        for (std::int64_t t = r0; t <= r1; ++t) {
          auto [w_lo, w_hi] = window_of(node, t);
          if (w_lo > w_hi) continue;  // empty window keeps the default
          while (cursor <= w_hi) {
            const double v = entry_or_absent(table.at(child, cursor), level);
            while (!dq.empty() &&
                   (is_min ? dq.back().second >= v : dq.back().second <= v))
              dq.pop_back();
            dq.emplace_back(cursor, v);
            ++cursor;
          }
          while (!dq.empty() && dq.front().first < w_lo) dq.pop_front();
          levels[static_cast<std::size_t>(t - r0)]
                [static_cast<std::size_t>(level)] = dq.front().second;
        }
      }

      for (std::size_t i = 0; i < count; ++i)
        table.slot(node, r0 + static_cast<std::int64_t>(i)) =
            assemble(std::move(levels[i]));

      run_begin = run_end + 1;
    }
  }

  void compute_until(const Formula* node) {
    const Formula* left = node->children[0].get();
    const Formula* right = node->children[1].get();
    const std::int64_t a = node->interval.a;
    const std::int64_t b = node->interval.b;

    for (std::int64_t time : req.at(node)) {
      const std::int64_t k_max = std::min(b, sig.t_hi() - time);
      std::vector<double> levels(static_cast<std::size_t>(cfg.dt_max) + 1,
                                 kAbsent);
      for (std::int64_t level = 0; level <= cfg.dt_max; ++level) {
        double best = kAbsent;
        if (cfg.naive_windows) {
          for (std::int64_t k = a; k <= k_max; ++k) {
            double m = kInf;
            for (std::int64_t j = 0; j <= k; ++j)
              m = std::min(m,
                           entry_or_absent(table.at(left, time + j), level));
            best = std::max(
                best,
                std::min(m, entry_or_absent(table.at(right, time + k), level)));
          }
        } else {
          double m = kInf;  // running prefix minimum of the left child
          for (std::int64_t k = 0; k <= k_max; ++k) {
            m = std::min(m, entry_or_absent(table.at(left, time + k), level));
            if (k >= a)
              best = std::max(best,
                              std::min(m, entry_or_absent(
                                              table.at(right, time + k),
                                              level)));
            if (m == kAbsent) break;  // later candidates cannot improve
          }
        }
        levels[static_cast<std::size_t>(level)] = best;
      }
      table.slot(node, time) = assemble(std::move(levels));
    }
  }
};

}  // namespace

void EnvelopeTable::reserve_node(const Formula* node,
                                 std::vector<std::int64_t> times) {
  NodeEnvelopes entry;
  entry.envs.resize(times.size());
  entry.times = std::move(times);
  nodes_[node] = std::move(entry);
}

Envelope& EnvelopeTable::slot(const Formula* node, std::int64_t t) {
  auto& entry = nodes_.at(node);
  auto it = std::lower_bound(entry.times.begin(), entry.times.end(), t);
  if (it == entry.times.end() || *it != t)
    throw Error("envelope slot outside the node's required times");
  return entry.envs[static_cast<std::size_t>(it - entry.times.begin())];
}

const Envelope& EnvelopeTable::at(const Formula* node, std::int64_t t) const {
  auto node_it = nodes_.find(node);
  if (node_it == nodes_.end())
    throw Error("envelope lookup for an unknown node");
  const auto& entry = node_it->second;
  auto it = std::lower_bound(entry.times.begin(), entry.times.end(), t);
  if (it == entry.times.end() || *it != t)
    throw Error("envelope lookup outside the node's required times");
  return entry.envs[static_cast<std::size_t>(it - entry.times.begin())];
}

const std::vector<std::int64_t>& EnvelopeTable::times(
    const Formula* node) const {
  return nodes_.at(node).times;
}

const char* kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::True: return "true";
    case NodeKind::Predicate: return "predicate";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    case NodeKind::Always: return "always";
    case NodeKind::Eventually: return "eventually";
    case NodeKind::Until: return "until";
  }
  return "?";
}

MonitorResult monitor_full(const FormulaPtr& root, const Signal& sig,
                           std::int64_t t, const MonitorConfig& cfg) {
  validate_config(cfg, *root);
  validate_dims(*root, sig.dim());

  Engine engine{sig, cfg};
  engine.run(root, t);

  MonitorResult result;
  result.root = engine.table.at(root.get(), t);
  result.table = std::move(engine.table);
  result.timing_ms = engine.timing;
  result.domain_truncated = engine.truncated;
  result.leaf_violations = engine.violations;
  return result;
}

Envelope monitor(const FormulaPtr& root, const Signal& sig, std::int64_t t,
                 const MonitorConfig& cfg) {
  return monitor_full(root, sig, t, cfg).root;
}

ExplainResult explain(const FormulaPtr& root, const Signal& sig,
                      std::int64_t t, const MonitorConfig& cfg,
                      const std::vector<std::string>& labels) {
  MonitorResult full = monitor_full(root, sig, t, cfg);
  std::vector<FormulaPtr> conjuncts = top_level_conjuncts(root);
  if (!labels.empty() && labels.size() != conjuncts.size())
    throw ConfigError("got " + std::to_string(labels.size()) +
                      " labels for " + std::to_string(conjuncts.size()) +
                      " top-level conjuncts");

  ExplainResult result;
  result.root = full.root;
  result.timing_ms = full.timing_ms;
  result.domain_truncated = full.domain_truncated;
  for (std::size_t i = 0; i < conjuncts.size(); ++i) {
    std::string label = labels.empty()
                            ? "conjunct" + std::to_string(i + 1)
                            : labels[i];
    result.subformulas.emplace_back(std::move(label),
                                    full.table.at(conjuncts[i].get(), t));
  }
  return result;
}

std::vector<double> sliding_extremum_naive(std::span<const double> values,
                                           std::int64_t a, std::int64_t b,
                                           ExtremumMode mode) {
  if (a < 0 || a > b ||
      static_cast<std::int64_t>(values.size()) < b + 1)
    throw WindowOutOfRangeError("window [" + std::to_string(a) + ";" +
                                std::to_string(b) +
                                "] does not fit a sequence of length " +
                                std::to_string(values.size()));
  const std::size_t out_len = values.size() - static_cast<std::size_t>(b);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    double acc = values[i + static_cast<std::size_t>(a)];
    for (std::int64_t k = a + 1; k <= b; ++k) {
      const double v = values[i + static_cast<std::size_t>(k)];
      acc = mode == ExtremumMode::Min ? std::min(acc, v) : std::max(acc, v);
    }
    out[i] = acc;
  }
  return out;
}

std::vector<double> sliding_extremum(std::span<const double> values,
                                     std::int64_t a, std::int64_t b,
                                     ExtremumMode mode) {
  if (a < 0 || a > b ||
      static_cast<std::int64_t>(values.size()) < b + 1)
    throw WindowOutOfRangeError("window [" + std::to_string(a) + ";" +
                                std::to_string(b) +
                                "] does not fit a sequence of length " +
                                std::to_string(values.size()));
  const std::size_t out_len = values.size() - static_cast<std::size_t>(b);
  std::vector<double> out(out_len);
  const bool is_min = mode == ExtremumMode::Min;

  std::deque<std::size_t> dq;  // indices with monotone values
  std::size_t cursor = static_cast<std::size_t>(a);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::size_t w_hi = i + static_cast<std::size_t>(b);
    while (cursor <= w_hi) {
      const double v = values[cursor];
      while (!dq.empty() && (is_min ? values[dq.back()] >= v
                                    : values[dq.back()] <= v))
        dq.pop_back();
      dq.push_back(cursor);
      ++cursor;
    }
    while (dq.front() < i + static_cast<std::size_t>(a)) dq.pop_front();
    out[i] = values[dq.front()];
  }
  return out;
}

}  // namespace strmon
