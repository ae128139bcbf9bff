#include "strmon/horizon.hpp"

#include <algorithm>

#include "strmon/errors.hpp"

namespace strmon {

namespace {

struct Range {
  std::int64_t lo;
  std::int64_t hi;  // inclusive; lo > hi encodes empty
};

using RangeSet = std::vector<Range>;  // sorted, disjoint, non-adjacent

RangeSet normalize(RangeSet ranges) {
  ranges.erase(std::remove_if(ranges.begin(), ranges.end(),
                              [](const Range& r) { return r.lo > r.hi; }),
               ranges.end());
  std::sort(ranges.begin(), ranges.end(),
            [](const Range& a, const Range& b) { return a.lo < b.lo; });
  RangeSet out;
  for (const Range& r : ranges) {
    if (!out.empty() && r.lo <= out.back().hi + 1) {
      out.back().hi = std::max(out.back().hi, r.hi);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

// Minkowski sum of a range union with [a;b], clipped to the domain.
RangeSet dilate(const RangeSet& set, std::int64_t a, std::int64_t b,
                bool unbounded, const std::optional<TimeDomain>& domain) {
  if (unbounded && !domain)
    throw UnboundedHorizonError(
        "unbounded temporal interval with no signal domain to clip against");
  RangeSet out;
  for (const Range& r : set) {
    Range d{r.lo + a, unbounded ? domain->hi : r.hi + b};
    if (domain) {
      d.lo = std::max(d.lo, domain->lo);
      d.hi = std::min(d.hi, domain->hi);
    }
    out.push_back(d);
  }
  return normalize(std::move(out));
}

void visit(const Formula* node, const RangeSet& times,
           const std::optional<TimeDomain>& domain,
           std::unordered_map<const Formula*, RangeSet>& acc) {
  {
    RangeSet merged = acc[node];
    merged.insert(merged.end(), times.begin(), times.end());
    acc[node] = normalize(std::move(merged));
  }
  switch (node->kind) {
    case NodeKind::True:
    case NodeKind::Predicate:
      return;
    case NodeKind::And:
    case NodeKind::Or:
      for (const auto& child : node->children)
        visit(child.get(), times, domain, acc);
      return;
    case NodeKind::Always:
    case NodeKind::Eventually: {
      RangeSet child = dilate(times, node->interval.a, node->interval.b,
                              node->interval.unbounded, domain);
      visit(node->children[0].get(), child, domain, acc);
      return;
    }
    case NodeKind::Until: {
      RangeSet left =
          dilate(times, 0, node->interval.b, /*unbounded=*/false, domain);
      RangeSet right = dilate(times, node->interval.a, node->interval.b,
                              /*unbounded=*/false, domain);
      visit(node->children[0].get(), left, domain, acc);
      visit(node->children[1].get(), right, domain, acc);
      return;
    }
  }
}

}  // namespace

std::unordered_map<const Formula*, std::vector<std::int64_t>> required_times(
    const FormulaPtr& root, std::int64_t t, std::optional<TimeDomain> domain) {
  if (domain && (t < domain->lo || t > domain->hi))
    throw OutOfDomainError("evaluation time " + std::to_string(t) +
                           " outside signal domain [" +
                           std::to_string(domain->lo) + ";" +
                           std::to_string(domain->hi) + "]");

  std::unordered_map<const Formula*, RangeSet> acc;
  visit(root.get(), {{t, t}}, domain, acc);

  std::unordered_map<const Formula*, std::vector<std::int64_t>> out;
  out.reserve(acc.size());
  for (const auto& [node, ranges] : acc) {
    std::vector<std::int64_t> times;
    for (const Range& r : ranges)
      for (std::int64_t v = r.lo; v <= r.hi; ++v) times.push_back(v);
    out.emplace(node, std::move(times));
  }
  return out;
}

}  // namespace strmon
