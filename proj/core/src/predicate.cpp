#include <algorithm>
#include <cmath>
#include <set>

#include "strmon/errors.hpp"
#include "strmon/formula.hpp"

namespace strmon {

PredicateFunction PredicateFunction::linear(std::vector<double> a, double b) {
  PredicateFunction p;
  std::vector<int> support;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) {
      any_nonzero = true;
      support.push_back(static_cast<int>(i));
    }
  }
  if (!any_nonzero) throw Error("linear predicate needs a nonzero coefficient");
  p.fn = LinearPredicate{std::move(a), b};
  p.support = std::move(support);
  return p;
}

PredicateFunction PredicateFunction::signed_distance(Region region,
                                                     Orientation orientation) {
  if (orientation == Orientation::Reach &&
      std::holds_alternative<UnionRegion>(region.shape)) {
    throw Error("union regions are only supported with avoid orientation");
  }
  PredicateFunction p;
  p.support = region.support();
  p.fn = SignedDistancePredicate{std::move(region), orientation};
  return p;
}

PredicateFunction PredicateFunction::lipschitz(
    std::function<double(std::span<const double>)> evaluator, double L,
    std::vector<int> support_dims) {
  if (L <= 0.0) throw Error("Lipschitz constant must be positive");
  PredicateFunction p;
  std::set<int> dims(support_dims.begin(), support_dims.end());
  p.support.assign(dims.begin(), dims.end());
  p.fn = LipschitzPredicate{std::move(evaluator), L, std::move(support_dims)};
  return p;
}

double evaluate_predicate(const PredicateFunction& p,
                          std::span<const double> z) {
  return std::visit(
      [&](const auto& fn) -> double {
        using T = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<T, LinearPredicate>) {
          double s = fn.b;
          for (std::size_t i = 0; i < fn.a.size(); ++i) s += fn.a[i] * z[i];
          return s;
        } else if constexpr (std::is_same_v<T, SignedDistancePredicate>) {
          const double sd = signed_distance(z, fn.region);
          return fn.orientation == Orientation::Avoid ? sd : -sd;
        } else {
          return fn.evaluator(z);
        }
      },
      p.fn);
}

FormulaPtr Formula::make_true() {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::True;
  return f;
}

FormulaPtr Formula::make_predicate(PredicateFunction p) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Predicate;
  f->predicate = std::move(p);
  return f;
}

namespace {

FormulaPtr make_nary(NodeKind kind, std::vector<FormulaPtr> children) {
  if (children.size() < 2)
    throw Error("conjunction/disjunction needs at least two children");
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->children = std::move(children);
  return f;
}

void check_interval(const Interval& i, bool allow_unbounded) {
  if (i.a < 0) throw Error("interval bound must be non-negative");
  if (i.unbounded) {
    if (!allow_unbounded)
      throw Error("until intervals must be bounded");
    return;
  }
  if (i.a > i.b) throw Error("interval must satisfy a <= b");
}

}  // namespace

FormulaPtr Formula::make_and(std::vector<FormulaPtr> children) {
  return make_nary(NodeKind::And, std::move(children));
}

FormulaPtr Formula::make_or(std::vector<FormulaPtr> children) {
  return make_nary(NodeKind::Or, std::move(children));
}

FormulaPtr Formula::make_always(Interval i, FormulaPtr child) {
  check_interval(i, true);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Always;
  f->interval = i;
  f->children = {std::move(child)};
  return f;
}

FormulaPtr Formula::make_eventually(Interval i, FormulaPtr child) {
  check_interval(i, true);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Eventually;
  f->interval = i;
  f->children = {std::move(child)};
  return f;
}

FormulaPtr Formula::make_until(Interval i, FormulaPtr left, FormulaPtr right) {
  check_interval(i, false);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Until;
  f->interval = i;
  f->children = {std::move(left), std::move(right)};
  return f;
}

namespace {

bool regions_equal(const Region& a, const Region& b);

bool shapes_equal(const BoxRegion& a, const BoxRegion& b) {
  return a.dims == b.dims && a.lo == b.lo && a.hi == b.hi;
}
bool shapes_equal(const BallRegion& a, const BallRegion& b) {
  return a.dims == b.dims && a.center == b.center && a.radius == b.radius;
}
bool shapes_equal(const HalfspaceRegion& a, const HalfspaceRegion& b) {
  return a.dims == b.dims && a.normal == b.normal && a.offset == b.offset;
}
bool shapes_equal(const PolytopeRegion& a, const PolytopeRegion& b) {
  return a.dims == b.dims && a.normals == b.normals && a.offsets == b.offsets;
}
bool shapes_equal(const UnionRegion& a, const UnionRegion& b) {
  if (a.members.size() != b.members.size()) return false;
  for (std::size_t i = 0; i < a.members.size(); ++i)
    if (!regions_equal(a.members[i], b.members[i])) return false;
  return true;
}

bool regions_equal(const Region& a, const Region& b) {
  if (a.shape.index() != b.shape.index()) return false;
  return std::visit(
      [&](const auto& sa) {
        using T = std::decay_t<decltype(sa)>;
        return shapes_equal(sa, std::get<T>(b.shape));
      },
      a.shape);
}

bool predicates_equal(const PredicateFunction& a, const PredicateFunction& b) {
  if (a.fn.index() != b.fn.index()) return false;
  if (std::holds_alternative<LinearPredicate>(a.fn)) {
    const auto& la = std::get<LinearPredicate>(a.fn);
    const auto& lb = std::get<LinearPredicate>(b.fn);
    return la.a == lb.a && la.b == lb.b;
  }
  if (std::holds_alternative<SignedDistancePredicate>(a.fn)) {
    const auto& sa = std::get<SignedDistancePredicate>(a.fn);
    const auto& sb = std::get<SignedDistancePredicate>(b.fn);
    return sa.orientation == sb.orientation &&
           regions_equal(sa.region, sb.region);
  }
  return &a == &b;  // opaque evaluators: identity only
}

}  // namespace

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::True:
      return true;
    case NodeKind::Predicate:
      return predicates_equal(a.predicate, b.predicate);
    default:
      break;
  }
  if (a.kind != NodeKind::And && a.kind != NodeKind::Or &&
      !(a.interval == b.interval))
    return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(*a.children[i], *b.children[i])) return false;
  return true;
}

std::vector<FormulaPtr> top_level_conjuncts(const FormulaPtr& root) {
  if (root->kind == NodeKind::And) return root->children;
  return {root};
}

}  // namespace strmon
