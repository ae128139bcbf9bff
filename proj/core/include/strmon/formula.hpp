#ifndef STRMON_FORMULA_HPP
#define STRMON_FORMULA_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace strmon {

// ---------------------------------------------------------------------------
// Regions for signed-distance predicates.
// ---------------------------------------------------------------------------

/// Axis-aligned box over a subset of signal dimensions. Bounds may be
/// -inf/+inf for one-sided slabs.
struct BoxRegion {
  std::vector<int> dims;  // 0-based signal dimensions, strictly increasing
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Euclidean ball over the leading |center| dimensions listed in dims.
struct BallRegion {
  std::vector<int> dims;
  std::vector<double> center;
  double radius = 0.0;
};

/// Halfspace { z : normal . z <= offset } over the listed dimensions.
struct HalfspaceRegion {
  std::vector<int> dims;
  std::vector<double> normal;
  double offset = 0.0;
};

/// Intersection of halfspaces sharing one dimension list. Non-empty by
/// caller assertion.
struct PolytopeRegion {
  std::vector<int> dims;
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
};

struct Region;

/// Union of convex members; permitted only with Avoid orientation.
struct UnionRegion {
  std::vector<Region> members;
};

struct Region {
  std::variant<BoxRegion, BallRegion, HalfspaceRegion, PolytopeRegion,
               UnionRegion>
      shape;

  /// Dimensions this region constrains (sorted, unique).
  std::vector<int> support() const;
};

/// Signed Euclidean distance: negative strictly inside, positive strictly
/// outside, zero on the boundary. Exact for box/ball/halfspace/polytope;
/// for unions it is exact outside and a sound depth under-estimate inside.
double signed_distance(std::span<const double> z, const Region& region);

/// Membership test evaluated directly on the defining inequalities (does not
/// go through the distance arithmetic).
bool region_contains(std::span<const double> z, const Region& region);

// ---------------------------------------------------------------------------
// Predicate functions h with satisfaction h(z) >= 0.
// ---------------------------------------------------------------------------

/// Avoid: satisfied outside the region (h = sd). Reach: satisfied inside
/// (h = -sd).
enum class Orientation { Avoid, Reach };

struct LinearPredicate {
  std::vector<double> a;  // length n, at least one nonzero entry
  double b = 0.0;
};

struct SignedDistancePredicate {
  Region region;
  Orientation orientation = Orientation::Avoid;
};

/// Opaque evaluator with a caller-asserted Lipschitz constant with respect to
/// the configured vector norm. Must be pure.
struct LipschitzPredicate {
  std::function<double(std::span<const double>)> evaluator;
  double lipschitz = 1.0;
  std::vector<int> support_dims;
};

struct PredicateFunction {
  std::variant<LinearPredicate, SignedDistancePredicate, LipschitzPredicate>
      fn;
  /// Signal dimensions the function reads (sorted, unique, 0-based).
  std::vector<int> support;

  static PredicateFunction linear(std::vector<double> a, double b);
  static PredicateFunction signed_distance(Region region,
                                           Orientation orientation);
  static PredicateFunction lipschitz(
      std::function<double(std::span<const double>)> evaluator, double L,
      std::vector<int> support_dims);
};

/// h(z). Total on finite inputs.
double evaluate_predicate(const PredicateFunction& p,
                          std::span<const double> z);

// ---------------------------------------------------------------------------
// Formulas in positive normal form.
// ---------------------------------------------------------------------------

/// Non-negative integer interval [a;b]; b may be +inf (Always/Eventually
/// only), clipped against the signal domain at monitoring time.
struct Interval {
  std::int64_t a = 0;
  std::int64_t b = 0;
  bool unbounded = false;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class NodeKind { True, Predicate, And, Or, Always, Eventually, Until };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  NodeKind kind = NodeKind::True;
  Interval interval;                // Always/Eventually/Until
  std::vector<FormulaPtr> children; // And/Or: 2+; G/F: 1; Until: {left, right}
  PredicateFunction predicate;      // Predicate only

  static FormulaPtr make_true();
  static FormulaPtr make_predicate(PredicateFunction p);
  static FormulaPtr make_and(std::vector<FormulaPtr> children);
  static FormulaPtr make_or(std::vector<FormulaPtr> children);
  static FormulaPtr make_always(Interval i, FormulaPtr child);
  static FormulaPtr make_eventually(Interval i, FormulaPtr child);
  static FormulaPtr make_until(Interval i, FormulaPtr left, FormulaPtr right);
};

/// Structural equality (exact coefficient comparison). Lipschitz predicates
/// never compare equal unless they are the same node.
bool equal(const Formula& a, const Formula& b);

/// Top-level conjuncts: the children of a root conjunction, else the root
/// itself.
std::vector<FormulaPtr> top_level_conjuncts(const FormulaPtr& root);

}  // namespace strmon

#endif  // STRMON_FORMULA_HPP
