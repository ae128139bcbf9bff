#ifndef STRMON_ORACLE_HPP
#define STRMON_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "strmon/envelope.hpp"
#include "strmon/formula.hpp"
#include "strmon/signal.hpp"

namespace strmon {

/// One concrete spatiotemporal perturbation: a per-time additive offset
/// (zero outside its keys) applied after the per-dimension shift.
struct PerturbationSample {
  std::map<std::int64_t, std::vector<double>> dx_signal;
  TemporalShift dt;
};

/// Boolean satisfaction by direct recursion over the qualitative semantics.
/// Temporal windows are clipped to the signal domain: an empty always-window
/// is vacuously true, empty eventually/until windows are false. The until
/// prefix includes the witness time.
bool qualitative(const FormulaPtr& root, const Signal& sig, std::int64_t t);

/// Same, evaluated on the perturbed signal.
bool qualitative_perturbed(const FormulaPtr& root, const Signal& sig,
                           const PerturbationSample& sample, std::int64_t t);

/// Classical scalar spatial robustness: signed margins at the predicates
/// (positive iff satisfied), min/max recursion above. Euclidean geometry.
/// Throws UnsupportedError for Lipschitz predicates.
double classical_spatial(const FormulaPtr& root, const Signal& sig,
                         std::int64_t t);

/// Enumeration budget for the brute-force oracle.
struct OracleBudget {
  int max_dim = 2;
  std::int64_t max_trace = 10;
  std::int64_t max_dt = 2;
  double min_grid_step = 0.25;
  /// Cap on per-cell joint vertex assignments after dominance pruning.
  std::uint64_t max_assignments = 1u << 22;
};

struct BruteForceGrid {
  double step = 0.25;
  double cap = 2.0;
};

/// Ground-truth maximal perturbation levels on a finite grid: a cell
/// (dx, dt) is admitted when the perturbed signal satisfies the formula for
/// every shift in [-dt;dt]^n and every spatial offset drawn from the extreme
/// points {-dx,+dx}^n at each relevant time (exact for linear atoms under the
/// L-infinity norm, where worst cases sit at vertices). Returns the maximal
/// points of the admitted set.
std::vector<PerturbationLevel> brute_force_str(
    const FormulaPtr& root, const Signal& sig, std::int64_t t,
    std::int64_t dt_max, const BruteForceGrid& grid,
    const OracleBudget& budget = {});

}  // namespace strmon

#endif  // STRMON_ORACLE_HPP
