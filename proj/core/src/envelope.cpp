#include "strmon/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "strmon/errors.hpp"

namespace strmon {

bool dominates(const PerturbationLevel& p, const PerturbationLevel& q) {
  return p.dx >= q.dx && p.dt >= q.dt;
}

bool strictly_dominates(const PerturbationLevel& p,
                        const PerturbationLevel& q) {
  return dominates(p, q) && !(p == q);
}

Envelope::Envelope(std::vector<double> dx) : dx_(std::move(dx)) {
  double prev = kInf;
  for (double& v : dx_) {
    if (std::isnan(v)) throw Error("envelope entry is NaN");
    if (v < 0.0) throw Error("envelope entry is negative");
    if (v > prev) throw Error("envelope is not non-increasing");
    v += 0.0;  // normalize -0.0
    prev = v;
  }
}

Envelope Envelope::top(std::int64_t dt_max) {
  return Envelope(std::vector<double>(static_cast<std::size_t>(dt_max) + 1,
                                      kInf));
}

Envelope env_min(const Envelope& a, const Envelope& b) {
  const std::size_t len = std::min(a.size(), b.size());
  std::vector<double> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = std::min(a[k], b[k]);
  return Envelope(std::move(out));
}

Envelope env_max(const Envelope& a, const Envelope& b) {
  const std::size_t len = std::max(a.size(), b.size());
  std::vector<double> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    if (k < a.size() && k < b.size()) {
      out[k] = std::max(a[k], b[k]);
    } else {
      out[k] = k < a.size() ? a[k] : b[k];
    }
  }
  return Envelope(std::move(out));
}

std::vector<PerturbationLevel> pareto_strict(const Envelope& e) {
  std::vector<PerturbationLevel> out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k + 1 < e.size() && e[k] == e[k + 1]) continue;
    out.push_back({e[k], static_cast<std::int64_t>(k)});
  }
  return out;
}

std::vector<PerturbationLevel> raster_maximal_points(
    std::vector<PerturbationLevel> points) {
  std::sort(points.begin(), points.end(),
            [](const PerturbationLevel& p, const PerturbationLevel& q) {
              return p.dt != q.dt ? p.dt < q.dt : p.dx < q.dx;
            });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<PerturbationLevel> out;
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& q : points) {
      if (strictly_dominates(q, p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

}  // namespace strmon
