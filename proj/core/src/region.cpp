#include <algorithm>
#include <cmath>
#include <set>

#include "strmon/errors.hpp"
#include "strmon/formula.hpp"

namespace strmon {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double gather_dot(std::span<const double> z, const std::vector<int>& dims,
                  const std::vector<double>& coeff) {
  double s = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    s += coeff[i] * z[static_cast<std::size_t>(dims[i])];
  return s;
}

double sd_box(std::span<const double> z, const BoxRegion& r) {
  // Outside: Euclidean norm of per-dimension gaps. Inside: minus the minimum
  // slack over the constrained dimensions.
  double out_sq = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();
  bool outside = false;
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    const double v = z[static_cast<std::size_t>(r.dims[i])];
    const double below = r.lo[i] - v;
    const double above = v - r.hi[i];
    const double gap = std::max({below, above, 0.0});
    if (gap > 0.0) {
      outside = true;
      out_sq += gap * gap;
    }
    double slack = std::numeric_limits<double>::infinity();
    if (std::isfinite(r.lo[i])) slack = std::min(slack, v - r.lo[i]);
    if (std::isfinite(r.hi[i])) slack = std::min(slack, r.hi[i] - v);
    min_slack = std::min(min_slack, slack);
  }
  if (outside) return std::sqrt(out_sq);
  if (!std::isfinite(min_slack)) return -std::numeric_limits<double>::infinity();
  return -min_slack;
}

double sd_ball(std::span<const double> z, const BallRegion& r) {
  double sq = 0.0;
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    const double d = z[static_cast<std::size_t>(r.dims[i])] - r.center[i];
    sq += d * d;
  }
  return std::sqrt(sq) - r.radius;
}

double sd_halfspace(std::span<const double> z, const HalfspaceRegion& r) {
  return (gather_dot(z, r.dims, r.normal) - r.offset) / norm2(r.normal);
}

// Solves the small SPD system M x = rhs in place by Gaussian elimination with
// partial pivoting. Returns false when M is (numerically) singular.
bool solve_small(std::vector<std::vector<double>> M, std::vector<double> rhs,
                 std::vector<double>& x) {
  const std::size_t m = rhs.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < m; ++row)
      if (std::fabs(M[row][col]) > std::fabs(M[pivot][col])) pivot = row;
    if (std::fabs(M[pivot][col]) < 1e-12) return false;
    std::swap(M[pivot], M[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t row = col + 1; row < m; ++row) {
      const double f = M[row][col] / M[col][col];
      for (std::size_t k = col; k < m; ++k) M[row][k] -= f * M[col][k];
      rhs[row] -= f * rhs[col];
    }
  }
  x.assign(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= M[i][k] * x[k];
    x[i] = s / M[i][i];
  }
  return true;
}

double sd_polytope(std::span<const double> z, const PolytopeRegion& r) {
  const std::size_t k = r.dims.size();
  const std::size_t m = r.normals.size();

  std::vector<double> zs(k);
  for (std::size_t i = 0; i < k; ++i)
    zs[i] = z[static_cast<std::size_t>(r.dims[i])];

  std::vector<double> residual(m);  // n_i . z - d_i, positive when violated
  bool inside = true;
  for (std::size_t i = 0; i < m; ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < k; ++j) dot += r.normals[i][j] * zs[j];
    residual[i] = dot - r.offsets[i];
    if (residual[i] > 0.0) inside = false;
  }

  if (inside) {
    // Interior depth: nearest face hyperplane (exact for interior points even
    // with redundant inequalities).
    double depth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      depth = std::min(depth, -residual[i] / norm2(r.normals[i]));
    return -depth;
  }

  // Projection onto the polytope: enumerate candidate active sets of size
  // <= k, project onto each affine hull, keep the closest feasible point.
  double best_sq = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> subset;
  std::vector<double> lambda;
  const double feas_tol = 1e-9;

  auto try_subset = [&]() {
    const std::size_t s = subset.size();
    std::vector<std::vector<double>> gram(s, std::vector<double>(s, 0.0));
    std::vector<double> rhs(s, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) {
        double dot = 0.0;
        for (std::size_t j = 0; j < k; ++j)
          dot += r.normals[subset[a]][j] * r.normals[subset[b]][j];
        gram[a][b] = dot;
      }
      rhs[a] = residual[subset[a]];
    }
    if (!solve_small(std::move(gram), std::move(rhs), lambda)) return;

    std::vector<double> p = zs;
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t j = 0; j < k; ++j)
        p[j] -= lambda[a] * r.normals[subset[a]][j];

    for (std::size_t i = 0; i < m; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < k; ++j) dot += r.normals[i][j] * p[j];
      if (dot - r.offsets[i] > feas_tol) return;  // infeasible candidate
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double d = p[j] - zs[j];
      sq += d * d;
    }
    best_sq = std::min(best_sq, sq);
  };

  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (!subset.empty()) try_subset();
    if (subset.size() == k) return;
    for (std::size_t i = start; i < m; ++i) {
      subset.push_back(i);
      recurse(i + 1);
      subset.pop_back();
    }
  };
  recurse(0);

  if (!std::isfinite(best_sq))
    throw Error("polytope projection failed; is the polytope empty?");
  return std::sqrt(best_sq);
}

struct SdVisitor {
  std::span<const double> z;
  double operator()(const BoxRegion& r) const { return sd_box(z, r); }
  double operator()(const BallRegion& r) const { return sd_ball(z, r); }
  double operator()(const HalfspaceRegion& r) const {
    return sd_halfspace(z, r);
  }
  double operator()(const PolytopeRegion& r) const { return sd_polytope(z, r); }
  double operator()(const UnionRegion& r) const {
    double sd = std::numeric_limits<double>::infinity();
    for (const Region& member : r.members)
      sd = std::min(sd, signed_distance(z, member));
    return sd;
  }
};

struct ContainsVisitor {
  std::span<const double> z;
  bool operator()(const BoxRegion& r) const {
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
      const double v = z[static_cast<std::size_t>(r.dims[i])];
      if (v < r.lo[i] || v > r.hi[i]) return false;
    }
    return true;
  }
  bool operator()(const BallRegion& r) const {
    double sq = 0.0;
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
      const double d = z[static_cast<std::size_t>(r.dims[i])] - r.center[i];
      sq += d * d;
    }
    return sq <= r.radius * r.radius;
  }
  bool operator()(const HalfspaceRegion& r) const {
    return gather_dot(z, r.dims, r.normal) <= r.offset;
  }
  bool operator()(const PolytopeRegion& r) const {
    for (std::size_t i = 0; i < r.normals.size(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < r.dims.size(); ++j)
        dot += r.normals[i][j] * z[static_cast<std::size_t>(r.dims[j])];
      if (dot > r.offsets[i]) return false;
    }
    return true;
  }
  bool operator()(const UnionRegion& r) const {
    for (const Region& member : r.members)
      if (region_contains(z, member)) return true;
    return false;
  }
};

}  // namespace

std::vector<int> Region::support() const {
  std::set<int> dims;
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, UnionRegion>) {
          for (const Region& member : shape.members) {
            auto s = member.support();
            dims.insert(s.begin(), s.end());
          }
        } else {
          dims.insert(shape.dims.begin(), shape.dims.end());
        }
      },
      shape);
  return {dims.begin(), dims.end()};
}

double signed_distance(std::span<const double> z, const Region& region) {
  return std::visit(SdVisitor{z}, region.shape);
}

bool region_contains(std::span<const double> z, const Region& region) {
  return std::visit(ContainsVisitor{z}, region.shape);
}

}  // namespace strmon
