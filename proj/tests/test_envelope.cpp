#include <doctest.h>

#include "helpers.hpp"
#include "strmon/envelope.hpp"
#include "strmon/errors.hpp"

using namespace strmon;

namespace {

Envelope env(std::vector<double> v) { return Envelope(std::move(v)); }

}  // namespace

TEST_SUITE("envelope") {

TEST_CASE("construction enforces the invariants") {
  CHECK_NOTHROW(env({3, 2, 2, 0}));
  CHECK_NOTHROW(env({}));
  CHECK_NOTHROW(env({kInf, kInf, 1}));
  CHECK_THROWS_AS(env({1, 2}), Error);
  CHECK_THROWS_AS(env({1, -0.5}), Error);
  CHECK_THROWS_AS(env({std::nan("")}), Error);
}

TEST_CASE("env_min takes the pointwise lower envelope on the common domain") {
  CHECK(env_min(env({3, 2}), env({4, 1, 1})) == env({3, 1}));
  CHECK(env_min(Envelope{}, env({5, 5})) == Envelope{});
  CHECK(env_min(env({kInf, kInf}), env({2})) == env({2}));
}

TEST_CASE("env_max takes the pointwise upper envelope with surviving tail") {
  CHECK(env_max(env({3, 2}), env({4, 1, 1})) == env({4, 2, 1}));
  CHECK(env_max(Envelope{}, env({5})) == env({5}));
  CHECK(env_max(env({1}), env({0, 0, 0})) == env({1, 0, 0}));
}

TEST_CASE("pareto_strict drops weakly optimal duplicates") {
  CHECK(pareto_strict(env({2, 2, 1})) ==
        std::vector<PerturbationLevel>{{2, 1}, {1, 2}});
  CHECK(pareto_strict(env({5})) == std::vector<PerturbationLevel>{{5, 0}});
  CHECK(pareto_strict(env({3, 2, 1})) ==
        std::vector<PerturbationLevel>{{3, 0}, {2, 1}, {1, 2}});
  CHECK(pareto_strict(Envelope{}).empty());
}

TEST_CASE("raster_maximal_points removes dominated points") {
  CHECK(raster_maximal_points({{1, 0}, {0, 1}, {0, 0}}) ==
        std::vector<PerturbationLevel>{{1, 0}, {0, 1}});
  CHECK(raster_maximal_points({}).empty());
  CHECK(raster_maximal_points({{2, 2}, {1, 1}}) ==
        std::vector<PerturbationLevel>{{2, 2}});
}

TEST_CASE("min/max are commutative, associative, idempotent") {
  test::Rng rng(7001);
  for (int i = 0; i < 300; ++i) {
    Envelope a = test::random_grid_envelope(rng, 6, 0.25, 2.0);
    Envelope b = test::random_grid_envelope(rng, 6, 0.25, 2.0);
    Envelope c = test::random_grid_envelope(rng, 6, 0.25, 2.0);
    CHECK(env_min(a, b) == env_min(b, a));
    CHECK(env_max(a, b) == env_max(b, a));
    CHECK(env_min(a, env_min(b, c)) == env_min(env_min(a, b), c));
    CHECK(env_max(a, env_max(b, c)) == env_max(env_max(a, b), c));
    CHECK(env_min(a, a) == a);
    CHECK(env_max(a, a) == a);

    const Envelope lo = env_min(a, b);
    const Envelope hi = env_max(a, b);
    for (std::size_t k = 0; k < lo.size(); ++k) {
      CHECK(lo[k] <= a[k]);
      CHECK(lo[k] <= b[k]);
    }
    for (std::size_t k = 0; k < hi.size(); ++k) {
      if (k < a.size()) CHECK(hi[k] >= a[k]);
      if (k < b.size()) CHECK(hi[k] >= b[k]);
    }
  }
}

TEST_CASE("min/max agree with maximal points of rasterized closures") {
  test::Rng rng(7002);
  const double step = 0.25;
  const double cap = 2.0;
  for (int i = 0; i < 200; ++i) {
    Envelope a = test::random_grid_envelope(rng, 6, step, cap);
    Envelope b = test::random_grid_envelope(rng, 6, step, cap);

    auto da = test::rasterize_down(a, step, cap);
    auto db = test::rasterize_down(b, step, cap);

    std::vector<PerturbationLevel> inter;
    for (const auto& p : da)
      for (const auto& q : db)
        if (p == q) inter.push_back(p);
    std::vector<PerturbationLevel> uni = da;
    uni.insert(uni.end(), db.begin(), db.end());

    CHECK(pareto_strict(env_min(a, b)) == raster_maximal_points(inter));
    CHECK(pareto_strict(env_max(a, b)) == raster_maximal_points(uni));
  }
}

TEST_CASE("pareto_strict output is an antichain with the same closure") {
  test::Rng rng(7003);
  for (int i = 0; i < 200; ++i) {
    Envelope e = test::random_grid_envelope(rng, 8, 0.25, 2.0);
    auto points = pareto_strict(e);
    for (const auto& p : points)
      for (const auto& q : points)
        CHECK(!strictly_dominates(p, q));
    // Downward closure equality: every entry is dominated by some strict
    // point, and every strict point is an entry.
    for (std::size_t k = 0; k < e.size(); ++k) {
      bool covered = false;
      for (const auto& p : points)
        covered = covered ||
                  dominates(p, {e[k], static_cast<std::int64_t>(k)});
      CHECK(covered);
    }
    for (const auto& p : points)
      CHECK(e[static_cast<std::size_t>(p.dt)] == p.dx);
  }
}

}  // TEST_SUITE
