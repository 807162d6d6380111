#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "antipodal/config_io.hpp"
#include "antipodal/constructions.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/optimize.hpp"

using namespace antipodal;

namespace {

// Best covering radius of three antipodal pairs on the circle over a grid of
// directions (first pair fixed at angle 0): half the largest gap.
double circle_grid_oracle(double step_deg) {
  double best = 180;
  const int n = static_cast<int>(std::lround(180 / step_deg));
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> a{0, i * step_deg, j * step_deg, 180, 180 + i * step_deg, 180 + j * step_deg};
      std::sort(a.begin(), a.end());
      double gap = 360 - a.back() + a.front();
      for (std::size_t k = 1; k < a.size(); ++k) gap = std::max(gap, a[k] - a[k - 1]);
      best = std::min(best, gap / 2);
    }
  return best;
}

Schedule quick(std::size_t budget, std::size_t restarts) {
  Schedule s;
  s.budget = budget;
  s.restarts = restarts;
  return s;
}

}  // namespace

TEST_CASE("three pairs on the circle converge to the hexagon") {
  const double oracle = circle_grid_oracle(0.25);
  CHECK(oracle == doctest::Approx(30.0));
  auto run = optimize_antipodal_covering(2, 3, 1);
  CHECK(std::abs(deg(run.best_radius) - oracle) < 0.05);
  CHECK(run.rescored_exact);
}

TEST_CASE("determinism") {
  auto a = optimize_antipodal_covering(3, 6, 5, quick(2000, 4));
  auto b = optimize_antipodal_covering(3, 6, 5, quick(2000, 4));
  CHECK(a.best_radius == b.best_radius);
  CHECK(a.best_restart == b.best_restart);
  REQUIRE(a.best.pairs() == b.best.pairs());
  for (std::size_t i = 0; i < a.best.pairs(); ++i) CHECK(a.best.base_points()[i].vec() == b.best.base_points()[i].vec());
  CHECK(run_to_json(a).dump() == run_to_json(b).dump());
  auto c = optimize_antipodal_covering(3, 6, 6, quick(2000, 4));
  CHECK(run_to_json(a).dump() != run_to_json(c).dump());
}

TEST_CASE("run invariants") {
  auto run = optimize_antipodal_covering(3, 7, 9, quick(3000, 3));
  REQUIRE_FALSE(run.history.empty());
  CHECK(run.history.size() <= 1000);
  for (std::size_t i = 1; i < run.history.size(); ++i) {
    CHECK(run.history[i].radius <= run.history[i - 1].radius);
    CHECK(run.history[i].iteration > run.history[i - 1].iteration);
  }
  for (const auto& p : run.best.base_points()) CHECK(std::abs(p.vec().norm() - 1.0) < 1e-12);
  CHECK(verify_antipodal(run.best.expanded()));
  CHECK(std::abs(covering_radius_exact(run.best).radius - run.best_radius) < 1e-12);
  CHECK(run.best_radius <= run.history.back().radius + 1e-12);
}

TEST_CASE("sampled objective stays consistent with the exact re-score") {
  Schedule s = quick(1500, 2);
  s.objective = ObjectiveMode::kSampled;
  s.sample_count = 5000;
  s.polish = false;
  auto run = optimize_antipodal_covering(3, 6, 3, s);
  CHECK(run.objective == RadiusMethod::kSampled);
  CHECK(run.objective_sampling_bound > 0.0);
  CHECK(run.rescored_exact);
  for (const auto& h : run.history) CHECK(h.radius >= run.best_radius - run.objective_sampling_bound);
}

TEST_CASE("optimizer argument checks") {
  CHECK_THROWS_AS(optimize_antipodal_covering(4, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(optimize_antipodal_covering(3, 4, 1, quick(0, 1)), InvalidArgument);
  CHECK_THROWS_AS(optimize_antipodal_covering(3, 4, 1, quick(10, 0)), InvalidArgument);
}

TEST_CASE("polish keeps optimal configurations") {
  auto hex = regular_polygon_config(6);
  auto out = polish(hex, 1);
  CHECK(std::abs(covering_radius_exact(out).radius - kPi / 6) < 1e-9);
  CHECK(verify_antipodal(out.expanded()));
}

TEST_CASE("polish repairs a perturbed cross polytope") {
  std::mt19937_64 rng(61);
  const double target = deg(std::acos(std::sqrt(1.0 / 3.0)));
  for (int t = 0; t < 3; ++t) {
    PointSet pts;
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd v = UnitVector::axis(3, i).vec() + 0.01 * random_unit_vector(3, rng).vec();
      pts.emplace_back(v);
    }
    AntipodalConfig perturbed(3, pts);
    const double before = covering_radius_exact(perturbed).radius;
    auto out = polish(perturbed, static_cast<std::uint64_t>(t));
    const double after = covering_radius_exact(out).radius;
    CHECK(after <= before + 1e-12);
    CHECK(std::abs(deg(after) - target) < 0.01);
    CHECK(verify_antipodal(out.expanded()));
  }
}

TEST_CASE("polish never makes a random configuration worse") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 5; ++t) {
    PointSet pts;
    for (int i = 0; i < 6; ++i) pts.push_back(random_unit_vector(4, rng));
    AntipodalConfig cfg(4, pts);
    CHECK(covering_radius_exact(polish(cfg, 1)).radius <= covering_radius_exact(cfg).radius + 1e-12);
  }
}

TEST_CASE("history decimation") {
  std::vector<HistoryEntry> h;
  for (std::size_t i = 0; i < 5000; ++i) h.push_back({i, 1.0 / (i + 1)});
  auto d = decimate_history(h, 1000);
  CHECK(d.size() == 1000);
  CHECK(d.front().iteration == 0);
  CHECK(d.back().iteration == 4999);
  auto small = decimate_history(std::vector<HistoryEntry>(h.begin(), h.begin() + 10));
  CHECK(small.size() == 10);
}

TEST_CASE("run artifacts load as configurations") {
  auto run = optimize_antipodal_covering(3, 4, 2, quick(500, 2));
  auto j = run_to_json(run);
  CHECK(j.contains("optimizer_run"));
  CHECK(j["optimizer_run"]["schedule"]["cooling"] == 0.98);
  auto loaded = config_from_json(j);
  CHECK(loaded.config.pairs() == 4);
  CHECK(loaded.config.base_points()[0].vec() == run.best.base_points()[0].vec());
}
