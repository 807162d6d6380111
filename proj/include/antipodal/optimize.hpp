#pragma once

// Search for antipodal configurations with small covering radius:
// simulated annealing over base points followed by local refinement.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"

#include "antipodal/covering.hpp"

namespace antipodal {

enum class ObjectiveMode { kAuto, kExact, kSampled };

struct Schedule {
  double initial_step = 0.2;               // radians, spread of tangent proposals
  double initial_temperature = rad(5.0);   // in radius units
  double cooling = 0.98;                   // applied every cooling_interval proposals
  std::size_t cooling_interval = 100;
  std::size_t budget = 20000;              // proposals per restart
  std::size_t restarts = 16;
  ObjectiveMode objective = ObjectiveMode::kAuto;
  std::size_t sample_count = 20000;        // sampled objective only
  bool polish = true;
};

struct HistoryEntry {
  std::size_t iteration;
  double radius;  // best objective so far
};

struct OptimizerRun {
  int dim = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  Schedule schedule;
  RadiusMethod objective = RadiusMethod::kExact;
  double objective_sampling_bound = 0.0;  // sampled objective only
  AntipodalConfig best;
  double best_radius = 0.0;  // exact when rescored_exact
  bool rescored_exact = false;
  std::size_t best_restart = 0;
  std::vector<HistoryEntry> history;  // winning restart, at most 1000 entries
};

// Exact objective when d <= 4 or 2m <= 40, sampled otherwise (kAuto).
// Deterministic in (d, m, seed, schedule). Throws InvalidArgument if m < d.
OptimizerRun optimize_antipodal_covering(int d, std::size_t m, std::uint64_t seed, const Schedule& schedule = {});

// Local refinement: sequential linear programming on the active facets,
// then a coordinate-wise pattern search with shrinking steps. The result is
// never worse than the input by more than 1e-12. Needs an interior origin.
AntipodalConfig polish(const AntipodalConfig& config, std::uint64_t seed);

// Keeps first and last entries and evenly spaced ones in between.
std::vector<HistoryEntry> decimate_history(const std::vector<HistoryEntry>& history, std::size_t limit = 1000);

nlohmann::json schedule_to_json(const Schedule& schedule);
// Configuration fields of the best result plus an "optimizer_run" object;
// loadable with load_config.
nlohmann::json run_to_json(const OptimizerRun& run);

}  // namespace antipodal
