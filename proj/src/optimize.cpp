#include "antipodal/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "antipodal/config_io.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/hull.hpp"
#include "antipodal/hull3.hpp"
#include "antipodal/lp.hpp"
#include "antipodal/seeds.hpp"

namespace antipodal {
namespace {

using Base = std::vector<Eigen::VectorXd>;

// A hull facet of the expanded set; vertex e stands for (-1)^e * base[e / 2].
struct Facet {
  std::vector<int> verts;
  Eigen::VectorXd normal;
  double offset;
};

std::vector<Facet> expanded_facets(const Base& base) {
  const int d = static_cast<int>(base[0].size());
  std::vector<Facet> out;
  if (d == 3) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(2 * base.size());
    for (const auto& p : base) {
      pts.emplace_back(p);
      pts.emplace_back(-p);
    }
    for (const auto& t : hull3_triangles(pts)) out.push_back({{t.v[0], t.v[1], t.v[2]}, t.normal, t.offset});
    return out;
  }
  std::vector<Eigen::VectorXd> pts;
  for (const auto& p : base) {
    pts.push_back(p);
    pts.push_back(-p);
  }
  try {
    const ConvexHull hull(std::move(pts));
    for (const auto& f : hull.facets()) {
      std::vector<int> v(f.vertex_indices.begin(), f.vertex_indices.end());
      out.push_back({std::move(v), f.outward_normal.vec(), f.support_offset});
    }
  } catch (const DegenerateInput&) {
  }
  return out;
}

double radius_from_offset(double h) { return h > 1e-12 ? std::acos(std::min(h, 1.0)) : kPi / 2; }

// Covering radius of the expanded set and a farthest point of the sphere;
// the radius is pi/2 when the origin is not interior.
struct Evaluation {
  double radius;
  Eigen::VectorXd witness;
};

Evaluation evaluate_exact(const Base& base) {
  const int d = static_cast<int>(base[0].size());
  if (d == 2) {
    std::vector<double> ang;
    for (const auto& p : base) {
      double a = std::atan2(p[1], p[0]);
      if (a < 0) a += kPi;
      if (a >= kPi) a -= kPi;
      ang.push_back(a);
    }
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + kPi - ang.back(), mid = ang.back() + gap / 2;
    for (std::size_t i = 1; i < ang.size(); ++i) {
      if (ang[i] - ang[i - 1] > gap) gap = ang[i] - ang[i - 1], mid = ang[i - 1] + gap / 2;
    }
    return {std::min(gap / 2, kPi / 2), Eigen::Vector2d(std::cos(mid), std::sin(mid))};
  }
  if (d == 3) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(2 * base.size());
    for (const auto& p : base) {
      pts.emplace_back(p);
      pts.emplace_back(-p);
    }
    const auto tri = hull3_triangles(pts);
    if (tri.empty()) return {kPi / 2, base[0]};
    std::size_t best = 0;
    for (std::size_t i = 1; i < tri.size(); ++i) {
      if (tri[i].offset < tri[best].offset) best = i;
    }
    return {radius_from_offset(tri[best].offset), tri[best].normal};
  }
  std::vector<Eigen::VectorXd> pts;
  for (const auto& p : base) {
    pts.push_back(p);
    pts.push_back(-p);
  }
  try {
    const ConvexHull hull(std::move(pts));
    const auto& planes = hull.planes();
    std::size_t best = 0;
    for (std::size_t i = 1; i < planes.size(); ++i) {
      if (planes[i].offset < planes[best].offset) best = i;
    }
    return {radius_from_offset(planes[best].offset), planes[best].normal};
  } catch (const DegenerateInput&) {
    return {kPi / 2, base[0]};
  }
}

double exact_radius(const Base& base) { return evaluate_exact(base).radius; }

// Objective with single-point updates. The sampled variant keeps, per sample,
// the largest |<s, p_i>| and its owner so a move only touches one column.
class Objective {
 public:
  Objective(const Base& base, bool sampled, const Eigen::MatrixXd* samples)
      : sampled_(sampled), samples_(samples), base_(base) {
    if (sampled_) {
      const auto n = samples_->cols();
      const auto m = static_cast<Eigen::Index>(base_.size());
      dots_.resize(n, m);
      for (Eigen::Index i = 0; i < m; ++i) dots_.col(i) = (samples_->transpose() * base_[i]).cwiseAbs();
      best_.resize(n);
      owner_.resize(n);
      for (Eigen::Index s = 0; s < n; ++s) best_[s] = dots_.row(s).maxCoeff(&owner_[s]);
    }
    if (sampled_) {
      value_ = sampled_value(best_);
    } else {
      auto e = evaluate_exact(base_);
      value_ = e.radius;
      witness_ = std::move(e.witness);
    }
  }

  double value() const { return value_; }
  const Base& base() const { return base_; }

  Eigen::VectorXd witness() const {
    if (!sampled_) return witness_;
    Eigen::Index s;
    best_.minCoeff(&s);
    return samples_->col(s);
  }

  double propose(std::size_t i, const Eigen::VectorXd& p) {
    pending_i_ = i;
    pending_p_ = p;
    if (!sampled_) {
      std::swap(base_[i], pending_p_);
      auto e = evaluate_exact(base_);
      std::swap(base_[i], pending_p_);
      pending_value_ = e.radius;
      pending_witness_ = std::move(e.witness);
      return pending_value_;
    }
    const auto n = samples_->cols();
    pending_col_ = (samples_->transpose() * p).cwiseAbs();
    pending_best_ = best_;
    pending_owner_ = owner_;
    const auto col = static_cast<Eigen::Index>(i);
    for (Eigen::Index s = 0; s < n; ++s) {
      const double v = pending_col_[s];
      if (v >= pending_best_[s]) {
        pending_best_[s] = v;
        pending_owner_[s] = col;
      } else if (pending_owner_[s] == col) {
        double b = v;
        Eigen::Index o = col;
        for (Eigen::Index k = 0; k < dots_.cols(); ++k) {
          if (k != col && dots_(s, k) > b) b = dots_(s, k), o = k;
        }
        pending_best_[s] = b;
        pending_owner_[s] = o;
      }
    }
    pending_value_ = sampled_value(pending_best_);
    return pending_value_;
  }

  void accept() {
    base_[pending_i_] = pending_p_;
    value_ = pending_value_;
    if (!sampled_) witness_ = pending_witness_;
    if (sampled_) {
      dots_.col(static_cast<Eigen::Index>(pending_i_)) = pending_col_;
      best_.swap(pending_best_);
      owner_.swap(pending_owner_);
    }
  }

 private:
  static double sampled_value(const Eigen::VectorXd& best) { return std::acos(std::min(best.minCoeff(), 1.0)); }

  bool sampled_;
  const Eigen::MatrixXd* samples_;
  Base base_;
  double value_ = 0.0;
  Eigen::VectorXd witness_;  // exact objective only
  Eigen::MatrixXd dots_;
  Eigen::VectorXd best_;
  std::vector<Eigen::Index> owner_;

  std::size_t pending_i_ = 0;
  Eigen::VectorXd pending_p_;
  double pending_value_ = 0.0;
  Eigen::VectorXd pending_witness_;
  Eigen::VectorXd pending_col_, pending_best_;
  std::vector<Eigen::Index> pending_owner_;
};

// Orthonormal basis (columns) of the tangent space at unit vector p.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& p) {
  const auto d = p.size();
  const Eigen::MatrixXd col = p;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  return q.rightCols(d - 1);
}

Eigen::VectorXd random_tangent_step(const Eigen::VectorXd& p, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(p.size());
  for (Eigen::Index c = 0; c < v.size(); ++c) v[c] = normal(rng);
  v -= v.dot(p) * p;
  Eigen::VectorXd q = p + scale * v;
  return q / q.norm();
}

// One linearized step: maximize the smallest first-order facet offset
// within an infinity-norm trust region. Returns the new base points and the
// predicted gain in min offset. The LP works in units of the trust radius.
std::pair<Base, double> slp_step(const Base& base, const std::vector<Facet>& facets, double trust) {
  const int d = static_cast<int>(base[0].size());
  const int m = static_cast<int>(base.size());
  const int t = d - 1;
  const int nv = m * t + 1;
  std::vector<Eigen::MatrixXd> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = tangent_basis(base[i]);

  // Offset gradients in tangent coordinates. The derivative of an offset is
  // sum_k lambda_k <n, dq_k>, lambda the barycentric coordinates of the foot
  // point offset * n. A facet and its mirror image give the same row.
  struct Row {
    std::vector<double> g;
    double offset, reach;  // reach: largest first-order change in the box
  };
  std::vector<Row> rows;
  double hmin = std::numeric_limits<double>::infinity();
  for (const auto& f : facets) {
    std::vector<int> v = f.verts, mirror = f.verts;
    for (int& e : mirror) e ^= 1;
    std::sort(v.begin(), v.end());
    std::sort(mirror.begin(), mirror.end());
    if (mirror < v) continue;
    Eigen::MatrixXd q(d, d);
    for (int k = 0; k < d; ++k) q.col(k) = (f.verts[k] % 2 ? -1.0 : 1.0) * base[f.verts[k] / 2];
    const Eigen::VectorXd lambda = q.partialPivLu().solve(f.offset * f.normal);
    Row row{std::vector<double>(nv - 1, 0.0), f.offset, 0.0};
    for (int k = 0; k < d; ++k) {
      const int i = f.verts[k] / 2;
      const double s = f.verts[k] % 2 ? -1.0 : 1.0;
      const Eigen::VectorXd g = lambda[k] * s * (basis[i].transpose() * f.normal);
      for (int c = 0; c < t; ++c) row.g[i * t + c] += g[c];
    }
    for (double x : row.g) row.reach += trust * std::abs(x);
    hmin = std::min(hmin, f.offset);
    rows.push_back(std::move(row));
  }
  // Facets that stay above every achievable model value are left out.
  double ceiling = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) ceiling = std::min(ceiling, r.offset + r.reach);

  // Variables u_k in [0, 2] with delta_k = trust (u_k - 1), then a free t
  // measuring the gain over hmin in units of trust.
  lp::Problem prob(nv);
  prob.free_var.assign(nv, false);
  prob.free_var[nv - 1] = true;
  prob.objective.assign(nv, 0.0);
  prob.objective[nv - 1] = 1.0;
  for (auto& r : rows) {
    if (r.offset - r.reach > ceiling) continue;
    double shift = 0.0;
    for (double x : r.g) shift += x;
    std::vector<double> row = std::move(r.g);
    row.push_back(-1.0);
    prob.add(std::move(row), lp::Sense::kGreaterEqual, (hmin - r.offset) / trust + shift);
  }
  for (int v = 0; v < nv - 1; ++v) {
    std::vector<double> row(nv, 0.0);
    row[v] = 1.0;
    prob.add(std::move(row), lp::Sense::kLessEqual, 2.0);
  }
  const auto res = lp::solve(prob);
  if (res.status != lp::Status::kOptimal) return {base, 0.0};
  Base out = base;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd delta(t);
    for (int c = 0; c < t; ++c) delta[c] = trust * (res.x[i * t + c] - 1.0);
    out[i] = base[i] + basis[i] * delta;
    out[i].normalize();
  }
  return {std::move(out), trust * res.x[nv - 1]};
}

double min_offset(const std::vector<Facet>& facets) {
  double h = facets.empty() ? 0.0 : facets[0].offset;
  for (const auto& f : facets) h = std::min(h, f.offset);
  return h;
}

Base slp_refine(Base base, int max_iter = 400) {
  auto facets = expanded_facets(base);
  double h = min_offset(facets);
  if (facets.empty() || h <= 1e-12) return base;
  double trust = 0.02;
  for (int it = 0; it < max_iter && trust > 1e-11; ++it) {
    auto [cand, gain] = slp_step(base, facets, trust);
    if (gain <= 1e-15) {
      trust *= 0.5;
      continue;
    }
    auto cand_facets = expanded_facets(cand);
    const double hc = min_offset(cand_facets);
    if (!cand_facets.empty() && hc > h) {
      trust = (hc - h > 0.5 * gain) ? std::min(2.0 * trust, 0.2) : trust;
      base = std::move(cand);
      facets = std::move(cand_facets);
      h = hc;
    } else {
      trust *= 0.5;
    }
  }
  return base;
}

Base pattern_search(Base base, std::uint64_t seed) {
  const int d = static_cast<int>(base[0].size());
  const int m = static_cast<int>(base.size());
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> moves;  // (point, signed tangent axis + 1)
  for (int i = 0; i < m; ++i)
    for (int c = 1; c < d; ++c) {
      moves.emplace_back(i, c);
      moves.emplace_back(i, -c);
    }
  double value = exact_radius(base);
  for (double step = 1e-3; step >= 1e-9; step *= 0.25) {
    bool improved = true;
    for (int sweep = 0; improved && sweep < 20; ++sweep) {
      improved = false;
      std::shuffle(moves.begin(), moves.end(), rng);
      for (const auto& [i, c] : moves) {
        const Eigen::MatrixXd b = tangent_basis(base[i]);
        Eigen::VectorXd p = base[i] + (c > 0 ? step : -step) * b.col(std::abs(c) - 1);
        p.normalize();
        std::swap(base[i], p);
        const double v = exact_radius(base);
        if (v < value) {
          value = v;
          improved = true;
        } else {
          std::swap(base[i], p);
        }
      }
    }
  }
  return base;
}

Base to_base(const AntipodalConfig& c) {
  Base b;
  for (const auto& p : c.base_points()) b.push_back(p.vec());
  return b;
}

AntipodalConfig from_base(int d, const Base& base, const std::string& provenance) {
  PointSet pts;
  for (const auto& p : base) pts.emplace_back(p);
  return AntipodalConfig(d, std::move(pts), provenance);
}

struct RestartResult {
  Base base;
  double value;
  std::vector<HistoryEntry> history;
};

RestartResult anneal(int d, std::size_t m, std::uint64_t seed, const Schedule& s, bool sampled,
                     const Eigen::MatrixXd* samples) {
  std::mt19937_64 rng(seed);
  Base init;
  for (std::size_t i = 0; i < m; ++i) init.push_back(random_unit_vector(d, rng).vec());
  Objective obj(init, sampled, samples);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Base best = obj.base();
  double best_value = obj.value();
  std::vector<HistoryEntry> history{{0, best_value}};
  double temp = s.initial_temperature;
  double step = s.initial_step;
  for (std::size_t it = 1; it <= s.budget; ++it) {
    std::size_t i;
    Eigen::VectorXd cand;
    if (unif(rng) < 0.5) {
      i = pick(rng);
      cand = random_tangent_step(obj.base()[i], step, rng);
    } else {
      // Pull a point bounding the deepest hole toward it.
      const Eigen::VectorXd w = obj.witness();
      double top = 0.0;
      for (const auto& p : obj.base()) top = std::max(top, std::abs(w.dot(p)));
      std::vector<std::size_t> near;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(w.dot(obj.base()[k])) >= top - 1e-9) near.push_back(k);
      }
      i = near[std::uniform_int_distribution<std::size_t>(0, near.size() - 1)(rng)];
      const Eigen::VectorXd& p = obj.base()[i];
      const Eigen::VectorXd target = w.dot(p) >= 0 ? w : Eigen::VectorXd(-w);
      Eigen::VectorXd toward = target - target.dot(p) * p;
      const double len = toward.norm();
      cand = len > 1e-15 ? random_tangent_step(p + unif(rng) * step * toward / len, 0.25 * step, rng) : p;
      cand.normalize();
    }
    const double v = obj.propose(i, cand);
    const double delta = v - obj.value();
    const double u = unif(rng);
    if (delta <= 0.0 || (temp > 0.0 && u < std::exp(-delta / temp))) {
      obj.accept();
      if (obj.value() < best_value) {
        best_value = obj.value();
        best = obj.base();
        history.push_back({it, best_value});
      }
    }
    if (s.cooling_interval > 0 && it % s.cooling_interval == 0) {
      temp *= s.cooling;
      step = std::max(s.initial_step * temp / std::max(s.initial_temperature, 1e-300), 1e-4 * s.initial_step);
    }
  }
  if (!sampled && s.polish) {
    Base refined = pattern_search(slp_refine(best), derive_seed(seed, 1));
    const double v = exact_radius(refined);
    if (v < best_value) {
      best_value = v;
      best = std::move(refined);
      history.push_back({s.budget + 1, best_value});
    }
  }
  return {std::move(best), best_value, std::move(history)};
}

const char* mode_name(RadiusMethod m) { return m == RadiusMethod::kExact ? "exact" : "sampled"; }

}  // namespace

std::vector<HistoryEntry> decimate_history(const std::vector<HistoryEntry>& history, std::size_t limit) {
  if (history.size() <= limit || limit < 2) return history;
  std::vector<HistoryEntry> out;
  out.reserve(limit);
  const double stride = static_cast<double>(history.size() - 1) / static_cast<double>(limit - 1);
  for (std::size_t k = 0; k < limit; ++k) {
    out.push_back(history[static_cast<std::size_t>(std::llround(k * stride))]);
  }
  return out;
}

OptimizerRun optimize_antipodal_covering(int d, std::size_t m, std::uint64_t seed, const Schedule& schedule) {
  if (d < 2) throw InvalidArgument("optimize: dimension must be >= 2");
  if (m < static_cast<std::size_t>(d)) throw InvalidArgument("optimize: need m >= d pairs for an interior origin");
  if (schedule.budget < 1) throw InvalidArgument("optimize: budget must be >= 1");
  if (schedule.restarts < 1) throw InvalidArgument("optimize: restarts must be >= 1");
  if (!(schedule.cooling > 0.0 && schedule.cooling <= 1.0)) throw InvalidArgument("optimize: cooling must be in (0, 1]");

  bool sampled = false;
  switch (schedule.objective) {
    case ObjectiveMode::kAuto: sampled = !(d <= 4 || 2 * m <= 40); break;
    case ObjectiveMode::kExact: sampled = false; break;
    case ObjectiveMode::kSampled: sampled = true; break;
  }
  Eigen::MatrixXd samples;
  if (sampled) {
    if (schedule.sample_count < 1) throw InvalidArgument("optimize: sample_count must be >= 1");
    std::mt19937_64 rng(derive_seed(seed, 0xffffffffULL));
    samples.resize(d, static_cast<Eigen::Index>(schedule.sample_count));
    for (Eigen::Index s = 0; s < samples.cols(); ++s) samples.col(s) = random_unit_vector(d, rng).vec();
  }

  std::vector<std::optional<RestartResult>> results(schedule.restarts);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(schedule.restarts, std::thread::hardware_concurrency()));
  auto run = [&](std::size_t w) {
    for (std::size_t r = w; r < schedule.restarts; r += workers)
      results[r] = anneal(d, m, derive_seed(seed, r), schedule, sampled, sampled ? &samples : nullptr);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  // Strictly smaller wins, so ties go to the lowest restart index.
  std::size_t win = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r]->value < results[win]->value) win = r;
  }
  auto& best = *results[win];

  OptimizerRun out{.dim = d,
                   .pairs = m,
                   .seed = seed,
                   .schedule = schedule,
                   .objective = sampled ? RadiusMethod::kSampled : RadiusMethod::kExact,
                   .objective_sampling_bound = sampled ? sample_net_radius(d, schedule.sample_count) : 0.0,
                   .best = from_base(d, best.base, "optimized"),
                   .best_radius = best.value,
                   .rescored_exact = false,
                   .best_restart = win,
                   .history = decimate_history(best.history)};
  try {
    if (sampled && schedule.polish) out.best = polish(out.best, derive_seed(seed, 0xfffffffeULL));
    out.best_radius = covering_radius_exact(out.best).radius;
    out.rescored_exact = true;
    out.best.set_covering_radius(out.best_radius);
  } catch (const OriginNotInterior&) {
  }
  out.best.set_provenance("optimized");
  return out;
}

AntipodalConfig polish(const AntipodalConfig& config, std::uint64_t seed) {
  const double before = covering_radius_exact(config).radius;
  Base base = pattern_search(slp_refine(to_base(config)), seed);
  AntipodalConfig out = from_base(config.dim(), base, config.provenance());
  double after = kPi;
  try {
    after = covering_radius_exact(out).radius;
  } catch (const Error&) {
  }
  if (after > before + 1e-12) return config;
  out.set_covering_radius(after);
  return out;
}

nlohmann::json schedule_to_json(const Schedule& s) {
  const char* mode = s.objective == ObjectiveMode::kAuto ? "auto" : s.objective == ObjectiveMode::kExact ? "exact" : "sampled";
  return {{"initial_step_rad", s.initial_step},
          {"initial_temperature_rad", s.initial_temperature},
          {"cooling", s.cooling},
          {"cooling_interval", s.cooling_interval},
          {"budget", s.budget},
          {"restarts", s.restarts},
          {"objective", mode},
          {"sample_count", s.sample_count},
          {"polish", s.polish}};
}

nlohmann::json run_to_json(const OptimizerRun& run) {
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& h : run.history) hist.push_back({h.iteration, h.radius});
  // The best configuration sits at the top level so the artifact loads as a
  // configuration file.
  nlohmann::json j = config_to_json(run.best);
  j["optimizer_run"] = {{"dim", run.dim},
                        {"pairs", run.pairs},
                        {"seed", run.seed},
                        {"schedule", schedule_to_json(run.schedule)},
                        {"objective", mode_name(run.objective)},
                        {"objective_sampling_bound_rad", run.objective_sampling_bound},
                        {"best_radius_rad", run.best_radius},
                        {"rescored_exact", run.rescored_exact},
                        {"best_restart", run.best_restart},
                        {"history", std::move(hist)}};
  return j;
}

}  // namespace antipodal
