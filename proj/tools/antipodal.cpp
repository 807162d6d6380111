// Command-line front end. Every JSON artifact embeds a run manifest; nothing
// is written except to paths given with --out, --plot-data or --lines-out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "antipodal/certify.hpp"
#include "antipodal/config_io.hpp"
#include "antipodal/constructions.hpp"
#include "antipodal/errors.hpp"
#include "antipodal/manifest.hpp"
#include "antipodal/optimize.hpp"
#include "antipodal/polytope.hpp"

using namespace antipodal;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidCertificate = 2;
constexpr int kExitVerificationFailed = 3;

struct UsageError : Error {
  using Error::Error;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string angle(double r) { return fmt("%.6f", deg(r)) + " deg (" + fmt("%.12f", r) + " rad)"; }

RunManifest manifest_for(const std::string& command, const std::vector<std::string>& args) {
  RunManifest m;
  m.command = command;
  m.arguments = args;
  return m;
}

void emit(json body, RunManifest& manifest, const std::string& out) {
  if (!out.empty()) manifest.output_paths.push_back(out);
  body["manifest"] = manifest.to_json();
  if (out.empty()) {
    std::cout << body.dump(2) << '\n';
  } else {
    write_json_file(body, out);
  }
}

// "cross-polytope:D", "polygon:K", "hexagon-pair", a shipped name, or a path.
AntipodalConfig resolve_config(const std::string& spec, RunManifest& manifest) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  auto arg = [&]() {
    if (colon == std::string::npos) throw UsageError("'" + head + "' needs a parameter, e.g. " + head + ":3");
    try {
      return std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("bad parameter in '" + spec + "'");
    }
  };
  if (head == "cross-polytope") return cross_polytope_config(arg());
  if (head == "polygon") return regular_polygon_config(arg());
  if (head == "hexagon-pair") return hexagon_pair_config();
  if (head == "s2-8pairs" || head == "s2-16pairs") {
    const auto path = shipped_config_path(head);
    manifest.input_hashes[path] = file_hash(path);
    return shipped_config(head);
  }
  manifest.input_hashes[spec] = file_hash(spec);
  auto loaded = load_config(spec);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return loaded.config;
}

AntipodalConfig load_input_config(const std::string& path, RunManifest& manifest) {
  manifest.input_hashes[path] = file_hash(path);
  auto loaded = load_config(path);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return loaded.config;
}

Polytope load_input_polytope(const std::string& path, RunManifest& manifest) {
  manifest.input_hashes[path] = file_hash(path);
  return load_polytope(path);
}

json witness_json(const UnitVector& w) {
  return std::vector<double>(w.vec().data(), w.vec().data() + w.dim());
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return "usage";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "dimension-mismatch";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "degenerate-input";
  if (dynamic_cast<const NoHemisphere*>(&e)) return "no-hemisphere";
  if (dynamic_cast<const NotAntipodal*>(&e)) return "not-antipodal";
  if (dynamic_cast<const OriginNotInterior*>(&e)) return "origin-not-interior";
  if (dynamic_cast<const FormatError*>(&e)) return "format";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid-argument";
  if (dynamic_cast<const Error*>(&e)) return "failed";
  return "internal";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antipodal spherical cap coverings and X-ray certificates"};
  app.require_subcommand(1);
  std::vector<std::string> args(argv + 1, argv + argc);

  // construct
  std::string c_name, c_left, c_right, c_out;
  auto* construct = app.add_subcommand("construct", "Build a named configuration or an orthogonal join");
  construct->add_option("name", c_name,
                        "cross-polytope:D | polygon:K | hexagon-pair | s2-8pairs | s2-16pairs | join")
      ->required();
  construct->add_option("--left", c_left, "Left join factor (name or config path)");
  construct->add_option("--right", c_right, "Right join factor (name or config path)");
  construct->add_option("--out", c_out, "Write the configuration JSON here");

  // radius
  std::string r_config, r_out;
  bool r_exact = false;
  std::optional<std::size_t> r_samples;
  std::uint64_t r_seed = 1;
  auto* radius = app.add_subcommand("radius", "Covering radius of a configuration");
  radius->add_option("config", r_config, "Configuration JSON")->required();
  auto* r_exact_flag = radius->add_flag("--exact", r_exact, "Exact only; fail if the origin is not interior");
  radius->add_option("--samples", r_samples, "Use N random samples instead")->excludes(r_exact_flag);
  radius->add_option("--seed", r_seed, "Sampling seed");
  radius->add_option("--out", r_out, "Write the result JSON here");

  // certify
  std::string k_class, k_config, k_out;
  int k_dim = 0;
  std::size_t k_samples = 1'000'000;
  std::uint64_t k_seed = 1;
  auto* certify_cmd = app.add_subcommand("certify", "X-ray and illumination certificate for a body class");
  certify_cmd->add_option("class", k_class, "almost_smooth | constant_width")->required();
  certify_cmd->add_option("d", k_dim, "Dimension (>= 3)")->required();
  certify_cmd->add_option("--config", k_config, "Configuration JSON")->required();
  certify_cmd->add_option("--samples", k_samples, "Samples if the exact radius is unavailable");
  certify_cmd->add_option("--seed", k_seed, "Sampling seed");
  certify_cmd->add_option("--out", k_out, "Write the certificate JSON here");

  // optimize
  int o_dim = 0;
  std::size_t o_pairs = 0;
  std::uint64_t o_seed = 1;
  Schedule o_schedule;
  std::string o_objective = "auto", o_out, o_plot;
  bool o_no_polish = false;
  auto* optimize_cmd = app.add_subcommand("optimize", "Search for 2m antipodal points with small covering radius");
  optimize_cmd->add_option("d", o_dim, "Dimension")->required();
  optimize_cmd->add_option("m", o_pairs, "Number of antipodal pairs")->required();
  optimize_cmd->add_option("--seed", o_seed, "Master seed");
  optimize_cmd->add_option("--budget", o_schedule.budget, "Proposals per restart")->capture_default_str();
  optimize_cmd->add_option("--restarts", o_schedule.restarts, "Independent restarts")->capture_default_str();
  optimize_cmd->add_option("--step", o_schedule.initial_step, "Initial proposal spread (rad)")->capture_default_str();
  optimize_cmd->add_option("--cooling", o_schedule.cooling, "Temperature factor per interval")->capture_default_str();
  optimize_cmd->add_option("--objective", o_objective, "auto | exact | sampled")
      ->check(CLI::IsMember({"auto", "exact", "sampled"}));
  optimize_cmd->add_option("--samples", o_schedule.sample_count, "Sample count for the sampled objective")
      ->capture_default_str();
  optimize_cmd->add_flag("--no-polish", o_no_polish, "Skip local refinement");
  optimize_cmd->add_option("--out", o_out, "Write the run artifact here");
  optimize_cmd->add_option("--plot-data", o_plot, "Write the best-radius history as CSV here");

  // polytope
  auto* polytope = app.add_subcommand("polytope", "Polytope X-ray and neighbourliness tools");
  polytope->require_subcommand(1);
  std::string p_path, p_lines, p_out, p_lines_out;
  std::uint64_t p_seed = 1;
  std::size_t p_pool = 256;
  auto* p_check = polytope->add_subcommand("check", "Weak neighbourliness and antipodality report");
  p_check->add_option("polytope", p_path, "Polytope JSON")->required();
  p_check->add_option("--out", p_out, "Write the report JSON here");
  auto* p_verify = polytope->add_subcommand("xray-verify", "Check that a line set X-rays every point");
  p_verify->add_option("polytope", p_path, "Polytope JSON")->required();
  p_verify->add_option("--lines", p_lines, "Line set JSON")->required();
  p_verify->add_option("--out", p_out, "Write the report JSON here");
  auto* p_search = polytope->add_subcommand("xray-search", "Find a small verified X-ray line set");
  p_search->add_option("polytope", p_path, "Polytope JSON")->required();
  p_search->add_option("--seed", p_seed, "Seed for random candidate lines");
  p_search->add_option("--pool", p_pool, "Number of random candidate lines")->capture_default_str();
  p_search->add_option("--out", p_out, "Write the result (a valid line set file) here");

  // thresholds
  std::vector<int> t_dims;
  std::string t_out;
  auto* thresholds = app.add_subcommand("thresholds", "Class radii, covering thresholds and the comparison bound");
  thresholds->add_option("dims", t_dims, "d or d_lo d_hi")->required()->expected(1, 2);
  thresholds->add_option("--out", t_out, "Write the table JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*construct) {
      auto manifest = manifest_for("construct", args);
      std::optional<AntipodalConfig> config;
      if (c_name == "join") {
        if (c_left.empty() || c_right.empty()) throw UsageError("construct join needs --left and --right");
        config = orthogonal_join(resolve_config(c_left, manifest), resolve_config(c_right, manifest));
        config->set_provenance("constructed:join(" + c_left + "," + c_right + ")");
      } else {
        config = resolve_config(c_name, manifest);
      }
      const auto r = covering_radius(*config);
      if (r.method == RadiusMethod::kExact) config->set_covering_radius(r.radius);
      std::cerr << config->provenance() << ": " << config->pairs() << " pairs in E^" << config->dim()
                << ", covering radius " << angle(r.radius) << '\n';
      json body = config_to_json(*config);
      emit(body, manifest, c_out);
      return kExitOk;
    }

    if (*radius) {
      auto manifest = manifest_for("radius", args);
      const auto config = load_input_config(r_config, manifest);
      CoveringRadiusResult r = [&] {
        if (r_samples) {
          manifest.seed = r_seed;
          return covering_radius_sampled(config, *r_samples, r_seed);
        }
        if (r_exact) return covering_radius_exact(config);
        manifest.seed = r_seed;
        return covering_radius(config, 1'000'000, r_seed);
      }();
      const bool exact = r.method == RadiusMethod::kExact;
      std::cerr << "covering radius " << angle(r.radius) << " [" << (exact ? "exact" : "sampled") << "]\n";
      if (!exact) std::cerr << "sampling bound " << angle(r.sampling_bound) << " (" << r.samples << " samples)\n";
      json body = {{"covering_radius_rad", r.radius},
                   {"method", exact ? "exact" : "sampled"},
                   {"witness", witness_json(r.witness)},
                   {"sampling_bound_rad", r.sampling_bound},
                   {"samples", r.samples},
                   {"config_hash", json_hash(config_to_json(config))}};
      emit(body, manifest, r_out);
      return kExitOk;
    }

    if (*certify_cmd) {
      auto manifest = manifest_for("certify", args);
      manifest.seed = k_seed;
      const auto body_class = make_body_class(parse_body_kind(k_class), k_dim);
      const auto config = load_input_config(k_config, manifest);
      const auto cert = certify(body_class, config, k_config, k_samples, k_seed);
      std::cerr << to_string(body_class.kind) << " d=" << k_dim << ": R = " << angle(cert.covering_radius)
                << ", r = " << angle(cert.class_radius) << ", margin = " << angle(cert.margin) << '\n';
      if (cert.valid) {
        std::cerr << "certificate valid" << (cert.tight ? " (tight)" : "") << ": X <= " << cert.xray_bound
                  << ", I <= " << cert.illumination_bound << '\n';
      } else {
        std::cerr << "certificate INVALID: r + R > pi/2\n";
      }
      for (const auto& n : cert.notes) std::cerr << "note: " << n << '\n';
      emit(certificate_to_json(cert, config), manifest, k_out);
      return cert.valid ? kExitOk : kExitInvalidCertificate;
    }

    if (*optimize_cmd) {
      auto manifest = manifest_for("optimize", args);
      manifest.seed = o_seed;
      o_schedule.objective = o_objective == "exact"     ? ObjectiveMode::kExact
                             : o_objective == "sampled" ? ObjectiveMode::kSampled
                                                        : ObjectiveMode::kAuto;
      o_schedule.polish = !o_no_polish;
      const auto run = optimize_antipodal_covering(o_dim, o_pairs, o_seed, o_schedule);
      std::cerr << "best covering radius " << angle(run.best_radius) << " ["
                << (run.rescored_exact ? "exact" : "sampled objective") << "], restart " << run.best_restart
                << '\n';
      if (!o_plot.empty()) {
        std::ofstream csv(o_plot);
        if (!csv) throw FormatError("cannot write '" + o_plot + "'");
        csv << "iteration,radius_rad\n";
        csv.precision(17);
        for (const auto& h : run.history) csv << h.iteration << ',' << h.radius << '\n';
        manifest.output_paths.push_back(o_plot);
      }
      emit(run_to_json(run), manifest, o_out);
      return kExitOk;
    }

    if (*polytope) {
      if (*p_check) {
        auto manifest = manifest_for("polytope check", args);
        const auto p = load_input_polytope(p_path, manifest);
        const auto r = wna_check(p);
        std::cerr << "d=" << r.dim << ", v=" << r.vertex_count << ": weakly neighbourly "
                  << (r.weakly_neighbourly ? "yes" : "no") << ", antipodal " << (r.antipodal ? "yes" : "no") << '\n';
        if (r.xray_lower_bound) std::cerr << "X >= " << *r.xray_lower_bound << '\n';
        if (r.conjecture_violation)
          std::cerr << "!!! weakly neighbourly antipodal polytope with " << r.vertex_count << " > "
                    << r.conjecture_bound << " vertices: counterexample candidate, check the input !!!\n";
        emit(wna_report_to_json(r), manifest, p_out);
        return kExitOk;
      }
      if (*p_verify) {
        auto manifest = manifest_for("polytope xray-verify", args);
        const auto p = load_input_polytope(p_path, manifest);
        manifest.input_hashes[p_lines] = file_hash(p_lines);
        const auto lines = lines_from_json(read_json_file(p_lines));
        const auto r = verify_xray_lines(p, lines);
        std::cerr << lines.size() << " lines: " << (r.ok ? "every point X-rayed" : "verification FAILED") << '\n';
        if (!r.uncovered.empty()) std::cerr << r.uncovered.size() << " vertices not X-rayed\n";
        if (!r.marginal.empty())
          std::cerr << "warning: " << r.marginal.size() << " marginal vertices; consider perturbing the lines\n";
        emit(xray_report_to_json(r), manifest, p_out);
        return r.ok ? kExitOk : kExitVerificationFailed;
      }
      if (*p_search) {
        auto manifest = manifest_for("polytope xray-search", args);
        manifest.seed = p_seed;
        const auto p = load_input_polytope(p_path, manifest);
        const auto r = xray_upper_bound(p, p_pool, p_seed);
        std::cerr << "X <= " << r.count << " (" << (r.exact ? "minimum over" : "greedy over") << " "
                  << r.pruned_size << " of " << r.pool_size << " candidate lines)\n";
        json body = lines_to_json(r.lines);
        body["count"] = r.count;
        body["exact_over_pool"] = r.exact;
        body["report"] = xray_report_to_json(r.report);
        emit(body, manifest, p_out);
        return r.report.ok ? kExitOk : kExitVerificationFailed;
      }
    }

    if (*thresholds) {
      auto manifest = manifest_for("thresholds", args);
      const int lo = t_dims[0], hi = t_dims.size() > 1 ? t_dims[1] : t_dims[0];
      if (lo < 3 || hi < lo) throw UsageError("thresholds needs 3 <= d_lo <= d_hi");
      std::printf("%3s  %12s  %14s  %16s  %12s\n", "d", "jung (deg)", "width r (deg)", "pi/2 - r (deg)",
                  "comparison");
      json rows = json::array();
      for (int d = lo; d <= hi; ++d) {
        const double j = jung_radius(d), w = constant_width_radius(d), s = schramm_bound(d);
        std::printf("%3d  %12.4f  %14.4f  %16.4f  %12.1f\n", d, deg(j), deg(w), deg(kPi / 2 - w), s);
        rows.push_back({{"d", d},
                        {"jung_radius_rad", j},
                        {"constant_width_radius_rad", w},
                        {"constant_width_threshold_rad", kPi / 2 - w},
                        {"schramm_bound", s}});
      }
      if (!t_out.empty()) emit({{"thresholds", rows}}, manifest, t_out);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error[" << error_kind(e) << "]: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
