#include "sweepwidth/experiment.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <cstdlib>
#include <iostream>

using namespace sweepwidth;

namespace {

void print_summary(const nlohmann::json& s) {
  std::cout << "run " << s["run"].get<std::string>() << ": " << (s["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
  for (const auto& [name, t] : s["thresholds"].items()) {
    std::cout << "  " << (t["pass"].get<bool>() ? "ok   " : "FAIL ") << name << " (limit " << t["limit"].dump() << ")\n";
  }
  for (const auto& [name, v] : s["metrics"].items()) std::cout << "  " << name << " = " << v.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweepout width, Birkhoff curve shortening and width decay under curvature flows"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  if (const char* env = std::getenv("WIDTH_OUT_DIR")) cfg.out_dir = env;
  std::string kind, surface = "sphere:1", times, config_path;
  int L = 0;
  double k = 0.0;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "run an experiment");
  run->add_option("kind", kind, "width | tighten-diagnostics | psi-properties | mcf-decay | hk-decay")->required();
  run->add_option("--surface", surface, "sphere:r, ellipsoid:a,b,c, axisymmetric:r0,... or a surface JSON file");
  run->add_option("--slices", cfg.slices, "slice intervals of the sweepout");
  auto* L_opt = run->add_option("--L", L, "break budget");
  run->add_option("--iters", cfg.iterations, "max tightening iterations");
  run->add_option("--t", times, "comma-separated flow times");
  auto* k_opt = run->add_option("--k", k, "exponent of the H^k flow");
  auto* seed_opt = run->add_option("--seed", seed, "seed for random corpora");
  run->add_option("--jobs", cfg.jobs, "OpenMP threads");
  run->add_option("--out", cfg.out_dir, "output directory (default $WIDTH_OUT_DIR or .)");
  run->add_option("--config", config_path, "JSON config; its fields override flags");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a JSON config without running it");
  validate_cmd->add_option("config", validate_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (*validate_cmd) {
    try {
      const auto diags = validate_file(validate_path);
      for (const auto& d : diags) std::cout << d.str() << '\n';
      if (diags.empty()) std::cout << validate_path << ": ok\n";
      return diags.empty() ? 0 : 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }

  try {
    const auto parsed = parse_run_kind(kind);
    if (!parsed) throw ConfigError({{"<command line>", 0, "unknown run kind \"" + kind + "\""}});
    cfg.kind = *parsed;
    try {
      cfg.surface = parse_surface_flag(surface);
    } catch (const std::exception& e) {
      throw ConfigError({{"<command line>", 0, std::string("field \"surface\": ") + e.what()}});
    }
    if (*L_opt) cfg.L = L;
    if (*k_opt) cfg.k = k;
    if (*seed_opt) cfg.seed = seed;
    if (!times.empty()) {
      try {
        for (const auto& item : CLI::detail::split(times, ',')) cfg.t_samples.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError({{"<command line>", 0, "field \"t_samples\" must be comma-separated numbers"}});
      }
    }
    if (!config_path.empty()) cfg = apply_config_file(cfg, config_path);
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    const RunResult r = run_experiment(cfg);
    print_summary(r.summary);
    for (const auto& f : r.artifacts) std::cout << "wrote " << f << '\n';
    return r.exit_code;
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "error: " << d.str() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
