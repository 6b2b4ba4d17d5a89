#pragma once

#include "sweepwidth/surface.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepwidth {

enum class RunKind { Width, TightenDiagnostics, PsiProperties, McfDecay, HkDecay };

std::optional<RunKind> parse_run_kind(const std::string& name);
std::string run_kind_name(RunKind kind);
/// Runs that draw random curves and therefore need a seed.
bool is_randomized(RunKind kind);

/// Surface in original units: sphere [r], ellipsoid [a, b, c], or
/// axisymmetric [rho_0 .. rho_{n-1}] (polar radius at (j + 1/2) pi / n).
struct SurfaceSpec {
  std::string kind = "sphere";
  std::vector<double> params{1.0};

  /// Throws GeometryError on bad parameters.
  Surface build() const;
  std::string label() const;
};

struct Diagnostic {
  std::string source;  // file path or "<command line>"
  int line = 0;
  std::string message;

  std::string str() const;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// "sphere:1", "ellipsoid:1.2,1,1", "axisymmetric:r0,r1,...", or a path to a
/// JSON file {"kind", "params", "resolution"}. Flows always use 64 profile
/// samples, so "resolution" is accepted but only checked to be an object.
SurfaceSpec parse_surface_flag(const std::string& value);
SurfaceSpec surface_spec_from_json(const nlohmann::json& j);

struct ExperimentConfig {
  RunKind kind = RunKind::Width;
  SurfaceSpec surface;
  int slices = 64;
  /// Break budget; width runs default to 16, the Psi corpus to 24.
  std::optional<int> L;
  int iterations = 200;
  std::vector<double> t_samples;
  std::optional<double> k;
  std::optional<std::uint64_t> seed;
  int count = 500;
  double dt_max = 1e-3;
  bool transport = false;
  std::string out_dir = ".";
  /// OpenMP threads; 0 keeps the runtime default.
  int jobs = 0;
};

/// Range checks on an assembled config; no computation.
std::vector<Diagnostic> validate(const ExperimentConfig& config, const std::string& source = "<command line>");
/// Parse, schema and range checks of a JSON config file with line numbers.
/// Throws std::runtime_error when the file cannot be read.
std::vector<Diagnostic> validate_file(const std::string& path);
/// Overlay the fields present in a config file on `base`; throws ConfigError.
ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& path);

struct RunResult {
  int exit_code = 0;
  nlohmann::json summary;
  std::vector<std::string> artifacts;
};

/// Runs the experiment and writes its CSV/JSON artifacts plus summary.json
/// to config.out_dir. Throws ConfigError for invalid configs and
/// GeometryError (prefixed with the failing module) for numerical failures.
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace sweepwidth
