#include "sweepwidth/experiment.hpp"

#include "sweepwidth/birkhoff.hpp"
#include "sweepwidth/curve_corpus.hpp"
#include "sweepwidth/decay.hpp"
#include "sweepwidth/flow.hpp"
#include "sweepwidth/psi_suite.hpp"
#include "sweepwidth/sweepout.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace sweepwidth {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

constexpr int kWidthL = 16;
constexpr int kCorpusL = 24;
constexpr double kPropertyEps = 0.1;

const std::vector<std::string> kConfigKeys = {"run", "surface", "slices", "L",       "iters",     "t_samples", "t",
                                              "k",   "seed",    "count",  "dt_max", "transport", "out",       "flow",
                                              "jobs"};

std::string join(const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  for (std::size_t i = 0; i < diags.size(); ++i) out << (i ? "\n" : "") << diags[i].str();
  return out.str();
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw GeometryError("not a number: '" + item + "'");
    }
    if (used != item.size()) throw GeometryError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// 1-based line of the first occurrence of "key" in the config text.
int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find('"' + key + '"');
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Rethrow numerical failures tagged with the module that raised them.
template <class F>
auto in_module(const char* module, F&& f) {
  try {
    return f();
  } catch (const GeometryError& e) {
    throw GeometryError(std::string(module) + ": " + e.what());
  }
}

struct Summary {
  json metrics = json::object();
  json thresholds = json::object();
  bool pass = true;

  void check(const std::string& name, bool ok, const json& limit) {
    thresholds[name] = {{"limit", limit}, {"pass", ok}};
    pass = pass && ok;
  }
};

std::string write_file(const std::filesystem::path& dir, const std::string& name, const std::string& body) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
  return path.string();
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1] * (1.0 + 1e-12)) return false;
  }
  return true;
}

WidthConfig width_config(const ExperimentConfig& c) {
  WidthConfig w;
  w.slices = c.slices;
  w.L = c.L.value_or(kWidthL);
  w.tighten.max_iterations = c.iterations;
  w.tighten.min_iterations = std::min(w.tighten.min_iterations, c.iterations);
  return w;
}

std::vector<double> default_times(const ExperimentConfig& c) {
  if (!c.t_samples.empty()) return c.t_samples;
  if (c.kind == RunKind::HkDecay) return {0.0, 0.01, 0.02, 0.03, 0.04};
  return {0.0, 0.05, 0.10, 0.15, 0.20};
}

void run_width(const ExperimentConfig& c, const Surface& surface, Summary& sum, std::vector<std::string>& files,
               const std::filesystem::path& dir) {
  const TightenResult r = in_module("sweepout", [&] { return width_run(surface, width_config(c)); });
  const WidthReport& rep = r.report;
  sum.metrics["width"] = rep.width_original;
  sum.metrics["width_scaled"] = rep.width_estimate;
  sum.metrics["scale"] = rep.scale;
  sum.metrics["L"] = rep.L;
  sum.metrics["slices"] = rep.slices;
  sum.metrics["iterations"] = rep.iterations.back().iteration;
  sum.metrics["plateau_stop"] = rep.plateau_stop;
  sum.metrics["schedule"] = rep.schedule_note;
  sum.check("max_energy_nonincreasing", nonincreasing(rep.max_energies()), true);
  if (surface.kind() == SurfaceKind::Sphere) {
    const double R = surface.sphere_radius();
    const double reference = 2.0 * kPi * R * R;
    const double rel = std::abs(rep.width_original - reference) / reference;
    sum.metrics["reference_width"] = reference;
    sum.metrics["rel_error"] = rel;
    sum.check("rel_error", rel <= 0.01, 0.01);
  }
  std::ostringstream csv;
  write_tightening_csv(csv, rep);
  files.push_back(write_file(dir, "tightening.csv", csv.str()));

  if (c.kind != RunKind::TightenDiagnostics) return;
  const double delta = 0.01 * rep.width_estimate;
  const auto near = in_module("sweepout", [&] { return almost_maximal_slices(r.sweepout, rep, delta); });
  double worst = 0.0;
  std::ostringstream am;
  am << std::setprecision(17) << "t,energy,dist_to_G\n";
  for (const auto& m : near) {
    am << m.t << ',' << m.energy << ',' << m.dist_to_G << '\n';
    worst = std::max(worst, m.dist_to_G);
  }
  files.push_back(write_file(dir, "almost_maximal.csv", am.str()));
  for (const auto& [it, snap] : r.snapshots) {
    std::ostringstream s;
    write_sweepout_snapshot(s, snap);
    files.push_back(write_file(dir, "sweepout_iter" + std::to_string(it) + ".csv", s.str()));
  }
  std::ostringstream fin;
  write_sweepout_snapshot(fin, r.sweepout);
  files.push_back(write_file(dir, "sweepout_final.csv", fin.str()));
  sum.metrics["delta"] = delta;
  sum.metrics["almost_maximal_count"] = near.size();
  sum.metrics["almost_maximal_max_dist"] = worst;
  if (surface.kind() == SurfaceKind::Sphere) {
    const double R = r.sweepout.slices.front().surface().sphere_radius();
    sum.check("almost_maximal_dist_over_R", !near.empty() && worst <= 0.05 * R, 0.05);
  }
}

void run_psi_properties(const ExperimentConfig& c, const Surface& surface, Summary& sum,
                        std::vector<std::string>& files, const std::filesystem::path& dir) {
  const auto scaled = std::make_shared<const Surface>(normalize_scaling(surface).surface);
  CorpusOptions opts;
  opts.count = c.count;
  opts.L = c.L.value_or(kCorpusL);
  const std::uint64_t seed = *c.seed;
  auto suite = [&](std::uint64_t s) {
    return in_module("birkhoff", [&] { return run_psi_suite(random_curve_corpus(scaled, opts, s)); });
  };
  const PsiSuiteReport first = suite(seed);
  const PsiSuiteReport second = suite(seed + 1);
  std::vector<LoopCurve> controls;
  for (int i = 0; i < 4; ++i) controls.push_back(latitude_circle(scaled, opts.L, kPi / 2.0, 0.5 * i));
  const PsiSuiteReport ctrl = in_module("birkhoff", [&] { return run_psi_suite(controls); });

  std::ostringstream csv;
  write_psi_suite_csv(csv, first);
  files.push_back(write_file(dir, "psi_properties.csv", csv.str()));

  const double d1 = first.delta(kPropertyEps);
  const double d2 = second.delta(kPropertyEps);
  const double spread = std::abs(d2 - d1) / d1;
  sum.metrics["count"] = first.curves.size();
  sum.metrics["length_increases"] = first.length_increases();
  sum.metrics["bound_violations"] = first.bound_violations();
  sum.metrics["fixed_point_mismatches"] = first.fixed_point_mismatches() + ctrl.fixed_point_mismatches();
  sum.metrics["four_step_gap"] = first.max_four_step_gap();
  sum.metrics["delta"] = d1;
  sum.metrics["delta_support"] = first.delta_support(kPropertyEps);
  sum.metrics["delta_second_seed"] = d2;
  sum.metrics["delta_spread"] = spread;
  sum.check("length_increases", first.length_increases() == 0, 0);
  sum.check("bound_violations", first.bound_violations() == 0, 0);
  sum.check("fixed_point_mismatches", sum.metrics["fixed_point_mismatches"].get<int>() == 0, 0);
  sum.check("four_step_gap", first.max_four_step_gap() <= 1e-8, 1e-8);
  sum.check("delta_positive", d1 > 0.0, 0.0);
  sum.check("delta_spread", spread <= 0.2, 0.2);
}

void run_decay(const ExperimentConfig& c, const Surface& surface, Summary& sum, std::vector<std::string>& files,
               const std::filesystem::path& dir) {
  const FlowLaw law = c.kind == RunKind::HkDecay ? FlowLaw::hk(c.k.value_or(1.0)) : FlowLaw::mcf();
  DecayConfig cfg = default_decay_config(law, default_times(c));
  cfg.dt_max = c.dt_max;
  cfg.width.slices = c.slices;
  cfg.width.L = c.L.value_or(kWidthL);
  cfg.width.tighten.max_iterations = c.iterations;
  cfg.transport_comparison = c.transport;
  const DecaySeries series = in_module("flow", [&] { return width_decay_experiment(surface, cfg); });

  std::ostringstream csv;
  write_decay_csv(csv, series);
  files.push_back(write_file(dir, "decay.csv", csv.str()));
  const json flow = {{"flow", law.name()}, {"k", law.power()}, {"t_samples", cfg.t_samples}, {"dt_max", cfg.dt_max}};
  files.push_back(write_file(dir, "flow_config.json", flow.dump(2) + "\n"));

  std::vector<double> widths;
  for (const auto& s : series.samples) widths.push_back(s.width_original);
  sum.metrics["flow"] = law.name();
  sum.metrics["k"] = law.power();
  sum.metrics["samples"] = series.samples.size();
  sum.metrics["widths"] = widths;
  sum.metrics["quotients"] = series.quotients;
  sum.metrics["extinction_time"] = series.extinction_time;
  sum.metrics["extinction_bound"] = series.extinction_bound;
  sum.metrics["truncated"] = series.truncated;
  if (series.truncated) sum.metrics["truncation_note"] = series.truncation_note;
  sum.check("extinction_bound", series.extinction_bound_holds(), series.extinction_bound);
  if (c.transport) sum.check("transport_upper_bounds", series.transport_bounds_hold(), true);

  const bool sphere = surface.kind() == SurfaceKind::Sphere;
  if (law.kind == FlowLaw::Kind::MeanCurvature) {
    sum.metrics["max_quotient"] = series.quotients.empty() ? json(nullptr) : json(series.max_quotient());
    sum.check("quotients_below_minus_4pi_times_0.98", series.quotients_below(0.98), -kFourPi * 0.98);
    sum.check("integrated_bound", series.integrated_bound_holds(), true);
    sum.check("rigidity", series.rigidity_holds(), true);
    if (sphere) {
      const double r0 = surface.sphere_radius();
      double w_err = 0.0;
      double q_err = 0.0;
      for (const auto& s : series.samples) {
        const double ref = 2.0 * kPi * (r0 * r0 - 4.0 * s.t);
        w_err = std::max(w_err, std::abs(s.width_original - ref) / ref);
      }
      for (double q : series.quotients) q_err = std::max(q_err, std::abs(q + 8.0 * kPi) / (8.0 * kPi));
      sum.metrics["sphere_width_rel_error"] = w_err;
      sum.metrics["sphere_quotient_rel_error"] = q_err;
      sum.check("sphere_width_rel_error", w_err <= 0.02, 0.02);
      sum.check("sphere_quotient_rel_error", q_err <= 0.03, 0.03);
    }
    return;
  }

  const double k = law.power();
  std::vector<double> lhs;
  std::vector<double> w_form;
  bool holds = true;
  int checked = 0;
  for (const auto& s : series.samples) {
    if (std::isnan(s.power_lhs)) continue;
    ++checked;
    lhs.push_back(s.power_lhs);
    holds = holds && s.power_lhs <= s.power_rhs + 1e-9 * std::abs(s.power_rhs);
  }
  for (std::size_t i = 0; i + 1 < series.samples.size(); ++i) {
    const auto& a = series.samples[i];
    const auto& b = series.samples[i + 1];
    w_form.push_back((std::pow(b.width_original, k + 1.0) - std::pow(a.width_original, k + 1.0)) /
                     ((k + 1.0) * (b.t - a.t)));
  }
  sum.metrics["power_lhs"] = lhs;
  sum.metrics["power_rhs"] = -std::pow(2.0 * kPi, k + 1.0);
  sum.metrics["w_form_quotients"] = w_form;
  sum.check("power_inequality", holds && checked > 0, -std::pow(2.0 * kPi, k + 1.0));
  if (sphere) {
    const double r0 = surface.sphere_radius();
    FlowHistory h(surface, law, cfg.dt_max);
    double r_err = 0.0;
    for (const auto& s : series.samples) {
      h.advance_to(s.t);
      const double ref = sphere_radius_at(r0, s.t, law);
      r_err = std::max(r_err, std::abs(h.state_at(s.t).surface->sphere_radius() - ref) / ref);
    }
    sum.metrics["sphere_radius_rel_error"] = r_err;
    sum.check("sphere_radius_rel_error", r_err <= 1e-8, 1e-8);
  }
}

void apply_json(const json& j, const std::string& text, const std::string& source, ExperimentConfig& c,
                std::vector<Diagnostic>& diags) {
  auto diag = [&](const std::string& key, const std::string& msg) {
    diags.push_back({source, line_of_key(text, key), msg});
  };
  if (!j.is_object()) {
    diags.push_back({source, 1, "config must be a JSON object"});
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      diag(key, "unknown field \"" + key + "\"");
    }
  }
  auto integer = [&](const char* key, auto&& set) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
      diag(key, std::string("field \"") + key + "\" must be an integer");
      return;
    }
    set(j[key].get<long long>());
  };
  auto number = [&](const char* key, auto&& set) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      diag(key, std::string("field \"") + key + "\" must be a number");
      return;
    }
    set(j[key].get<double>());
  };

  if (j.contains("run")) {
    const auto kind = j["run"].is_string() ? parse_run_kind(j["run"].get<std::string>()) : std::nullopt;
    if (kind) {
      c.kind = *kind;
    } else {
      diag("run", "field \"run\" must be one of width, tighten-diagnostics, psi-properties, mcf-decay, hk-decay");
    }
  }
  if (j.contains("surface")) {
    try {
      SurfaceSpec spec = j["surface"].is_string() ? parse_surface_flag(j["surface"].get<std::string>())
                                                  : surface_spec_from_json(j["surface"]);
      spec.build();
      c.surface = std::move(spec);
    } catch (const std::exception& e) {
      diag("surface", std::string("field \"surface\": ") + e.what());
    }
  }
  integer("slices", [&](long long v) { c.slices = static_cast<int>(v); });
  integer("L", [&](long long v) { c.L = static_cast<int>(v); });
  integer("iters", [&](long long v) { c.iterations = static_cast<int>(v); });
  integer("count", [&](long long v) { c.count = static_cast<int>(v); });
  integer("jobs", [&](long long v) { c.jobs = static_cast<int>(v); });
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned()) {
      c.seed = j["seed"].get<std::uint64_t>();
    } else {
      diag("seed", "field \"seed\" must be a non-negative integer");
    }
  }
  number("k", [&](double v) { c.k = v; });
  number("dt_max", [&](double v) { c.dt_max = v; });
  for (const char* key : {"t_samples", "t"}) {
    if (!j.contains(key)) continue;
    const auto& t = j[key];
    if (!t.is_array() || !std::all_of(t.begin(), t.end(), [](const json& x) { return x.is_number(); })) {
      diag(key, std::string("field \"") + key + "\" must be an array of numbers");
      continue;
    }
    c.t_samples = t.get<std::vector<double>>();
  }
  if (j.contains("transport")) {
    if (j["transport"].is_boolean()) {
      c.transport = j["transport"].get<bool>();
    } else {
      diag("transport", "field \"transport\" must be true or false");
    }
  }
  if (j.contains("out")) {
    if (j["out"].is_string()) {
      c.out_dir = j["out"].get<std::string>();
    } else {
      diag("out", "field \"out\" must be a string");
    }
  }
  if (j.contains("flow")) {
    const std::string flow = j["flow"].is_string() ? j["flow"].get<std::string>() : "";
    if (flow == "mcf") {
      if (!j.contains("run")) c.kind = RunKind::McfDecay;
      if (c.kind != RunKind::McfDecay) diag("flow", "flow \"mcf\" needs run kind mcf-decay");
    } else if (flow == "hk") {
      if (!j.contains("run")) c.kind = RunKind::HkDecay;
      if (c.kind != RunKind::HkDecay) diag("flow", "flow \"hk\" needs run kind hk-decay");
    } else {
      diag("flow", "field \"flow\" must be \"mcf\" or \"hk\"");
    }
  }
}

// Attach config-file line numbers to range diagnostics by field name.
void relocate(std::vector<Diagnostic>& diags, const std::string& text, const std::string& source) {
  for (auto& d : diags) {
    d.source = source;
    const auto open = d.message.find('"');
    const auto close = open == std::string::npos ? open : d.message.find('"', open + 1);
    d.line = close == std::string::npos ? 1 : line_of_key(text, d.message.substr(open + 1, close - open - 1));
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Diagnostic> load(const std::string& path, ExperimentConfig& c, bool require_run) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return {{path, line_of_offset(text, e.byte), std::string("invalid JSON: ") + e.what()}};
  }
  std::vector<Diagnostic> diags;
  if (require_run && j.is_object() && !j.contains("run") && !j.contains("flow")) {
    diags.push_back({path, 1, "missing required field \"run\""});
  }
  apply_json(j, text, path, c, diags);
  if (!j.is_object()) return diags;
  auto range = validate(c, path);
  relocate(range, text, path);
  diags.insert(diags.end(), range.begin(), range.end());
  return diags;
}

}  // namespace

std::optional<RunKind> parse_run_kind(const std::string& name) {
  if (name == "width") return RunKind::Width;
  if (name == "tighten-diagnostics") return RunKind::TightenDiagnostics;
  if (name == "psi-properties") return RunKind::PsiProperties;
  if (name == "mcf-decay") return RunKind::McfDecay;
  if (name == "hk-decay") return RunKind::HkDecay;
  return std::nullopt;
}

std::string run_kind_name(RunKind kind) {
  switch (kind) {
    case RunKind::Width:
      return "width";
    case RunKind::TightenDiagnostics:
      return "tighten-diagnostics";
    case RunKind::PsiProperties:
      return "psi-properties";
    case RunKind::McfDecay:
      return "mcf-decay";
    case RunKind::HkDecay:
      return "hk-decay";
  }
  return "unknown";
}

bool is_randomized(RunKind kind) { return kind == RunKind::PsiProperties; }

Surface SurfaceSpec::build() const {
  if (kind == "sphere") {
    if (params.size() != 1) throw GeometryError("sphere takes one parameter (radius)");
    return Surface::sphere(params[0]);
  }
  if (kind == "ellipsoid") {
    if (params.size() != 3) throw GeometryError("ellipsoid takes three semi-axes");
    return Surface::ellipsoid(params[0], params[1], params[2]);
  }
  if (kind == "axisymmetric") return Surface::axisymmetric(params);
  throw GeometryError("unknown surface kind \"" + kind + "\" (sphere, ellipsoid, axisymmetric)");
}

std::string SurfaceSpec::label() const {
  std::ostringstream out;
  out << kind << ':';
  for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << params[i];
  return out.str();
}

std::string Diagnostic::str() const {
  std::ostringstream out;
  out << source;
  if (line > 0) out << ':' << line;
  out << ": " << message;
  return out.str();
}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

SurfaceSpec parse_surface_flag(const std::string& value) {
  if (value.size() > 5 && value.ends_with(".json")) {
    std::ifstream in(value);
    if (!in) throw GeometryError("cannot read surface file " + value);
    return surface_spec_from_json(json::parse(in));
  }
  const auto colon = value.find(':');
  if (colon == std::string::npos) throw GeometryError("surface must look like kind:p1,p2,... (got '" + value + "')");
  SurfaceSpec spec;
  spec.kind = value.substr(0, colon);
  spec.params = parse_number_list(value.substr(colon + 1));
  return spec;
}

SurfaceSpec surface_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw GeometryError("surface needs a string field \"kind\"");
  }
  SurfaceSpec spec;
  spec.kind = j["kind"].get<std::string>();
  if (!j.contains("params") || !j["params"].is_array()) throw GeometryError("surface needs an array \"params\"");
  spec.params = j["params"].get<std::vector<double>>();
  if (j.contains("resolution") && !j["resolution"].is_object()) throw GeometryError("\"resolution\" must be an object");
  return spec;
}

std::vector<Diagnostic> validate(const ExperimentConfig& c, const std::string& source) {
  std::vector<Diagnostic> d;
  auto add = [&](const std::string& msg) { d.push_back({source, 0, msg}); };
  try {
    c.surface.build();
  } catch (const GeometryError& e) {
    add(std::string("field \"surface\": ") + e.what());
  }
  if (c.slices < 2) add("field \"slices\" must be at least 2");
  if (c.L && *c.L < 1) add("field \"L\" must be positive");
  if (c.iterations < 1) add("field \"iters\" must be positive");
  if (c.count < 1) add("field \"count\" must be positive");
  if (c.jobs < 0) add("field \"jobs\" must be positive");
  if (!(c.dt_max > 0.0)) add("field \"dt_max\" must be positive");
  if (is_randomized(c.kind) && !c.seed) {
    add("missing required field \"seed\" for randomized run " + run_kind_name(c.kind));
  }
  if (c.kind == RunKind::PsiProperties && c.surface.kind != "sphere") {
    add("field \"surface\": psi-properties runs on a round sphere");
  }
  if (c.kind == RunKind::HkDecay && !(c.k && *c.k > 0.0)) {
    add("field \"k\" must satisfy k > 0 (precondition of the H^k flow, normal speed |H|^k)");
  }
  if (c.kind == RunKind::McfDecay || c.kind == RunKind::HkDecay) {
    const auto& t = c.t_samples;
    if (std::any_of(t.begin(), t.end(), [](double x) { return !(x >= 0.0) || !std::isfinite(x); })) {
      add("field \"t_samples\" must be non-negative");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!(t[i] > t[i - 1])) {
        add("field \"t_samples\" must be strictly increasing");
        break;
      }
    }
  }
  return d;
}

std::vector<Diagnostic> validate_file(const std::string& path) {
  ExperimentConfig c;
  return load(path, c, true);
}

ExperimentConfig apply_config_file(ExperimentConfig base, const std::string& path) {
  auto diags = load(path, base, false);
  if (!diags.empty()) throw ConfigError(std::move(diags));
  return base;
}

RunResult run_experiment(const ExperimentConfig& config) {
  if (auto diags = validate(config); !diags.empty()) throw ConfigError(std::move(diags));
  const auto start = std::chrono::steady_clock::now();
  const Surface surface = config.surface.build();
  const std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);

  RunResult result;
  Summary sum;
  switch (config.kind) {
    case RunKind::Width:
    case RunKind::TightenDiagnostics:
      run_width(config, surface, sum, result.artifacts, dir);
      break;
    case RunKind::PsiProperties:
      run_psi_properties(config, surface, sum, result.artifacts, dir);
      break;
    case RunKind::McfDecay:
    case RunKind::HkDecay:
      run_decay(config, surface, sum, result.artifacts, dir);
      break;
  }
  sum.metrics["surface"] = config.surface.label();
  sum.metrics["runtime_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.seed) sum.metrics["seed"] = *config.seed;

  result.summary = {{"run", run_kind_name(config.kind)},
                    {"pass", sum.pass},
                    {"metrics", sum.metrics},
                    {"thresholds", sum.thresholds}};
  result.artifacts.push_back(write_file(dir, "summary.json", result.summary.dump(2) + "\n"));
  result.exit_code = sum.pass ? 0 : 1;
  return result;
}

}  // namespace sweepwidth
