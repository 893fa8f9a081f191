#include "ppot/cli/recipes.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/version.hpp>

#include "ppot/capacity.hpp"
#include "ppot/cli/demo.hpp"
#include "ppot/cli/identity.hpp"
#include "ppot/io.hpp"

#ifndef PPOT_VERSION
#define PPOT_VERSION "unknown"
#endif

namespace ppot::cli {
namespace {

namespace pt = boost::property_tree;
using nlohmann::json;

template <class T>
T get_or(const pt::ptree& params, const std::string& key, T fallback) {
  if (!params.get_child_optional(key)) return fallback;
  try {
    return params.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw Error(ErrorCode::Parse, "bad value for `" + key + "`");
  }
}

std::vector<CsvRow> maeda_scan(const pt::ptree& params, json& info) {
  const auto family = FamilySpec::parse(get_or<std::string>(params, "family", "lattice:d=2"));
  const auto p_grid = parse_real_list(get_or<std::string>(params, "p", "1.5,2,3"));
  const auto radii = parse_long_list(get_or<std::string>(params, "radii", "8,16,32,64,128"));
  SolverConfig cfg;
  cfg.tolerance = get_or(params, "tolerance", cfg.tolerance);
  cfg.validate();

  std::vector<CsvRow> rows;
  for (const auto& v : parabolic_index_estimate(family, p_grid, radii, cfg)) {
    const std::string verdict(to_string(v.fit.verdict));
    for (std::size_t i = 0; i < v.curve.radii.size(); ++i)
      rows.push_back({v.curve.family, v.p, static_cast<double>(v.curve.radii[i]), v.curve.capacity[i],
                      v.curve.residual[i], verdict});
    info["fits"].push_back({{"p", v.p},
                            {"verdict", verdict},
                            {"retained", v.fit.retained},
                            {"final_step", v.fit.final_step},
                            {"loglog_exponent", v.fit.loglog_exponent},
                            {"power_exponent", v.fit.power_exponent}});
  }
  return rows;
}

std::vector<CsvRow> identity_suite(const pt::ptree& params, std::uint64_t seed, json& info) {
  const auto count = get_or<std::size_t>(params, "instances", 200);
  const auto max_vertices = get_or<std::size_t>(params, "max_vertices", 100);
  const auto cases = run_identity_suite(count, seed, max_vertices);
  std::vector<CsvRow> rows;
  double worst_identity = 0.0, worst_derivative = 0.0, worst_homogeneity = 0.0;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    rows.push_back({"random:n=" + std::to_string(c.vertices) + ",m=" + std::to_string(c.edges), c.p,
                    static_cast<double>(i), c.identity_residual, c.derivative_error,
                    c.pass ? "pass" : "fail"});
    worst_identity = std::max(worst_identity, c.identity_residual);
    worst_derivative = std::max(worst_derivative, c.derivative_error);
    worst_homogeneity = std::max(worst_homogeneity, c.homogeneity_error);
    passed += c.pass;
  }
  info["instances"] = cases.size();
  info["passed"] = passed;
  info["max_identity_residual"] = worst_identity;
  info["max_derivative_error"] = worst_derivative;
  info["max_homogeneity_error"] = worst_homogeneity;
  return rows;
}

std::vector<CsvRow> obstruction_demo(const pt::ptree& params, json& info) {
  DemoConfig cfg;
  cfg.layers = get_or(params, "layers", cfg.layers);
  cfg.rho = get_or(params, "rho", cfg.rho);
  cfg.lattice_scale = get_or(params, "lattice_scale", cfg.lattice_scale);
  cfg.tolerance = get_or(params, "tolerance", cfg.tolerance);
  cfg.paths = get_or(params, "paths", cfg.paths);
  cfg.far_fraction = get_or(params, "far_fraction", cfg.far_fraction);
  cfg.scale_count = get_or(params, "scales", cfg.scale_count);
  const auto r = run_obstruction_demo(cfg);

  std::vector<CsvRow> rows;
  const std::string disk = "disk:layers=" + std::to_string(cfg.layers);
  const std::string resolving = r.resolve.resolving_trend ? "resolving-trend" : "not-resolving-trend";
  for (std::size_t i = 0; i < r.resolve.scales.size(); ++i)
    rows.push_back({disk, cfg.p, r.resolve.scales[i], r.resolve.modulus[i], r.resolve.gap[i], resolving});

  // One row per annulus: the smallest phi among the paths at first entry
  // into B(r_n), against the partial harmonic sum H_n.
  double harmonic = 0.0;
  for (std::size_t n = 0; n < r.radii.radii.size(); ++n) {
    harmonic += 1.0 / static_cast<double>(n + 1);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& path : r.divergence.paths) lowest = std::min(lowest, path.depth_phi[n]);
    const bool certified = r.radii.disjoint[n] && r.radii.no_edge[n];
    rows.push_back({"blocking:n=" + std::to_string(n + 1), 2.0, r.radii.radii[n], lowest, harmonic - lowest,
                    certified ? "certified" : "uncertified"});
  }
  for (std::size_t k = 0; k < r.divergence.paths.size(); ++k) {
    const auto& path = r.divergence.paths[k];
    const bool ok = path.telescoping_ok && path.meets_harmonic_bound && path.depth_monotone;
    rows.push_back({"path:" + std::to_string(k), 2.0, static_cast<double>(r.divergence.annuli), path.phi_end,
                    r.divergence.harmonic - path.phi_end, ok ? "divergent-trend" : "bounded"});
  }

  info["vertices"] = r.triangulation.graph.vertex_count();
  info["packing_valid"] = r.report.valid();
  info["contact_isomorphic"] = r.contact_isomorphic;
  info["tangency_residual"] = r.packing.tangency_residual;
  info["metric_l2"] = r.metric_norm;
  info["anchor"] = r.anchor;
  info["annuli"] = r.divergence.annuli;
  info["harmonic"] = r.divergence.harmonic;
  info["slack"] = r.divergence.slack;
  info["supports_disjoint"] = r.blocking.supports_disjoint;
  info["measured_constant"] = r.blocking.max_constant;
  info["resolve_final_ratio"] = r.resolve.final_ratio;
  return rows;
}

}  // namespace

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << csv_field(r.family) << ',' << format_double(r.p) << ',' << format_double(r.scale) << ',' << format_double(r.value)
        << ',' << format_double(r.residual) << ',' << csv_field(r.verdict) << '\n';
}

std::string csv_text(const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::vector<std::string> recipe_names() { return {"maeda-scan", "identity-suite", "obstruction-demo"}; }

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  try {
    pt::read_ini(in, spec.raw);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::Parse, e.message() + " at line " + std::to_string(e.line()));
  }
  const auto run = spec.raw.get_child_optional("run");
  if (!run) throw Error(ErrorCode::Parse, "missing [run] section");
  spec.recipe = run->get<std::string>("recipe", "");
  const auto names = recipe_names();
  if (std::find(names.begin(), names.end(), spec.recipe) == names.end())
    throw Error(ErrorCode::Parse, "unknown recipe `" + spec.recipe + "`");
  spec.seed = get_or<std::uint64_t>(*run, "seed", 1);
  spec.output = run->get<std::string>("output", "");
  if (const auto params = spec.raw.get_child_optional(spec.recipe)) spec.params = *params;
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open spec file " + path);
  return parse_spec(in);
}

RecipeOutput run_recipe(const ExperimentSpec& spec) {
  RecipeOutput out;
  json info = json::object();
  const auto start = std::chrono::steady_clock::now();
  if (spec.recipe == "maeda-scan")
    out.rows = maeda_scan(spec.params, info);
  else if (spec.recipe == "identity-suite")
    out.rows = identity_suite(spec.params, spec.seed, info);
  else if (spec.recipe == "obstruction-demo")
    out.rows = obstruction_demo(spec.params, info);
  else
    throw Error(ErrorCode::Parse, "unknown recipe `" + spec.recipe + "`");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json config = json::object();
  for (const auto& [section, body] : spec.raw) {
    json entries = json::object();
    for (const auto& [key, value] : body) entries[key] = value.data();
    config[section] = entries;
  }
  std::ostringstream hash;
  hash << std::hex << fnv1a(csv_text(out.rows));
  out.manifest = {{"recipe", spec.recipe},
                  {"seed", spec.seed},
                  {"config", config},
                  {"versions",
                   {{"ppot", PPOT_VERSION}, {"compiler", __VERSION__}, {"boost", BOOST_LIB_VERSION},
                    {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                          std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                          std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                  {"wall_seconds", seconds},
                  {"rows", out.rows.size()},
                  {"csv_fnv1a", hash.str()},
                  {"results", info}};
  return out;
}

void write_outputs(const ExperimentSpec& spec, const RecipeOutput& out) {
  if (spec.output.empty()) throw Error(ErrorCode::Parse, "[run] output is not set");
  std::ofstream csv(spec.output, std::ios::binary);
  if (!csv) throw Error(ErrorCode::InvalidArgument, "cannot write " + spec.output);
  write_csv(csv, out.rows);
  std::ofstream manifest(spec.output + ".manifest.json");
  if (!manifest) throw Error(ErrorCode::InvalidArgument, "cannot write the manifest for " + spec.output);
  manifest << out.manifest.dump(2) << '\n';
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidIndex:
    case ErrorCode::LoopEdge:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::Disconnected:
    case ErrorCode::NotHyperbolic:
    case ErrorCode::NotTriangulation:
      return 2;
    case ErrorCode::SizeLimit:
    case ErrorCode::TooLarge:
      return 4;
    default:
      return 3;
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    out.push_back(parse_double(item));
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty list `" + text + "`");
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  for (double x : parse_real_list(text)) {
    if (x != static_cast<double>(static_cast<long>(x))) throw Error(ErrorCode::Parse, "integer expected in `" + text + "`");
    out.push_back(static_cast<long>(x));
  }
  return out;
}

}  // namespace ppot::cli
