#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ppot/capacity.hpp"
#include "ppot/cheeger.hpp"
#include "ppot/circlepack.hpp"
#include "ppot/cli/demo.hpp"
#include "ppot/cli/identity.hpp"
#include "ppot/cli/recipes.hpp"
#include "ppot/io.hpp"
#include "ppot/modulus.hpp"
#include "ppot/packing.hpp"

using namespace ppot;
using namespace ppot::cli;

namespace {

// Output target: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

VertexSet parse_vertices(const std::string& text) {
  VertexSet out;
  for (long v : parse_long_list(text)) {
    if (v < 0) throw Error(ErrorCode::Parse, "negative vertex index");
    out.push_back(static_cast<VertexId>(v));
  }
  return normalize_set(out);
}

SolverMethod parse_method(const std::string& s) {
  if (s == "auto") return SolverMethod::Auto;
  if (s == "newton") return SolverMethod::Newton;
  if (s == "cd" || s == "coordinate-descent") return SolverMethod::CoordinateDescent;
  throw Error(ErrorCode::Parse, "unknown solver method `" + s + "`");
}

Graph contact_or_file(const Packing& pk, const std::string& graph_path) {
  if (!graph_path.empty()) return read_graph_file(graph_path).graph;
  auto c = contact_graph(pk, kSolvedTangencyTolerance);
  if (!c.graph) throw Error(ErrorCode::GraphMismatch, "contact graph is disconnected; pass --graph");
  return std::move(*c.graph);
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string s = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = s.find_last_of('.');
  return dot == std::string::npos ? s : s.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete nonlinear potential theory on graphs"};
  app.require_subcommand(1);
  std::string out_path;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated graph");
  std::string gen_family;
  long gen_radius = 1;
  gen->add_option("--family", gen_family, "lattice:d=2, tree:b=2, tree-x-z:b=3, tessellation:p=4,q=5, disk")->required();
  gen->add_option("--radius", gen_radius, "exhaustion radius (disk: layers)")->required();
  gen->add_option("-o,--output", out_path);

  // solve
  auto* solve = app.add_subcommand("solve", "p-harmonic extension of boundary data");
  std::string graph_path, values_path, method = "auto";
  double p = 2.0, tol = 1e-9;
  solve->add_option("--graph", graph_path)->required();
  solve->add_option("--boundary", values_path, "`vertex value` lines")->required();
  solve->add_option("--p", p);
  solve->add_option("--tol", tol);
  solve->add_option("--method", method, "auto, newton, cd");
  solve->add_option("-o,--output", out_path);

  // capacity / scan-index
  auto* cap = app.add_subcommand("capacity", "Capacity curve cap_p(root, sphere(R))");
  std::string family, radii_text, p_text = "2";
  cap->add_option("--family", family)->required();
  cap->add_option("--p", p);
  cap->add_option("--radii", radii_text)->required();
  cap->add_option("--tol", tol);
  cap->add_option("-o,--output", out_path);

  auto* scan = app.add_subcommand("scan-index", "Parabolic-index trend over a grid of exponents");
  scan->add_option("--family", family)->required();
  scan->add_option("--p-grid", p_text)->required();
  scan->add_option("--radii", radii_text)->required();
  scan->add_option("--tol", tol);
  scan->add_option("-o,--output", out_path);

  // modulus
  auto* mod = app.add_subcommand("modulus", "p-modulus of a connector family, or its null trend over a family");
  std::string from_text, to_text;
  mod->add_option("--family", family);
  mod->add_option("--radii", radii_text);
  mod->add_option("--graph", graph_path);
  mod->add_option("--from", from_text);
  mod->add_option("--to", to_text);
  mod->add_option("--p", p);
  mod->add_option("-o,--output", out_path);

  // resolve-check
  auto* res = app.add_subcommand("resolve-check", "Connector moduli over shrinking neighbourhoods of an anchor");
  std::string packing_path, point_text, anchor_text, scales_text, far_text;
  double far_fraction = 0.5;
  std::size_t scale_count = 4;
  res->add_option("--graph", graph_path, "graph file; a metric column is used when present");
  res->add_option("--packing", packing_path, "Euclidean anchor among packing centers");
  res->add_option("--point", point_text, "x,y anchor point (packing case)");
  res->add_option("--anchor", anchor_text, "anchor vertex list (metric case)");
  res->add_option("--scales", scales_text, "decreasing scales (metric case)");
  res->add_option("--far", far_text, "far vertex list (metric case)");
  res->add_option("--far-fraction", far_fraction, "packing case");
  res->add_option("--scale-count", scale_count, "packing case");
  res->add_option("--p", p);
  res->add_option("-o,--output", out_path);

  // pack2d
  auto* pack = app.add_subcommand("pack2d", "Boundary-value circle packing of a triangulated disk");
  double boundary_radius = 1.0, pack_tol = 1e-8;
  std::string radii_path;
  pack->add_option("--graph", graph_path, "graph file with `boundary:` and optional `face:` lines")->required();
  pack->add_option("--boundary-radius", boundary_radius, "uniform boundary radius");
  pack->add_option("--radii", radii_path, "`vertex radius` lines for the boundary");
  pack->add_option("--tol", pack_tol);
  pack->add_option("-o,--output", out_path);

  auto* verify = app.add_subcommand("pack-verify", "Report overlapping inner balls");
  double verify_tol = 1e-9;
  verify->add_option("--packing", packing_path)->required();
  verify->add_option("--tol", verify_tol);
  verify->add_option("-o,--output", out_path);

  auto* pmetric = app.add_subcommand("pack-metric", "Packing metric diam(P_u) + diam(P_v) as a graph file");
  pmetric->add_option("--packing", packing_path)->required();
  pmetric->add_option("--graph", graph_path, "contact graph; recomputed when omitted");
  pmetric->add_option("-o,--output", out_path);

  auto* block = app.add_subcommand("pack-block", "Blocking radii, metric and divergence profiles");
  std::size_t n_max = 30, path_count = 5;
  block->add_option("--packing", packing_path)->required();
  block->add_option("--graph", graph_path);
  block->add_option("--point", point_text, "x,y anchor; searched near the smallest circle when omitted");
  block->add_option("--n-max", n_max);
  block->add_option("--paths", path_count);
  block->add_option("-o,--output", out_path);

  auto* cheeger = app.add_subcommand("cheeger", "Exact Cheeger constant by enumeration");
  long cheeger_radius = 0;
  cheeger->add_option("--graph", graph_path);
  cheeger->add_option("--family", family);
  cheeger->add_option("--radius", cheeger_radius);

  auto* ident = app.add_subcommand("identity-suite", "Energy identities on random instances");
  std::size_t instances = 200, max_vertices = 100;
  std::uint64_t seed = 1;
  ident->add_option("--instances", instances);
  ident->add_option("--max-vertices", max_vertices);
  ident->add_option("--seed", seed);
  ident->add_option("-o,--output", out_path);

  auto* run = app.add_subcommand("run", "Run a recipe from an INI spec");
  std::string config_path;
  run->add_option("config", config_path)->required();
  run->add_option("-o,--output", out_path, "overrides [run] output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      const auto spec = FamilySpec::parse(gen_family);
      Sink sink(out_path);
      GraphWriteOptions opts;
      if (spec.family == Family::Disk) {
        const auto disk = triangulated_disk(static_cast<int>(gen_radius));
        std::vector<std::string> boundary;
        for (VertexId v : disk.boundary) boundary.push_back(std::to_string(v));
        opts.directives.push_back({"boundary", boundary});
        for (const auto& f : disk.faces) {
          std::vector<std::string> face;
          for (VertexId v : f) face.push_back(std::to_string(v));
          opts.directives.push_back({"face", face});
        }
        write_graph(sink.get(), disk.graph, opts);
      } else {
        const auto ex = build_exhaustion(spec, gen_radius);
        opts.directives.push_back({"root", {std::to_string(ex.root)}});
        std::vector<std::string> sphere;
        for (VertexId v : ex.sphere) sphere.push_back(std::to_string(v));
        opts.directives.push_back({"sphere", sphere});
        write_graph(sink.get(), ex.graph, opts);
      }
    } else if (*solve) {
      const auto file = read_graph_file(graph_path);
      std::ifstream in(values_path);
      if (!in) throw Error(ErrorCode::Parse, "cannot open " + values_path);
      DirichletProblem prob;
      prob.graph = &file.graph;
      for (const auto& [v, x] : read_vertex_values(in)) {
        prob.boundary.push_back(v);
        prob.boundary_values.push_back(x);
      }
      SolverConfig cfg;
      cfg.p = p;
      cfg.tolerance = tol;
      cfg.method = parse_method(method);
      cfg.validate();
      const auto sol = solve_dirichlet(prob, cfg);
      Sink sink(out_path);
      write_vertex_function(sink.get(), sol.f);
      std::cerr << "status " << to_string(sol.status) << " residual " << format_double(sol.residual) << '\n';
      if (sol.status == SolveStatus::MaxSweepsExceeded) return 3;
    } else if (*cap || *scan) {
      const auto spec = FamilySpec::parse(family);
      const auto radii = parse_long_list(radii_text);
      const auto grid = *cap ? std::vector<double>{p} : parse_real_list(p_text);
      SolverConfig cfg;
      cfg.tolerance = tol;
      cfg.validate();
      std::vector<CsvRow> rows;
      for (const auto& v : parabolic_index_estimate(spec, grid, radii, cfg)) {
        const std::string verdict(to_string(v.fit.verdict));
        for (std::size_t i = 0; i < v.curve.radii.size(); ++i)
          rows.push_back({v.curve.family, v.p, static_cast<double>(v.curve.radii[i]), v.curve.capacity[i],
                          v.curve.residual[i], verdict});
      }
      Sink sink(out_path);
      write_csv(sink.get(), rows);
    } else if (*mod) {
      ModulusConfig cfg;
      cfg.p = p;
      cfg.validate();
      std::vector<CsvRow> rows;
      if (!graph_path.empty()) {
        const auto file = read_graph_file(graph_path);
        const auto r = p_modulus(file.graph, PathFamily::connector(parse_vertices(from_text), parse_vertices(to_text)), cfg);
        rows.push_back({stem(graph_path), p, 0.0, r.value, r.value - r.lower_bound, r.converged ? "converged" : "stalled"});
      } else {
        if (family.empty() || radii_text.empty()) throw Error(ErrorCode::Parse, "modulus needs --graph or --family and --radii");
        const auto t = null_family_trend(FamilySpec::parse(family), parse_long_list(radii_text), cfg);
        const std::string verdict = t.null_trend ? "null-trend" : "not-null-trend";
        for (std::size_t i = 0; i < t.radii.size(); ++i)
          rows.push_back({t.family, p, static_cast<double>(t.radii[i]), t.modulus[i], t.gap[i], verdict});
      }
      Sink sink(out_path);
      write_csv(sink.get(), rows);
    } else if (*res) {
      ModulusConfig cfg;
      cfg.p = p;
      cfg.validate();
      Graph g;
      EdgeMetric m;
      BoundaryProxy proxy;
      std::string name;
      if (!packing_path.empty()) {
        const auto pk = read_packing_file(packing_path);
        g = contact_or_file(pk, graph_path);
        m = packing_metric(pk, g);
        const auto point = point_text.empty() ? find_anchor(pk, g, 30) : parse_real_list(point_text);
        proxy = packing_proxy(pk, point, far_fraction, scale_count);
        name = stem(packing_path);
      } else {
        if (graph_path.empty()) throw Error(ErrorCode::Parse, "resolve-check needs --graph or --packing");
        auto file = read_graph_file(graph_path);
        g = file.graph;
        m = file.metric ? *file.metric : natural_metric(g);
        proxy.anchor = VertexAnchor{parse_vertices(anchor_text)};
        proxy.scales = parse_real_list(scales_text);
        proxy.far_set = parse_vertices(far_text);
        name = stem(graph_path);
      }
      const auto r = resolving_check(g, m, proxy, cfg);
      const std::string verdict = r.resolving_trend ? "resolving-trend" : "not-resolving-trend";
      std::vector<CsvRow> rows;
      for (std::size_t i = 0; i < r.scales.size(); ++i)
        rows.push_back({name, p, r.scales[i], r.modulus[i], r.gap[i], verdict});
      Sink sink(out_path);
      write_csv(sink.get(), rows);
    } else if (*pack) {
      const auto file = read_graph_file(graph_path);
      const auto t = triangulation_from_file(file);
      std::vector<double> radii(t.boundary.size(), boundary_radius);
      if (!radii_path.empty()) {
        std::ifstream in(radii_path);
        if (!in) throw Error(ErrorCode::Parse, "cannot open " + radii_path);
        std::vector<double> by_vertex(t.graph.vertex_count(), -1.0);
        for (const auto& [v, r] : read_vertex_values(in)) {
          if (v >= by_vertex.size()) throw Error(ErrorCode::InvalidIndex, "radius for unknown vertex");
          by_vertex[v] = r;
        }
        for (std::size_t i = 0; i < t.boundary.size(); ++i) {
          if (by_vertex[t.boundary[i]] < 0.0) throw Error(ErrorCode::Parse, "missing boundary radius");
          radii[i] = by_vertex[t.boundary[i]];
        }
      }
      PackConfig pc;
      pc.tolerance = pack_tol;
      const auto cp = pack_disk(t, radii, pc);
      Sink sink(out_path);
      write_packing(sink.get(), cp.packing);
      std::cerr << "sweeps " << cp.sweeps << " angle residual " << format_double(cp.angle_residual)
                << " tangency residual " << format_double(cp.tangency_residual) << '\n';
      if (!cp.converged) {
        std::cerr << to_string(ErrorCode::NoConvergence) << ": sweep limit reached; best iterate written\n";
        return 3;
      }
    } else if (*verify) {
      const auto pk = read_packing_file(packing_path);
      const auto rep = verify_packing(pk, verify_tol);
      Sink sink(out_path);
      sink.get() << "a,b,depth\n";
      for (const auto& o : rep.violations) sink.get() << o.a << ',' << o.b << ',' << format_double(o.depth) << '\n';
      std::cerr << (rep.valid() ? "valid" : "invalid") << " violations " << rep.violations.size()
                << " roundness " << format_double(rep.realized_roundness) << '\n';
      if (!rep.valid()) return 3;
    } else if (*pmetric) {
      const auto pk = read_packing_file(packing_path);
      const Graph g = contact_or_file(pk, graph_path);
      const auto m = packing_metric(pk, g);
      Sink sink(out_path);
      GraphWriteOptions opts;
      opts.metric = &m;
      write_graph(sink.get(), g, opts);
      std::cerr << "l2 norm " << format_double(metric_lp_norm(m, 2.0)) << '\n';
    } else if (*block) {
      const auto pk = read_packing_file(packing_path);
      const Graph g = contact_or_file(pk, graph_path);
      const auto point = point_text.empty() ? find_anchor(pk, g, n_max) : parse_real_list(point_text);
      const auto br = blocking_radii(pk, g, point, n_max);
      const auto bm = blocking_metric(pk, g, br);
      const auto dr = divergence_check(pk, g, bm, br, anchor_paths(pk, g, br, path_count));
      std::vector<CsvRow> rows;
      double harmonic = 0.0;
      for (std::size_t n = 0; n < br.radii.size(); ++n) {
        harmonic += 1.0 / static_cast<double>(n + 1);
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& path : dr.paths) lowest = std::min(lowest, path.depth_phi[n]);
        rows.push_back({"blocking:n=" + std::to_string(n + 1), static_cast<double>(pk.dimension), br.radii[n], lowest,
                        harmonic - lowest, br.disjoint[n] && br.no_edge[n] ? "certified" : "uncertified"});
      }
      for (std::size_t k = 0; k < dr.paths.size(); ++k) {
        const auto& path = dr.paths[k];
        const bool ok = path.telescoping_ok && path.meets_harmonic_bound && path.depth_monotone;
        rows.push_back({"path:" + std::to_string(k), static_cast<double>(pk.dimension), static_cast<double>(dr.annuli),
                        path.phi_end, dr.harmonic - path.phi_end, ok ? "divergent-trend" : "bounded"});
      }
      Sink sink(out_path);
      write_csv(sink.get(), rows);
      std::cerr << "annuli " << dr.annuli << (br.exhausted ? " (" + br.reason + ")" : "") << '\n';
    } else if (*cheeger) {
      Graph g;
      if (!graph_path.empty())
        g = read_graph_file(graph_path).graph;
      else if (!family.empty())
        g = build_exhaustion(FamilySpec::parse(family), cheeger_radius).graph;
      else
        throw Error(ErrorCode::Parse, "cheeger needs --graph or --family");
      std::cout << format_double(cheeger_constant_exact(g)) << '\n';
    } else if (*ident) {
      const auto cases = run_identity_suite(instances, seed, max_vertices);
      std::vector<CsvRow> rows;
      bool all = true;
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        rows.push_back({"random:n=" + std::to_string(c.vertices) + ",m=" + std::to_string(c.edges), c.p,
                        static_cast<double>(i), c.identity_residual, c.derivative_error, c.pass ? "pass" : "fail"});
        all = all && c.pass;
      }
      Sink sink(out_path);
      write_csv(sink.get(), rows);
      if (!all) return 3;
    } else if (*run) {
      auto spec = parse_spec_file(config_path);
      if (!out_path.empty()) spec.output = out_path;
      const auto result = run_recipe(spec);
      if (spec.output.empty()) {
        write_csv(std::cout, result.rows);
      } else {
        write_outputs(spec, result);
        std::cerr << "wrote " << spec.output << " (" << result.rows.size() << " rows)\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
  return 0;
}
