// distmatch: command-line front end.
//
// Exit codes: 0 success / found, 1 nothing found or violations, 2 bad input.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distmatch/distopt.hpp"
#include "distmatch/gadgets.hpp"
#include "distmatch/io.hpp"
#include "distmatch/matcher.hpp"
#include "distmatch/metric.hpp"
#include "distmatch/nets.hpp"
#include "distmatch/oracle.hpp"
#include "distmatch/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace distmatch;

namespace {

constexpr int kOk = 0;
constexpr int kNone = 1;
constexpr int kBadInput = 2;

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

void require_pattern_fits(const FiniteMetric& X, const FiniteMetric& Y) {
  if (X.size() == 0) throw InputError("pattern is empty");
  if (X.size() > Y.size()) {
    throw InputError("pattern has " + std::to_string(X.size()) + " points but the space only " +
                     std::to_string(Y.size()));
  }
}

void require_rho_eps(double rho, double eps) {
  if (!(rho >= 1.0)) throw InputError("--rho must be >= 1");
  if (!(eps > 0.0) || eps > 1.0) throw InputError("--eps must be in (0, 1]");
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string graph;
  std::size_t m = kMinGadgetVertices;
  double edge_prob = 0.3;
  std::size_t k = 3;
  double rho = 1.0;
  bool min_distortion = false;
  bool plant = false;
  std::string out;
};

int run_gen(const GenArgs& a, const Common& c) {
  Graph G;
  if (!a.graph.empty()) {
    G = load_graph(a.graph);
  } else {
    std::mt19937_64 rng(c.seed);
    G = Graph::random(a.m, a.edge_prob, rng);
    if (a.plant) G = G.with_clique(random_subset(a.k, a.m, rng));
  }
  if (G.m() < kMinGadgetVertices) throw InputError("graph needs at least 24 vertices");
  if (a.k < 1) throw InputError("--k must be at least 1");
  if (!(a.rho >= 1.0)) throw InputError("--rho must be >= 1");
  const CliqueInstance inst =
      a.min_distortion ? gen_min_distortion_instance(G, a.k, a.rho) : gen_clique_instance(G, a.k, a.rho);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_json(dir / "X.json", metric_to_json(inst.X));
  write_json(dir / "Y.json", metric_to_json(inst.Y));
  write_json(dir / "graph.json", graph_to_json(G));
  json index_map = json::array();
  for (std::size_t f = 0; f < inst.ring_points(); ++f) {
    auto [ring, vertex] = inst.decode(f);
    index_map.push_back({{"index", f}, {"ring", ring}, {"vertex", vertex}});
  }
  json manifest = {{"pattern", "X.json"},
                   {"space", "Y.json"},
                   {"graph", "graph.json"},
                   {"k", inst.k},
                   {"m", inst.m()},
                   {"rho", inst.rho},
                   {"index_map", std::move(index_map)}};
  if (inst.lambda) {
    manifest["lambda"] = *inst.lambda;
    manifest["lambda_index"] = inst.ring_points();
  }
  write_json(dir / "manifest.json", manifest);
  emit({{"out", dir.string()}, {"x_points", inst.X.size()}, {"y_points", inst.Y.size()}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct MatchArgs {
  std::string pattern;
  std::string space;
  double rho = 1.0;
  double eps = 0.5;
  bool all = false;
  std::size_t limit = 0;
};

int run_match(const MatchArgs& a, const Common& c) {
  const FiniteMetric X = load_metric(a.pattern);
  const FiniteMetric Y = load_metric(a.space);
  require_pattern_fits(X, Y);
  require_rho_eps(a.rho, a.eps);
  SolveOptions opt;
  opt.want_all = a.all;
  opt.threads = c.threads;
  const SolveResult r = solve_distortion(X, Y, a.rho, a.eps, opt);
  json out = {{"found", r.found()}};
  if (r.found()) {
    out["matching"] = r.matchings.front().targets();
    out["achieved_rho"] = achieved_rho(r.matchings.front(), X, Y);
  } else {
    out["matching"] = nullptr;
    out["achieved_rho"] = nullptr;
  }
  if (a.all) {
    json all = json::array();
    for (const Matching& m : r.matchings) all.push_back(m.targets());
    out["matchings"] = std::move(all);
  }
  emit(out);
  return r.found() ? kOk : kNone;
}

struct DistortArgs {
  std::string pattern;
  std::string space;
  double eps = 0.5;
  bool naive = false;
};

int run_distort(const DistortArgs& a, const Common& c) {
  const FiniteMetric X = load_metric(a.pattern);
  const FiniteMetric Y = load_metric(a.space);
  require_pattern_fits(X, Y);
  if (X.size() < 2) throw InputError("distort needs a pattern of at least two points");
  require_rho_eps(1.0, a.eps);
  const DistortionEstimate est =
      a.naive ? min_distortion_naive(X, Y, a.eps, c.threads) : min_distortion(X, Y, a.eps, c.threads);
  emit({{"delta", est.delta}, {"matching", est.matching.targets()}});
  return kOk;
}

// ---------------------------------------------------------------------------

int run_oracle_match(const MatchArgs& a) {
  const FiniteMetric X = load_metric(a.pattern);
  const FiniteMetric Y = load_metric(a.space);
  require_pattern_fits(X, Y);
  if (!(a.rho >= 1.0)) throw InputError("--rho must be >= 1");
  const auto all = brute_rho_matchings(X, Y, a.rho, a.limit);
  json out = {{"found", !all.empty()}, {"count", all.size()}};
  if (all.empty()) {
    out["matching"] = nullptr;
    out["achieved_rho"] = nullptr;
  } else {
    out["matching"] = all.front().targets();
    out["achieved_rho"] = achieved_rho(all.front(), X, Y);
  }
  if (a.all) {
    json list = json::array();
    for (const Matching& m : all) list.push_back(m.targets());
    out["matchings"] = std::move(list);
  }
  emit(out);
  return all.empty() ? kNone : kOk;
}

int run_oracle_distort(const DistortArgs& a) {
  const FiniteMetric X = load_metric(a.pattern);
  const FiniteMetric Y = load_metric(a.space);
  require_pattern_fits(X, Y);
  if (X.size() < 2) throw InputError("distort needs a pattern of at least two points");
  auto [value, sigma] = brute_min_distortion(X, Y);
  emit({{"delta", value}, {"matching", sigma.targets()}});
  return kOk;
}

int run_oracle_clique(const std::string& graph, std::size_t k) {
  const Graph G = load_graph(graph);
  const auto clique = brute_k_clique(G, k);
  json out = {{"found", clique.has_value()}};
  out["clique"] = clique ? json(*clique) : json(nullptr);
  emit(out);
  return clique ? kOk : kNone;
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& path, std::size_t max_violations) {
  const FiniteMetric S = load_metric(path, /*validate=*/false);
  const ValidationReport report = validate_metric(S, max_violations);
  json list = json::array();
  for (const Violation& v : report.violations) {
    list.push_back({{"kind", to_string(v.kind)}, {"i", v.i}, {"j", v.j}, {"l", v.l}});
  }
  emit({{"valid", report.ok()}, {"violations", std::move(list)}, {"truncated", report.truncated}});
  return report.ok() ? kOk : kNone;
}

int run_net_dump(const std::string& path, int r_exp) {
  const FiniteMetric Y = load_metric(path);
  NetLayer layer = build_r_net(Y, Scale{r_exp});
  horizontal_edges(layer, Y);
  json edges = json::array();
  for (std::size_t s = 0; s < layer.size(); ++s) {
    for (Index v : layer.adjacency[s]) {
      if (layer.centers[s] < v) edges.push_back({layer.centers[s], v});
    }
  }
  emit({{"r_exp", r_exp}, {"centers", layer.centers}, {"edges", std::move(edges)}, {"cover", layer.cover}});
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::vector<std::size_t> sizes{1000, 10000, 100000};
  std::size_t k = 3;
  double rho = 1.2;
  double eps = 0.5;
  std::string out;
};

int run_bench(const BenchArgs& a, const Common& c) {
  require_rho_eps(a.rho, a.eps);
  std::ostringstream csv;
  csv << "n,k,rho,eps,seconds,found,layers,max_set_size,candidates\n";
  std::mt19937_64 rng(c.seed);
  for (std::size_t n : a.sizes) {
    if (a.k > n) throw InputError("--k exceeds an instance size");
    // Unit density and a fixed pattern shape, so only n changes between rows.
    const PlantedInstance inst = planted_instance(n, a.k, c.seed, rng);
    const FiniteMetric& X = inst.X;
    const FiniteMetric& Y = inst.Y;
    SolveOptions opt;
    opt.threads = c.threads;
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult r = solve_distortion(X, Y, a.rho, a.eps, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    csv << n << ',' << a.k << ',' << a.rho << ',' << a.eps << ',' << secs << ',' << (r.found() ? 1 : 0)
        << ',' << r.stats.layers_built << ',' << r.stats.max_set_size << ',' << r.stats.candidates << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << csv.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-distortion matching of metric patterns in doubling spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a clique-gadget instance");
  gen_cmd->add_option("--graph", gen.graph, "Graph JSON; a random graph is drawn when absent");
  gen_cmd->add_option("--m", gen.m, "Vertices of the random graph")->capture_default_str();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability of the random graph")->capture_default_str();
  gen_cmd->add_flag("--plant-clique", gen.plant, "Plant a k-clique in the random graph");
  gen_cmd->add_option("--k", gen.k, "Clique size")->required();
  gen_cmd->add_option("--rho", gen.rho, "Distortion parameter")->required();
  gen_cmd->add_flag("--min-distortion", gen.min_distortion, "Add the lambda points");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  MatchArgs match;
  auto* match_cmd = app.add_subcommand("match", "Find a (1+eps)rho-matching");
  match_cmd->add_option("--pattern", match.pattern, "Pattern metric JSON")->required();
  match_cmd->add_option("--space", match.space, "Space metric JSON")->required();
  match_cmd->add_option("--rho", match.rho, "Distortion bound")->required();
  match_cmd->add_option("--eps", match.eps, "Approximation slack")->required();
  match_cmd->add_flag("--all", match.all, "Return every kept matching");

  DistortArgs distort;
  auto* distort_cmd = app.add_subcommand("distort", "Approximate the minimum distortion");
  distort_cmd->add_option("--pattern", distort.pattern, "Pattern metric JSON")->required();
  distort_cmd->add_option("--space", distort.space, "Space metric JSON")->required();
  distort_cmd->add_option("--eps", distort.eps, "Approximation slack")->required();
  distort_cmd->add_flag("--naive", distort.naive, "Use the pair-ratio sweep");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive reference answers");
  oracle_cmd->require_subcommand(1);
  MatchArgs omatch;
  auto* omatch_cmd = oracle_cmd->add_subcommand("match", "All rho-matchings by enumeration");
  omatch_cmd->add_option("--pattern", omatch.pattern, "Pattern metric JSON")->required();
  omatch_cmd->add_option("--space", omatch.space, "Space metric JSON")->required();
  omatch_cmd->add_option("--rho", omatch.rho, "Distortion bound")->required();
  omatch_cmd->add_option("--limit", omatch.limit, "Stop after this many (0 = all)");
  omatch_cmd->add_flag("--all", omatch.all, "List every matching");
  DistortArgs odistort;
  auto* odistort_cmd = oracle_cmd->add_subcommand("distort", "Exact minimum distortion");
  odistort_cmd->add_option("--pattern", odistort.pattern, "Pattern metric JSON")->required();
  odistort_cmd->add_option("--space", odistort.space, "Space metric JSON")->required();
  std::string oclique_graph;
  std::size_t oclique_k = 0;
  auto* oclique_cmd = oracle_cmd->add_subcommand("clique", "First k-clique by enumeration");
  oclique_cmd->add_option("--graph", oclique_graph, "Graph JSON")->required();
  oclique_cmd->add_option("--k", oclique_k, "Clique size")->required();

  std::string validate_path;
  std::size_t max_violations = 0;
  auto* validate_cmd = app.add_subcommand("validate", "Check the metric axioms");
  validate_cmd->add_option("--metric", validate_path, "Metric JSON")->required();
  validate_cmd->add_option("--max-violations", max_violations, "Report at most this many (0 = all)");

  std::string dump_path;
  int dump_exp = 0;
  auto* dump_cmd = app.add_subcommand("net-dump", "Print the r-net of a space at r = 2^r_exp");
  dump_cmd->add_option("--space", dump_path, "Space metric JSON")->required();
  dump_cmd->add_option("--r-exp", dump_exp, "Scale exponent")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time solve_distortion on random planar instances");
  bench_cmd->add_option("--sizes", bench.sizes, "Instance sizes")->delimiter(',')->allow_extra_args(false);
  bench_cmd->add_option("--k", bench.k, "Pattern size")->capture_default_str();
  bench_cmd->add_option("--rho", bench.rho, "Distortion bound")->capture_default_str();
  bench_cmd->add_option("--eps", bench.eps, "Approximation slack")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen_cmd) return run_gen(gen, common);
    if (*match_cmd) return run_match(match, common);
    if (*distort_cmd) return run_distort(distort, common);
    if (*omatch_cmd) return run_oracle_match(omatch);
    if (*odistort_cmd) return run_oracle_distort(odistort);
    if (*oclique_cmd) return run_oracle_clique(oclique_graph, oclique_k);
    if (*validate_cmd) return run_validate(validate_path, max_violations);
    if (*dump_cmd) return run_net_dump(dump_path, dump_exp);
    if (*bench_cmd) return run_bench(bench, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
