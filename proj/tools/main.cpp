// sobim: influence spread decomposition and seed-selection toolkit.
//
// Subcommands: gen, select, decompose, sim, bench, case-study.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical degeneracy.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sobim/errors.hpp"
#include "sobim/experiments.hpp"
#include "sobim/graph.hpp"
#include "sobim/graph_gen.hpp"
#include "sobim/heuristics.hpp"
#include "sobim/sim.hpp"
#include "sobim/sobol.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sobim;

namespace {

constexpr const char* kVersion = "0.1.0";

// --- shared option bundles --------------------------------------------------

struct ModelOptions {
  std::string model = "ic";
  double t_lo = 0.01;
  double t_hi = 0.20;
  int max_steps = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "Diffusion model: ic or lt")
        ->check(CLI::IsMember({"ic", "lt"}))
        ->capture_default_str();
    cmd->add_option("--t-lo", t_lo, "LT threshold lower bound")->capture_default_str();
    cmd->add_option("--t-hi", t_hi, "LT threshold upper bound")->capture_default_str();
    cmd->add_option("--max-steps", max_steps, "Propagation step cap (0 = run to quiescence)")
        ->capture_default_str();
  }

  DiffusionConfig config(int rounds, std::uint64_t seed) const {
    DiffusionConfig cfg;
    cfg.model = model == "lt" ? DiffusionModel::LT : DiffusionModel::IC;
    cfg.threshold_lo = t_lo;
    cfg.threshold_hi = t_hi;
    cfg.rounds = rounds;
    cfg.max_steps = max_steps;
    cfg.master_seed = seed;
    return cfg;
  }
};

struct GraphOptions {
  std::string path;
  double default_weight = 0.5;
  std::vector<double> randomize;  // empty or {lo, hi}
  bool use_lcc = false;

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--graph", path, "Edge list file (\"u v [w]\" lines)");
    if (required) opt->required();
    cmd->add_option("--default-weight", default_weight,
                    "Weight for edges listed without one")
        ->capture_default_str();
    cmd->add_option("--randomize-weights", randomize,
                    "Redraw edge weights uniformly from LO HI (uses --seed)")
        ->expected(2);
    cmd->add_flag("--lcc", use_lcc, "Restrict to the largest connected component");
  }

  Graph load(std::uint64_t seed) const {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open graph file: " + path);
    Graph g = load_edge_list(in, default_weight).graph;
    if (!randomize.empty()) g = randomize_weights(g, randomize[0], randomize[1], seed);
    if (use_lcc) g = largest_connected_component(g).graph;
    return g;
  }
};

struct HeuristicOptions {
  int horizon = 3;
  double dd_p = -1.0;
  bool eig_weighted = false;
  int grd_rounds = 1000;
  NodeId pi_cap = 20000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--horizon", horizon, "Walk horizon for sigma and pi")
        ->capture_default_str();
    cmd->add_option("--dd-p", dd_p,
                    "Degree-discount probability (default: mean edge weight)");
    cmd->add_flag("--eig-weighted", eig_weighted, "Weighted eigenvector centrality");
    cmd->add_option("--grd-rounds", grd_rounds, "Rounds per greedy marginal estimate")
        ->capture_default_str();
    cmd->add_option("--pi-cap", pi_cap, "Dense matrix size cap for pi")->capture_default_str();
  }

  HeuristicParams params(const ModelOptions& model, std::uint64_t seed) const {
    HeuristicParams p;
    p.sigma_pi_horizon = horizon;
    p.dd_probability = dd_p;
    p.eig_weighted = eig_weighted;
    p.pi_dense_cap = pi_cap;
    p.greedy_cfg = model.config(grd_rounds, seed);
    return p;
  }
};

// --- small IO helpers ---------------------------------------------------------

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path.string());
  return out;
}

void write_seed_file(const fs::path& path, const std::vector<NodeId>& nodes) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < nodes.size(); ++i) out << (i ? " " : "") << nodes[i];
  out << "\n";
}

std::vector<NodeId> read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open seeds file: " + path);
  std::vector<NodeId> seeds;
  NodeId v;
  while (in >> v) seeds.push_back(v);
  if (seeds.empty()) throw DataError("seeds file is empty: " + path);
  return seeds;
}

std::string join_ids(const std::vector<NodeId>& ids, char sep = ';') {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? std::string(1, sep) : "") << ids[i];
  return out.str();
}

json environment_stamp() {
  return json{{"tool", "sobim"},
              {"version", kVersion},
              {"hardware_threads", std::thread::hardware_concurrency()},
              {"unix_time", static_cast<std::int64_t>(
                                std::chrono::duration_cast<std::chrono::seconds>(
                                    std::chrono::system_clock::now().time_since_epoch())
                                    .count())}};
}

json trace_to_json(const PruneTrace& trace) {
  json iterations = json::array();
  for (const auto& it : trace.iterations) {
    iterations.push_back({{"candidates", it.candidates},
                          {"scores", it.scores},
                          {"removed", it.removed},
                          {"simulated_rounds", it.simulated_rounds},
                          {"cached_cells", it.cached_cells},
                          {"degenerate_fallback", it.degenerate_fallback}});
  }
  return json{{"k", trace.k},
              {"candidate_count", trace.candidate_count},
              {"rounds_per_estimate", trace.rounds_per_estimate},
              {"cache_enabled", trace.cache_enabled},
              {"collected", trace.collected},
              {"selected", trace.selected},
              {"total_simulated_rounds", trace.total_simulated_rounds},
              {"collect_seconds", trace.collect_seconds},
              {"prune_seconds", trace.prune_seconds},
              {"iterations", iterations}};
}

json decomposition_to_json(const SobolDecomposition& dec, const SubsetSpreadTable& table) {
  json first = json::array(), total = json::array(), higher = json::array();
  for (int i = 0; i < table.width(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    first.push_back({{"candidate", i},
                     {"node", table.candidates[idx]},
                     {"index", dec.first_order[idx].normalized},
                     {"variance_contribution", dec.first_order[idx].contribution}});
    total.push_back({{"candidate", i},
                     {"node", table.candidates[idx]},
                     {"index", dec.total[idx].normalized},
                     {"variance_contribution", dec.total[idx].contribution}});
  }
  for (const auto& term : dec.higher_order) {
    higher.push_back({{"mask", mask_to_string(term.subset, table.width())},
                      {"nodes", table.mask_nodes(term.subset)},
                      {"index", term.normalized},
                      {"variance_contribution", term.contribution}});
  }
  json out{{"mean_y", dec.mean_y},
           {"var_y", dec.var_y},
           {"max_order", dec.max_order},
           {"first_order", first},
           {"total", total},
           {"higher_order", higher}};
  if (dec.closure_residual) out["closure_residual"] = *dec.closure_residual;
  return out;
}

void dump_raw_csv(std::ostream& out, const std::string& heuristic, const std::string& variant,
                  const std::vector<double>& sizes) {
  for (std::size_t i = 0; i < sizes.size(); ++i)
    out << heuristic << ',' << variant << ',' << i << ',' << sizes[i] << '\n';
}

// --- subcommand state ---------------------------------------------------------

struct GenArgs {
  std::string kind;
  GraphGenSpec spec;
  std::string out;
};

struct SelectArgs {
  GraphOptions graph;
  ModelOptions model;
  HeuristicOptions heur;
  std::string heuristic = "deg";
  int k = 5;
  std::uint64_t seed = 0;
  std::string out;
};

struct DecomposeArgs {
  GraphOptions graph;
  ModelOptions model;
  std::string table_file;
  std::vector<NodeId> seeds;
  std::string seeds_file;
  int rounds = 100;
  int max_order = 2;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

struct SimArgs {
  GraphOptions graph;
  ModelOptions model;
  HeuristicOptions heur;
  std::string base = "deg";
  int k = 5;
  double a = 2.0;
  int rounds = 100;
  bool no_cache = false;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

struct BenchArgs {
  GraphOptions graph;
  ModelOptions model;
  HeuristicOptions heur;
  std::string gen_kind;  // "", "er", or "ws": synthesize instead of loading
  GraphGenSpec gen_spec;
  std::vector<std::string> heuristics{"deg", "eig", "dd", "sigma", "pi"};
  int k = 5;
  double a = 2.0;
  int r_select = 100;
  int r_eval = 1000;
  bool no_cache = false;
  bool dump_raw = false;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

struct CaseStudyArgs {
  GraphOptions graph;
  ModelOptions model;
  std::vector<NodeId> seeds;
  std::string seeds_file;
  std::string heuristic;  // optional: derive seeds from a heuristic instead
  int k = 5;
  HeuristicOptions heur;
  int rounds = 1000;
  int r_eval = 1000;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

std::vector<NodeId> resolve_seeds(const std::vector<NodeId>& inline_seeds,
                                  const std::string& seeds_file) {
  if (!inline_seeds.empty() && !seeds_file.empty())
    throw DataError("give either --seeds or --seeds-file, not both");
  if (!inline_seeds.empty()) return inline_seeds;
  if (!seeds_file.empty()) return read_seed_file(seeds_file);
  throw DataError("no seeds given: use --seeds or --seeds-file");
}

// --- subcommand bodies ----------------------------------------------------------

int run_gen(const GenArgs& args) {
  GraphGenSpec spec = args.spec;
  spec.kind = args.kind == "ws" ? GraphKind::WS : GraphKind::ER;
  Graph g = generate(spec);
  auto out = open_out(args.out);
  out << "# n=" << g.node_count() << " edges=" << g.edge_count() << "\n";
  write_edge_list(out, g);
  std::cerr << "wrote " << args.out << " (n=" << g.node_count() << ", edges=" << g.edge_count()
            << ")\n";
  return 0;
}

int run_select(const SelectArgs& args) {
  Graph g = args.graph.load(args.seed);
  SeedSet seeds =
      select_by_label(g, args.heuristic, args.k, args.heur.params(args.model, args.seed));
  if (args.out.empty()) {
    std::cout << join_ids(seeds.nodes, ' ') << "\n";
  } else {
    write_seed_file(args.out, seeds.nodes);
    std::cerr << "wrote " << args.out << " (" << seeds.origin << ")\n";
  }
  return 0;
}

int run_decompose(const DecomposeArgs& args) {
  SubsetSpreadTable table;
  if (!args.table_file.empty()) {
    std::ifstream in(args.table_file);
    if (!in) throw DataError("cannot open table file: " + args.table_file);
    table = read_table_csv(in);
  } else {
    Graph g = args.graph.load(args.seed);
    auto seeds = resolve_seeds(args.seeds, args.seeds_file);
    if (seeds.size() > 20) throw DataError("decompose supports at most 20 seeds");
    table = build_subset_table(g, seeds, args.model.config(args.rounds, args.seed));
  }
  const int max_order = std::min<int>(args.max_order, table.width());
  SobolDecomposition dec = full_decomposition(table, max_order);

  const fs::path dir(args.out_dir);
  {
    auto out = open_out(dir / "table.csv");
    write_table_csv(out, table);
  }
  json report = decomposition_to_json(dec, table);
  report["environment"] = environment_stamp();
  {
    auto out = open_out(dir / "report.json");
    out << report.dump(2) << "\n";
  }
  if (dec.closure_residual)
    std::cout << "closure residual: " << *dec.closure_residual << "\n";
  std::cout << "mean(Y)=" << dec.mean_y << " var(Y)=" << dec.var_y << " -> " << args.out_dir
            << "/report.json\n";
  return 0;
}

void warn_wide_table(int candidates) {
  if (candidates > 20)
    std::cerr << "warning: " << candidates << " candidates need a 2^" << candidates
              << "-cell spread table; expect heavy simulation cost\n";
}

int run_sim(const SimArgs& args) {
  Graph g = args.graph.load(args.seed);
  SimConfig cfg;
  cfg.k = args.k;
  cfg.over_select = args.a;
  cfg.base = args.base;
  cfg.base_params = args.heur.params(args.model, args.seed);
  cfg.diffusion = args.model.config(args.rounds, args.seed);
  cfg.reuse_cache = !args.no_cache;
  warn_wide_table(cfg.candidate_count());
  SimResult result = sim_select(g, cfg);

  const fs::path dir(args.out_dir);
  write_seed_file(dir / "seeds.txt", result.seeds.nodes);
  {
    auto out = open_out(dir / "trace.json");
    json trace = trace_to_json(result.trace);
    trace["environment"] = environment_stamp();
    out << trace.dump(2) << "\n";
  }
  std::cout << join_ids(result.seeds.nodes, ' ') << "\n";
  std::cerr << "simulated rounds: " << result.trace.total_simulated_rounds << "\n";
  return 0;
}

int run_bench(const BenchArgs& args) {
  Graph g;
  if (!args.gen_kind.empty()) {
    GraphGenSpec spec = args.gen_spec;
    spec.kind = args.gen_kind == "ws" ? GraphKind::WS : GraphKind::ER;
    g = generate(spec);
  } else {
    if (args.graph.path.empty())
      throw DataError("bench needs --graph or --gen er/--gen ws");
    g = args.graph.load(args.seed);
  }

  SimConfig cfg;
  cfg.k = args.k;
  cfg.over_select = args.a;
  cfg.base_params = args.heur.params(args.model, args.seed);
  cfg.diffusion = args.model.config(args.r_select, args.seed);
  cfg.reuse_cache = !args.no_cache;
  warn_wide_table(cfg.candidate_count());

  const fs::path dir(args.out_dir);
  auto csv = open_out(dir / "bench.csv");
  csv << "heuristic,variant,k,seeds,mean,std,r_eval,collect_s,prune_s,evaluate_s\n";
  std::optional<std::ofstream> raw;
  if (args.dump_raw) {
    raw = open_out(dir / "raw.csv");
    *raw << "heuristic,variant,round,size\n";
  }

  json rows = json::array();
  char buf[256];
  for (const std::string& label : args.heuristics) {
    BenchRow row = run_bench_row(g, label, cfg, args.r_eval, args.seed, args.dump_raw);
    const struct {
      const char* variant;
      const BenchVariant* v;
    } variants[] = {{"wo", &row.plain}, {"w", &row.pruned}};
    for (const auto& [variant, v] : variants) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%d,%s,%.6f,%.6f,%d,%.3f,%.3f,%.3f\n",
                    label.c_str(), variant, args.k, join_ids(v->seeds.nodes).c_str(),
                    v->spread.mean, v->spread.std_dev, args.r_eval, v->collect_seconds,
                    v->prune_seconds, v->evaluate_seconds);
      csv << buf;
      rows.push_back({{"heuristic", label},
                      {"variant", variant},
                      {"seeds", v->seeds.nodes},
                      {"mean", v->spread.mean},
                      {"std", v->spread.std_dev},
                      {"r_eval", args.r_eval},
                      {"collect_seconds", v->collect_seconds},
                      {"prune_seconds", v->prune_seconds},
                      {"evaluate_seconds", v->evaluate_seconds}});
      if (raw) dump_raw_csv(*raw, label, variant, v->raw_sizes);
    }
    auto trace = open_out(dir / ("trace_" + label + ".json"));
    trace << trace_to_json(row.trace).dump(2) << "\n";
    std::cerr << label << ": wo=" << row.plain.spread.mean << " w=" << row.pruned.spread.mean
              << "\n";
  }
  json report{{"environment", environment_stamp()},
              {"k", args.k},
              {"a", args.a},
              {"r_select", args.r_select},
              {"r_eval", args.r_eval},
              {"master_seed", args.seed},
              {"rows", rows}};
  auto out = open_out(dir / "report.json");
  out << report.dump(2) << "\n";
  return 0;
}

int run_case_study(const CaseStudyArgs& args) {
  Graph g = args.graph.load(args.seed);
  std::vector<NodeId> seeds;
  if (!args.heuristic.empty()) {
    seeds = select_by_label(g, args.heuristic, args.k, args.heur.params(args.model, args.seed))
                .nodes;
  } else {
    seeds = resolve_seeds(args.seeds, args.seeds_file);
  }
  for (NodeId v : seeds) {
    if (v < 0 || v >= g.node_count())
      throw DataError("seed " + std::to_string(v) + " is not in the graph");
  }
  CaseStudyReport report =
      run_case_study(g, seeds, args.model.config(args.rounds, args.seed), args.r_eval);

  json seeds_json = json::array();
  for (const auto& s : report.seeds) {
    seeds_json.push_back({{"node", s.node},
                          {"total_index", s.total_index},
                          {"total_contribution", s.total_contribution},
                          {"marginal_mean", s.marginal_mean},
                          {"marginal_std", s.marginal_std}});
  }
  json pairs_json = json::array();
  for (const auto& p : report.pairs) {
    json row{{"a", p.a},
             {"b", p.b},
             {"interaction", p.interaction},
             {"variance_contribution", p.interaction_contribution}};
    if (p.distance)
      row["distance"] = *p.distance;
    else
      row["distance"] = nullptr;
    pairs_json.push_back(row);
  }
  json report_json{{"environment", environment_stamp()},
                   {"mean_y", report.y_moments.mean},
                   {"var_y", report.y_moments.variance},
                   {"rank_correlation", report.rank_correlation},
                   {"seeds", seeds_json},
                   {"pairs", pairs_json}};
  const fs::path dir(args.out_dir);
  {
    auto out = open_out(dir / "report.json");
    out << report_json.dump(2) << "\n";
  }
  {
    auto out = open_out(dir / "table.csv");
    write_table_csv(out, report.table);
  }
  std::cout << "rank correlation: " << report.rank_correlation << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence spread decomposition and seed selection toolkit"};
  app.set_config("--config", "", "Read options from an INI file (flags override)");
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic graph file");
  gen_cmd->require_subcommand(1);
  auto add_gen_common = [&](CLI::App* c) {
    c->add_option("--n", gen.spec.n, "Node count")->required();
    c->add_option("--w-lo", gen.spec.weight_lo, "Weight range low")->capture_default_str();
    c->add_option("--w-hi", gen.spec.weight_hi, "Weight range high")->capture_default_str();
    c->add_option("--seed", gen.spec.seed, "Generation seed")->capture_default_str();
    c->add_option("--out", gen.out, "Output edge list file")->required();
  };
  auto* gen_er = gen_cmd->add_subcommand("er", "Erdős–Rényi G(n, p)");
  gen_er->add_option("--avg-deg", gen.spec.avg_degree, "Target average degree")->required();
  add_gen_common(gen_er);
  gen_er->callback([&] { gen.kind = "er"; });
  auto* gen_ws = gen_cmd->add_subcommand("ws", "Connected Watts–Strogatz small world");
  gen_ws->add_option("--ring-deg", gen.spec.ring_degree, "Even ring lattice degree")->required();
  gen_ws->add_option("--rewire", gen.spec.rewire_prob, "Rewiring probability")->required();
  gen_ws->add_option("--attempts", gen.spec.max_ws_attempts, "Connectivity retry budget")
      ->capture_default_str();
  add_gen_common(gen_ws);
  gen_ws->callback([&] { gen.kind = "ws"; });

  SelectArgs sel;
  auto* sel_cmd = app.add_subcommand("select", "Run a seed-selection heuristic");
  sel.graph.attach(sel_cmd);
  sel.model.attach(sel_cmd);
  sel.heur.attach(sel_cmd);
  sel_cmd->add_option("--heuristic", sel.heuristic, "deg|eig|grd|dd|sigma|pi")
      ->capture_default_str();
  sel_cmd->add_option("--k", sel.k, "Seed budget")->required();
  sel_cmd->add_option("--seed", sel.seed, "Master seed")->capture_default_str();
  sel_cmd->add_option("--out", sel.out, "Seed set output file (default: stdout)");

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Sensitivity decomposition of a seed set");
  dec.graph.attach(dec_cmd, /*required=*/false);
  dec.model.attach(dec_cmd);
  dec_cmd->add_option("--table-file", dec.table_file,
                      "Read a precomputed table CSV instead of simulating");
  dec_cmd->add_option("--seeds", dec.seeds, "Seed node ids");
  dec_cmd->add_option("--seeds-file", dec.seeds_file, "File with seed ids");
  dec_cmd->add_option("--rounds", dec.rounds, "Simulation rounds per subset")
      ->capture_default_str();
  dec_cmd->add_option("--max-order", dec.max_order, "Highest interaction order to report")
      ->capture_default_str();
  dec_cmd->add_option("--seed", dec.seed, "Master seed")->capture_default_str();
  dec_cmd->add_option("--out-dir", dec.out_dir, "Output directory")->capture_default_str();

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("sim", "Over-select with a base heuristic, then prune");
  sim.graph.attach(sim_cmd);
  sim.model.attach(sim_cmd);
  sim.heur.attach(sim_cmd);
  sim_cmd->add_option("--k", sim.k, "Seed budget")->required();
  sim_cmd->add_option("--a", sim.a, "Over-selection factor (> 1)")->capture_default_str();
  sim_cmd->add_option("--base", sim.base, "Collecting heuristic")->capture_default_str();
  sim_cmd->add_option("--rounds", sim.rounds, "Rounds per subset estimate")
      ->capture_default_str();
  sim_cmd->add_flag("--no-cache", sim.no_cache, "Re-simulate every pruning table");
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare heuristics with and without pruning");
  bench.graph.attach(bench_cmd, /*required=*/false);
  bench.model.attach(bench_cmd);
  bench.heur.attach(bench_cmd);
  bench_cmd->add_option("--gen", bench.gen_kind, "Generate the graph instead: er or ws")
      ->check(CLI::IsMember({"er", "ws"}));
  bench_cmd->add_option("--gen-n", bench.gen_spec.n, "Generated node count");
  bench_cmd->add_option("--gen-avg-deg", bench.gen_spec.avg_degree, "ER average degree");
  bench_cmd->add_option("--gen-ring-deg", bench.gen_spec.ring_degree, "WS ring degree");
  bench_cmd->add_option("--gen-rewire", bench.gen_spec.rewire_prob, "WS rewire probability");
  bench_cmd->add_option("--gen-w-lo", bench.gen_spec.weight_lo, "Generated weight low");
  bench_cmd->add_option("--gen-w-hi", bench.gen_spec.weight_hi, "Generated weight high");
  bench_cmd
      ->add_option("--heuristics", bench.heuristics,
                   "Heuristic labels to benchmark (repeatable or comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--k", bench.k, "Seed budget")->capture_default_str();
  bench_cmd->add_option("--a", bench.a, "Over-selection factor")->capture_default_str();
  bench_cmd->add_option("--r-select", bench.r_select, "Rounds per pruning estimate")
      ->capture_default_str();
  bench_cmd->add_option("--r-eval", bench.r_eval, "Final evaluation rounds")
      ->capture_default_str();
  bench_cmd->add_flag("--no-cache", bench.no_cache, "Re-simulate every pruning table");
  bench_cmd->add_flag("--dump-raw", bench.dump_raw, "Also write per-round cascade sizes");
  bench_cmd->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory")->capture_default_str();

  CaseStudyArgs cs;
  auto* cs_cmd = app.add_subcommand("case-study",
                                    "Per-seed contributions and pairwise interactions");
  cs.graph.attach(cs_cmd);
  cs.model.attach(cs_cmd);
  cs.heur.attach(cs_cmd);
  cs_cmd->add_option("--seeds", cs.seeds, "Seed node ids");
  cs_cmd->add_option("--seeds-file", cs.seeds_file, "File with seed ids");
  cs_cmd->add_option("--heuristic", cs.heuristic, "Derive the seeds with a heuristic instead");
  cs_cmd->add_option("--k", cs.k, "Budget when --heuristic is used")->capture_default_str();
  cs_cmd->add_option("--rounds", cs.rounds, "Rounds per subset estimate")->capture_default_str();
  cs_cmd->add_option("--r-eval", cs.r_eval, "Rounds per marginal-contribution estimate")
      ->capture_default_str();
  cs_cmd->add_option("--seed", cs.seed, "Master seed")->capture_default_str();
  cs_cmd->add_option("--out-dir", cs.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (sel_cmd->parsed()) return run_select(sel);
    if (dec_cmd->parsed()) return run_decompose(dec);
    if (sim_cmd->parsed()) return run_sim(sim);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (cs_cmd->parsed()) return run_case_study(cs);
  } catch (const DegeneracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
