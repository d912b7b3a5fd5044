// Command-line surface for the generator pipeline: extract a model from a
// source graph, generate synthetic graphs (optionally sharded into
// super-communities), validate metrics, compare graphs, and produce
// reference fixtures.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 internal
// invariant violation.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphgen/edgegen.hpp"
#include "graphgen/graph.hpp"
#include "graphgen/metrics.hpp"
#include "graphgen/model.hpp"
#include "graphgen/parallel.hpp"
#include "graphgen/refgraphs.hpp"
#include "graphgen/sharded.hpp"

namespace fs = std::filesystem;
using namespace graphgen;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::uint64_t seed = 1;
  std::size_t threads = default_thread_count();
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--seed", flags->seed, "Random seed; all randomness derives from it");
  cmd->add_option("--threads", flags->threads, "Worker threads (results identical for any count)")
      ->check(CLI::PositiveNumber);
}

int cmd_extract(const std::string& source, std::uint32_t cc_bins, const std::string& out_path,
                const CommonFlags& flags) {
  const Graph g = load_edge_list(source);
  const GraphModel m = extract_model(g, cc_bins, flags.threads);
  save_model(m, out_path);
  Degree max_degree = 0;
  for (const auto& [d, c] : m.degree_hist) max_degree = std::max(max_degree, d);
  std::printf("vertices %llu edges %llu max_degree %u\n",
              static_cast<unsigned long long>(m.source_vertex_count),
              static_cast<unsigned long long>(m.source_edge_count), max_degree);
  return 0;
}

int cmd_generate(const std::string& model_path, const std::string& source_path,
                 std::size_t vertices, std::uint32_t communities, double intra_fraction,
                 std::uint32_t max_iters, const std::string& out_path,
                 const std::string& spill_dir_opt, bool keep_spill, const CommonFlags& flags) {
  GraphModel m;
  if (!model_path.empty()) {
    m = load_model(model_path);
  } else {
    m = extract_model(load_edge_list(source_path), 100, flags.threads);
  }

  GenerationConfig cfg;
  cfg.seed = flags.seed;
  cfg.threads = flags.threads;
  cfg.max_iters = max_iters;

  Graph g;
  GenerationStats stats;
  if (communities <= 1 && intra_fraction == 1.0) {
    g = generate(m, vertices, cfg, &stats);
  } else {
    const ShardedPlan plan = plan_shards(vertices, communities, intra_fraction);
    const fs::path spill =
        spill_dir_opt.empty() ? fs::path(out_path + ".spill") : fs::path(spill_dir_opt);
    ShardedStats sstats;
    g = generate_sharded(m, vertices, plan, cfg, spill, &sstats);
    stats = sstats.interconnect;
    const double intra = intra_edge_fraction(g, community_assignment(plan));
    std::printf("intra_fraction_measured %.4f\n", intra);
    if (!keep_spill) fs::remove_all(spill);
  }
  save_edge_list(g, out_path);
  std::printf("vertices %zu edges %zu unsatisfied %zu total_residual %llu\n", g.vertex_count(),
              g.edge_count(), stats.unsatisfied,
              static_cast<unsigned long long>(stats.total_residual));
  return 0;
}

int cmd_validate(const std::string& graph_path, const CommonFlags& flags) {
  const Graph g = load_edge_list(graph_path);
  const MetricsReport r = compute_metrics(g, 100, flags.threads);
  std::cout << "graph " << graph_path << ": vertices " << g.vertex_count() << " edges "
            << g.edge_count() << "\n\n";
  write_metrics(std::cout, r);
  return 0;
}

int cmd_compare(const std::string& source_path, const std::string& generated_path,
                const std::vector<Degree>& probes, const CommonFlags& flags) {
  const Graph source = load_edge_list(source_path);
  const Graph generated = load_edge_list(generated_path);
  const ComparisonReport r = compare(source, generated, probes, flags.threads);
  write_comparison(std::cout, r);
  return 0;
}

int cmd_refgraph(const std::string& kind, std::size_t n, double p, std::uint32_t k, double beta,
                 Degree d_low, Degree d_high, double mix, double high_fraction,
                 const std::string& out_path, const CommonFlags& flags) {
  Graph g;
  if (kind == "erdos-renyi") {
    g = erdos_renyi(n, p, flags.seed);
  } else if (kind == "watts-strogatz") {
    g = watts_strogatz(n, k, beta, flags.seed);
  } else if (kind == "two-class") {
    g = two_class(n, d_low, d_high, mix, flags.seed, high_fraction);
  } else {
    throw UsageError("unknown refgraph kind '" + kind + "'");
  }
  save_edge_list(g, out_path);
  std::printf("vertices %zu edges %zu\n", g.vertex_count(), g.edge_count());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic graph generator matching degree, clustering, and joint-degree structure"};
  app.require_subcommand(1);

  CommonFlags flags;

  // extract
  auto* extract = app.add_subcommand("extract", "Measure a source graph into a model file");
  std::string ex_source, ex_out;
  std::uint32_t ex_bins = 100;
  extract->add_option("--source-graph", ex_source, "Source edge-list file")->required();
  extract->add_option("--cc-bins", ex_bins, "Clustering-coefficient bins over [0,1]")
      ->check(CLI::PositiveNumber);
  extract->add_option("--out", ex_out, "Output model file")->required();
  add_common(extract, &flags);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic graph from a model or source");
  std::string g_model, g_source, g_out, g_spill;
  std::size_t g_vertices = 0;
  std::uint32_t g_comms = 1, g_iters = 20;
  double g_intra = 1.0;
  bool g_keep_spill = false;
  auto* opt_model = gen->add_option("--model", g_model, "Model file");
  auto* opt_source = gen->add_option("--source-graph", g_source, "Source edge-list file");
  opt_model->excludes(opt_source);
  gen->add_option("--vertices", g_vertices, "Output vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--communities", g_comms, "Super-communities generated one at a time")
      ->check(CLI::PositiveNumber);
  gen->add_option("--intra-fraction", g_intra, "Expected fraction of edges inside communities");
  gen->add_option("--max-iters", g_iters, "Interconnection iterations")->check(CLI::PositiveNumber);
  gen->add_option("--spill-dir", g_spill, "Spill directory for sharded mode");
  gen->add_flag("--keep-spill", g_keep_spill, "Keep the spill directory after merging");
  gen->add_option("--out", g_out, "Output edge-list file")->required();
  add_common(gen, &flags);

  // validate
  auto* val = app.add_subcommand("validate", "Print the metrics report for a graph");
  std::string v_graph;
  val->add_option("--graph", v_graph, "Edge-list file")->required();
  val->footer(
      "Emits tab-separated tables:\n"
      "  [degree_distribution]  degree, count\n"
      "  [avg_cc_by_degree]     degree, mean_cc\n"
      "  [cc_histogram]         bin, count (local cc binned over [0,1])\n"
      "  [components]           count and giant size\n"
      "  [kcore_shells]         shell, count\n"
      "  [pagerank]             sum, min, max");
  add_common(val, &flags);

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare a generated graph against its source");
  std::string c_source, c_generated;
  std::vector<Degree> c_probes = {5, 32, 500};
  cmp->add_option("--source", c_source, "Source edge-list file")->required();
  cmp->add_option("--generated", c_generated, "Generated edge-list file")->required();
  cmp->add_option("--probe-degrees", c_probes, "Joint-degree probe degrees")->delimiter(',');
  cmp->footer(
      "Emits tab-separated tables:\n"
      "  [summary]       metric, value (degree_kl, cc_mae, cc_mass_coverage)\n"
      "  [joint_degree]  degree, status (both|source_only|generated_only|absent), kl\n"
      "  [components]    side, count, giant, giant_fraction\n"
      "  [kcore_shells]  side, shell, count");
  add_common(cmp, &flags);

  // refgraph
  auto* ref = app.add_subcommand("refgraph", "Generate a reference fixture graph");
  std::string r_kind, r_out;
  std::size_t r_n = 0;
  double r_p = 0.0, r_beta = 0.0, r_mix = 0.0, r_high_fraction = 0.01;
  std::uint32_t r_k = 0;
  Degree r_dlow = 0, r_dhigh = 0;
  ref->add_option("--kind", r_kind, "erdos-renyi | watts-strogatz | two-class")->required();
  ref->add_option("--n", r_n, "Vertex count")->required()->check(CLI::PositiveNumber);
  ref->add_option("--p", r_p, "Edge probability (erdos-renyi)");
  ref->add_option("--k", r_k, "Lattice neighbors (watts-strogatz)");
  ref->add_option("--beta", r_beta, "Rewiring probability (watts-strogatz)");
  ref->add_option("--d-low", r_dlow, "Low-class degree (two-class)");
  ref->add_option("--d-high", r_dhigh, "High-class degree (two-class)");
  ref->add_option("--mix", r_mix, "Cross-class stub fraction (two-class)");
  ref->add_option("--high-fraction", r_high_fraction, "High-class vertex fraction (two-class)");
  ref->add_option("--out", r_out, "Output edge-list file")->required();
  add_common(ref, &flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (extract->parsed()) return cmd_extract(ex_source, ex_bins, ex_out, flags);
    if (gen->parsed()) {
      if (g_model.empty() == g_source.empty())
        throw UsageError("exactly one of --model or --source-graph is required");
      return cmd_generate(g_model, g_source, g_vertices, g_comms, g_intra, g_iters, g_out,
                          g_spill, g_keep_spill, flags);
    }
    if (val->parsed()) return cmd_validate(v_graph, flags);
    if (cmp->parsed()) return cmd_compare(c_source, c_generated, c_probes, flags);
    if (ref->parsed())
      return cmd_refgraph(r_kind, r_n, r_p, r_k, r_beta, r_dlow, r_dhigh, r_mix, r_high_fraction,
                          r_out, flags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
