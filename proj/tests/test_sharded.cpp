#include "graphgen/sharded.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "graphgen/metrics.hpp"
#include "graphgen/refgraphs.hpp"

using namespace graphgen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("plan_shards") {
  SUBCASE("remainder spreads over the first communities") {
    const auto plan = plan_shards(10, 3, 0.84);
    CHECK(plan.community_sizes == std::vector<std::size_t>{4, 3, 3});
  }
  SUBCASE("degenerate single community") {
    const auto plan = plan_shards(7, 1, 1.0);
    CHECK(plan.community_sizes == std::vector<std::size_t>{7});
  }
  SUBCASE("invalid fractions error") {
    CHECK_THROWS_AS(plan_shards(10, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(plan_shards(10, 2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(plan_shards(10, 2, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(plan_shards(10, 0, 0.5), std::invalid_argument);
  }
  SUBCASE("intra/inter split arithmetic") {
    // A degree-25 vertex at fraction 0.84 keeps 21 edges inside and 4 out.
    GraphModel m;
    m.cc_bins = 100;
    m.degree_hist[25] = 1;
    m.cc_hist[25].assign(100, 0);
    m.cc_hist[25][0] = 1;
    const auto split = assign_targets_split(m, 50, 0.84, 3);
    for (std::size_t i = 0; i < split.targets.size(); ++i) {
      CHECK(split.full_degree[i] == 25);
      CHECK(split.targets[i].degree == 21);
    }
  }
}

TEST_CASE("single community equals the unsharded generator") {
  const GraphModel m = extract_model(watts_strogatz(600, 8, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 12;
  TempDir dir("graphgen_sharded_eq");
  const Graph plain = generate(m, 900, cfg);
  const Graph sharded = generate_sharded(m, 900, plan_shards(900, 1, 1.0), cfg, dir.path);
  CHECK(plain == sharded);
}

TEST_CASE("intra fraction 1.0 keeps components inside communities") {
  const GraphModel m = extract_model(watts_strogatz(400, 6, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 9;
  TempDir dir("graphgen_sharded_disjoint");
  const auto plan = plan_shards(800, 2, 1.0);
  const Graph g = generate_sharded(m, 800, plan, cfg, dir.path);
  const auto community_of = community_assignment(plan);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (VertexId w : g.neighbors(v)) REQUIRE(community_of[v] == community_of[w]);
  CHECK(intra_edge_fraction(g, community_of) == 1.0);
}

TEST_CASE("measured intra fraction tracks the requested fraction") {
  const GraphModel m = extract_model(watts_strogatz(2000, 10, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 21;
  cfg.threads = 4;
  TempDir dir("graphgen_sharded_frac");
  const auto plan = plan_shards(10000, 4, 0.84);
  const Graph g = generate_sharded(m, 10000, plan, cfg, dir.path);
  const double intra = intra_edge_fraction(g, community_assignment(plan));
  CHECK(intra == doctest::Approx(0.84).epsilon(0.04));
}

TEST_CASE("degree caps hold globally across intra and inter edges") {
  const GraphModel m = extract_model(watts_strogatz(800, 8, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 33;
  TempDir dir("graphgen_sharded_caps");
  const auto plan = plan_shards(3000, 3, 0.7);
  const Graph g = generate_sharded(m, 3000, plan, cfg, dir.path);
  const auto split = assign_targets_split(m, 3000, 0.7, cfg.seed);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    REQUIRE(g.degree(v) <= split.full_degree[v]);
}

TEST_CASE("sharded generation is deterministic") {
  const GraphModel m = extract_model(watts_strogatz(500, 6, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 8;
  TempDir dir_a("graphgen_sharded_det_a");
  TempDir dir_b("graphgen_sharded_det_b");
  const auto plan = plan_shards(2000, 4, 0.84);
  const Graph a = generate_sharded(m, 2000, plan, cfg, dir_a.path);
  cfg.threads = 8;
  const Graph b = generate_sharded(m, 2000, plan, cfg, dir_b.path);
  CHECK(a == b);
}

TEST_CASE("spill directory layout and instrumentation") {
  const GraphModel m = extract_model(watts_strogatz(400, 6, 0.1, 4), 100);
  GenerationConfig cfg;
  cfg.seed = 5;
  TempDir dir("graphgen_sharded_spill");
  const auto plan = plan_shards(1000, 3, 0.9);
  ShardedStats stats;
  const Graph g = generate_sharded(m, 1000, plan, cfg, dir.path, &stats);
  CHECK(g.vertex_count() == 1000);

  for (int k = 0; k < 3; ++k)
    CHECK(fs::exists(dir.path / ("community_" + std::to_string(k) + ".edges")));
  CHECK(fs::exists(dir.path / "stubs.tsv"));
  CHECK(fs::exists(dir.path / "manifest.txt"));

  std::ifstream manifest(dir.path / "manifest.txt");
  std::string first_line;
  std::getline(manifest, first_line);
  CHECK(first_line == "sharded-manifest v1");

  // Stub rows: id community residual target, one per vertex.
  std::ifstream stubs(dir.path / "stubs.tsv");
  std::string line;
  std::getline(stubs, line);  // header comment
  std::size_t rows = 0;
  while (std::getline(stubs, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1000);

  // Memory bound: one community resident at a time, plus the stubs.
  CHECK(stats.stub_count == 1000);
  std::size_t max_size = 0;
  for (auto s : plan.community_sizes) max_size = std::max(max_size, s);
  CHECK(stats.peak_resident_vertices == max_size);
  CHECK(stats.peak_resident_vertices + stats.stub_count <= max_size + 1000);

  // Inter-community edges never duplicate intra-community ones: merging
  // again from the spill must reproduce the same edge count.
  std::size_t spilled_edges = 0;
  for (int k = 0; k < 3; ++k)
    spilled_edges += load_edge_list(dir.path / ("community_" + std::to_string(k) + ".edges"))
                         .edge_count();
  const auto community_of = community_assignment(plan);
  std::size_t inter = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (VertexId w : g.neighbors(v))
      if (w > v && community_of[v] != community_of[w]) ++inter;
  CHECK(spilled_edges + inter == g.edge_count());
}
