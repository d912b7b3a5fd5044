#include "graphgen/sharded.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace graphgen {

ShardedPlan plan_shards(std::size_t n_out, std::uint32_t num_communities, double intra_fraction) {
  if (num_communities < 1) throw std::invalid_argument("plan_shards: need >= 1 community");
  if (!(intra_fraction > 0.0 && intra_fraction <= 1.0))
    throw std::invalid_argument("plan_shards: intra fraction must be in (0, 1]");
  ShardedPlan plan;
  plan.intra_fraction = intra_fraction;
  const std::size_t base = n_out / num_communities;
  const std::size_t rem = n_out % num_communities;
  plan.community_sizes.resize(num_communities);
  for (std::uint32_t k = 0; k < num_communities; ++k)
    plan.community_sizes[k] = base + (k < rem ? 1 : 0);
  return plan;
}

std::vector<std::uint32_t> community_assignment(const ShardedPlan& plan) {
  std::vector<std::uint32_t> community_of;
  for (std::uint32_t k = 0; k < plan.community_sizes.size(); ++k)
    community_of.insert(community_of.end(), plan.community_sizes[k], k);
  return community_of;
}

double intra_edge_fraction(const Graph& g, const std::vector<std::uint32_t>& community_of) {
  std::uint64_t intra = 0;
  std::uint64_t total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId w : g.neighbors(v)) {
      if (w <= v) continue;
      ++total;
      if (community_of[v] == community_of[w]) ++intra;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(intra) / static_cast<double>(total);
}

namespace {

namespace fs = std::filesystem;

fs::path community_file(const fs::path& dir, std::uint32_t k) {
  return dir / ("community_" + std::to_string(k) + ".edges");
}

void write_stub_table(const fs::path& path, const std::vector<VertexStub>& stubs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "# id community residual target\n";
  for (const auto& s : stubs)
    out << s.id << '\t' << s.community << '\t' << s.residual << '\t' << s.target_degree << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_manifest(const fs::path& path, std::size_t n_out, const ShardedPlan& plan,
                    const GenerationConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "sharded-manifest v1\n";
  out << "seed " << cfg.seed << '\n';
  out << "vertices " << n_out << '\n';
  out << "communities " << plan.community_sizes.size() << '\n';
  char frac[64];
  std::snprintf(frac, sizeof frac, "%.17g", plan.intra_fraction);
  out << "intra_fraction " << frac << '\n';
  std::size_t offset = 0;
  for (std::uint32_t k = 0; k < plan.community_sizes.size(); ++k) {
    out << "community " << k << " size " << plan.community_sizes[k] << " offset " << offset
        << '\n';
    offset += plan.community_sizes[k];
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

Graph generate_sharded(const GraphModel& m, std::size_t n_out, const ShardedPlan& plan,
                       const GenerationConfig& cfg, const std::filesystem::path& spill_dir,
                       ShardedStats* stats) {
  const auto num_communities = static_cast<std::uint32_t>(plan.community_sizes.size());
  if (num_communities == 0) throw std::invalid_argument("generate_sharded: empty plan");
  if (std::accumulate(plan.community_sizes.begin(), plan.community_sizes.end(), std::size_t{0}) !=
      n_out)
    throw std::invalid_argument("generate_sharded: community sizes do not sum to n_out");

  fs::create_directories(spill_dir);

  auto assignment = assign_targets_split(m, n_out, plan.intra_fraction, cfg.seed, cfg.threads);
  ShardedStats local_stats;
  local_stats.stub_count = n_out;

  // Phase one: one community resident at a time; its adjacency is spilled
  // and released before the next community starts.
  std::vector<VertexStub> stubs(n_out);
  std::size_t offset = 0;
  for (std::uint32_t k = 0; k < num_communities; ++k) {
    const std::size_t size = plan.community_sizes[k];
    if (size == 0) {
      save_edge_list(Graph(0), community_file(spill_dir, k));
      continue;
    }
    std::vector<VertexTarget> local(size);
    for (std::size_t i = 0; i < size; ++i) {
      local[i] = assignment.targets[offset + i];
      local[i].id = static_cast<VertexId>(i);
    }
    Graph cg = generate_from_targets(std::move(local), cfg, k);
    local_stats.peak_resident_vertices =
        std::max(local_stats.peak_resident_vertices, cg.vertex_count());
    save_edge_list(cg, community_file(spill_dir, k));
    for (std::size_t i = 0; i < size; ++i) {
      const auto gid = static_cast<VertexId>(offset + i);
      // The stub carries the planned inter-community share, so an
      // intra_fraction of 1.0 guarantees no edge ever spans communities.
      stubs[gid] = VertexStub{gid, k,
                              assignment.full_degree[gid] - assignment.targets[gid].degree,
                              assignment.full_degree[gid]};
    }
    offset += size;
  }
  write_stub_table(spill_dir / "stubs.tsv", stubs);
  write_manifest(spill_dir / "manifest.txt", n_out, plan, cfg);

  // Phase two: interconnection sees stubs only. Its graph starts empty and
  // accumulates exclusively cross-community edges, so nothing here can
  // duplicate a spilled intra-community edge.
  GenerationState inter;
  inter.graph = Graph(n_out);
  inter.community_id = num_communities;
  inter.community_of = community_assignment(plan);
  inter.targets.resize(n_out);
  inter.residual.resize(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    inter.targets[i] = VertexTarget{static_cast<VertexId>(i), stubs[i].target_degree, 0.0, 0.0};
    inter.residual[i] = stubs[i].residual;
  }

  const auto stop_threshold = static_cast<std::size_t>(
      std::ceil(cfg.satisfied_fraction_stop * static_cast<double>(n_out)));
  std::uint32_t iterations = 0;
  for (std::uint32_t iter = 1; iter <= cfg.max_iters; ++iter) {
    if (inter.satisfied_count() >= stop_threshold) break;
    inter.iter = iter;
    for (std::uint32_t c = 0; c < cfg.cross_passes_per_iter; ++c)
      cross_bucket_pass(inter, cfg.seed, cfg.threads);
    high_degree_pass(inter, cfg.seed, cfg.threads);
    iterations = iter;
  }
  local_stats.interconnect.iterations = iterations;
  local_stats.interconnect.clamped_targets = assignment.clamped;
  for (std::size_t i = 0; i < n_out; ++i) {
    if (inter.graph.degree(static_cast<VertexId>(i)) + inter.residual[i] != stubs[i].residual)
      throw std::logic_error("interconnection exceeded a vertex's inter-community share");
  }

  // Merge: stream each spilled community back with its id offset, then add
  // the interconnect edges.
  Graph out(n_out);
  offset = 0;
  for (std::uint32_t k = 0; k < num_communities; ++k) {
    const Graph cg = load_edge_list(community_file(spill_dir, k));
    for (VertexId v = 0; v < cg.vertex_count(); ++v) {
      for (VertexId w : cg.neighbors(v)) {
        if (w > v)
          out.add_edge(static_cast<VertexId>(offset + v), static_cast<VertexId>(offset + w));
      }
    }
    offset += plan.community_sizes[k];
  }
  for (VertexId v = 0; v < inter.graph.vertex_count(); ++v) {
    for (VertexId w : inter.graph.neighbors(v)) {
      if (w > v) out.add_edge(v, w);
    }
  }

  // Final satisfaction summary against the full targets.
  std::size_t satisfied = 0;
  std::uint64_t total_residual = 0;
  for (std::size_t i = 0; i < n_out; ++i) {
    const Degree d = out.degree(static_cast<VertexId>(i));
    if (d == assignment.full_degree[i]) ++satisfied;
    total_residual += assignment.full_degree[i] - d;
  }
  local_stats.interconnect.satisfied_fraction =
      static_cast<double>(satisfied) / static_cast<double>(n_out);
  local_stats.interconnect.unsatisfied = n_out - satisfied;
  local_stats.interconnect.total_residual = total_residual;

  if (stats) *stats = local_stats;
  return out;
}

}  // namespace graphgen
