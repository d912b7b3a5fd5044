#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "graphgen/edgegen.hpp"
#include "graphgen/graph.hpp"
#include "graphgen/model.hpp"

namespace graphgen {

// Partition of the output graph into super-communities generated one at a
// time. intra_fraction is the expected fraction of all edges kept inside
// communities (0.84 is a reasonable preset for social graphs).
struct ShardedPlan {
  std::vector<std::size_t> community_sizes;
  double intra_fraction = 1.0;
};

// What interconnection needs to know about a vertex: far smaller than its
// adjacency, which stays spilled on disk.
struct VertexStub {
  VertexId id = 0;
  std::uint32_t community = 0;
  Degree residual = 0;
  Degree target_degree = 0;
};

struct ShardedStats {
  std::size_t peak_resident_vertices = 0;  // largest community graph held in memory
  std::size_t stub_count = 0;
  GenerationStats interconnect;
};

/// Equal-size partition, remainder spread over the first communities.
ShardedPlan plan_shards(std::size_t n_out, std::uint32_t num_communities, double intra_fraction);

// Generates each community independently against its intra targets (spilling
// the finished edge lists plus a stub table to spill_dir), interconnects the
// stubs with cross-bucket and grouped passes restricted to cross-community
// pairs, then merges spills and interconnect edges into the output graph.
//
// Spill layout: community_<k>.edges (canonical local-id edge lists),
// stubs.tsv ("id community residual target" rows), manifest.txt (versioned).
Graph generate_sharded(const GraphModel& m, std::size_t n_out, const ShardedPlan& plan,
                       const GenerationConfig& cfg, const std::filesystem::path& spill_dir,
                       ShardedStats* stats = nullptr);

/// Fraction of edges whose endpoints share a community.
double intra_edge_fraction(const Graph& g, const std::vector<std::uint32_t>& community_of);

/// Community of each vertex under a plan (contiguous id ranges).
std::vector<std::uint32_t> community_assignment(const ShardedPlan& plan);

}  // namespace graphgen
