#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphgen/bucketing.hpp"
#include "graphgen/graph.hpp"
#include "graphgen/model.hpp"

namespace graphgen {

struct GenerationConfig {
  std::uint64_t seed = 1;
  std::uint32_t max_iters = 20;
  double satisfied_fraction_stop = 0.999;
  std::uint32_t cross_passes_per_iter = 1;
  // Draw cross-pass candidates from the unsatisfied vertices instead of the
  // whole graph. Fewer wasted attempts, but a different (still
  // deterministic) random-stream mode.
  bool cross_sample_unsatisfied_only = false;
  std::size_t threads = 1;
};

// Mutable state threaded through the interconnection passes. residual[i]
// is the number of edges vertex i still needs; it never goes negative, so
// no vertex ever exceeds its target degree.
struct GenerationState {
  Graph graph;
  std::vector<VertexTarget> targets;
  std::vector<Degree> residual;
  std::uint32_t iter = 0;               // current interconnection iteration, 1-based
  std::uint32_t cross_passes_done = 0;  // distinguishes random streams across passes
  std::uint32_t community_id = 0;       // random-stream namespace
  bool cross_sample_unsatisfied_only = false;

  // When non-empty, edges are only accepted between differing communities
  // (the sharded interconnection stage runs over lightweight stubs and must
  // never touch intra-community adjacency).
  std::vector<std::uint32_t> community_of;

  std::size_t n_group() const;  // max(2, N / 2^iter)
  std::size_t satisfied_count() const;
  std::uint64_t total_residual() const;
};

struct GenerationStats {
  std::uint32_t iterations = 0;
  double satisfied_fraction = 0.0;
  std::uint64_t total_residual = 0;
  std::size_t unsatisfied = 0;
  std::size_t clamped_targets = 0;
};

/// Erdos-Renyi probability for a bucket: cbrt(cc) of the member with the
/// minimum target degree (ties toward the lowest id).
double bucket_edge_probability(const BucketPlan& b, std::span<const VertexTarget> targets);

/// Independently emits each unordered member pair with the bucket's edge
/// probability. Deterministic per (seed, community, bucket_id).
std::vector<Edge> intra_bucket_edges(const BucketPlan& b, std::span<const VertexTarget> targets,
                                     std::uint64_t seed, std::uint32_t community = 0);

// One pass over all vertices: every vertex still short of its target picks
// one uniformly random candidate; the edge is added when the candidate is
// distinct, also short, and not already adjacent. Candidate draws use one
// substream per vertex, so the pass is thread-count invariant.
void cross_bucket_pass(GenerationState& state, std::uint64_t seed, std::size_t threads = 1);

// Shuffles the still-unsatisfied vertices into groups of size N / 2^iter
// (at least 2) and tries every in-group pair, accepting with probability
// 1 - |d_i - d_j| / (d_i + d_j) so similar degrees attract. Residuals are
// re-checked before every insertion; groups are disjoint, so the pass runs
// group-parallel with identical results.
void high_degree_pass(GenerationState& state, std::uint64_t seed, std::size_t threads = 1);

/// Full pipeline from per-vertex targets: bucket, wire buckets, then
/// alternate cross-bucket and grouped passes until the stop fraction or
/// max_iters is reached.
Graph generate_from_targets(std::vector<VertexTarget> targets, const GenerationConfig& cfg,
                            std::uint32_t community = 0, GenerationStats* stats = nullptr);

/// Sample targets from a model and generate a graph of n_out vertices.
Graph generate(const GraphModel& m, std::size_t n_out, const GenerationConfig& cfg,
               GenerationStats* stats = nullptr);

}  // namespace graphgen
