#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "graphgen/model.hpp"

namespace graphgen {

// A group of output vertices that need the same triangle count, wired
// internally as an Erdos-Renyi subgraph. n_max = min member degree + 1 caps
// the size so no member can exceed its target degree; n_min is the smallest
// size that can still host the required triangles.
struct BucketPlan {
  std::uint32_t bucket_id = 0;
  std::vector<VertexId> members;
  std::int64_t ce_key = 0;
  std::uint32_t n_min = 0;
  std::uint32_t n_max = 0;
  double edge_prob = 0.0;  // filled by the edge-generation stage
  bool full = false;
  bool residual_tail = false;  // kept despite being undersized after merging
};

/// Grouping key: ce rounds to the nearest integer, i.e. vertices are grouped
/// by the (twice-)triangle count they imply.
std::int64_t quantize_ce(double ce);

// Both planning passes require targets to be indexed by vertex id
// (targets[i].id == i) and process vertices in ascending id order, which
// makes the plans deterministic.

// Greedy single-pass grouping. Vertices are taken in order; each ce key has
// one open bucket that accepts members until admitting the next would break
// the size cap, at which point it is retired and a fresh bucket opens.
// Vertices with ce == 0 stay bucketless (they are wired by the cross-bucket
// passes only).
std::vector<BucketPlan> group_into_buckets(std::span<const VertexTarget> targets);

// Undersized buckets (size < n_min) are removed, sorted by ce key, and
// concatenated greedily into new buckets that respect the size cap.
// Adequately sized buckets pass through unchanged. A merged bucket that
// still cannot reach its n_min is kept and flagged as a residual tail.
std::vector<BucketPlan> merge_incomplete_buckets(std::vector<BucketPlan> buckets,
                                                 std::span<const VertexTarget> targets);

}  // namespace graphgen
