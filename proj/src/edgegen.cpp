#include "graphgen/edgegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphgen/parallel.hpp"
#include "graphgen/rng.hpp"

namespace graphgen {

std::size_t GenerationState::n_group() const {
  const std::size_t n = graph.vertex_count();
  const std::uint32_t shift = std::min<std::uint32_t>(iter, 63);
  return std::max<std::size_t>(2, n >> shift);
}

std::size_t GenerationState::satisfied_count() const {
  std::size_t count = 0;
  for (Degree r : residual)
    if (r == 0) ++count;
  return count;
}

std::uint64_t GenerationState::total_residual() const {
  std::uint64_t total = 0;
  for (Degree r : residual) total += r;
  return total;
}

double bucket_edge_probability(const BucketPlan& b, std::span<const VertexTarget> targets) {
  VertexId k = b.members.front();
  for (VertexId id : b.members) {
    if (targets[id].degree < targets[k].degree ||
        (targets[id].degree == targets[k].degree && id < k)) {
      k = id;
    }
  }
  return std::cbrt(targets[k].cc);
}

std::vector<Edge> intra_bucket_edges(const BucketPlan& b, std::span<const VertexTarget> targets,
                                     std::uint64_t seed, std::uint32_t community) {
  std::vector<Edge> edges;
  const std::size_t n = b.members.size();
  if (n < 2) return edges;
  const double p = bucket_edge_probability(b, targets);
  auto rng = RngStream::from_parts({seed, kTagIntraBucket, community, b.bucket_id});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.next_double() < p) edges.push_back({b.members[i], b.members[j]});
    }
  }
  return edges;
}

namespace {

constexpr VertexId kNoCandidate = std::numeric_limits<VertexId>::max();

void check_state(const GenerationState& state) {
  if (state.residual.size() != state.graph.vertex_count() ||
      state.targets.size() != state.graph.vertex_count())
    throw std::logic_error("generation state arrays out of sync");
}

// Phase-boundary invariant: residual mirrors the target gap and no vertex
// is past its target.
void check_residuals(const GenerationState& state) {
  for (std::size_t i = 0; i < state.residual.size(); ++i) {
    const Degree d = state.graph.degree(static_cast<VertexId>(i));
    if (d > state.targets[i].degree || state.residual[i] != state.targets[i].degree - d)
      throw std::logic_error("residual bookkeeping violated the degree cap");
  }
}

bool cross_community_only(const GenerationState& state) { return !state.community_of.empty(); }

}  // namespace

void cross_bucket_pass(GenerationState& state, std::uint64_t seed, std::size_t threads) {
  check_state(state);
  const std::size_t n = state.graph.vertex_count();
  if (n == 0) return;
  const std::uint32_t pass = state.cross_passes_done++;

  std::vector<VertexId> pool;
  if (state.cross_sample_unsatisfied_only) {
    for (std::size_t i = 0; i < n; ++i)
      if (state.residual[i] > 0) pool.push_back(static_cast<VertexId>(i));
    if (pool.empty()) return;
  }

  // Candidate draws are independent of pass order, so they run in parallel;
  // acceptance depends on running residuals and is applied in id order.
  std::vector<VertexId> candidate(n, kNoCandidate);
  parallel_blocks(n, 16384, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      if (state.residual[i] == 0) continue;
      auto rng = RngStream::from_parts({seed, kTagCrossPass, state.community_id, pass, i});
      candidate[i] = pool.empty() ? static_cast<VertexId>(rng.next_below(n))
                                  : pool[rng.next_below(pool.size())];
    }
  });

  const bool inter_only = cross_community_only(state);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId j = candidate[i];
    if (j == kNoCandidate) continue;
    const auto vi = static_cast<VertexId>(i);
    if (state.residual[vi] == 0) continue;  // may have been satisfied earlier in the pass
    if (j == vi || state.residual[j] == 0) continue;
    if (inter_only && state.community_of[vi] == state.community_of[j]) continue;
    if (!state.graph.add_edge(vi, j)) continue;
    --state.residual[vi];
    --state.residual[j];
  }
}

void high_degree_pass(GenerationState& state, std::uint64_t seed, std::size_t threads) {
  check_state(state);
  if (state.iter < 1) throw std::logic_error("high_degree_pass requires iter >= 1");
  const std::size_t n = state.graph.vertex_count();

  std::vector<VertexId> unsatisfied;
  for (std::size_t i = 0; i < n; ++i)
    if (state.residual[i] > 0) unsatisfied.push_back(static_cast<VertexId>(i));
  if (unsatisfied.size() < 2) return;

  {
    auto rng = RngStream::from_parts({seed, kTagGroupShuffle, state.community_id, state.iter});
    for (std::size_t i = unsatisfied.size() - 1; i > 0; --i)
      std::swap(unsatisfied[i], unsatisfied[rng.next_below(i + 1)]);
  }

  const std::size_t group_size = state.n_group();
  const std::size_t num_groups = (unsatisfied.size() + group_size - 1) / group_size;
  const bool inter_only = cross_community_only(state);

  // Groups own disjoint vertex sets, so each group mutates its own adjacency
  // rows and residuals; running groups in parallel is race-free and
  // schedule-independent.
  parallel_blocks(num_groups, 1, threads, [&](std::size_t g, std::size_t, std::size_t) {
    const std::size_t lo = g * group_size;
    const std::size_t hi = std::min(unsatisfied.size(), lo + group_size);
    const auto m = static_cast<std::uint32_t>(hi - lo);
    if (m < 2) return;
    const VertexId* member = unsatisfied.data() + lo;
    auto rng = RngStream::from_parts({seed, kTagGroupPairs, state.community_id, state.iter, g});

    // Jump list over member positions: saturated members are spliced out so
    // the pair scan only visits live positions.
    std::vector<std::uint32_t> next(m + 1);
    std::vector<char> active(m, 1);
    for (std::uint32_t i = 0; i <= m; ++i) next[i] = i + 1;
    std::uint32_t active_count = m;
    auto skip_to_active = [&](std::uint32_t pos) {
      std::uint32_t root = pos;
      while (root < m && !active[root]) root = next[root];
      while (pos < m && !active[pos]) {
        const std::uint32_t t = next[pos];
        next[pos] = root;
        pos = t;
      }
      return root;
    };
    auto deactivate = [&](std::uint32_t pos) {
      active[pos] = 0;
      --active_count;
    };

    // Every unordered pair is visited at most once, scheduled as a
    // round-robin tournament (circle method): each round is a perfect
    // matching, so a vertex gains at most one edge per round and its
    // partners end up spread across the whole group. Consecutive-position
    // scans would instead hand a vertex its entire residual among adjacent
    // positions, wiring local near-cliques (spurious triangles) and letting
    // early positions starve the rest of the group.
    const std::uint32_t slots = m % 2 == 0 ? m : m + 1;  // odd m gets a bye slot
    const std::uint32_t wheel = slots - 1;
    for (std::uint32_t round = 0; round < wheel && active_count >= 2; ++round) {
      for (std::uint32_t a = skip_to_active(0); a < m; a = skip_to_active(a + 1)) {
        // Fixed slot wheel - ... - 0: slot wheel pairs with the round index,
        // everyone else with (2*round - position) mod wheel.
        std::uint32_t b;
        if (a == wheel) {
          b = round;
        } else if (a == round) {
          b = wheel;
        } else {
          b = (2 * round + wheel - a % wheel) % wheel;
        }
        if (b <= a || b >= m || !active[b]) continue;
        const VertexId va = member[a];
        const VertexId vb = member[b];
        if (inter_only && state.community_of[va] == state.community_of[vb]) continue;
        if (state.graph.has_edge(va, vb)) continue;
        const auto da = static_cast<double>(state.targets[va].degree);
        const auto db = static_cast<double>(state.targets[vb].degree);
        const double p = std::abs(da - db) / (da + db);
        // Draw from (0,1]: equal degrees (p == 0) can never be rejected.
        if (rng.next_open_closed() > p) {
          state.graph.add_edge(va, vb);
          if (--state.residual[va] == 0) deactivate(a);
          if (--state.residual[vb] == 0) deactivate(b);
        }
      }
    }
  });
}

Graph generate_from_targets(std::vector<VertexTarget> targets, const GenerationConfig& cfg,
                            std::uint32_t community, GenerationStats* stats) {
  const std::size_t n = targets.size();
  if (n == 0) throw std::invalid_argument("generate: need at least one target");

  auto buckets = merge_incomplete_buckets(group_into_buckets(targets), targets);

  GenerationState state;
  state.graph = Graph(n);
  state.community_id = community;

  std::vector<std::vector<Edge>> bucket_edges(buckets.size());
  parallel_blocks(buckets.size(), 16, cfg.threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      buckets[b].edge_prob = bucket_edge_probability(buckets[b], targets);
      bucket_edges[b] = intra_bucket_edges(buckets[b], targets, cfg.seed, community);
    }
  });
  for (const auto& edges : bucket_edges)
    for (const Edge& e : edges) state.graph.add_edge(e.u, e.v);

  state.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Degree d = state.graph.degree(static_cast<VertexId>(i));
    if (d > targets[i].degree)
      throw std::logic_error("bucket wiring exceeded a target degree");
    state.residual[i] = targets[i].degree - d;
  }
  state.targets = std::move(targets);

  state.cross_sample_unsatisfied_only = cfg.cross_sample_unsatisfied_only;
  check_residuals(state);

  const auto stop_threshold = static_cast<std::size_t>(
      std::ceil(cfg.satisfied_fraction_stop * static_cast<double>(n)));
  std::uint32_t iterations = 0;
  for (std::uint32_t iter = 1; iter <= cfg.max_iters; ++iter) {
    if (state.satisfied_count() >= stop_threshold) break;
    state.iter = iter;
    for (std::uint32_t c = 0; c < cfg.cross_passes_per_iter; ++c) {
      cross_bucket_pass(state, cfg.seed, cfg.threads);
      check_residuals(state);
    }
    high_degree_pass(state, cfg.seed, cfg.threads);
    check_residuals(state);
    iterations = iter;
  }

  if (stats) {
    stats->iterations = iterations;
    const std::size_t sat = state.satisfied_count();
    stats->satisfied_fraction = static_cast<double>(sat) / static_cast<double>(n);
    stats->total_residual = state.total_residual();
    stats->unsatisfied = n - sat;
  }
  return std::move(state.graph);
}

Graph generate(const GraphModel& m, std::size_t n_out, const GenerationConfig& cfg,
               GenerationStats* stats) {
  auto assignment = assign_targets_split(m, n_out, 1.0, cfg.seed, cfg.threads);
  Graph g = generate_from_targets(std::move(assignment.targets), cfg, 0, stats);
  if (stats) stats->clamped_targets = assignment.clamped;
  return g;
}

}  // namespace graphgen
