#include "graphgen/refgraphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "graphgen/rng.hpp"

namespace graphgen {

namespace {

// Decode a linear index t in [0, n*(n-1)/2) to the unordered pair (u, v),
// u < v, enumerated as (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::pair<VertexId, VertexId> pair_from_index(std::uint64_t t, std::uint64_t n) {
  // Row u starts at offset u*n - u*(u+1)/2.
  auto row_start = [n](std::uint64_t u) { return u * n - u * (u + 1) / 2; };
  const double nd = static_cast<double>(n);
  const double disc = (2.0 * nd - 1.0) * (2.0 * nd - 1.0) - 8.0 * static_cast<double>(t);
  auto u = static_cast<std::uint64_t>((2.0 * nd - 1.0 - std::sqrt(std::max(0.0, disc))) / 2.0);
  if (u >= n - 1) u = n - 2;
  while (u > 0 && row_start(u) > t) --u;
  while (row_start(u + 1) <= t) ++u;
  const std::uint64_t v = u + 1 + (t - row_start(u));
  return {static_cast<VertexId>(u), static_cast<VertexId>(v)};
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");
  Graph g(n);
  if (n < 2 || p == 0.0) return g;
  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p == 1.0) {
    for (VertexId u = 0; u + 1 < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  // Geometric gap sampling: jump directly between successive present pairs.
  auto rng = RngStream::from_parts({seed, kTagErdosRenyi});
  const double log1mp = std::log1p(-p);
  std::uint64_t t = 0;
  while (t < total_pairs) {
    const double u = rng.next_double();
    const double gap = std::floor(std::log1p(-u) / log1mp);
    t += gap >= static_cast<double>(total_pairs) ? total_pairs : static_cast<std::uint64_t>(gap);
    if (t >= total_pairs) break;
    const auto [a, b] = pair_from_index(t, n);
    g.add_edge(a, b);
    ++t;
  }
  return g;
}

Graph watts_strogatz(std::size_t n, std::uint32_t k, double beta, std::uint64_t seed) {
  if (k % 2 != 0) throw std::invalid_argument("watts_strogatz: k must be even");
  if (k >= n) throw std::invalid_argument("watts_strogatz: k must be < n");
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("watts_strogatz: beta must be in [0, 1]");

  // Edge set keyed as (min << 32) | max; the lattice is built first, then
  // each clockwise edge may have its far endpoint redrawn.
  auto key = [](VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  std::unordered_set<std::uint64_t> edges;
  edges.reserve(n * k / 2 * 2);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint32_t j = 1; j <= k / 2; ++j)
      edges.insert(key(static_cast<VertexId>(i), static_cast<VertexId>((i + j) % n)));

  auto rng = RngStream::from_parts({seed, kTagWattsStrogatz});
  if (beta > 0.0) {
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 1; j <= k / 2; ++j) {
        const auto a = static_cast<VertexId>(i);
        const auto b = static_cast<VertexId>((i + j) % n);
        if (rng.next_double() >= beta) continue;
        if (!edges.contains(key(a, b))) continue;  // already rewired away
        bool replaced = false;
        VertexId w = 0;
        // Bounded redraw; a full neighborhood keeps the original edge.
        for (std::uint32_t attempt = 0; attempt < 64; ++attempt) {
          w = static_cast<VertexId>(rng.next_below(n));
          if (w != a && !edges.contains(key(a, w))) {
            replaced = true;
            break;
          }
        }
        if (replaced) {
          edges.erase(key(a, b));
          edges.insert(key(a, w));
        }
      }
    }
  }

  Graph g(n);
  std::vector<std::uint64_t> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t e : sorted)
    g.add_edge(static_cast<VertexId>(e >> 32), static_cast<VertexId>(e & 0xffffffffULL));
  return g;
}

namespace {

// Cross-class stub counts by cumulative rounding, exact in aggregate.
std::vector<Degree> mixed_stub_counts(std::size_t count, Degree degree, double mix) {
  std::vector<Degree> out(count);
  std::uint64_t cum = 0;
  std::int64_t emitted = 0;
  for (std::size_t i = 0; i < count; ++i) {
    cum += degree;
    const auto want = std::llround(static_cast<double>(cum) * mix);
    out[i] = static_cast<Degree>(want - emitted);
    emitted = want;
  }
  return out;
}

}  // namespace

Graph two_class(std::size_t n, Degree d_low, Degree d_high, double mix, std::uint64_t seed,
                double high_fraction) {
  if (mix < 0.0 || mix > 1.0) throw std::invalid_argument("two_class: mix must be in [0, 1]");
  if (high_fraction < 0.0 || high_fraction > 1.0)
    throw std::invalid_argument("two_class: high_fraction must be in [0, 1]");
  const auto n_high = static_cast<std::size_t>(std::llround(static_cast<double>(n) * high_fraction));
  if (d_high >= n || d_low >= n)
    throw std::invalid_argument("two_class: degrees must be < n");

  auto rng = RngStream::from_parts({seed, kTagTwoClass});
  auto shuffle = [&rng](std::vector<VertexId>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[rng.next_below(i)]);
  };

  const auto high_inter = mixed_stub_counts(n_high, d_high, mix);
  const auto low_inter = mixed_stub_counts(n - n_high, d_low, mix);

  std::vector<VertexId> high_intra, high_cross, low_intra, low_cross;
  for (std::size_t i = 0; i < n_high; ++i) {
    const auto v = static_cast<VertexId>(i);
    high_cross.insert(high_cross.end(), high_inter[i], v);
    high_intra.insert(high_intra.end(), d_high - high_inter[i], v);
  }
  for (std::size_t i = n_high; i < n; ++i) {
    const auto v = static_cast<VertexId>(i);
    low_cross.insert(low_cross.end(), low_inter[i - n_high], v);
    low_intra.insert(low_intra.end(), d_low - low_inter[i - n_high], v);
  }

  Graph g(n);
  // Colliding pairs (self edges, already-present edges) go back into the
  // pool and get re-shuffled; after a few rounds only parity leftovers and
  // genuinely unplaceable stubs remain.
  auto pair_within = [&](std::vector<VertexId>& stubs) {
    std::vector<VertexId> carry;
    for (int round = 0; round < 50 && stubs.size() >= 2; ++round) {
      shuffle(stubs);
      carry.clear();
      for (std::size_t t = 0; t + 1 < stubs.size(); t += 2) {
        if (!g.add_edge(stubs[t], stubs[t + 1])) {
          carry.push_back(stubs[t]);
          carry.push_back(stubs[t + 1]);
        }
      }
      if (stubs.size() % 2 == 1) carry.push_back(stubs.back());
      if (carry.size() == stubs.size()) break;  // no progress
      stubs.swap(carry);
    }
  };
  pair_within(high_intra);
  pair_within(low_intra);

  const std::size_t budget = std::min(high_cross.size(), low_cross.size());
  high_cross.resize(budget);
  low_cross.resize(budget);
  for (int round = 0; round < 50 && !high_cross.empty(); ++round) {
    shuffle(high_cross);
    shuffle(low_cross);
    std::vector<VertexId> high_carry, low_carry;
    for (std::size_t t = 0; t < high_cross.size(); ++t) {
      if (!g.add_edge(high_cross[t], low_cross[t])) {
        high_carry.push_back(high_cross[t]);
        low_carry.push_back(low_cross[t]);
      }
    }
    if (high_carry.size() == high_cross.size()) break;
    high_cross.swap(high_carry);
    low_cross.swap(low_carry);
  }
  return g;
}

}  // namespace graphgen
