#pragma once

#include <cstdint>

#include "graphgen/graph.hpp"

namespace graphgen {

/// G(n, p): every unordered pair present independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Ring lattice with k neighbors per vertex (k even, k < n); each clockwise
/// edge endpoint is rewired with probability beta, avoiding self-loops and
/// duplicates.
Graph watts_strogatz(std::size_t n, std::uint32_t k, double beta, std::uint64_t seed);

// Configuration-model-style fixture with two degree classes. The first
// round(n * high_fraction) vertices get degree d_high, the rest d_low. Each
// vertex dedicates a mix share of its stubs to cross-class pairing; mix == 0
// yields no inter-class edges. Stub pairing drops the occasional invalid
// pair, so a few vertices land slightly under their nominal degree.
Graph two_class(std::size_t n, Degree d_low, Degree d_high, double mix, std::uint64_t seed,
                double high_fraction = 0.01);

}  // namespace graphgen
