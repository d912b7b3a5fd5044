#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "graphgen/graph.hpp"

namespace graphgen {

// Empirical structure model of a source graph: the degree histogram plus,
// for every degree >= 2, a fixed-bin histogram over [0,1] of the local
// clustering coefficients observed among vertices of that degree.
struct GraphModel {
  std::uint32_t cc_bins = 100;
  std::map<Degree, std::uint64_t> degree_hist;
  std::map<Degree, std::vector<std::uint64_t>> cc_hist;  // per degree, cc_bins counters
  std::uint64_t source_vertex_count = 0;
  std::uint64_t source_edge_count = 0;

  bool operator==(const GraphModel&) const = default;
};

// Per-output-vertex generation target. ce = cc * degree * (degree - 1) is
// twice the triangle count the vertex should end up with; vertices needing
// the same triangle count are wired together.
struct VertexTarget {
  VertexId id = 0;
  Degree degree = 0;
  double cc = 0.0;
  double ce = 0.0;
};

/// Number of edges among the neighbors of v (triangles through v).
std::uint64_t triangles_through(const Graph& g, VertexId v);

/// Local clustering coefficient 2*T(v) / (d(d-1)); 0 when degree < 2.
double local_cc(const Graph& g, VertexId v);

GraphModel extract_model(const Graph& g, std::uint32_t cc_bins = 100, std::size_t threads = 1);

// Targets drawn i.i.d. from the model with one deterministic substream per
// output vertex; the result is identical for any thread count.
std::vector<VertexTarget> assign_targets(const GraphModel& m, std::size_t n_out,
                                         std::uint64_t seed, std::size_t threads = 1);

// Same sampling with each drawn degree split into an intra-community target
// (deterministic cumulative rounding of degree * intra_fraction, exact in
// aggregate) and the remainder. The target's cc is drawn conditioned on the
// intra degree. With intra_fraction == 1 this is assign_targets exactly,
// including random-stream consumption.
struct TargetAssignment {
  std::vector<VertexTarget> targets;  // degree field = intra degree
  std::vector<Degree> full_degree;
  std::size_t clamped = 0;  // targets clamped to n_out - 1
};
TargetAssignment assign_targets_split(const GraphModel& m, std::size_t n_out,
                                      double intra_fraction, std::uint64_t seed,
                                      std::size_t threads = 1);

// Versioned text serialization; round-trips identically.
void save_model(const GraphModel& m, const std::filesystem::path& path);
GraphModel load_model(const std::filesystem::path& path);
void write_model(std::ostream& out, const GraphModel& m);
GraphModel read_model(std::istream& in, const std::string& source_name);

}  // namespace graphgen
