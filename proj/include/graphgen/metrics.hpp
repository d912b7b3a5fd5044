#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "graphgen/graph.hpp"
#include "graphgen/model.hpp"

namespace graphgen {

using Histogram = std::map<std::int64_t, double>;

std::map<Degree, std::uint64_t> degree_distribution(const Graph& g);

/// Mean local clustering coefficient per degree; degrees below 2 excluded.
std::map<Degree, double> avg_cc_by_degree(const Graph& g, std::size_t threads = 1);

/// For vertices of degree d, each neighbor contributes its degree once.
std::map<Degree, std::uint64_t> joint_degree_distribution(const Graph& g, Degree d);

// KL divergence (natural log) between normalized histograms over the union
// support. When q lacks mass somewhere p has some, q is smoothed by adding
// 1 / (2 * total q mass) pseudo-mass to every union-support bin and
// renormalizing, keeping the divergence finite; otherwise no smoothing is
// applied, so kl_divergence(p, p) == 0 exactly.
double kl_divergence(const Histogram& p, const Histogram& q);

Histogram to_histogram(const std::map<Degree, std::uint64_t>& counts);

/// Component sizes, largest first.
std::vector<std::size_t> connected_components(const Graph& g);

/// Core-number peeling; shell s maps to the number of vertices with core
/// number exactly s.
std::map<Degree, std::size_t> kcore_decomposition(const Graph& g);

// Power iteration on the undirected graph with both arc directions; mass of
// degree-0 vertices is redistributed uniformly. Summation uses fixed-size
// blocks reduced in block order, so scores are identical for any thread
// count. Scores sum to 1.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, std::uint32_t iters = 50,
                             std::size_t threads = 1);

struct MetricsReport {
  std::map<Degree, std::uint64_t> degree_hist;
  std::map<Degree, double> avg_cc;
  std::vector<std::uint64_t> cc_hist;  // local cc binned over [0,1], degree >= 2 vertices
  std::vector<std::size_t> component_sizes;
  std::map<Degree, std::size_t> kcore_shells;
  std::vector<double> pagerank_scores;
};

MetricsReport compute_metrics(const Graph& g, std::uint32_t cc_bins = 100,
                              std::size_t threads = 1);

struct ComponentSummary {
  std::size_t components = 0;
  std::size_t giant_size = 0;
  double giant_fraction = 0.0;
};

struct JointProbeRow {
  Degree degree = 0;
  bool in_source = false;
  bool in_generated = false;
  double kl = 0.0;  // valid only when present on both sides
};

struct ComparisonReport {
  double degree_kl = 0.0;
  double cc_mae = 0.0;           // vertex-mass-weighted, over degrees covered by both sides
  double cc_mass_coverage = 0.0;  // source cc-mass fraction the MAE covers
  std::vector<JointProbeRow> joint;
  bool has_source_graph = false;
  ComponentSummary source_components, generated_components;
  std::map<Degree, std::size_t> source_shells, generated_shells;
};

ComparisonReport compare(const Graph& source, const Graph& generated,
                         std::span<const Degree> probe_degrees, std::size_t threads = 1);
ComparisonReport compare(const GraphModel& source, const Graph& generated,
                         std::span<const Degree> probe_degrees, std::size_t threads = 1);

// Tab-separated tables, one block per metric; byte-stable for fixed inputs.
void write_metrics(std::ostream& out, const MetricsReport& r);
void write_comparison(std::ostream& out, const ComparisonReport& r);

}  // namespace graphgen
