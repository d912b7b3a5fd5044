#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgen {

using VertexId = std::uint32_t;
using Degree = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Error while parsing a text input; message carries source name and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected simple graph over dense 0-based vertex ids. Adjacency lists are
// kept sorted, which makes edge membership tests logarithmic and the
// serialization canonical. Concurrent reads are safe; mutation is
// single-writer per adjacency row, so parallel phases must route insertions
// to disjoint row owners.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count) : adj_(vertex_count) {}

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  Degree degree(VertexId v) const { return static_cast<Degree>(adj_[v].size()); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_[v].data(), adj_[v].size()};
  }

  /// Inserts {u, v} symmetrically. Returns false (graph unchanged) for
  /// self-loops and already-present edges. Out-of-range ids are hard errors.
  bool add_edge(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const;

  bool operator==(const Graph& other) const noexcept { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t edge_count_ = 0;
};

// Edge-list text format: one edge per line as "u v". The canonical form
// written by save has u < v, lines sorted ascending by (u, v), and a leading
// "# vertices N" header only when the graph has isolated vertices a plain
// edge list could not express. The reader accepts either endpoint order and
// duplicate lines (deduplicated). Without a header, sparse ids are remapped
// to a dense range in ascending order; with a header, ids must be < N and
// are kept as-is.
Graph load_edge_list(const std::filesystem::path& path);
void save_edge_list(const Graph& g, const std::filesystem::path& path);
Graph read_edge_list(std::istream& in, const std::string& source_name);
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list_string(const Graph& g);

}  // namespace graphgen
