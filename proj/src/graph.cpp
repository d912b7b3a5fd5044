#include "graphgen/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

namespace graphgen {

bool Graph::add_edge(VertexId u, VertexId v) {
  if (u >= adj_.size() || v >= adj_.size())
    throw std::out_of_range("add_edge: vertex id out of range");
  if (u == v) return false;
  auto& row_u = adj_[u];
  auto it = std::lower_bound(row_u.begin(), row_u.end(), v);
  if (it != row_u.end() && *it == v) return false;
  row_u.insert(it, v);
  auto& row_v = adj_[v];
  row_v.insert(std::lower_bound(row_v.begin(), row_v.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= adj_.size() || v >= adj_.size())
    throw std::out_of_range("has_edge: vertex id out of range");
  const auto& row = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const VertexId other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(row.begin(), row.end(), other);
}

namespace {

struct RawEdge {
  std::int64_t u;
  std::int64_t v;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_id(std::string_view token, const std::string& source, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    if (!token.empty() && token.front() == '-')
      throw ParseError(source, line, "negative vertex id '" + std::string(token) + "'");
    throw ParseError(source, line, "non-numeric token '" + std::string(token) + "'");
  }
  if (value < 0) throw ParseError(source, line, "negative vertex id '" + std::string(token) + "'");
  return value;
}

}  // namespace

Graph read_edge_list(std::istream& in, const std::string& source_name) {
  std::vector<RawEdge> edges;
  std::optional<std::uint64_t> declared_vertices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      // Only "# vertices N" is meaningful; other # lines are comments.
      std::istringstream hs{std::string(sv.substr(1))};
      std::string word;
      if (hs >> word && word == "vertices") {
        std::string count;
        if (!(hs >> count)) throw ParseError(source_name, lineno, "missing vertex count in header");
        const std::int64_t n = parse_id(count, source_name, lineno);
        if (declared_vertices) throw ParseError(source_name, lineno, "duplicate vertices header");
        declared_vertices = static_cast<std::uint64_t>(n);
      }
      continue;
    }
    std::istringstream ls{std::string(sv)};
    std::string tu, tv, extra;
    if (!(ls >> tu >> tv)) throw ParseError(source_name, lineno, "expected 'u v' pair");
    if (ls >> extra) throw ParseError(source_name, lineno, "trailing token '" + extra + "'");
    const std::int64_t u = parse_id(tu, source_name, lineno);
    const std::int64_t v = parse_id(tv, source_name, lineno);
    if (u == v) continue;  // self-loops dropped, like duplicate lines
    edges.push_back({u, v, lineno});
  }

  std::size_t n = 0;
  if (declared_vertices) {
    n = static_cast<std::size_t>(*declared_vertices);
    for (const auto& e : edges) {
      if (e.u >= static_cast<std::int64_t>(n) || e.v >= static_cast<std::int64_t>(n))
        throw ParseError(source_name, e.line, "vertex id exceeds declared vertex count");
    }
  } else {
    // Remap whatever ids appear to a dense range, preserving their order.
    std::vector<std::int64_t> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& e : edges) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    n = ids.size();
    auto rank = [&ids](std::int64_t id) {
      return static_cast<std::int64_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (auto& e : edges) {
      e.u = rank(e.u);
      e.v = rank(e.v);
    }
  }

  Graph g(n);
  for (const auto& e : edges)
    g.add_edge(static_cast<VertexId>(e.u), static_cast<VertexId>(e.v));
  return g;
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  bool has_isolated = false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) {
      has_isolated = true;
      break;
    }
  }
  if (has_isolated) out << "# vertices " << g.vertex_count() << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId w : g.neighbors(v)) {
      if (w > v) out << v << ' ' << w << '\n';
    }
  }
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_edge_list(out, g);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string to_edge_list_string(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace graphgen
