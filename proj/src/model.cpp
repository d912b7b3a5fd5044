#include "graphgen/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "graphgen/parallel.hpp"
#include "graphgen/rng.hpp"

namespace graphgen {

std::uint64_t triangles_through(const Graph& g, VertexId v) {
  const auto nb = g.neighbors(v);
  std::uint64_t count = 0;
  for (VertexId u : nb) {
    // Edges among neighbors, each counted once via the w > u half.
    const auto nu = g.neighbors(u);
    auto it = std::lower_bound(nu.begin(), nu.end(), u + 1);
    auto jt = std::lower_bound(nb.begin(), nb.end(), u + 1);
    while (it != nu.end() && jt != nb.end()) {
      if (*it < *jt) {
        ++it;
      } else if (*jt < *it) {
        ++jt;
      } else {
        ++count;
        ++it;
        ++jt;
      }
    }
  }
  return count;
}

double local_cc(const Graph& g, VertexId v) {
  const Degree d = g.degree(v);
  if (d < 2) return 0.0;
  return 2.0 * static_cast<double>(triangles_through(g, v)) /
         (static_cast<double>(d) * (static_cast<double>(d) - 1.0));
}

namespace {

std::uint32_t cc_bin_of(double cc, std::uint32_t bins) {
  auto b = static_cast<std::uint32_t>(cc * bins);
  return std::min(b, bins - 1);
}

}  // namespace

GraphModel extract_model(const Graph& g, std::uint32_t cc_bins, std::size_t threads) {
  if (cc_bins < 1) throw std::invalid_argument("extract_model: cc_bins must be >= 1");
  GraphModel m;
  m.cc_bins = cc_bins;
  m.source_vertex_count = g.vertex_count();
  m.source_edge_count = g.edge_count();

  std::mutex mu;
  parallel_blocks(g.vertex_count(), 8192, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::map<Degree, std::uint64_t> deg_local;
    std::map<Degree, std::vector<std::uint64_t>> cc_local;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto v = static_cast<VertexId>(i);
      const Degree d = g.degree(v);
      ++deg_local[d];
      if (d >= 2) {
        auto& bins = cc_local[d];
        if (bins.empty()) bins.assign(cc_bins, 0);
        ++bins[cc_bin_of(local_cc(g, v), cc_bins)];
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [d, c] : deg_local) m.degree_hist[d] += c;
    for (const auto& [d, bins] : cc_local) {
      auto& dst = m.cc_hist[d];
      if (dst.empty()) dst.assign(cc_bins, 0);
      for (std::uint32_t b = 0; b < cc_bins; ++b) dst[b] += bins[b];
    }
  });
  return m;
}

namespace {

// Sampling tables built once per assignment; lookups are binary searches on
// cumulative counts so every draw costs exactly one integer variate.
struct SamplingTables {
  std::vector<Degree> degrees;
  std::vector<std::uint64_t> degree_cum;
  std::uint64_t degree_total = 0;

  std::vector<Degree> cc_degrees;  // degrees with non-empty cc histograms, ascending
  std::map<Degree, std::pair<std::vector<std::uint64_t>, std::uint64_t>> cc_cum;

  explicit SamplingTables(const GraphModel& m) {
    for (const auto& [d, count] : m.degree_hist) {
      if (count == 0) continue;
      degree_total += count;
      degrees.push_back(d);
      degree_cum.push_back(degree_total);
    }
    for (const auto& [d, bins] : m.cc_hist) {
      std::vector<std::uint64_t> cum(bins.size());
      std::uint64_t total = 0;
      for (std::size_t b = 0; b < bins.size(); ++b) {
        total += bins[b];
        cum[b] = total;
      }
      if (total == 0) continue;
      cc_degrees.push_back(d);
      cc_cum.emplace(d, std::make_pair(std::move(cum), total));
    }
  }

  Degree sample_degree(RngStream& rng) const {
    const std::uint64_t r = rng.next_below(degree_total);
    const auto it = std::upper_bound(degree_cum.begin(), degree_cum.end(), r);
    return degrees[static_cast<std::size_t>(it - degree_cum.begin())];
  }

  // Nearest degree holding cc mass; ties resolved toward the lower degree.
  // Needed when a model is edited or a split intra degree was never observed.
  Degree nearest_cc_degree(Degree d) const {
    const auto it = std::lower_bound(cc_degrees.begin(), cc_degrees.end(), d);
    if (it == cc_degrees.end()) return cc_degrees.back();
    if (it == cc_degrees.begin() || *it == d) return *it;
    const Degree above = *it;
    const Degree below = *(it - 1);
    return (above - d < d - below) ? above : below;
  }

  double sample_cc(Degree d, std::uint32_t cc_bins, RngStream& rng) const {
    if (d < 2 || cc_degrees.empty()) return 0.0;
    const auto& [cum, total] = cc_cum.at(nearest_cc_degree(d));
    const std::uint64_t r = rng.next_below(total);
    const auto bin = static_cast<std::uint32_t>(
        std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
    return (static_cast<double>(bin) + rng.next_double()) / static_cast<double>(cc_bins);
  }
};

}  // namespace

TargetAssignment assign_targets_split(const GraphModel& m, std::size_t n_out,
                                      double intra_fraction, std::uint64_t seed,
                                      std::size_t threads) {
  if (n_out < 1) throw std::invalid_argument("assign_targets: n_out must be >= 1");
  if (!(intra_fraction > 0.0 && intra_fraction <= 1.0))
    throw std::invalid_argument("assign_targets: intra fraction must be in (0, 1]");
  const SamplingTables tables(m);
  if (tables.degree_total == 0)
    throw std::invalid_argument("assign_targets: model has no degree mass");

  TargetAssignment out;
  out.full_degree.resize(n_out);
  out.targets.resize(n_out);

  std::atomic<std::size_t> clamped{0};
  parallel_blocks(n_out, 16384, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    std::size_t clamped_local = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      auto rng = RngStream::from_parts({seed, kTagTargets, i});
      Degree d = tables.sample_degree(rng);
      if (d >= n_out) {
        d = static_cast<Degree>(n_out - 1);
        ++clamped_local;
      }
      out.full_degree[i] = d;
    }
    clamped.fetch_add(clamped_local, std::memory_order_relaxed);
  });
  out.clamped = clamped.load();
  if (out.clamped > 0)
    std::fprintf(stderr, "warning: clamped %zu target degrees to %zu (graph size limit)\n",
                 out.clamped, n_out - 1);

  // Intra share per vertex by cumulative rounding: each vertex gets
  // round-consistent floor/ceil of degree * fraction and the running sum
  // tracks the exact product, so the aggregate split matches the fraction.
  std::vector<Degree> intra(n_out);
  if (intra_fraction == 1.0) {
    intra.assign(out.full_degree.begin(), out.full_degree.end());
  } else {
    std::uint64_t cum = 0;
    std::int64_t emitted = 0;
    for (std::size_t i = 0; i < n_out; ++i) {
      cum += out.full_degree[i];
      const auto want = std::llround(static_cast<double>(cum) * intra_fraction);
      intra[i] = static_cast<Degree>(want - emitted);
      emitted = want;
    }
  }

  parallel_blocks(n_out, 16384, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto rng = RngStream::from_parts({seed, kTagTargets, i});
      tables.sample_degree(rng);  // burn the degree draw; stream layout is fixed
      const Degree d = intra[i];
      double cc = 0.0;
      if (d >= 2) cc = tables.sample_cc(d, m.cc_bins, rng);
      out.targets[i] = VertexTarget{
          static_cast<VertexId>(i), d, cc,
          cc * static_cast<double>(d) * (static_cast<double>(d) - 1.0)};
    }
  });
  return out;
}

std::vector<VertexTarget> assign_targets(const GraphModel& m, std::size_t n_out,
                                         std::uint64_t seed, std::size_t threads) {
  return assign_targets_split(m, n_out, 1.0, seed, threads).targets;
}

namespace {
constexpr const char* kModelMagic = "graphmodel v1";
}

void write_model(std::ostream& out, const GraphModel& m) {
  out << kModelMagic << '\n';
  out << "cc_bins " << m.cc_bins << '\n';
  out << "source_vertices " << m.source_vertex_count << '\n';
  out << "source_edges " << m.source_edge_count << '\n';
  for (const auto& [d, count] : m.degree_hist) out << "deg " << d << ' ' << count << '\n';
  for (const auto& [d, bins] : m.cc_hist) {
    for (std::size_t b = 0; b < bins.size(); ++b) {
      if (bins[b] != 0) out << "cc " << d << ' ' << b << ' ' << bins[b] << '\n';
    }
  }
  out << "end\n";
}

GraphModel read_model(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != kModelMagic)
    throw ParseError(source_name, lineno == 0 ? 1 : lineno,
                     "not a model file or unsupported version (expected '" +
                         std::string(kModelMagic) + "')");

  GraphModel m;
  auto parse_u64 = [&](const std::string& token) {
    try {
      std::size_t pos = 0;
      if (token.empty() || token[0] == '-') throw std::invalid_argument("negative");
      const std::uint64_t v = std::stoull(token, &pos);
      if (pos != token.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ParseError(source_name, lineno, "malformed number '" + token + "'");
    }
  };

  bool saw_end = false;
  std::size_t header_fields = 0;
  while (next_line()) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    std::vector<std::string> args;
    for (std::string t; ls >> t;) args.push_back(t);
    if (key == "end") {
      saw_end = true;
      break;
    }
    if (key == "cc_bins" && args.size() == 1) {
      m.cc_bins = static_cast<std::uint32_t>(parse_u64(args[0]));
      if (m.cc_bins < 1) throw ParseError(source_name, lineno, "cc_bins must be >= 1");
      ++header_fields;
    } else if (key == "source_vertices" && args.size() == 1) {
      m.source_vertex_count = parse_u64(args[0]);
      ++header_fields;
    } else if (key == "source_edges" && args.size() == 1) {
      m.source_edge_count = parse_u64(args[0]);
      ++header_fields;
    } else if (key == "deg" && args.size() == 2) {
      if (header_fields != 3) throw ParseError(source_name, lineno, "row before model header");
      m.degree_hist[static_cast<Degree>(parse_u64(args[0]))] = parse_u64(args[1]);
    } else if (key == "cc" && args.size() == 3) {
      if (header_fields != 3) throw ParseError(source_name, lineno, "row before model header");
      const auto d = static_cast<Degree>(parse_u64(args[0]));
      const std::uint64_t bin = parse_u64(args[1]);
      if (bin >= m.cc_bins) throw ParseError(source_name, lineno, "cc bin index out of range");
      auto& bins = m.cc_hist[d];
      if (bins.empty()) bins.assign(m.cc_bins, 0);
      bins[bin] = parse_u64(args[2]);
    } else {
      throw ParseError(source_name, lineno, "malformed row '" + line + "'");
    }
  }
  if (!saw_end) throw ParseError(source_name, lineno, "missing 'end' marker (truncated file?)");
  if (header_fields != 3) throw ParseError(source_name, lineno, "incomplete model header");
  return m;
}

void save_model(const GraphModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_model(out, m);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

GraphModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_model(in, path.string());
}

}  // namespace graphgen
