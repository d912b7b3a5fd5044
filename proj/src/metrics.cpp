#include "graphgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
#include <stdexcept>

#include "graphgen/parallel.hpp"

namespace graphgen {

std::map<Degree, std::uint64_t> degree_distribution(const Graph& g) {
  std::map<Degree, std::uint64_t> hist;
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++hist[g.degree(v)];
  return hist;
}

std::map<Degree, double> avg_cc_by_degree(const Graph& g, std::size_t threads) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kBlock = 4096;
  const std::size_t num_blocks = n == 0 ? 0 : (n + kBlock - 1) / kBlock;
  std::vector<std::map<Degree, std::pair<double, std::uint64_t>>> partial(num_blocks);
  parallel_blocks(n, kBlock, threads, [&](std::size_t blk, std::size_t lo, std::size_t hi) {
    auto& local = partial[blk];
    for (std::size_t i = lo; i < hi; ++i) {
      const auto v = static_cast<VertexId>(i);
      const Degree d = g.degree(v);
      if (d < 2) continue;
      auto& [sum, count] = local[d];
      sum += local_cc(g, v);
      ++count;
    }
  });
  // Block-ordered reduction keeps the floating-point sums reproducible.
  std::map<Degree, std::pair<double, std::uint64_t>> acc;
  for (const auto& local : partial) {
    for (const auto& [d, sc] : local) {
      auto& [sum, count] = acc[d];
      sum += sc.first;
      count += sc.second;
    }
  }
  std::map<Degree, double> out;
  for (const auto& [d, sc] : acc) out[d] = sc.first / static_cast<double>(sc.second);
  return out;
}

std::map<Degree, std::uint64_t> joint_degree_distribution(const Graph& g, Degree d) {
  std::map<Degree, std::uint64_t> hist;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d) continue;
    for (VertexId w : g.neighbors(v)) ++hist[g.degree(w)];
  }
  return hist;
}

Histogram to_histogram(const std::map<Degree, std::uint64_t>& counts) {
  Histogram h;
  for (const auto& [k, v] : counts) h[static_cast<std::int64_t>(k)] = static_cast<double>(v);
  return h;
}

double kl_divergence(const Histogram& p, const Histogram& q) {
  double p_total = 0.0;
  double q_total = 0.0;
  for (const auto& [k, v] : p) {
    if (v < 0) throw std::invalid_argument("kl_divergence: negative mass in p");
    p_total += v;
  }
  for (const auto& [k, v] : q) {
    if (v < 0) throw std::invalid_argument("kl_divergence: negative mass in q");
    q_total += v;
  }
  if (p.empty() || p_total <= 0.0) throw std::invalid_argument("kl_divergence: p is empty");
  if (q.empty() || q_total <= 0.0) throw std::invalid_argument("kl_divergence: q is empty");

  bool needs_smoothing = false;
  for (const auto& [k, v] : p) {
    if (v > 0.0) {
      const auto it = q.find(k);
      if (it == q.end() || it->second <= 0.0) {
        needs_smoothing = true;
        break;
      }
    }
  }

  double pseudo = 0.0;
  double q_norm = q_total;
  if (needs_smoothing) {
    // Union support size: keys present in either histogram.
    std::size_t support = q.size();
    for (const auto& [k, v] : p)
      if (!q.contains(k)) ++support;
    pseudo = 1.0 / (2.0 * q_total);
    q_norm = q_total + pseudo * static_cast<double>(support);
  }

  double kl = 0.0;
  for (const auto& [k, v] : p) {
    if (v <= 0.0) continue;
    const double pk = v / p_total;
    const auto it = q.find(k);
    const double qk = ((it != q.end() ? it->second : 0.0) + pseudo) / q_norm;
    kl += pk * std::log(pk / qk);
  }
  return kl;
}

std::vector<std::size_t> connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> sizes;
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::size_t size = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::map<Degree, std::size_t> kcore_decomposition(const Graph& g) {
  // Peeling in bucket order (Batagelj-Zaversnik): vertices sorted by current
  // degree, each removal demotes its still-present neighbors.
  const std::size_t n = g.vertex_count();
  std::map<Degree, std::size_t> shells;
  if (n == 0) return shells;

  std::vector<Degree> deg(n);
  Degree max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (VertexId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (Degree d = 0; d <= max_deg; ++d) {
    const std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<VertexId> order(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> fill(bin.begin(), bin.end());
    for (VertexId v = 0; v < n; ++v) {
      pos[v] = fill[deg[v]]++;
      order[pos[v]] = v;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = order[i];
    for (VertexId w : g.neighbors(v)) {
      if (deg[w] > deg[v]) {
        // Swap w to the front of its degree bucket, then demote it.
        const Degree dw = deg[w];
        const std::size_t pw = pos[w];
        const std::size_t pfront = bin[dw];
        const VertexId front = order[pfront];
        if (front != w) {
          std::swap(order[pw], order[pfront]);
          pos[w] = pfront;
          pos[front] = pw;
        }
        ++bin[dw];
        --deg[w];
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) ++shells[deg[v]];
  return shells;
}

std::vector<double> pagerank(const Graph& g, double damping, std::uint32_t iters,
                             std::size_t threads) {
  const std::size_t n = g.vertex_count();
  std::vector<double> pr(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  if (n == 0) return pr;
  std::vector<double> next(n, 0.0);

  constexpr std::size_t kBlock = 4096;
  const std::size_t num_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> block_dangling(num_blocks, 0.0);

  for (std::uint32_t it = 0; it < iters; ++it) {
    parallel_blocks(n, kBlock, threads, [&](std::size_t blk, std::size_t lo, std::size_t hi) {
      double local = 0.0;
      for (std::size_t v = lo; v < hi; ++v)
        if (g.degree(static_cast<VertexId>(v)) == 0) local += pr[v];
      block_dangling[blk] = local;
    });
    double dangling = 0.0;
    for (double d : block_dangling) dangling += d;

    const double base =
        (1.0 - damping) / static_cast<double>(n) + damping * dangling / static_cast<double>(n);
    parallel_blocks(n, kBlock, threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto v = static_cast<VertexId>(i);
        double sum = 0.0;
        for (VertexId w : g.neighbors(v))
          sum += pr[w] / static_cast<double>(g.degree(w));
        next[i] = base + damping * sum;
      }
    });
    pr.swap(next);
  }
  return pr;
}

MetricsReport compute_metrics(const Graph& g, std::uint32_t cc_bins, std::size_t threads) {
  MetricsReport r;
  r.degree_hist = degree_distribution(g);
  r.avg_cc = avg_cc_by_degree(g, threads);
  r.cc_hist.assign(cc_bins, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 2) continue;
    const double cc = local_cc(g, v);
    auto b = static_cast<std::uint32_t>(cc * cc_bins);
    ++r.cc_hist[std::min(b, cc_bins - 1)];
  }
  r.component_sizes = connected_components(g);
  r.kcore_shells = kcore_decomposition(g);
  r.pagerank_scores = pagerank(g, 0.85, 50, threads);
  return r;
}

namespace {

ComponentSummary summarize_components(const std::vector<std::size_t>& sizes) {
  ComponentSummary s;
  s.components = sizes.size();
  s.giant_size = sizes.empty() ? 0 : sizes.front();
  std::size_t total = 0;
  for (std::size_t c : sizes) total += c;
  s.giant_fraction = total == 0 ? 0.0 : static_cast<double>(s.giant_size) / total;
  return s;
}

// Mass-weighted mean absolute error between per-degree cc means, weighted by
// the source's vertex count at each degree. Degrees absent from the
// generated graph are skipped and reported via the coverage fraction.
void cc_error(const std::map<Degree, std::uint64_t>& source_mass,
              const std::map<Degree, double>& source_cc,
              const std::map<Degree, double>& generated_cc, double* mae, double* coverage) {
  double covered_mass = 0.0;
  double total_mass = 0.0;
  double weighted_err = 0.0;
  for (const auto& [d, cc_s] : source_cc) {
    const auto mit = source_mass.find(d);
    const double mass = mit == source_mass.end() ? 0.0 : static_cast<double>(mit->second);
    if (mass == 0.0) continue;
    total_mass += mass;
    const auto git = generated_cc.find(d);
    if (git == generated_cc.end()) continue;
    covered_mass += mass;
    weighted_err += mass * std::abs(cc_s - git->second);
  }
  *mae = covered_mass == 0.0 ? 0.0 : weighted_err / covered_mass;
  *coverage = total_mass == 0.0 ? 0.0 : covered_mass / total_mass;
}

std::vector<JointProbeRow> joint_rows_graphs(const Graph& source, const Graph& generated,
                                             std::span<const Degree> probes) {
  std::vector<JointProbeRow> rows;
  for (Degree d : probes) {
    JointProbeRow row;
    row.degree = d;
    const auto s = joint_degree_distribution(source, d);
    const auto g = joint_degree_distribution(generated, d);
    row.in_source = !s.empty();
    row.in_generated = !g.empty();
    if (row.in_source && row.in_generated) row.kl = kl_divergence(to_histogram(s), to_histogram(g));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ComparisonReport compare(const Graph& source, const Graph& generated,
                         std::span<const Degree> probe_degrees, std::size_t threads) {
  ComparisonReport r;
  r.has_source_graph = true;
  const auto source_deg = degree_distribution(source);
  r.degree_kl = kl_divergence(to_histogram(source_deg), to_histogram(degree_distribution(generated)));
  cc_error(source_deg, avg_cc_by_degree(source, threads), avg_cc_by_degree(generated, threads),
           &r.cc_mae, &r.cc_mass_coverage);
  r.joint = joint_rows_graphs(source, generated, probe_degrees);
  r.source_components = summarize_components(connected_components(source));
  r.generated_components = summarize_components(connected_components(generated));
  r.source_shells = kcore_decomposition(source);
  r.generated_shells = kcore_decomposition(generated);
  return r;
}

ComparisonReport compare(const GraphModel& source, const Graph& generated,
                         std::span<const Degree> probe_degrees, std::size_t threads) {
  ComparisonReport r;
  r.has_source_graph = false;
  r.degree_kl =
      kl_divergence(to_histogram(source.degree_hist), to_histogram(degree_distribution(generated)));

  // Per-degree cc means reconstructed from the binned model at bin centers.
  std::map<Degree, double> source_cc;
  for (const auto& [d, bins] : source.cc_hist) {
    double sum = 0.0;
    std::uint64_t count = 0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      sum += (static_cast<double>(b) + 0.5) / static_cast<double>(source.cc_bins) *
             static_cast<double>(bins[b]);
      count += bins[b];
    }
    if (count > 0) source_cc[d] = sum / static_cast<double>(count);
  }
  cc_error(source.degree_hist, source_cc, avg_cc_by_degree(generated, threads), &r.cc_mae,
           &r.cc_mass_coverage);

  for (Degree d : probe_degrees) {
    JointProbeRow row;
    row.degree = d;
    row.in_source = false;  // a model carries no joint-degree information
    const auto g = joint_degree_distribution(generated, d);
    row.in_generated = !g.empty();
    r.joint.push_back(row);
  }
  r.generated_components = summarize_components(connected_components(generated));
  r.generated_shells = kcore_decomposition(generated);
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_metrics(std::ostream& out, const MetricsReport& r) {
  out << "[degree_distribution]\ndegree\tcount\n";
  for (const auto& [d, c] : r.degree_hist) out << d << '\t' << c << '\n';
  out << "\n[avg_cc_by_degree]\ndegree\tmean_cc\n";
  for (const auto& [d, cc] : r.avg_cc) out << d << '\t' << fmt(cc) << '\n';
  out << "\n[cc_histogram]\nbin\tcount\n";
  for (std::size_t b = 0; b < r.cc_hist.size(); ++b) {
    if (r.cc_hist[b] != 0) out << b << '\t' << r.cc_hist[b] << '\n';
  }
  out << "\n[components]\ncount\t" << r.component_sizes.size() << '\n';
  out << "giant\t" << (r.component_sizes.empty() ? 0 : r.component_sizes.front()) << '\n';
  out << "\n[kcore_shells]\nshell\tcount\n";
  for (const auto& [s, c] : r.kcore_shells) out << s << '\t' << c << '\n';
  double pr_sum = 0.0;
  double pr_min = r.pagerank_scores.empty() ? 0.0 : r.pagerank_scores.front();
  double pr_max = pr_min;
  for (double s : r.pagerank_scores) {
    pr_sum += s;
    pr_min = std::min(pr_min, s);
    pr_max = std::max(pr_max, s);
  }
  out << "\n[pagerank]\nsum\t" << fmt(pr_sum) << "\nmin\t";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", pr_min);
  out << buf << "\nmax\t";
  std::snprintf(buf, sizeof buf, "%.9e", pr_max);
  out << buf << '\n';
}

void write_comparison(std::ostream& out, const ComparisonReport& r) {
  out << "[summary]\nmetric\tvalue\n";
  out << "degree_kl\t" << fmt(r.degree_kl) << '\n';
  out << "cc_mae\t" << fmt(r.cc_mae) << '\n';
  out << "cc_mass_coverage\t" << fmt(r.cc_mass_coverage) << '\n';
  out << "\n[joint_degree]\ndegree\tstatus\tkl\n";
  for (const auto& row : r.joint) {
    out << row.degree << '\t';
    if (row.in_source && row.in_generated) {
      out << "both\t" << fmt(row.kl) << '\n';
    } else if (row.in_source) {
      out << "source_only\tabsent\n";
    } else if (row.in_generated) {
      out << "generated_only\tabsent\n";
    } else {
      out << "absent\tabsent\n";
    }
  }
  out << "\n[components]\nside\tcount\tgiant\tgiant_fraction\n";
  if (r.has_source_graph) {
    out << "source\t" << r.source_components.components << '\t' << r.source_components.giant_size
        << '\t' << fmt(r.source_components.giant_fraction) << '\n';
  }
  out << "generated\t" << r.generated_components.components << '\t'
      << r.generated_components.giant_size << '\t' << fmt(r.generated_components.giant_fraction)
      << '\n';
  out << "\n[kcore_shells]\nside\tshell\tcount\n";
  if (r.has_source_graph) {
    for (const auto& [s, c] : r.source_shells) out << "source\t" << s << '\t' << c << '\n';
  }
  for (const auto& [s, c] : r.generated_shells) out << "generated\t" << s << '\t' << c << '\n';
}

}  // namespace graphgen
