#include "graphgen/model.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "graphgen/refgraphs.hpp"
#include "oracles.hpp"

using namespace graphgen;

TEST_CASE("local clustering coefficient") {
  CHECK(local_cc(testing::triangle(), 0) == 1.0);
  CHECK(local_cc(testing::triangle(), 2) == 1.0);
  CHECK(local_cc(testing::path(3), 1) == 0.0);
  CHECK(local_cc(testing::path(3), 0) == 0.0);  // degree < 2
  // K4 minus {2,3}: vertex 0 sees neighbor edges {1,2} and {1,3}.
  CHECK(local_cc(testing::k4_minus_edge(), 0) == doctest::Approx(2.0 * 2 / 6.0));
}

TEST_CASE("local cc matches brute-force triple enumeration") {
  const Graph graphs[] = {testing::triangle(),      testing::k4_minus_edge(),
                          testing::star(6),         testing::two_triangles(),
                          testing::k4_with_pendant(), erdos_renyi(120, 0.08, 7),
                          watts_strogatz(150, 6, 0.2, 9)};
  for (const Graph& g : graphs) {
    const auto expected = testing::brute_local_cc(g);
    double mean_lib = 0.0;
    double mean_oracle = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      CHECK(local_cc(g, v) == doctest::Approx(expected[v]).epsilon(1e-12));
      mean_lib += local_cc(g, v);
      mean_oracle += expected[v];
    }
    CHECK(mean_lib == doctest::Approx(mean_oracle).epsilon(1e-12));
  }
}

TEST_CASE("extract_model histograms") {
  SUBCASE("triangle") {
    const GraphModel m = extract_model(testing::triangle(), 100);
    REQUIRE(m.degree_hist.size() == 1);
    CHECK(m.degree_hist.at(2) == 3);
    CHECK(m.cc_hist.at(2).back() == 3);  // all mass in the bin containing 1.0
    CHECK(m.source_vertex_count == 3);
    CHECK(m.source_edge_count == 3);
  }
  SUBCASE("star with four leaves") {
    const GraphModel m = extract_model(testing::star(4), 100);
    CHECK(m.degree_hist.at(1) == 4);
    CHECK(m.degree_hist.at(4) == 1);
    CHECK(m.cc_hist.at(4).front() == 1);  // cc 0 for the hub
    CHECK(m.cc_hist.count(1) == 0);      // degree < 2 carries no cc entry
  }
  SUBCASE("two disjoint triangles") {
    const GraphModel m = extract_model(testing::two_triangles(), 100);
    CHECK(m.degree_hist.at(2) == 6);
    CHECK(m.cc_hist.at(2).back() == 6);
  }
  SUBCASE("cc bin counts sum to the degree count") {
    const GraphModel m = extract_model(watts_strogatz(400, 6, 0.3, 11), 50);
    for (const auto& [d, bins] : m.cc_hist) {
      std::uint64_t total = 0;
      for (auto b : bins) total += b;
      CHECK(total == m.degree_hist.at(d));
    }
  }
  SUBCASE("threaded extraction matches sequential") {
    const Graph g = watts_strogatz(2000, 8, 0.2, 3);
    CHECK(extract_model(g, 100, 1) == extract_model(g, 100, 4));
  }
}

TEST_CASE("assign_targets sampling") {
  SUBCASE("single-atom model pins every target") {
    const GraphModel m = extract_model(testing::triangle(), 100);
    const auto targets = assign_targets(m, 10, 42);
    REQUIRE(targets.size() == 10);
    for (const auto& t : targets) {
      CHECK(t.degree == 2);
      CHECK(t.cc > 0.99);
      CHECK(t.cc <= 1.0);
      CHECK(t.ce == doctest::Approx(t.cc * 2.0));
    }
  }
  SUBCASE("deterministic given seed, including across thread counts") {
    const GraphModel m = extract_model(watts_strogatz(500, 6, 0.2, 1), 100);
    const auto a = assign_targets(m, 1000, 7, 1);
    const auto b = assign_targets(m, 1000, 7, 1);
    const auto c = assign_targets(m, 1000, 7, 8);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].degree == b[i].degree);
      CHECK(a[i].cc == b[i].cc);
      CHECK(a[i].degree == c[i].degree);
      CHECK(a[i].cc == c[i].cc);
    }
  }
  SUBCASE("degree frequencies converge to the histogram") {
    GraphModel m;
    m.cc_bins = 100;
    m.degree_hist[1] = 9000;
    m.degree_hist[100] = 1000;
    m.cc_hist[100].assign(100, 0);
    m.cc_hist[100][0] = 1000;
    const auto targets = assign_targets(m, 100000, 5);
    std::size_t high = 0;
    for (const auto& t : targets) high += t.degree == 100;
    const double fraction = static_cast<double>(high) / 100000.0;
    CHECK(fraction == doctest::Approx(0.10).epsilon(0.1));  // 0.10 +- 0.01
  }
  SUBCASE("max deviation from the normalized histogram is small at 1e5") {
    const GraphModel m = extract_model(watts_strogatz(3000, 10, 0.1, 2), 100);
    std::uint64_t total = 0;
    for (const auto& [d, c] : m.degree_hist) total += c;
    const auto targets = assign_targets(m, 100000, 11);
    std::map<Degree, std::size_t> got;
    for (const auto& t : targets) ++got[t.degree];
    for (const auto& [d, c] : m.degree_hist) {
      const double expect = static_cast<double>(c) / static_cast<double>(total);
      const double actual = static_cast<double>(got[d]) / 100000.0;
      CHECK(std::abs(expect - actual) < 0.01);
    }
  }
  SUBCASE("degree >= 2 targets always carry cc in [0,1]") {
    const GraphModel m = extract_model(watts_strogatz(500, 6, 0.2, 1), 100);
    for (const auto& t : assign_targets(m, 5000, 13)) {
      CHECK(t.cc >= 0.0);
      CHECK(t.cc <= 1.0);
      if (t.degree < 2) CHECK(t.cc == 0.0);
    }
  }
  SUBCASE("unseen degrees fall back to the nearest cc entry") {
    GraphModel m;
    m.cc_bins = 10;
    m.degree_hist[3] = 5;
    m.degree_hist[9] = 5;
    m.degree_hist[40] = 5;
    m.cc_hist[3].assign(10, 0);
    m.cc_hist[3][9] = 5;  // cc in [0.9, 1.0)
    m.cc_hist[9].assign(10, 0);
    m.cc_hist[9][0] = 5;  // cc in [0, 0.1)
    // degree 40 has no entry: nearest is 9
    const auto targets = assign_targets(m, 3000, 3);
    for (const auto& t : targets) {
      CHECK(t.cc >= 0.0);
      CHECK(t.cc <= 1.0);
      if (t.degree == 40) CHECK(t.cc < 0.1);
      if (t.degree == 3) CHECK(t.cc >= 0.9);
    }
  }
  SUBCASE("oversized targets clamp to n_out - 1") {
    GraphModel m;
    m.degree_hist[50] = 1;
    m.cc_hist[50].assign(100, 0);
    m.cc_hist[50][0] = 1;
    for (const auto& t : assign_targets(m, 10, 1)) CHECK(t.degree == 9);
  }
  SUBCASE("zero-mass model errors") {
    GraphModel m;
    CHECK_THROWS_AS(assign_targets(m, 10, 1), std::invalid_argument);
    m.degree_hist[4] = 0;
    CHECK_THROWS_AS(assign_targets(m, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("split assignment") {
  const GraphModel m = extract_model(watts_strogatz(1000, 10, 0.1, 4), 100);
  SUBCASE("fraction 1.0 equals plain assignment") {
    const auto split = assign_targets_split(m, 2000, 1.0, 9);
    const auto plain = assign_targets(m, 2000, 9);
    REQUIRE(split.targets.size() == plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(split.targets[i].degree == plain[i].degree);
      CHECK(split.targets[i].cc == plain[i].cc);
      CHECK(split.full_degree[i] == plain[i].degree);
    }
  }
  SUBCASE("aggregate split tracks the fraction and never exceeds the degree") {
    const double fraction = 0.84;
    const auto split = assign_targets_split(m, 20000, fraction, 9);
    std::uint64_t full = 0;
    std::uint64_t intra = 0;
    for (std::size_t i = 0; i < split.targets.size(); ++i) {
      CHECK(split.targets[i].degree <= split.full_degree[i]);
      full += split.full_degree[i];
      intra += split.targets[i].degree;
    }
    CHECK(static_cast<double>(intra) / static_cast<double>(full) ==
          doctest::Approx(fraction).epsilon(0.001));
  }
}

TEST_CASE("model serialization") {
  SUBCASE("triangle model round-trips") {
    const GraphModel m = extract_model(testing::triangle(), 100);
    std::ostringstream os;
    write_model(os, m);
    std::istringstream is(os.str());
    CHECK(read_model(is, "test") == m);
  }
  SUBCASE("empty-graph model round-trips") {
    const GraphModel m = extract_model(Graph(0), 100);
    std::ostringstream os;
    write_model(os, m);
    std::istringstream is(os.str());
    CHECK(read_model(is, "test") == m);
  }
  SUBCASE("reference-graph model round-trips bit-exact") {
    const GraphModel m = extract_model(watts_strogatz(1000, 8, 0.15, 21), 100);
    std::ostringstream first;
    write_model(first, m);
    std::istringstream is(first.str());
    const GraphModel back = read_model(is, "test");
    CHECK(back == m);
    std::ostringstream second;
    write_model(second, back);
    CHECK(first.str() == second.str());
  }
  SUBCASE("version mismatch errors") {
    std::istringstream is("graphmodel v9\ncc_bins 100\n");
    CHECK_THROWS_AS(read_model(is, "f"), ParseError);
  }
  SUBCASE("malformed row errors") {
    std::istringstream is("graphmodel v1\ncc_bins 100\nsource_vertices 0\nsource_edges 0\ndeg x 1\nend\n");
    CHECK_THROWS_AS(read_model(is, "f"), ParseError);
  }
  SUBCASE("truncated file errors") {
    std::istringstream is("graphmodel v1\ncc_bins 100\nsource_vertices 0\nsource_edges 0\n");
    CHECK_THROWS_WITH_AS(read_model(is, "f"), doctest::Contains("end"), ParseError);
  }
  SUBCASE("file round trip") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "graphgen_model_test";
    fs::create_directories(dir);
    const GraphModel m = extract_model(testing::star(4), 100);
    save_model(m, dir / "m.model");
    CHECK(load_model(dir / "m.model") == m);
    fs::remove_all(dir);
  }
}
