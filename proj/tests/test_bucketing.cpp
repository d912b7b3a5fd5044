#include "graphgen/bucketing.hpp"

#include <set>

#include "doctest.h"
#include "graphgen/rng.hpp"

using namespace graphgen;

namespace {

std::vector<VertexTarget> uniform_targets(std::size_t count, Degree d, double cc) {
  std::vector<VertexTarget> targets(count);
  for (std::size_t i = 0; i < count; ++i) {
    targets[i] = VertexTarget{static_cast<VertexId>(i), d, cc,
                              cc * static_cast<double>(d) * (static_cast<double>(d) - 1.0)};
  }
  return targets;
}

std::vector<VertexTarget> random_targets(std::size_t count, std::uint64_t seed) {
  auto rng = RngStream::from_key(seed);
  std::vector<VertexTarget> targets(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto d = static_cast<Degree>(rng.next_below(30));
    const double cc = d < 2 ? 0.0 : rng.next_double();
    targets[i] = VertexTarget{static_cast<VertexId>(i), d, cc,
                              cc * static_cast<double>(d) * (static_cast<double>(d) - 1.0)};
  }
  return targets;
}

}  // namespace

TEST_CASE("quantize_ce") {
  CHECK(quantize_ce(10.2) == 10);
  CHECK(quantize_ce(0.49) == 0);
  CHECK(quantize_ce(0.6667 * 3 * 2) == 4);  // 4.0002
  CHECK(quantize_ce(0.0) == 0);
}

TEST_CASE("group_into_buckets") {
  SUBCASE("uniform targets fill a single bucket") {
    const auto targets = uniform_targets(4, 3, 0.5);  // ce = 3 each
    const auto buckets = group_into_buckets(targets);
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].members.size() == 4);
    CHECK(buckets[0].n_max == 4);
    CHECK(buckets[0].ce_key == 3);
    CHECK(buckets[0].full);
  }
  SUBCASE("sequential fill closes buckets at min(d)+1") {
    const auto targets = uniform_targets(10, 3, 0.5);
    const auto buckets = group_into_buckets(targets);
    REQUIRE(buckets.size() == 3);
    CHECK(buckets[0].members.size() == 4);
    CHECK(buckets[1].members.size() == 4);
    CHECK(buckets[2].members.size() == 2);
    CHECK(buckets[0].members == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(buckets[2].members == std::vector<VertexId>{8, 9});
  }
  SUBCASE("ce of zero stays bucketless") {
    const auto targets = uniform_targets(1, 1, 0.0);
    CHECK(group_into_buckets(targets).empty());
    const auto zero_cc = uniform_targets(5, 8, 0.0);
    CHECK(group_into_buckets(zero_cc).empty());
  }
  SUBCASE("bucket ids are sequential") {
    const auto buckets = group_into_buckets(random_targets(500, 1));
    for (std::size_t i = 0; i < buckets.size(); ++i)
      CHECK(buckets[i].bucket_id == static_cast<std::uint32_t>(i));
  }
}

TEST_CASE("merge_incomplete_buckets") {
  SUBCASE("two undersized buckets merge into one") {
    // ce keys 6 and 8, two members each, all degree 5.
    std::vector<VertexTarget> targets = {
        {0, 5, 0.30, 6.0}, {1, 5, 0.30, 6.0}, {2, 5, 0.40, 8.0}, {3, 5, 0.40, 8.0}};
    auto buckets = group_into_buckets(targets);
    REQUIRE(buckets.size() == 2);
    REQUIRE(buckets[0].members.size() == 2);
    const auto merged = merge_incomplete_buckets(std::move(buckets), targets);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].members.size() == 4);
    CHECK(merged[0].ce_key == 6);  // lowest source key
    CHECK_FALSE(merged[0].residual_tail);
  }
  SUBCASE("no undersized buckets is a no-op") {
    const auto targets = uniform_targets(8, 3, 0.5);
    auto buckets = group_into_buckets(targets);
    const auto before = buckets;
    const auto after = merge_incomplete_buckets(std::move(buckets), targets);
    REQUIRE(after.size() == before.size());
    for (std::size_t i = 0; i < after.size(); ++i) {
      CHECK(after[i].members == before[i].members);
      CHECK(after[i].ce_key == before[i].ce_key);
    }
  }
  SUBCASE("an unfixably small tail is kept and flagged") {
    // Single vertex with positive ce: cannot reach n_min = 3.
    std::vector<VertexTarget> targets = {{0, 5, 0.30, 6.0}};
    const auto merged = merge_incomplete_buckets(group_into_buckets(targets), targets);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].members.size() == 1);
    CHECK(merged[0].residual_tail);
  }
}

TEST_CASE("bucketing properties over random target sets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto targets = random_targets(400, seed);
    auto grouped = group_into_buckets(targets);

    std::map<VertexId, std::size_t> pre_size;
    for (const auto& b : grouped)
      for (VertexId id : b.members) pre_size[id] = b.members.size();

    const auto buckets = merge_incomplete_buckets(std::move(grouped), targets);

    // Partition: every vertex with ce > 0 in exactly one bucket.
    std::set<VertexId> seen;
    for (const auto& b : buckets) {
      REQUIRE_FALSE(b.members.empty());
      for (VertexId id : b.members) REQUIRE(seen.insert(id).second);
    }
    for (const auto& t : targets) {
      const bool should = t.degree >= 2 && t.ce > 0.0;
      REQUIRE(seen.contains(t.id) == should);
    }

    for (const auto& b : buckets) {
      // Size bound: |B| <= min degree + 1.
      Degree min_d = ~Degree{0};
      for (VertexId id : b.members) min_d = std::min(min_d, targets[id].degree);
      REQUIRE(b.members.size() <= static_cast<std::size_t>(min_d) + 1);
      REQUIRE(b.n_max == min_d + 1);
      // Undersized buckets only survive flagged.
      if (b.members.size() < b.n_min) REQUIRE(b.residual_tail);
      if (b.members.size() < 3) REQUIRE(b.residual_tail);
      // Monotone merge: nobody's bucket shrank.
      for (VertexId id : b.members) REQUIRE(b.members.size() >= pre_size[id]);
    }

    // Determinism: same targets give identical plans.
    const auto again = merge_incomplete_buckets(group_into_buckets(targets), targets);
    REQUIRE(again.size() == buckets.size());
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      CHECK(again[i].members == buckets[i].members);
      CHECK(again[i].ce_key == buckets[i].ce_key);
      CHECK(again[i].n_min == buckets[i].n_min);
      CHECK(again[i].n_max == buckets[i].n_max);
    }
  }
}
