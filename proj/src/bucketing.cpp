#include "graphgen/bucketing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace graphgen {

std::int64_t quantize_ce(double ce) { return std::llround(ce); }

namespace {

struct Forming {
  BucketPlan plan;
  Degree min_degree = std::numeric_limits<Degree>::max();
  double max_ce = 0.0;
};

std::uint32_t n_min_for(double max_ce) {
  // At least 3 vertices are needed before any triangle can exist at all.
  const auto bound = static_cast<std::uint32_t>(std::ceil(std::sqrt(max_ce)));
  return std::max<std::uint32_t>(3, bound);
}

void absorb(Forming& f, VertexId id, Degree degree, double ce) {
  f.plan.members.push_back(id);
  f.min_degree = std::min(f.min_degree, degree);
  f.max_ce = std::max(f.max_ce, ce);
}

BucketPlan finalize(Forming&& f) {
  BucketPlan plan = std::move(f.plan);
  plan.n_max = f.min_degree + 1;
  plan.n_min = n_min_for(f.max_ce);
  plan.full = plan.members.size() >= plan.n_max;
  return plan;
}

}  // namespace

std::vector<BucketPlan> group_into_buckets(std::span<const VertexTarget> targets) {
  std::vector<Forming> forming;
  std::unordered_map<std::int64_t, std::size_t> open_by_key;  // ce key -> forming index
  std::vector<BucketPlan> done;

  auto retire = [&](std::size_t idx) {
    done.push_back(finalize(std::move(forming[idx])));
    done.back().full = true;
  };

  for (const VertexTarget& t : targets) {
    if (t.degree < 2 || t.ce <= 0.0) continue;
    const std::int64_t key = quantize_ce(t.ce);

    auto it = open_by_key.find(key);
    if (it != open_by_key.end()) {
      Forming& f = forming[it->second];
      // Admit only if the bucket stays within min(d)+1 after the add.
      const std::size_t new_size = f.plan.members.size() + 1;
      const Degree new_min = std::min(f.min_degree, t.degree);
      if (new_size <= static_cast<std::size_t>(new_min) + 1) {
        absorb(f, t.id, t.degree, t.ce);
        if (f.plan.members.size() >= static_cast<std::size_t>(f.min_degree) + 1) {
          retire(it->second);
          open_by_key.erase(it);
        }
        continue;
      }
      // Would not fit: the open bucket is retired and a fresh one takes over.
      retire(it->second);
      open_by_key.erase(it);
    }

    Forming f;
    f.plan.ce_key = key;
    absorb(f, t.id, t.degree, t.ce);
    if (f.plan.members.size() >= static_cast<std::size_t>(f.min_degree) + 1) {
      done.push_back(finalize(std::move(f)));
      done.back().full = true;
    } else {
      forming.push_back(std::move(f));
      open_by_key[key] = forming.size() - 1;
    }
  }

  // Flush still-open buckets in creation order.
  std::vector<std::size_t> open_indices;
  for (const auto& [key, idx] : open_by_key) open_indices.push_back(idx);
  std::sort(open_indices.begin(), open_indices.end());
  for (std::size_t idx : open_indices) done.push_back(finalize(std::move(forming[idx])));

  for (std::size_t i = 0; i < done.size(); ++i)
    done[i].bucket_id = static_cast<std::uint32_t>(i);
  return done;
}

std::vector<BucketPlan> merge_incomplete_buckets(std::vector<BucketPlan> buckets,
                                                 std::span<const VertexTarget> targets) {
  std::vector<BucketPlan> out;
  std::vector<BucketPlan> undersized;
  for (auto& b : buckets) {
    if (b.members.size() < b.n_min) {
      undersized.push_back(std::move(b));
    } else {
      out.push_back(std::move(b));
    }
  }
  std::sort(undersized.begin(), undersized.end(), [](const BucketPlan& a, const BucketPlan& b) {
    return a.ce_key != b.ce_key ? a.ce_key < b.ce_key : a.bucket_id < b.bucket_id;
  });

  Forming forming;
  bool forming_active = false;
  auto close_forming = [&] {
    BucketPlan merged = finalize(std::move(forming));
    merged.full = true;
    merged.residual_tail = merged.members.size() < merged.n_min;
    out.push_back(std::move(merged));
    forming = Forming{};
    forming_active = false;
  };
  auto absorb_bucket = [&](BucketPlan& src) {
    if (!forming_active) {
      forming.plan.ce_key = src.ce_key;
      forming_active = true;
    }
    for (VertexId id : src.members)
      absorb(forming, id, targets[id].degree, targets[id].ce);
  };

  for (auto& b : undersized) {
    if (forming_active) {
      Degree b_min = std::numeric_limits<Degree>::max();
      for (VertexId id : b.members) b_min = std::min(b_min, targets[id].degree);
      const std::size_t size_after = forming.plan.members.size() + b.members.size();
      const Degree min_after = std::min(forming.min_degree, b_min);
      if (size_after > static_cast<std::size_t>(min_after) + 1) close_forming();
    }
    absorb_bucket(b);
  }
  if (forming_active) close_forming();

  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].bucket_id = static_cast<std::uint32_t>(i);
  return out;
}

}  // namespace graphgen
