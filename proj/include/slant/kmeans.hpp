#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "slant/category.hpp"
#include "slant/embedding.hpp"
#include "slant/error.hpp"
#include "slant/parallel.hpp"
#include "slant/rng.hpp"
#include "slant/wlor.hpp"

namespace slant {

struct ClusterSet {
  int k = 0;
  std::size_t dim = 0;
  std::unordered_map<std::string, int> assignments;  // token -> cluster id
  std::vector<double> centroids;                     // k x dim, row-major
  double inertia = 0.0;
  // Cost recorded at the start of every Lloyd iteration; non-increasing.
  std::vector<double> inertia_history;
};

namespace detail {

inline double sq_dist(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding on Euclidean distance.
/// Deterministic for a fixed seed: the assignment pass and the centroid
/// update both run over fixed-size chunks whose partial results are
/// combined in chunk order, so the outcome is identical for any worker
/// count. An emptied cluster is re-seeded to the point that is currently
/// farthest from its own centroid.
inline ClusterSet kmeans(const Embedding& emb, int k, std::uint64_t seed,
                         int max_iters = 100, bool normalize_first = false,
                         unsigned n_threads = 0) {
  const std::size_t n = emb.size();
  const std::size_t d = emb.dim;
  if (k < 1) throw ArgumentError("kmeans: k must be >= 1");
  if (static_cast<std::size_t>(k) > n)
    throw ArgumentError("kmeans: k = " + std::to_string(k) +
                        " exceeds vocabulary size " + std::to_string(n));

  std::vector<double> points = emb.vectors;
  if (normalize_first) {
    for (std::size_t i = 0; i < n; ++i) {
      double* p = points.data() + i * d;
      double len = 0.0;
      for (std::size_t j = 0; j < d; ++j) len += p[j] * p[j];
      len = std::sqrt(len);
      if (len > 0.0)
        for (std::size_t j = 0; j < d; ++j) p[j] /= len;
    }
  }
  auto point = [&](std::size_t i) { return points.data() + i * d; };

  // k-means++ seeding.
  Rng rng(seed);
  std::vector<double> centroids(static_cast<std::size_t>(k) * d);
  std::vector<double> min_sq(n, std::numeric_limits<double>::infinity());
  {
    std::size_t first = rng.uniform_index(n);
    std::copy_n(point(first), d, centroids.data());
    for (std::size_t i = 0; i < n; ++i)
      min_sq[i] = detail::sq_dist(point(i), centroids.data(), d);
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (double w : min_sq) total += w;
      std::size_t chosen;
      if (total > 0.0) {
        double r = rng.uniform() * total;
        double acc = 0.0;
        chosen = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += min_sq[i];
          if (acc >= r) {
            chosen = i;
            break;
          }
        }
      } else {
        chosen = rng.uniform_index(n);  // all points coincide with a centroid
      }
      double* dst = centroids.data() + static_cast<std::size_t>(c) * d;
      std::copy_n(point(chosen), d, dst);
      for (std::size_t i = 0; i < n; ++i)
        min_sq[i] = std::min(min_sq[i], detail::sq_dist(point(i), dst, d));
    }
  }

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = chunk_count(n, kChunk);
  std::vector<int> assign(n, -1);
  std::vector<double> chunk_cost(chunks);
  std::vector<double> chunk_sums;
  std::vector<std::int64_t> chunk_counts;

  ClusterSet cs;
  cs.k = k;
  cs.dim = d;

  auto assign_pass = [&]() {
    for_each_chunk(n, kChunk, n_threads,
                   [&](std::size_t c, std::size_t begin, std::size_t end) {
                     double cost = 0.0;
                     for (std::size_t i = begin; i < end; ++i) {
                       double best = std::numeric_limits<double>::infinity();
                       int best_c = 0;
                       for (int j = 0; j < k; ++j) {
                         double dd = detail::sq_dist(
                             point(i), centroids.data() + static_cast<std::size_t>(j) * d, d);
                         if (dd < best) {
                           best = dd;
                           best_c = j;
                         }
                       }
                       assign[i] = best_c;
                       cost += best;
                     }
                     chunk_cost[c] = cost;
                   });
    double total = 0.0;
    for (double c : chunk_cost) total += c;
    return total;
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> previous = assign;
    double cost = assign_pass();

    // Re-seed any emptied cluster to the worst-fit point.
    std::vector<std::int64_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[assign[i]];
    for (int j = 0; j < k; ++j) {
      if (sizes[j] != 0) continue;
      std::size_t worst = n;
      double worst_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assign[i]] < 2) continue;
        double dd = detail::sq_dist(
            point(i), centroids.data() + static_cast<std::size_t>(assign[i]) * d, d);
        if (dd > worst_d) {
          worst_d = dd;
          worst = i;
        }
      }
      if (worst == n) continue;  // nothing stealable
      cost -= worst_d;
      --sizes[assign[worst]];
      assign[worst] = j;
      ++sizes[j];
      std::copy_n(point(worst), d, centroids.data() + static_cast<std::size_t>(j) * d);
    }

    cs.inertia_history.push_back(cost);
    cs.inertia = cost;
    if (assign == previous) break;

    // Update step: per-chunk partial sums, combined in chunk order.
    chunk_sums.assign(chunks * static_cast<std::size_t>(k) * d, 0.0);
    chunk_counts.assign(chunks * static_cast<std::size_t>(k), 0);
    for_each_chunk(n, kChunk, n_threads,
                   [&](std::size_t c, std::size_t begin, std::size_t end) {
                     double* sums = chunk_sums.data() + c * static_cast<std::size_t>(k) * d;
                     std::int64_t* cnts = chunk_counts.data() + c * static_cast<std::size_t>(k);
                     for (std::size_t i = begin; i < end; ++i) {
                       const double* p = point(i);
                       double* dst = sums + static_cast<std::size_t>(assign[i]) * d;
                       for (std::size_t jj = 0; jj < d; ++jj) dst[jj] += p[jj];
                       ++cnts[assign[i]];
                     }
                   });
    for (int j = 0; j < k; ++j) {
      std::int64_t count = 0;
      std::vector<double> sum(d, 0.0);
      for (std::size_t c = 0; c < chunks; ++c) {
        count += chunk_counts[c * static_cast<std::size_t>(k) + j];
        const double* s = chunk_sums.data() +
                          (c * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)) * d;
        for (std::size_t jj = 0; jj < d; ++jj) sum[jj] += s[jj];
      }
      if (count > 0) {
        double* dst = centroids.data() + static_cast<std::size_t>(j) * d;
        for (std::size_t jj = 0; jj < d; ++jj)
          dst[jj] = sum[jj] / static_cast<double>(count);
      }
    }
  }

  cs.centroids = std::move(centroids);
  cs.assignments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) cs.assignments.emplace(emb.words[i], assign[i]);
  return cs;
}

/// Intersects every cluster with the gendered word sets and keeps the
/// intersections with at least min_members words, naming them after their
/// cluster. Word lists come back lexicographically sorted, categories in
/// cluster-id order.
inline std::vector<BiasCategory> filter_gendered_clusters(
    const ClusterSet& cs, const GenderedWordSets& sets, int min_members = 5) {
  std::unordered_set<std::string> male(sets.male_words.begin(),
                                       sets.male_words.end());
  std::unordered_set<std::string> female(sets.female_words.begin(),
                                         sets.female_words.end());
  std::vector<std::vector<std::string>> members(cs.k);
  for (const auto& [word, id] : cs.assignments)
    if (male.count(word) || female.count(word)) members[id].push_back(word);

  std::vector<BiasCategory> out;
  for (int id = 0; id < cs.k; ++id) {
    if (members[id].size() < static_cast<std::size_t>(min_members)) continue;
    BiasCategory cat;
    cat.name = "cluster_" + std::to_string(id);
    cat.provenance = BiasCategory::Provenance::Kmeans;
    cat.source_cluster = id;
    std::sort(members[id].begin(), members[id].end());
    cat.words = std::move(members[id]);
    for (const auto& w : cat.words) {
      if (male.count(w)) ++cat.n_male_side;
      else ++cat.n_female_side;
    }
    out.push_back(std::move(cat));
  }
  return out;
}

}  // namespace slant
