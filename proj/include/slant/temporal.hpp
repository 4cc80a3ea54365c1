#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "slant/corpus.hpp"
#include "slant/csv.hpp"
#include "slant/error.hpp"
#include "slant/fixtures.hpp"
#include "slant/kmeans.hpp"
#include "slant/sgns.hpp"
#include "slant/stats.hpp"
#include "slant/weat.hpp"
#include "slant/wlor.hpp"

namespace slant {

struct LaborRecord {
  int year = 0;
  double pct_women = 0.0;  // fraction in [0, 1]
  double pct_men = 0.0;
};

/// Workforce slant: share of women minus share of men. Zero means the
/// workforce is evenly split.
inline double labor_slant(const LaborRecord& rec) {
  return rec.pct_women - rec.pct_men;
}

/// CSV with header year,pct_women,pct_men; fractions in [0, 1]. Returned
/// sorted by year.
inline std::vector<LaborRecord> load_labor_csv(const std::filesystem::path& path) {
  auto rows = csv::read_file(path, "year,pct_women,pct_men");
  std::vector<LaborRecord> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 3 fields");
    LaborRecord r;
    r.year = static_cast<int>(csv::to_int(row.fields[0], path, row.lineno));
    r.pct_women = csv::to_double(row.fields[1], path, row.lineno);
    r.pct_men = csv::to_double(row.fields[2], path, row.lineno);
    if (r.pct_women < 0.0 || r.pct_women > 1.0 || r.pct_men < 0.0 ||
        r.pct_men > 1.0)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": fractions must be in [0, 1]");
    out.push_back(r);
  }
  if (out.empty()) throw DataError(path.string() + ": no labor records");
  std::sort(out.begin(), out.end(),
            [](const LaborRecord& a, const LaborRecord& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].year == out[i - 1].year)
      throw DataError(path.string() + ": duplicate year " +
                      std::to_string(out[i].year));
  return out;
}

/// Labor slant at an arbitrary (possibly fractional) year: linear
/// interpolation between the surrounding records, clamped to the first and
/// last record outside the covered range.
inline double labor_slant_at(const std::vector<LaborRecord>& series, double year) {
  if (series.empty()) throw ArgumentError("labor series is empty");
  if (year <= series.front().year) return labor_slant(series.front());
  if (year >= series.back().year) return labor_slant(series.back());
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (year <= series[i].year) {
      const LaborRecord& a = series[i - 1];
      const LaborRecord& b = series[i];
      const double t = (year - a.year) / static_cast<double>(b.year - a.year);
      return labor_slant(a) + t * (labor_slant(b) - labor_slant(a));
    }
  }
  return labor_slant(series.back());
}

struct TimeSeriesPoint {
  int slice_start = 0;
  int slice_end = 0;
  std::string category_name;
  double bias = 0.0;
  double abs_bias = 0.0;
  bool significant = false;
  bool sparse = false;
  std::size_t n_sentences_male = 0;
  std::size_t n_sentences_female = 0;

  double midpoint_year() const { return (slice_start + slice_end) / 2.0; }
};

enum class TimelineMethod { Manual, Kmeans };

inline TimelineMethod parse_timeline_method(const std::string& s) {
  if (s == "manual") return TimelineMethod::Manual;
  if (s == "kmeans") return TimelineMethod::Kmeans;
  throw ArgumentError("unknown timeline method '" + s +
                      "' (expected manual or kmeans)");
}

struct TimelineConfig {
  int slice_years = 5;
  int start_year = 0;
  int end_year = 0;

  TimelineMethod method = TimelineMethod::Manual;
  std::vector<BiasCategory> manual_categories;  // re-scored per slice

  int k_each = 250;
  std::unordered_set<std::string> exclusions;  // pronouns + boilerplate
  int kmeans_k = 300;
  int min_cluster_members = 5;

  // Base pairs are re-derived per slice from a pronoun-inclusive top-k list
  // unless fixed_pairs is set.
  std::vector<std::pair<std::string, std::string>> pair_candidates =
      fixtures::default_pair_candidates();
  std::unordered_set<std::string> family_exclusions =
      fixtures::default_family_exclusions();
  std::optional<GenderPairSet> fixed_pairs;

  std::size_t top_n_significance = 20000;
  std::int64_t sparse_floor_tokens = 1000;  // per gender side

  PriorConfig prior;
  TrainConfig train;
};

namespace detail {

inline GenderPairSet prune_to_vocab(const GenderPairSet& gp, const Embedding& emb) {
  GenderPairSet out;
  for (const auto& pr : gp.pairs)
    if (emb.has(pr.first) && emb.has(pr.second)) out.pairs.push_back(pr);
  if (out.pairs.empty())
    throw DataError("no gender pair is fully inside the slice vocabulary");
  return out;
}

}  // namespace detail

/// Runs the whole pipeline once per time slice: gendered corpora, WLOR,
/// word sets, a freshly trained slice embedding, per-slice base pairs and
/// significance model, then one scored point per category. Slices with
/// fewer than sparse_floor_tokens tokens on either gender side are flagged
/// sparse; when such a slice cannot be scored at all it is emitted with
/// zero bias.
inline std::vector<TimeSeriesPoint> run_timeline(const std::vector<Document>& docs,
                                                 const GenderLexicon& lex,
                                                 const TimelineConfig& cfg) {
  if (cfg.method == TimelineMethod::Manual && cfg.manual_categories.empty())
    throw ArgumentError("run_timeline: manual method needs categories");

  auto slices = slice_by_period(docs, cfg.slice_years, cfg.start_year, cfg.end_year);
  std::size_t usable = 0;
  for (const auto& s : slices)
    if (!s.documents.empty()) ++usable;
  if (usable < 2)
    throw DataError("timeline error: corpus spans " + std::to_string(usable) +
                    " slice(s); need at least 2");

  std::vector<TimeSeriesPoint> points;
  for (std::size_t si = 0; si < slices.size(); ++si) {
    const CorpusSlice& slice = slices[si];
    if (slice.documents.empty()) continue;

    GenderedCorpora corpora = build_gendered_corpora(slice.documents, lex,
                                                     cfg.train.n_threads);
    const bool sparse = corpora.male.total < cfg.sparse_floor_tokens ||
                        corpora.female.total < cfg.sparse_floor_tokens;

    auto base_point = [&](const std::string& name) {
      TimeSeriesPoint p;
      p.slice_start = slice.start_year;
      p.slice_end = slice.end_year;
      p.category_name = name;
      p.sparse = sparse;
      p.n_sentences_male = corpora.n_male_sentences;
      p.n_sentences_female = corpora.n_female_sentences;
      return p;
    };

    try {
      auto entries = wlor_scores(corpora.male, corpora.female, corpora.background,
                                 cfg.prior);
      auto sets = top_gendered(entries, cfg.k_each, cfg.exclusions);
      // Pair derivation must see pronouns, so it uses an unfiltered list.
      auto pair_sets = top_gendered(entries, cfg.k_each);

      TrainConfig tc = cfg.train;
      tc.seed = cfg.train.seed + si;
      Embedding emb = train_skipgram(corpus_sentences(slice.documents), tc);

      GenderPairSet pairs =
          cfg.fixed_pairs
              ? detail::prune_to_vocab(*cfg.fixed_pairs, emb)
              : detail::prune_to_vocab(
                    derive_base_pairs(pair_sets, cfg.pair_candidates,
                                      cfg.family_exclusions),
                    emb);
      pairs.validate(emb);
      SignificanceModel model = significance_model(emb, pairs, cfg.top_n_significance);

      std::vector<BiasCategory> categories;
      if (cfg.method == TimelineMethod::Manual) {
        categories = cfg.manual_categories;
      } else {
        int k = std::min<int>(cfg.kmeans_k, static_cast<int>(emb.size()));
        ClusterSet cs = kmeans(emb, k, tc.seed, 100, false, cfg.train.n_threads);
        categories = filter_gendered_clusters(cs, sets, cfg.min_cluster_members);
      }

      for (const auto& cat : categories) {
        TimeSeriesPoint p = base_point(cat.name);
        WeatResult r = bias_score(emb, cat, pairs);
        p.bias = r.bias;
        p.abs_bias = std::abs(r.bias);
        p.significant = classify(r, model) == Significance::Significant;
        points.push_back(std::move(p));
      }
    } catch (const Error&) {
      if (!sparse) throw;  // a well-populated slice must score cleanly
      if (cfg.method == TimelineMethod::Manual)
        for (const auto& cat : cfg.manual_categories)
          points.push_back(base_point(cat.name));
    }
  }
  return points;
}

enum class RegressionMode { Levels, FirstDifferences };

inline RegressionMode parse_regression_mode(const std::string& s) {
  if (s == "levels") return RegressionMode::Levels;
  if (s == "diff") return RegressionMode::FirstDifferences;
  throw ArgumentError("unknown regression mode '" + s +
                      "' (expected levels or diff)");
}

struct TimelineRegression {
  RegressionResult result;
  std::vector<std::pair<double, double>> used;  // (x, y) pairs fed to OLS
  RegressionMode mode = RegressionMode::Levels;
  bool swapped_axes = false;
  std::string category;
};

/// Pairs each non-sparse point of one category with the labor slant at its
/// slice midpoint and regresses absolute bias on labor slant (or the
/// swapped orientation). FirstDifferences regresses consecutive changes
/// instead of levels.
inline TimelineRegression regress_timeline(const std::vector<TimeSeriesPoint>& points,
                                           const std::vector<LaborRecord>& labor,
                                           const std::string& category,
                                           RegressionMode mode = RegressionMode::Levels,
                                           bool swap_axes = false) {
  TimelineRegression out;
  out.mode = mode;
  out.swapped_axes = swap_axes;
  out.category = category;

  std::vector<std::pair<double, double>> series;  // (labor slant, abs bias)
  for (const auto& p : points) {
    if (p.sparse || p.category_name != category) continue;
    series.emplace_back(labor_slant_at(labor, p.midpoint_year()), p.abs_bias);
  }
  if (mode == RegressionMode::FirstDifferences) {
    std::vector<std::pair<double, double>> diffs;
    for (std::size_t i = 1; i < series.size(); ++i)
      diffs.emplace_back(series[i].first - series[i - 1].first,
                         series[i].second - series[i - 1].second);
    series = std::move(diffs);
  }
  if (swap_axes)
    for (auto& [x, y] : series) std::swap(x, y);
  if (series.size() < 3)
    throw DataError("timeline regression needs at least 3 usable points, got " +
                    std::to_string(series.size()));
  out.used = series;
  out.result = ols_regress(series);
  return out;
}

}  // namespace slant
