#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "slant/category.hpp"
#include "slant/embedding.hpp"
#include "slant/error.hpp"
#include "slant/wlor.hpp"

namespace slant {

/// Ordered (male term, female term) attribute pairs. Terms must exist in
/// the embedding at score time and no term may appear on both sides.
struct GenderPairSet {
  std::vector<std::pair<std::string, std::string>> pairs;

  std::vector<std::string> male_terms() const {
    std::vector<std::string> t;
    t.reserve(pairs.size());
    for (const auto& p : pairs) t.push_back(p.first);
    return t;
  }
  std::vector<std::string> female_terms() const {
    std::vector<std::string> t;
    t.reserve(pairs.size());
    for (const auto& p : pairs) t.push_back(p.second);
    return t;
  }

  void validate(const Embedding& emb) const {
    if (pairs.empty()) throw ArgumentError("gender pair set is empty");
    std::unordered_set<std::string> male, female;
    for (const auto& [m, f] : pairs) {
      male.insert(m);
      female.insert(f);
    }
    for (const auto& [m, f] : pairs) {
      if (female.count(m))
        throw DataError("gender pair term '" + m + "' appears on both sides");
      if (male.count(f))
        throw DataError("gender pair term '" + f + "' appears on both sides");
    }
    for (const auto& [m, f] : pairs) {
      emb.index_of(m);
      emb.index_of(f);
    }
  }
};

/// Mean cosine similarity of `w` to the male terms minus mean cosine to
/// the female terms. Positive values lean male.
inline double word_slant(const Embedding& emb, const std::string& w,
                         const GenderPairSet& gp) {
  if (gp.pairs.empty()) throw ArgumentError("gender pair set is empty");
  const auto wv = emb.vec(w);
  double male_sum = 0.0;
  double female_sum = 0.0;
  for (const auto& [m, f] : gp.pairs) {
    male_sum += cosine(wv, emb.vec(m));
    female_sum += cosine(wv, emb.vec(f));
  }
  const double n = static_cast<double>(gp.pairs.size());
  return male_sum / n - female_sum / n;
}

enum class Direction { Male, Female, None };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::Male: return "male";
    case Direction::Female: return "female";
    default: return "none";
  }
}

struct WeatResult {
  BiasCategory category;
  double bias = 0.0;
  Direction direction = Direction::None;
  std::vector<std::pair<std::string, double>> per_word;  // in-vocab words
  std::vector<std::string> skipped_oov;
  GenderPairSet gender_pairs_used;
};

/// Category bias: the mean slant over the category words present in the
/// embedding. Out-of-vocabulary words are skipped and listed.
inline WeatResult bias_score(const Embedding& emb, const BiasCategory& cat,
                             const GenderPairSet& gp) {
  WeatResult r;
  r.category = cat;
  r.gender_pairs_used = gp;
  double sum = 0.0;
  for (const auto& w : cat.words) {
    if (!emb.has(w)) {
      r.skipped_oov.push_back(w);
      continue;
    }
    double s = word_slant(emb, w, gp);
    r.per_word.emplace_back(w, s);
    sum += s;
  }
  if (r.per_word.empty())
    throw DataError("bias_score: no word of category '" + cat.name +
                    "' is in the embedding vocabulary");
  r.bias = sum / static_cast<double>(r.per_word.size());
  r.direction = r.bias > 0.0   ? Direction::Male
                : r.bias < 0.0 ? Direction::Female
                               : Direction::None;
  return r;
}

/// Empirical slant distribution over the most frequent vocabulary words;
/// the yardstick significance is measured against.
struct SignificanceModel {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n_words = 0;
};

/// Mean and sample standard deviation of the signed slant of the `top_n`
/// most frequent words. Requires frequency data (train or sidecar).
inline SignificanceModel significance_model(const Embedding& emb,
                                            const GenderPairSet& gp,
                                            std::size_t top_n = 20000) {
  if (!emb.has_frequency())
    throw DataError(
        "significance_model: embedding has no frequency data; import the "
        "word,count sidecar first");
  gp.validate(emb);

  std::vector<std::size_t> order(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ca = emb.frequency.at(emb.words[a]);
    auto cb = emb.frequency.at(emb.words[b]);
    if (ca != cb) return ca > cb;
    return emb.words[a] < emb.words[b];
  });
  if (order.size() > top_n) order.resize(top_n);
  if (order.size() < 2)
    throw DataError("significance_model: needs at least 2 vocabulary words");

  std::vector<double> slants;
  slants.reserve(order.size());
  for (std::size_t i : order) slants.push_back(word_slant(emb, emb.words[i], gp));

  SignificanceModel m;
  m.n_words = slants.size();
  double sum = 0.0;
  for (double s : slants) sum += s;
  m.mean = sum / static_cast<double>(slants.size());
  double ss = 0.0;
  for (double s : slants) ss += (s - m.mean) * (s - m.mean);
  m.stddev = std::sqrt(ss / static_cast<double>(slants.size() - 1));
  if (m.stddev <= 0.0)
    throw DataError("significance_model: degenerate slant distribution");
  return m;
}

enum class Significance { Significant, NotSignificant };

/// Significant iff the bias sits at least one standard deviation away
/// from the embedding-wide mean.
inline Significance classify(double bias, const SignificanceModel& model) {
  return std::abs(bias - model.mean) >= model.stddev
             ? Significance::Significant
             : Significance::NotSignificant;
}

inline Significance classify(const WeatResult& r, const SignificanceModel& model) {
  return classify(r.bias, model);
}

/// Per-(word, pair) slant table for one category, with the two robustness
/// verdicts: do all pairs agree on every word's direction, and does no
/// word's slant spread across pairs reach one standard deviation.
struct StabilityReport {
  std::vector<std::string> words;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<double> slants;  // words x pairs, row-major
  double direction_consistency_rate = 1.0;
  bool magnitude_stable = true;
  struct Offender {
    std::string word;
    std::string reason;
    double min_slant = 0.0;
    double max_slant = 0.0;
  };
  std::vector<Offender> offending;

  double slant(std::size_t word_i, std::size_t pair_j) const {
    return slants[word_i * pairs.size() + pair_j];
  }
};

inline StabilityReport base_pair_stability(const Embedding& emb,
                                           const BiasCategory& cat,
                                           const GenderPairSet& gp,
                                           const SignificanceModel& model) {
  StabilityReport rep;
  rep.pairs = gp.pairs;
  for (const auto& w : cat.words)
    if (emb.has(w)) rep.words.push_back(w);
  if (rep.words.empty())
    throw DataError("base_pair_stability: no word of category '" + cat.name +
                    "' is in the embedding vocabulary");

  rep.slants.reserve(rep.words.size() * rep.pairs.size());
  for (const auto& w : rep.words) {
    for (const auto& pr : rep.pairs) {
      GenderPairSet single;
      single.pairs.push_back(pr);
      rep.slants.push_back(word_slant(emb, w, single));
    }
  }

  std::size_t consistent = 0;
  for (std::size_t i = 0; i < rep.words.size(); ++i) {
    double lo = rep.slant(i, 0);
    double hi = lo;
    bool uniform = true;
    int first_sign = rep.slant(i, 0) > 0 ? 1 : rep.slant(i, 0) < 0 ? -1 : 0;
    for (std::size_t j = 1; j < rep.pairs.size(); ++j) {
      double s = rep.slant(i, j);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      int sign = s > 0 ? 1 : s < 0 ? -1 : 0;
      if (sign != first_sign) uniform = false;
    }
    if (uniform) {
      ++consistent;
    } else {
      rep.offending.push_back({rep.words[i], "direction flips across pairs", lo, hi});
    }
    if (hi - lo >= model.stddev) {
      rep.magnitude_stable = false;
      rep.offending.push_back({rep.words[i], "slant spread reaches one stddev", lo, hi});
    }
  }
  rep.direction_consistency_rate =
      static_cast<double>(consistent) / static_cast<double>(rep.words.size());
  return rep;
}

/// Keeps a candidate pair iff both members made the gendered top-k lists
/// and neither is a family term (family words carry non-gender context and
/// poison the attribute axis).
inline GenderPairSet derive_base_pairs(
    const GenderedWordSets& sets,
    const std::vector<std::pair<std::string, std::string>>& candidates,
    const std::unordered_set<std::string>& family_exclusions) {
  auto in_sets = sets.as_set();
  GenderPairSet gp;
  for (const auto& [m, f] : candidates) {
    if (family_exclusions.count(m) || family_exclusions.count(f)) continue;
    if (in_sets.count(m) == 0 || in_sets.count(f) == 0) continue;
    gp.pairs.emplace_back(m, f);
  }
  if (gp.pairs.empty())
    throw DataError(
        "derive_base_pairs: no candidate pair survives the top-k and family "
        "filters");
  return gp;
}

}  // namespace slant
