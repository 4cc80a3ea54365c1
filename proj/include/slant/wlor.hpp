#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "slant/category.hpp"
#include "slant/corpus.hpp"
#include "slant/csv.hpp"
#include "slant/error.hpp"

namespace slant {

/// How the Dirichlet prior is built from the background histogram.
/// BackgroundCounts uses the raw counts directly (alpha_w = Z(w) + epsilon);
/// Scaled renormalizes them to a fixed total prior mass alpha0, for
/// sensitivity runs.
struct PriorConfig {
  enum class Mode { BackgroundCounts, Scaled };
  Mode mode = Mode::BackgroundCounts;
  double alpha0 = 500.0;
  double epsilon = 0.01;
};

inline const char* to_string(PriorConfig::Mode m) {
  return m == PriorConfig::Mode::BackgroundCounts ? "background_counts" : "scaled";
}

inline PriorConfig::Mode parse_prior_mode(const std::string& s) {
  if (s == "background_counts") return PriorConfig::Mode::BackgroundCounts;
  if (s == "scaled") return PriorConfig::Mode::Scaled;
  throw ArgumentError("unknown prior mode '" + s +
                      "' (expected background_counts or scaled)");
}

/// Per-word weighted log-odds result. z is delta normalized by the
/// estimated standard deviation; positive values favor the first (male)
/// source.
struct WlorEntry {
  std::string word;
  double z = 0.0;
  double delta = 0.0;
  std::int64_t count_x = 0;
  std::int64_t count_y = 0;
  std::int64_t count_z = 0;
};

/// Variance-weighted log-odds with an informative Dirichlet prior taken
/// from the background source. For each word in vocab(X) u vocab(Y):
///
///   alpha_w = Z(w) + eps                    (BackgroundCounts)
///           = alpha0 * (Z(w) + eps) / N_Z   (Scaled)
///   delta_w = ln[(X(w)+a_w)/(N_X + A - X(w) - a_w)]
///           - ln[(Y(w)+a_w)/(N_Y + A - Y(w) - a_w)]        with A = sum a_w
///   var_w   = 1/(X(w)+a_w) + 1/(Y(w)+a_w)
///   z_w     = delta_w / sqrt(var_w)
///
/// Entries come back sorted by z descending (ties broken by word). The
/// computation is exactly antisymmetric under swapping X and Y.
inline std::vector<WlorEntry> wlor_scores(const LexicalHistogram& x,
                                          const LexicalHistogram& y,
                                          const LexicalHistogram& z,
                                          const PriorConfig& prior = {}) {
  if (prior.epsilon <= 0.0)
    throw ArgumentError("wlor_scores: epsilon must be positive");
  if (prior.mode == PriorConfig::Mode::Scaled) {
    if (prior.alpha0 <= 0.0)
      throw ArgumentError("wlor_scores: alpha0 must be positive");
    if (z.total <= 0)
      throw ArgumentError(
          "wlor_scores: scaled prior requires a nonempty background source");
  }

  std::set<std::string> vocab;
  for (const auto& [w, n] : x.counts) vocab.insert(w);
  for (const auto& [w, n] : y.counts) vocab.insert(w);
  if (vocab.empty()) return {};

  auto alpha_of = [&](const std::string& w) {
    double base = static_cast<double>(z.count(w)) + prior.epsilon;
    if (prior.mode == PriorConfig::Mode::Scaled)
      return prior.alpha0 * base / static_cast<double>(z.total);
    return base;
  };

  double alpha_total = 0.0;
  for (const auto& w : vocab) alpha_total += alpha_of(w);

  const double total_x = static_cast<double>(x.total);
  const double total_y = static_cast<double>(y.total);

  std::vector<WlorEntry> out;
  out.reserve(vocab.size());
  for (const auto& w : vocab) {
    const double aw = alpha_of(w);
    const double xw = static_cast<double>(x.count(w));
    const double yw = static_cast<double>(y.count(w));
    const double delta = std::log((xw + aw) / (total_x + alpha_total - xw - aw)) -
                         std::log((yw + aw) / (total_y + alpha_total - yw - aw));
    const double var = 1.0 / (xw + aw) + 1.0 / (yw + aw);
    WlorEntry e;
    e.word = w;
    e.delta = delta;
    e.z = delta / std::sqrt(var);
    e.count_x = x.count(w);
    e.count_y = y.count(w);
    e.count_z = z.count(w);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const WlorEntry& a, const WlorEntry& b) {
    if (a.z != b.z) return a.z > b.z;
    return a.word < b.word;
  });
  return out;
}

/// The two most-gendered word lists. male_words is ordered by descending z
/// (all z > 0), female_words by ascending z (all z < 0); the lists are
/// disjoint by construction.
struct GenderedWordSets {
  std::vector<std::string> male_words;
  std::vector<std::string> female_words;
  int k_each = 0;

  bool contains(const std::string& w) const {
    return std::find(male_words.begin(), male_words.end(), w) != male_words.end() ||
           std::find(female_words.begin(), female_words.end(), w) != female_words.end();
  }
  std::unordered_set<std::string> as_set() const {
    std::unordered_set<std::string> s(male_words.begin(), male_words.end());
    s.insert(female_words.begin(), female_words.end());
    return s;
  }
};

/// Takes the k largest-z and k smallest-z words after dropping the
/// exclusion list (pronouns and configured boilerplate terms). Only
/// strictly positive z qualifies for the male list and strictly negative
/// for the female list; ties break lexicographically.
inline GenderedWordSets top_gendered(
    const std::vector<WlorEntry>& entries, int k_each,
    const std::unordered_set<std::string>& exclusions = {}) {
  if (k_each < 1) throw ArgumentError("top_gendered: k_each must be >= 1");
  std::vector<const WlorEntry*> kept;
  kept.reserve(entries.size());
  for (const auto& e : entries)
    if (exclusions.count(e.word) == 0) kept.push_back(&e);

  GenderedWordSets sets;
  sets.k_each = k_each;

  std::vector<const WlorEntry*> male;
  std::vector<const WlorEntry*> female;
  for (const auto* e : kept) {
    if (e->z > 0.0) male.push_back(e);
    else if (e->z < 0.0) female.push_back(e);
  }
  std::sort(male.begin(), male.end(), [](const WlorEntry* a, const WlorEntry* b) {
    if (a->z != b->z) return a->z > b->z;
    return a->word < b->word;
  });
  std::sort(female.begin(), female.end(), [](const WlorEntry* a, const WlorEntry* b) {
    if (a->z != b->z) return a->z < b->z;
    return a->word < b->word;
  });
  if (male.size() > static_cast<std::size_t>(k_each)) male.resize(k_each);
  if (female.size() > static_cast<std::size_t>(k_each)) female.resize(k_each);
  for (const auto* e : male) sets.male_words.push_back(e->word);
  for (const auto* e : female) sets.female_words.push_back(e->word);
  return sets;
}

/// Writes the annotation worksheet: word,z with an empty category column
/// the analyst fills in. Male words first (descending z), then female.
inline void export_for_theming(const GenderedWordSets& sets,
                               const std::vector<WlorEntry>& entries,
                               const std::filesystem::path& path) {
  std::map<std::string, double> zmap;
  for (const auto& e : entries) zmap[e.word] = e.z;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write theming file: " + path.string());
  out << "word,z,category\n";
  char buf[64];
  auto row = [&](const std::string& w) {
    std::snprintf(buf, sizeof buf, "%.6f", zmap.count(w) ? zmap[w] : 0.0);
    out << w << ',' << buf << ",\n";
  };
  for (const auto& w : sets.male_words) row(w);
  for (const auto& w : sets.female_words) row(w);
}

struct ThemedImport {
  std::vector<BiasCategory> categories;
  std::vector<std::string> warnings;
};

/// Reads an annotated theming file back. Rows with an empty category are
/// ignored; rows naming words outside the gendered sets are skipped with a
/// warning. Categories come back in first-appearance order.
inline ThemedImport import_themed_categories(const std::filesystem::path& path,
                                             const GenderedWordSets& sets) {
  ThemedImport result;
  auto rows = csv::read_file(path, "word,z,category");
  auto in_sets = sets.as_set();
  std::unordered_set<std::string> male(sets.male_words.begin(),
                                       sets.male_words.end());
  std::vector<std::string> order;
  std::map<std::string, BiasCategory> by_name;
  for (const auto& row : rows) {
    if (row.fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 3 fields, got " +
                      std::to_string(row.fields.size()));
    const std::string& word = row.fields[0];
    const std::string& cat = row.fields[2];
    if (cat.empty()) continue;
    if (in_sets.count(word) == 0) {
      result.warnings.push_back(path.filename().string() + ":" +
                                std::to_string(row.lineno) + ": word '" + word +
                                "' is not in the gendered word sets; skipped");
      continue;
    }
    auto it = by_name.find(cat);
    if (it == by_name.end()) {
      BiasCategory c;
      c.name = cat;
      c.provenance = BiasCategory::Provenance::Manual;
      it = by_name.emplace(cat, std::move(c)).first;
      order.push_back(cat);
    }
    auto& words = it->second.words;
    if (std::find(words.begin(), words.end(), word) == words.end()) {
      words.push_back(word);
      if (male.count(word)) ++it->second.n_male_side;
      else ++it->second.n_female_side;
    }
  }
  for (const auto& name : order) result.categories.push_back(by_name[name]);
  return result;
}

}  // namespace slant
