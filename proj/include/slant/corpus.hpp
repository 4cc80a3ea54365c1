#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "slant/error.hpp"
#include "slant/parallel.hpp"

namespace slant {

enum class GenderTag { Male, Female, Mixed, Neutral };

inline const char* to_string(GenderTag t) {
  switch (t) {
    case GenderTag::Male: return "male";
    case GenderTag::Female: return "female";
    case GenderTag::Mixed: return "mixed";
    default: return "neutral";
  }
}

/// One dated text unit. Year 0 means the date could not be determined;
/// such documents take part in whole-corpus statistics but are dropped
/// by time slicing.
struct Document {
  std::string id;
  int year = 0;
  int month = 0;  // 0 = unknown
  int day = 0;    // 0 = unknown
  std::string text;
};

struct Sentence {
  std::string doc_id;
  std::string text;
  std::vector<std::string> tokens;
  GenderTag tag = GenderTag::Neutral;
};

/// Marker sets used to tag sentences. The four sets must be pairwise
/// disjoint and contain only valid tokens (lowercase alphabetic, length >= 2).
struct GenderLexicon {
  std::unordered_set<std::string> male_pronouns;
  std::unordered_set<std::string> female_pronouns;
  std::unordered_set<std::string> male_names;
  std::unordered_set<std::string> female_names;

  bool male_marker(const std::string& tok) const {
    return male_pronouns.count(tok) != 0 || male_names.count(tok) != 0;
  }
  bool female_marker(const std::string& tok) const {
    return female_pronouns.count(tok) != 0 || female_names.count(tok) != 0;
  }

  void validate() const;
};

/// Bag-of-words count table for one sub-corpus. Zero-count entries are
/// never stored; total always equals the sum of the stored counts.
struct LexicalHistogram {
  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;

  void add(const std::string& tok, std::int64_t n = 1) {
    if (n <= 0) return;
    counts[tok] += n;
    total += n;
  }
  std::int64_t count(const std::string& tok) const {
    auto it = counts.find(tok);
    return it == counts.end() ? 0 : it->second;
  }
  void merge(const LexicalHistogram& other) {
    for (const auto& [tok, n] : other.counts) counts[tok] += n;
    total += other.total;
  }
  bool empty() const { return counts.empty(); }
};

struct CorpusSlice {
  int start_year = 0;
  int end_year = 0;  // inclusive
  std::vector<Document> documents;
};

inline bool is_valid_token(std::string_view tok) {
  if (tok.size() < 2) return false;
  for (char c : tok)
    if (c < 'a' || c > 'z') return false;
  return true;
}

/// Lowercases, splits on every non-alphabetic byte, and drops fragments
/// shorter than two characters. Total function; order preserved.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') {
      cur.push_back(c);
    } else if (!cur.empty()) {
      if (cur.size() >= 2) out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (cur.size() >= 2) out.push_back(std::move(cur));
  return out;
}

inline void GenderLexicon::validate() const {
  const std::unordered_set<std::string>* sets[4] = {
      &male_pronouns, &female_pronouns, &male_names, &female_names};
  const char* names[4] = {"male_pronouns", "female_pronouns", "male_names",
                          "female_names"};
  for (int i = 0; i < 4; ++i)
    for (const auto& tok : *sets[i])
      if (!is_valid_token(tok))
        throw DataError("gender lexicon: invalid token '" + tok + "' in " +
                        names[i]);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (const auto& tok : *sets[i])
        if (sets[j]->count(tok))
          throw DataError("gender lexicon: '" + tok + "' appears in both " +
                          names[i] + " and " + names[j]);
}

/// Splits on '.', '?' or '!' followed by whitespace or end of text.
/// Abbreviation false positives are accepted; downstream statistics are
/// bag-of-words so an occasional split inside "Mr. Smith" is harmless.
inline std::vector<Sentence> split_sentences(const Document& doc) {
  std::vector<Sentence> out;
  const std::string& text = doc.text;
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
      ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    if (begin >= end) return;
    Sentence s;
    s.doc_id = doc.id;
    s.text = text.substr(begin, end - begin);
    s.tokens = tokenize(s.text);
    out.push_back(std::move(s));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.' || c == '?' || c == '!') {
      bool at_end = i + 1 == text.size();
      bool before_space =
          !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
      if (at_end || before_space) {
        flush(start, i + 1);
        start = i + 1;
      }
    }
  }
  if (start < text.size()) flush(start, text.size());
  return out;
}

/// Male iff at least one male marker and no female markers; Female
/// symmetric; Mixed when both appear; Neutral when neither does.
inline GenderTag tag_gender(const Sentence& s, const GenderLexicon& lex) {
  bool m = false, f = false;
  for (const auto& tok : s.tokens) {
    if (!m && lex.male_marker(tok)) m = true;
    if (!f && lex.female_marker(tok)) f = true;
    if (m && f) break;
  }
  if (m && f) return GenderTag::Mixed;
  if (m) return GenderTag::Male;
  if (f) return GenderTag::Female;
  return GenderTag::Neutral;
}

/// The three histogram sources plus sentence bookkeeping. `male` counts
/// tokens of Male-tagged sentences, `female` of Female-tagged ones, and
/// `background` of every sentence. Mixed sentences contribute to the
/// background only.
struct GenderedCorpora {
  LexicalHistogram male;        // source X
  LexicalHistogram female;      // source Y
  LexicalHistogram background;  // source Z
  std::size_t n_male_sentences = 0;
  std::size_t n_female_sentences = 0;
  std::size_t n_mixed_sentences = 0;
  std::size_t n_neutral_sentences = 0;
  std::size_t n_sentences = 0;

  void merge(const GenderedCorpora& o) {
    male.merge(o.male);
    female.merge(o.female);
    background.merge(o.background);
    n_male_sentences += o.n_male_sentences;
    n_female_sentences += o.n_female_sentences;
    n_mixed_sentences += o.n_mixed_sentences;
    n_neutral_sentences += o.n_neutral_sentences;
    n_sentences += o.n_sentences;
  }

  void add_sentence(const Sentence& s, GenderTag tag) {
    ++n_sentences;
    switch (tag) {
      case GenderTag::Male: ++n_male_sentences; break;
      case GenderTag::Female: ++n_female_sentences; break;
      case GenderTag::Mixed: ++n_mixed_sentences; break;
      case GenderTag::Neutral: ++n_neutral_sentences; break;
    }
    for (const auto& tok : s.tokens) {
      background.add(tok);
      if (tag == GenderTag::Male) male.add(tok);
      else if (tag == GenderTag::Female) female.add(tok);
    }
  }
};

/// Splits, tokenizes and tags each document, then accumulates the three
/// histogram sources. Documents are processed in fixed-size chunks and the
/// partial results merged in chunk order, so the output does not depend on
/// the worker count.
inline GenderedCorpora build_gendered_corpora(const std::vector<Document>& docs,
                                              const GenderLexicon& lex,
                                              unsigned n_threads = 0) {
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = chunk_count(docs.size(), kChunk);
  std::vector<GenderedCorpora> partial(chunks);
  for_each_chunk(docs.size(), kChunk, n_threads,
                 [&](std::size_t c, std::size_t begin, std::size_t end) {
                   GenderedCorpora& acc = partial[c];
                   for (std::size_t i = begin; i < end; ++i) {
                     for (const Sentence& s : split_sentences(docs[i]))
                       acc.add_sentence(s, tag_gender(s, lex));
                   }
                 });
  GenderedCorpora out;
  for (const auto& p : partial) out.merge(p);
  return out;
}

/// Tokenized sentences of every document, in document order. This is the
/// embedding training stream.
inline std::vector<std::vector<std::string>> corpus_sentences(
    const std::vector<Document>& docs) {
  std::vector<std::vector<std::string>> out;
  for (const Document& d : docs)
    for (Sentence& s : split_sentences(d))
      if (!s.tokens.empty()) out.push_back(std::move(s.tokens));
  return out;
}

/// Contiguous [start, start+n-1], ... slices; the final slice is truncated
/// at `end`. Documents outside [start, end] (including undated ones) are
/// dropped.
inline std::vector<CorpusSlice> slice_by_period(const std::vector<Document>& docs,
                                                int years_per_slice, int start,
                                                int end) {
  if (years_per_slice < 1)
    throw ArgumentError("slice_by_period: years_per_slice must be >= 1");
  if (start > end)
    throw ArgumentError("slice_by_period: start year " + std::to_string(start) +
                        " is after end year " + std::to_string(end));
  std::vector<CorpusSlice> slices;
  for (int y = start; y <= end; y += years_per_slice) {
    CorpusSlice s;
    s.start_year = y;
    s.end_year = std::min(y + years_per_slice - 1, end);
    slices.push_back(std::move(s));
  }
  for (const Document& d : docs) {
    if (d.year < start || d.year > end) continue;
    std::size_t idx = static_cast<std::size_t>((d.year - start) / years_per_slice);
    slices[idx].documents.push_back(d);
  }
  return slices;
}

}  // namespace slant
