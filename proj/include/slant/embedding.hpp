#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "slant/csv.hpp"
#include "slant/error.hpp"

namespace slant {

/// Dense word vectors plus corpus frequencies. `vectors` is row-major
/// |vocab| x dim; `frequency` may be empty for imported embeddings without
/// a sidecar, in which case frequency-dependent operations refuse to run.
struct Embedding {
  std::vector<std::string> words;                      // index -> token
  std::unordered_map<std::string, std::size_t> vocab;  // token -> index
  std::vector<double> vectors;                         // |vocab| * dim
  std::size_t dim = 0;
  std::unordered_map<std::string, std::int64_t> frequency;

  std::size_t size() const { return words.size(); }
  bool has(const std::string& w) const { return vocab.count(w) != 0; }
  bool has_frequency() const { return !frequency.empty(); }

  std::size_t index_of(const std::string& w) const {
    auto it = vocab.find(w);
    if (it == vocab.end())
      throw DataError("token not in embedding vocabulary: '" + w + "'");
    return it->second;
  }

  std::span<const double> vec(std::size_t i) const {
    return {vectors.data() + i * dim, dim};
  }
  std::span<double> vec(std::size_t i) {
    return {vectors.data() + i * dim, dim};
  }
  std::span<const double> vec(const std::string& w) const {
    return vec(index_of(w));
  }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double cosine(std::span<const double> a, std::span<const double> b) {
  double na = norm(a);
  double nb = norm(b);
  if (na == 0.0 || nb == 0.0)
    throw DataError("cosine similarity of a zero vector is undefined");
  return dot(a, b) / (na * nb);
}

inline double cosine(const Embedding& emb, const std::string& w1,
                     const std::string& w2) {
  return cosine(emb.vec(w1), emb.vec(w2));
}

/// Index of the vector closest to `w` by cosine, excluding `w` itself.
/// Ties resolve to the lowest index.
inline std::size_t nearest_neighbor(const Embedding& emb, const std::string& w) {
  if (emb.size() < 2)
    throw DataError("nearest_neighbor needs at least two vocabulary entries");
  const std::size_t self = emb.index_of(w);
  double best = -2.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (i == self) continue;
    double c = cosine(emb.vec(i), emb.vec(self));
    if (c > best) {
      best = c;
      best_i = i;
    }
  }
  return best_i;
}

/// Copies the rows for `words` (in the given order, duplicates and
/// out-of-vocabulary words dropped) into a smaller embedding.
inline Embedding subset_embedding(const Embedding& emb,
                                  const std::vector<std::string>& words) {
  Embedding out;
  out.dim = emb.dim;
  for (const auto& w : words) {
    if (!emb.has(w) || out.has(w)) continue;
    auto v = emb.vec(w);
    out.vocab.emplace(w, out.words.size());
    out.words.push_back(w);
    out.vectors.insert(out.vectors.end(), v.begin(), v.end());
    auto f = emb.frequency.find(w);
    if (f != emb.frequency.end()) out.frequency.emplace(w, f->second);
  }
  return out;
}

/// Standard word2vec text format: header "vocab_size dim", then one
/// "word v1 ... v_dim" line per word.
inline void export_embedding(const Embedding& emb,
                             const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embedding file: " + path.string());
  out << emb.size() << ' ' << emb.dim << '\n';
  char buf[64];
  for (std::size_t i = 0; i < emb.size(); ++i) {
    out << emb.words[i];
    auto v = emb.vec(i);
    for (std::size_t j = 0; j < emb.dim; ++j) {
      std::snprintf(buf, sizeof buf, " %.8f", v[j]);
      out << buf;
    }
    out << '\n';
  }
}

inline Embedding import_embedding(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding file: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw DataError(path.string() + ": empty embedding file");
  std::size_t vocab_size = 0, dim = 0;
  {
    std::size_t space = line.find(' ');
    bool ok = space != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(line.data(), line.data() + space, vocab_size);
      auto r2 = std::from_chars(line.data() + space + 1,
                                line.data() + line.size(), dim);
      ok = r1.ec == std::errc{} && r2.ec == std::errc{} &&
           r2.ptr == line.data() + line.size();
    }
    if (!ok || dim == 0)
      throw DataError(path.string() + ":1: malformed header '" + line +
                      "' (expected 'vocab_size dim')");
  }
  Embedding emb;
  emb.dim = dim;
  emb.words.reserve(vocab_size);
  emb.vectors.reserve(vocab_size * dim);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    const char* space = p;
    while (space < end && *space != ' ') ++space;
    std::string word(p, space);
    if (word.empty())
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": missing word");
    if (emb.vocab.count(word))
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": duplicate word '" + word + "'");
    std::size_t values = 0;
    p = space;
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{})
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": malformed value for word '" + word + "'");
      ++values;
      if (values > dim) break;
      emb.vectors.push_back(v);
      p = next;
    }
    if (values != dim)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": word '" +
                      word + "' has " + std::to_string(values) +
                      " values, expected " + std::to_string(dim));
    emb.vocab.emplace(word, emb.words.size());
    emb.words.push_back(std::move(word));
  }
  if (emb.size() != vocab_size)
    throw DataError(path.string() + ": header promises " +
                    std::to_string(vocab_size) + " words, file has " +
                    std::to_string(emb.size()));
  return emb;
}

/// word,count CSV next to an embedding file. Required before the
/// frequency-ranked significance model can run on imported embeddings.
inline void export_frequency_sidecar(const Embedding& emb,
                                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write frequency sidecar: " + path.string());
  out << "word,count\n";
  for (std::size_t i = 0; i < emb.size(); ++i) {
    auto it = emb.frequency.find(emb.words[i]);
    out << emb.words[i] << ',' << (it == emb.frequency.end() ? 0 : it->second)
        << '\n';
  }
}

inline void load_frequency_sidecar(Embedding& emb,
                                   const std::filesystem::path& path) {
  auto rows = csv::read_file(path, "word,count");
  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& row : rows) {
    if (row.fields.size() != 2)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 2 fields");
    std::int64_t n = csv::to_int(row.fields[1], path, row.lineno);
    if (!freq.emplace(row.fields[0], n).second)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": duplicate word '" + row.fields[0] + "'");
  }
  for (const auto& w : emb.words)
    if (freq.find(w) == freq.end())
      throw DataError(path.string() + ": no frequency for vocabulary word '" +
                      w + "'");
  emb.frequency = std::move(freq);
}

}  // namespace slant
