#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slant/corpus.hpp"
#include "slant/error.hpp"

namespace slant {

enum class CorpusFormat { Jsonl, PlainDir };

inline CorpusFormat parse_corpus_format(const std::string& s) {
  if (s == "jsonl") return CorpusFormat::Jsonl;
  if (s == "plain_dir") return CorpusFormat::PlainDir;
  throw ArgumentError("unknown corpus format '" + s +
                      "' (expected jsonl or plain_dir)");
}

struct LoadResult {
  std::vector<Document> documents;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;  // capped; `skipped` is the full count

  static constexpr std::size_t kMaxWarnings = 100;
  void warn(std::string msg) {
    if (warnings.size() < kMaxWarnings) warnings.push_back(std::move(msg));
  }
};

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

// Accepts "YYYY", "YYYY-MM" and "YYYY-MM-DD". Returns false on anything else.
inline bool parse_date(std::string_view s, int& year, int& month, int& day) {
  year = month = day = 0;
  std::string_view parts[3];
  std::size_t n = 0;
  while (!s.empty() && n < 3) {
    std::size_t dash = s.find('-');
    parts[n++] = s.substr(0, dash);
    if (dash == std::string_view::npos) { s = {}; break; }
    s.remove_prefix(dash + 1);
  }
  if (!s.empty() || n == 0) return false;
  if (parts[0].size() != 4 || !parse_int(parts[0], year) || year < 1) return false;
  if (n >= 2 && (!parse_int(parts[1], month) || month < 1 || month > 12)) return false;
  if (n == 3 && (!parse_int(parts[2], day) || day < 1 || day > 31)) return false;
  return true;
}

}  // namespace detail

/// One JSON object per line with fields `id`, `decision_date` and
/// `casebody.data`. Lines that fail to parse are skipped with a warning;
/// an unreadable file is fatal.
inline LoadResult load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  LoadResult res;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto skip = [&](const std::string& why) {
      ++res.skipped;
      res.warn(path.filename().string() + ":" + std::to_string(lineno) + ": " + why);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) { skip("malformed JSON"); continue; }
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
      skip("missing or empty id");
      continue;
    }
    if (!j.contains("decision_date") || !j["decision_date"].is_string()) {
      skip("missing decision_date");
      continue;
    }
    if (!j.contains("casebody") || !j["casebody"].is_object() ||
        !j["casebody"].contains("data") || !j["casebody"]["data"].is_string()) {
      skip("missing casebody.data");
      continue;
    }
    Document d;
    d.id = j["id"].get<std::string>();
    if (!detail::parse_date(j["decision_date"].get<std::string>(), d.year,
                            d.month, d.day)) {
      skip("unparseable decision_date '" +
           j["decision_date"].get<std::string>() + "'");
      continue;
    }
    d.text = j["casebody"]["data"].get<std::string>();
    res.documents.push_back(std::move(d));
  }
  return res;
}

/// Directory of .txt files; the filename stem is the document id and an
/// optional leading YYYY in the stem supplies the year. Files without the
/// prefix load with year 0 (undated).
inline LoadResult load_plain_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw IoError("not a readable directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());  // directory order is not stable
  LoadResult res;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) {
      ++res.skipped;
      res.warn("unreadable file: " + f.string());
      continue;
    }
    Document d;
    d.id = f.stem().string();
    if (d.id.size() >= 4) {
      int y = 0;
      if (detail::parse_int(std::string_view(d.id).substr(0, 4), y) && y >= 1)
        d.year = y;
    }
    std::ostringstream body;
    body << in.rdbuf();
    d.text = body.str();
    res.documents.push_back(std::move(d));
  }
  return res;
}

inline LoadResult load_documents(const std::filesystem::path& path,
                                 CorpusFormat format) {
  return format == CorpusFormat::Jsonl ? load_jsonl(path) : load_plain_dir(path);
}

/// Four-section plain text, one token per line, section headers like
/// `[male_pronouns]`. Blank lines and `#` comments are ignored.
inline GenderLexicon load_gender_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gender lexicon: " + path.string());
  GenderLexicon lex;
  std::unordered_set<std::string>* section = nullptr;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first])))
      ++first;
    line.erase(0, first);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[male_pronouns]") section = &lex.male_pronouns;
      else if (line == "[female_pronouns]") section = &lex.female_pronouns;
      else if (line == "[male_names]") section = &lex.male_names;
      else if (line == "[female_names]") section = &lex.female_names;
      else
        throw DataError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown section " + line);
      continue;
    }
    if (section == nullptr)
      throw DataError(path.string() + ":" + std::to_string(lineno) +
                      ": token before any section header");
    section->insert(line);
  }
  lex.validate();
  return lex;
}

/// One token per line; `#` comments and blank lines ignored. Used for the
/// scoring exclusion list and the family-term exclusion list.
inline std::unordered_set<std::string> load_token_set(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open token list: " + path.string());
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string tok;
    std::istringstream is(line);
    while (is >> tok) out.insert(tok);
  }
  return out;
}

}  // namespace slant
