#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "slant/error.hpp"
#include "slant/sgns.hpp"
#include "slant/wlor.hpp"

namespace slant {

/// Every knob a subcommand can take, with the defaults the tool ships
/// with. Values load from a flat key=value file and individual flags
/// override them.
struct RunConfig {
  std::string corpus;
  std::string format = "jsonl";
  std::string lexicon;
  std::string exclusions;          // token list file; empty = none
  std::string out = "slant_out";

  int k_each = 250;
  int kmeans_k = 300;
  int min_cluster_members = 5;
  std::size_t top_n_significance = 20000;
  int slice_years = 5;
  int start_year = 1920;
  int end_year = 2017;

  // embedding training
  std::size_t dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  std::int64_t min_count = 5;
  double subsample_threshold = 1e-3;
  double learning_rate = 0.025;

  std::uint64_t seed = 1;
  bool deterministic = false;
  unsigned threads = 0;  // 0 = hardware default

  // WLOR prior
  std::string prior_mode = "background_counts";
  double alpha0 = 500.0;
  double epsilon = 0.01;

  // weat / stability / timeline inputs
  std::string categories;         // word,z,category file
  std::string provenance = "manual";
  std::string fixtures;           // "caliskan-garg"
  std::string pairs_file;         // male,female CSV overriding candidates
  std::string family_exclusions;  // token list file overriding the default
  std::string embedding_file;     // embed import source
  std::string frequency_file;     // sidecar for embed import

  std::string labor_csv;
  std::string method = "manual";  // timeline word-list method
  std::string category;           // regression category; empty = first seen
  std::string mode = "levels";    // regression mode: levels | diff
  bool swap_axes = false;
  std::int64_t sparse_floor_tokens = 1000;

  bool top500_only = false;     // cluster only the gendered top-k words
  bool normalize_first = false; // spherical k-means behavior

  TrainConfig train_config() const {
    TrainConfig tc;
    tc.dim = dim;
    tc.window = window;
    tc.negatives = negatives;
    tc.epochs = epochs;
    tc.min_count = min_count;
    tc.subsample_threshold = subsample_threshold;
    tc.learning_rate = learning_rate;
    tc.seed = seed;
    tc.deterministic = deterministic;
    tc.n_threads = threads;
    return tc;
  }

  PriorConfig prior_config() const {
    PriorConfig pc;
    pc.mode = parse_prior_mode(prior_mode);
    pc.alpha0 = alpha0;
    pc.epsilon = epsilon;
    return pc;
  }

  /// Canonical key=value dump of every field; hashing this string yields
  /// the config hash stamped into report footers.
  std::string canonical_string() const {
    std::ostringstream os;
    os << "alpha0=" << alpha0 << '\n'
       << "categories=" << categories << '\n'
       << "category=" << category << '\n'
       << "corpus=" << corpus << '\n'
       << "deterministic=" << (deterministic ? 1 : 0) << '\n'
       << "dim=" << dim << '\n'
       << "embedding_file=" << embedding_file << '\n'
       << "end_year=" << end_year << '\n'
       << "epochs=" << epochs << '\n'
       << "epsilon=" << epsilon << '\n'
       << "exclusions=" << exclusions << '\n'
       << "family_exclusions=" << family_exclusions << '\n'
       << "fixtures=" << fixtures << '\n'
       << "format=" << format << '\n'
       << "frequency_file=" << frequency_file << '\n'
       << "k_each=" << k_each << '\n'
       << "kmeans_k=" << kmeans_k << '\n'
       << "labor_csv=" << labor_csv << '\n'
       << "learning_rate=" << learning_rate << '\n'
       << "lexicon=" << lexicon << '\n'
       << "method=" << method << '\n'
       << "min_cluster_members=" << min_cluster_members << '\n'
       << "min_count=" << min_count << '\n'
       << "mode=" << mode << '\n'
       << "negatives=" << negatives << '\n'
       << "normalize_first=" << (normalize_first ? 1 : 0) << '\n'
       << "out=" << out << '\n'
       << "pairs_file=" << pairs_file << '\n'
       << "prior_mode=" << prior_mode << '\n'
       << "provenance=" << provenance << '\n'
       << "seed=" << seed << '\n'
       << "slice_years=" << slice_years << '\n'
       << "sparse_floor_tokens=" << sparse_floor_tokens << '\n'
       << "start_year=" << start_year << '\n'
       << "subsample_threshold=" << subsample_threshold << '\n'
       << "swap_axes=" << (swap_axes ? 1 : 0) << '\n'
       << "threads=" << threads << '\n'
       << "top500_only=" << (top500_only ? 1 : 0) << '\n'
       << "top_n_significance=" << top_n_significance << '\n'
       << "window=" << window << '\n';
    return os.str();
  }
};

namespace detail {

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ArgumentError("config: bad boolean for " + key + ": '" + v + "'");
}

template <typename T>
T parse_number(const std::string& v, const std::string& key) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ArgumentError("config: bad value for " + key + ": '" + v + "'");
  return out;
}

}  // namespace detail

/// Flat `key = value` file; `#` starts a comment, blank lines ignored,
/// keys mirror the RunConfig field names. Unknown keys are an error.
inline void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string& s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) +
                          ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    trim(key);
    trim(value);

    if (key == "corpus") cfg.corpus = value;
    else if (key == "format") cfg.format = value;
    else if (key == "lexicon") cfg.lexicon = value;
    else if (key == "exclusions") cfg.exclusions = value;
    else if (key == "out") cfg.out = value;
    else if (key == "k_each") cfg.k_each = detail::parse_number<int>(value, key);
    else if (key == "kmeans_k") cfg.kmeans_k = detail::parse_number<int>(value, key);
    else if (key == "min_cluster_members")
      cfg.min_cluster_members = detail::parse_number<int>(value, key);
    else if (key == "top_n_significance")
      cfg.top_n_significance = detail::parse_number<std::size_t>(value, key);
    else if (key == "slice_years") cfg.slice_years = detail::parse_number<int>(value, key);
    else if (key == "start_year") cfg.start_year = detail::parse_number<int>(value, key);
    else if (key == "end_year") cfg.end_year = detail::parse_number<int>(value, key);
    else if (key == "dim") cfg.dim = detail::parse_number<std::size_t>(value, key);
    else if (key == "window") cfg.window = detail::parse_number<int>(value, key);
    else if (key == "negatives") cfg.negatives = detail::parse_number<int>(value, key);
    else if (key == "epochs") cfg.epochs = detail::parse_number<int>(value, key);
    else if (key == "min_count")
      cfg.min_count = detail::parse_number<std::int64_t>(value, key);
    else if (key == "subsample_threshold")
      cfg.subsample_threshold = detail::parse_number<double>(value, key);
    else if (key == "learning_rate")
      cfg.learning_rate = detail::parse_number<double>(value, key);
    else if (key == "seed") cfg.seed = detail::parse_number<std::uint64_t>(value, key);
    else if (key == "deterministic") cfg.deterministic = detail::parse_bool(value, key);
    else if (key == "threads") cfg.threads = detail::parse_number<unsigned>(value, key);
    else if (key == "prior_mode") cfg.prior_mode = value;
    else if (key == "alpha0") cfg.alpha0 = detail::parse_number<double>(value, key);
    else if (key == "epsilon") cfg.epsilon = detail::parse_number<double>(value, key);
    else if (key == "categories") cfg.categories = value;
    else if (key == "provenance") cfg.provenance = value;
    else if (key == "fixtures") cfg.fixtures = value;
    else if (key == "pairs_file") cfg.pairs_file = value;
    else if (key == "family_exclusions") cfg.family_exclusions = value;
    else if (key == "embedding_file") cfg.embedding_file = value;
    else if (key == "frequency_file") cfg.frequency_file = value;
    else if (key == "labor_csv") cfg.labor_csv = value;
    else if (key == "method") cfg.method = value;
    else if (key == "category") cfg.category = value;
    else if (key == "mode") cfg.mode = value;
    else if (key == "swap_axes") cfg.swap_axes = detail::parse_bool(value, key);
    else if (key == "sparse_floor_tokens")
      cfg.sparse_floor_tokens = detail::parse_number<std::int64_t>(value, key);
    else if (key == "top500_only") cfg.top500_only = detail::parse_bool(value, key);
    else if (key == "normalize_first")
      cfg.normalize_first = detail::parse_bool(value, key);
    else
      throw ArgumentError(path.string() + ":" + std::to_string(lineno) +
                          ": unknown config key '" + key + "'");
  }
}

}  // namespace slant
