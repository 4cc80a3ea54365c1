#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slant/corpus.hpp"
#include "slant/csv.hpp"
#include "slant/embedding.hpp"
#include "slant/error.hpp"
#include "slant/kmeans.hpp"
#include "slant/temporal.hpp"
#include "slant/version.hpp"
#include "slant/weat.hpp"
#include "slant/wlor.hpp"

namespace slant {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Identifies the run that produced a report: resolved-config hash, seed
/// and tool version. Every report file carries it.
struct Provenance {
  std::string config_hash;  // hex fnv1a of the resolved configuration
  std::uint64_t seed = 0;

  std::string footer_comment() const {
    return "# " + std::string(kToolName) + " " + kVersion + " seed=" +
           std::to_string(seed) + " config_hash=" + config_hash;
  }
  nlohmann::json json() const {
    return {{"tool", kToolName},
            {"version", kVersion},
            {"seed", seed},
            {"config_hash", config_hash}};
  }
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::ofstream open_report(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report file: " + path.string());
  return out;
}

inline void write_json_report(const nlohmann::json& j,
                              const std::filesystem::path& path) {
  auto out = open_report(path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Corpus artifacts

inline void write_histograms_csv(const GenderedCorpora& corpora,
                                 const std::filesystem::path& path,
                                 const Provenance& prov) {
  auto out = open_report(path);
  out << "word,count_x,count_y,count_z\n";
  std::map<std::string, std::int64_t> sorted(corpora.background.counts.begin(),
                                             corpora.background.counts.end());
  for (const auto& [word, cz] : sorted)
    out << word << ',' << corpora.male.count(word) << ','
        << corpora.female.count(word) << ',' << cz << '\n';
  out << prov.footer_comment() << '\n';
}

inline GenderedCorpora read_histograms_csv(const std::filesystem::path& path) {
  auto rows = csv::read_file(path, "word,count_x,count_y,count_z");
  GenderedCorpora c;
  for (const auto& row : rows) {
    if (row.fields.size() != 4)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 4 fields");
    c.male.add(row.fields[0], csv::to_int(row.fields[1], path, row.lineno));
    c.female.add(row.fields[0], csv::to_int(row.fields[2], path, row.lineno));
    c.background.add(row.fields[0], csv::to_int(row.fields[3], path, row.lineno));
  }
  return c;
}

inline void write_sentences_txt(const std::vector<std::vector<std::string>>& sentences,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sentence file: " + path.string());
  for (const auto& sent : sentences) {
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (i) out << ' ';
      out << sent[i];
    }
    out << '\n';
  }
}

inline std::vector<std::vector<std::string>> read_sentences_txt(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sentence file: " + path.string());
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> sent;
    std::size_t start = 0;
    while (start < line.size()) {
      std::size_t space = line.find(' ', start);
      if (space == std::string::npos) space = line.size();
      if (space > start) sent.emplace_back(line.substr(start, space - start));
      start = space + 1;
    }
    if (!sent.empty()) out.push_back(std::move(sent));
  }
  return out;
}

// ---------------------------------------------------------------------------
// WLOR artifacts

inline void write_wlor_csv(const std::vector<WlorEntry>& entries,
                           const std::filesystem::path& path,
                           const Provenance& prov) {
  auto out = open_report(path);
  out << "word,z,delta,count_x,count_y,count_z\n";
  for (const auto& e : entries)
    out << e.word << ',' << fmt_double(e.z) << ',' << fmt_double(e.delta) << ','
        << e.count_x << ',' << e.count_y << ',' << e.count_z << '\n';
  out << prov.footer_comment() << '\n';
}

inline void write_wordsets_csv(const GenderedWordSets& sets,
                               const std::vector<WlorEntry>& entries,
                               const std::filesystem::path& path,
                               const Provenance& prov) {
  std::map<std::string, double> zmap;
  for (const auto& e : entries) zmap[e.word] = e.z;
  auto out = open_report(path);
  out << "word,z,side\n";
  for (const auto& w : sets.male_words)
    out << w << ',' << fmt_double(zmap[w]) << ",male\n";
  for (const auto& w : sets.female_words)
    out << w << ',' << fmt_double(zmap[w]) << ",female\n";
  out << prov.footer_comment() << '\n';
}

inline std::vector<WlorEntry> read_wlor_csv(const std::filesystem::path& path) {
  auto rows = csv::read_file(path, "word,z,delta,count_x,count_y,count_z");
  std::vector<WlorEntry> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 6)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 6 fields");
    WlorEntry e;
    e.word = row.fields[0];
    e.z = csv::to_double(row.fields[1], path, row.lineno);
    e.delta = csv::to_double(row.fields[2], path, row.lineno);
    e.count_x = csv::to_int(row.fields[3], path, row.lineno);
    e.count_y = csv::to_int(row.fields[4], path, row.lineno);
    e.count_z = csv::to_int(row.fields[5], path, row.lineno);
    out.push_back(std::move(e));
  }
  return out;
}

inline GenderedWordSets read_wordsets_csv(const std::filesystem::path& path) {
  auto rows = csv::read_file(path, "word,z,side");
  GenderedWordSets sets;
  for (const auto& row : rows) {
    if (row.fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 3 fields");
    if (row.fields[2] == "male") sets.male_words.push_back(row.fields[0]);
    else if (row.fields[2] == "female") sets.female_words.push_back(row.fields[0]);
    else
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": unknown side '" + row.fields[2] + "'");
  }
  sets.k_each = static_cast<int>(
      std::max(sets.male_words.size(), sets.female_words.size()));
  return sets;
}

// ---------------------------------------------------------------------------
// Clustering artifacts

inline void write_cluster_csv(const ClusterSet& cs, const GenderedWordSets& sets,
                              const std::filesystem::path& path,
                              const Provenance& prov) {
  std::unordered_set<std::string> male(sets.male_words.begin(),
                                       sets.male_words.end());
  std::unordered_set<std::string> female(sets.female_words.begin(),
                                         sets.female_words.end());
  std::map<std::string, int> sorted(cs.assignments.begin(), cs.assignments.end());
  auto out = open_report(path);
  out << "word,cluster_id,is_top500,gender_side\n";
  for (const auto& [word, id] : sorted) {
    const bool m = male.count(word) != 0;
    const bool f = female.count(word) != 0;
    out << word << ',' << id << ',' << (m || f ? 1 : 0) << ','
        << (m ? "male" : f ? "female" : "none") << '\n';
  }
  out << prov.footer_comment() << '\n';
}

/// Cluster-derived categories in the same word,z,category shape as the
/// theming worksheet, so `weat --categories` accepts either file.
inline void write_categories_csv(const std::vector<BiasCategory>& categories,
                                 const std::vector<WlorEntry>& entries,
                                 const std::filesystem::path& path,
                                 const Provenance& prov) {
  std::map<std::string, double> zmap;
  for (const auto& e : entries) zmap[e.word] = e.z;
  auto out = open_report(path);
  out << "word,z,category\n";
  for (const auto& cat : categories)
    for (const auto& w : cat.words)
      out << w << ',' << fmt_double(zmap.count(w) ? zmap[w] : 0.0) << ','
          << cat.name << '\n';
  out << prov.footer_comment() << '\n';
}

/// Reads any word,z,category file (theming worksheet or cluster categories)
/// without checking set membership: fixed word lists for re-scoring.
inline std::vector<BiasCategory> read_categories_csv(
    const std::filesystem::path& path,
    BiasCategory::Provenance provenance = BiasCategory::Provenance::Manual) {
  auto rows = csv::read_file(path, "word,z,category");
  std::vector<std::string> order;
  std::map<std::string, BiasCategory> by_name;
  for (const auto& row : rows) {
    if (row.fields.size() != 3)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 3 fields");
    const std::string& word = row.fields[0];
    const std::string& cat = row.fields[2];
    if (cat.empty()) continue;
    auto it = by_name.find(cat);
    if (it == by_name.end()) {
      BiasCategory c;
      c.name = cat;
      c.provenance = provenance;
      it = by_name.emplace(cat, std::move(c)).first;
      order.push_back(cat);
    }
    auto& words = it->second.words;
    if (std::find(words.begin(), words.end(), word) == words.end())
      words.push_back(word);
  }
  std::vector<BiasCategory> out;
  for (const auto& name : order) out.push_back(by_name[name]);
  if (out.empty())
    throw DataError(path.string() + ": no annotated categories found");
  return out;
}

// ---------------------------------------------------------------------------
// WEAT report

inline nlohmann::json weat_result_json(const WeatResult& r,
                                       const SignificanceModel& model,
                                       const StabilityReport* stability) {
  nlohmann::json per_word = nlohmann::json::array();
  for (const auto& [w, s] : r.per_word)
    per_word.push_back({{"word", w}, {"slant", s}});
  nlohmann::json j{
      {"category", r.category.name},
      {"provenance", to_string(r.category.provenance)},
      {"bias", r.bias},
      {"direction", to_string(r.direction)},
      {"significant", classify(r, model) == Significance::Significant},
      {"model",
       {{"mean", model.mean}, {"std", model.stddev}, {"n", model.n_words}}},
      {"per_word", per_word},
      {"skipped_oov", r.skipped_oov},
  };
  if (r.category.source_cluster)
    j["source_cluster"] = *r.category.source_cluster;
  if (stability != nullptr) {
    nlohmann::json offenders = nlohmann::json::array();
    for (const auto& o : stability->offending)
      offenders.push_back({{"word", o.word},
                           {"reason", o.reason},
                           {"min_slant", o.min_slant},
                           {"max_slant", o.max_slant}});
    j["stability"] = {{"rate", stability->direction_consistency_rate},
                      {"stable", stability->magnitude_stable},
                      {"offenders", offenders}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// Timeline artifacts

inline void write_timeline_csv(const std::vector<TimeSeriesPoint>& points,
                               const std::filesystem::path& path,
                               const Provenance& prov) {
  auto out = open_report(path);
  out << "slice_start,slice_end,category,bias,abs_bias,significant,sparse\n";
  for (const auto& p : points)
    out << p.slice_start << ',' << p.slice_end << ',' << p.category_name << ','
        << fmt_double(p.bias) << ',' << fmt_double(p.abs_bias) << ','
        << (p.significant ? 1 : 0) << ',' << (p.sparse ? 1 : 0) << '\n';
  out << prov.footer_comment() << '\n';
}

inline std::vector<TimeSeriesPoint> read_timeline_csv(
    const std::filesystem::path& path) {
  auto rows = csv::read_file(
      path, "slice_start,slice_end,category,bias,abs_bias,significant,sparse");
  std::vector<TimeSeriesPoint> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 7)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 7 fields");
    TimeSeriesPoint p;
    p.slice_start = static_cast<int>(csv::to_int(row.fields[0], path, row.lineno));
    p.slice_end = static_cast<int>(csv::to_int(row.fields[1], path, row.lineno));
    p.category_name = row.fields[2];
    p.bias = csv::to_double(row.fields[3], path, row.lineno);
    p.abs_bias = csv::to_double(row.fields[4], path, row.lineno);
    p.significant = csv::to_int(row.fields[5], path, row.lineno) != 0;
    p.sparse = csv::to_int(row.fields[6], path, row.lineno) != 0;
    out.push_back(std::move(p));
  }
  return out;
}

inline nlohmann::json regression_json(const TimelineRegression& reg,
                                      const Provenance& prov) {
  return {{"category", reg.category},
          {"mode", reg.mode == RegressionMode::Levels ? "levels" : "diff"},
          {"swapped_axes", reg.swapped_axes},
          {"slope", reg.result.slope},
          {"intercept", reg.result.intercept},
          {"r_squared", reg.result.r_squared},
          {"p_value", reg.result.p_value},
          {"n", reg.result.n},
          {"df", reg.result.df},
          {"provenance", prov.json()}};
}

// ---------------------------------------------------------------------------
// SVG plot

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// One fixed-size SVG with a polyline per series, shared axes, tick labels
/// and a legend. Output bytes depend only on the input.
inline void emit_plot(const std::vector<PlotSeries>& series,
                      const std::filesystem::path& path, const Provenance& prov,
                      const std::string& x_label = "year",
                      const std::string& y_label = "value") {
  if (series.empty()) throw DataError("emit_plot: no series");
  for (const auto& s : series)
    if (s.points.size() < 2)
      throw DataError("emit_plot: series '" + s.label +
                          "' has fewer than 2 points");

  double x_min = series[0].points[0].first, x_max = x_min;
  double y_min = series[0].points[0].second, y_max = y_min;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (x_max == x_min) { x_min -= 1.0; x_max += 1.0; }
  if (y_max == y_min) { y_min -= 1.0; y_max += 1.0; }

  constexpr double kW = 800, kH = 500;
  constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 50;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };
  auto f2 = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto tick = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr int kPaletteSize = 6;

  auto out = open_report(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << f2(kLeft) << "\" y1=\"" << f2(kTop + plot_h)
      << "\" x2=\"" << f2(kLeft + plot_w) << "\" y2=\"" << f2(kTop + plot_h)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << f2(kLeft) << "\" y1=\"" << f2(kTop) << "\" x2=\""
      << f2(kLeft) << "\" y2=\"" << f2(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    out << "<text x=\"" << f2(sx(fx)) << "\" y=\"" << f2(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick(fx) << "</text>\n";
    out << "<text x=\"" << f2(kLeft - 8) << "\" y=\"" << f2(sy(fy) + 4)
        << "\" text-anchor=\"end\">" << tick(fy) << "</text>\n";
  }
  out << "<text x=\"" << f2(kLeft + plot_w / 2) << "\" y=\"" << f2(kH - 10)
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << f2(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << f2(kTop + plot_h / 2) << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t p = 0; p < series[i].points.size(); ++p) {
      if (p) out << ' ';
      out << f2(sx(series[i].points[p].first)) << ','
          << f2(sy(series[i].points[p].second));
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << f2(kLeft + plot_w + 12) << "\" y1=\"" << f2(ly - 4)
        << "\" x2=\"" << f2(kLeft + plot_w + 32) << "\" y2=\"" << f2(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << f2(kLeft + plot_w + 38) << "\" y=\"" << f2(ly)
        << "\">" << series[i].label << "</text>\n";
  }
  out << "<!-- " << prov.footer_comment().substr(2) << " -->\n";
  out << "</svg>\n";
}

}  // namespace slant
