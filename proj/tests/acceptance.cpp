// Acceptance suite: one check per release criterion, one pass/fail line
// each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slant/slant.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace slant;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] %2d. %s — %s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_wlor_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  double max_err = 0.0;
  bool antisymmetric = true;
  auto random_hist = [&](int vocab, int max_count) {
    LexicalHistogram h;
    for (int i = 0; i < vocab; ++i) {
      if (rng.uniform() < 0.25) continue;
      h.add("w" + std::to_string(i),
            1 + static_cast<std::int64_t>(rng.uniform_index(max_count)));
    }
    return h;
  };
  for (int trial = 0; trial < 100; ++trial) {
    PriorConfig prior;
    if (trial % 4 == 3) {
      prior.mode = PriorConfig::Mode::Scaled;
      prior.alpha0 = 500.0;
    }
    auto x = random_hist(20, 50);
    auto y = random_hist(20, 50);
    auto z = random_hist(20, 50);
    z.merge(x);
    z.merge(y);
    auto entries = wlor_scores(x, y, z, prior);
    auto expected = oracle::wlor_direct(x, y, z, prior);
    for (const auto& e : entries)
      max_err = std::max(max_err,
                         std::abs(e.z - static_cast<double>(expected[e.word].z)));
    auto rev = wlor_scores(y, x, z, prior);
    std::map<std::string, double> rev_z;
    for (const auto& e : rev) rev_z[e.word] = e.z;
    for (const auto& e : entries)
      if (rev_z[e.word] != -e.z) antisymmetric = false;
  }
  const double dt = seconds_since(t0);
  const bool pass = max_err < 1e-9 && antisymmetric && dt < 5.0;
  report(1, "WLOR oracle equivalence (100 random triples)", pass,
         "max |dz| = " + fmt(max_err) +
         ", antisymmetry exact = " + (antisymmetric ? "yes" : "no") +
         ", runtime = " + fmt(dt) + " s");
}

// ---------------------------------------------------------------------------

TrainConfig planted_train_config(std::uint64_t seed) {
  TrainConfig tc;
  tc.dim = 24;
  tc.window = 4;
  tc.negatives = 5;
  tc.epochs = 3;
  tc.min_count = 5;
  tc.subsample_threshold = 1e-2;
  tc.learning_rate = 0.05;
  tc.seed = seed;
  tc.deterministic = true;
  return tc;
}

void criterion_2_planted_end_to_end() {
  const auto t0 = Clock::now();
  auto pc = synthetic::make_planted_corpus(101, 5000, 1.0);
  auto corpora = build_gendered_corpora(pc.documents, pc.lexicon);
  auto entries =
      wlor_scores(corpora.male, corpora.female, corpora.background, PriorConfig{});
  std::unordered_set<std::string> pronouns{"he", "him", "his", "himself",
                                           "she", "her", "hers", "herself"};
  auto sets = top_gendered(entries, 250, pronouns);
  auto pair_sets = top_gendered(entries, 250);

  std::size_t emp_hits = 0, fam_hits = 0;
  std::unordered_set<std::string> male_side(sets.male_words.begin(),
                                            sets.male_words.end());
  std::unordered_set<std::string> female_side(sets.female_words.begin(),
                                              sets.female_words.end());
  for (const auto& w : synthetic::employment_tokens())
    if (male_side.count(w)) ++emp_hits;
  for (const auto& w : synthetic::family_tokens())
    if (female_side.count(w)) ++fam_hits;
  const bool recovered = emp_hits >= 18 && fam_hits >= 18;

  BiasCategory employment{"employment", synthetic::employment_tokens(),
                          BiasCategory::Provenance::Manual, {}, 0, 0};
  BiasCategory family{"family", synthetic::family_tokens(),
                      BiasCategory::Provenance::Manual, {}, 0, 0};

  auto sentences = corpus_sentences(pc.documents);
  int good_seeds = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Embedding emb = train_skipgram(sentences, planted_train_config(seed));
    GenderPairSet pairs = derive_base_pairs(
        pair_sets, fixtures::default_pair_candidates(),
        fixtures::default_family_exclusions());
    GenderPairSet usable;
    for (const auto& pr : pairs.pairs)
      if (emb.has(pr.first) && emb.has(pr.second)) usable.pairs.push_back(pr);
    SignificanceModel model = significance_model(emb, usable, 20000);
    auto emp_result = bias_score(emb, employment, usable);
    auto fam_result = bias_score(emb, family, usable);
    const bool ok = emp_result.direction == Direction::Male &&
                    fam_result.direction == Direction::Female &&
                    classify(emp_result, model) == Significance::Significant &&
                    classify(fam_result, model) == Significance::Significant;
    if (ok) ++good_seeds;
  }
  const double dt = seconds_since(t0);
  const bool pass = recovered && good_seeds >= 4 && dt < 60.0;
  report(2, "planted-bias end-to-end (5,000 sentences)", pass,
         "top-250 recovery " + std::to_string(emp_hits) + "/20 employment, " +
         std::to_string(fam_hits) + "/20 family; direction+significance on " +
         std::to_string(good_seeds) + "/5 seeds; runtime = " + fmt(dt) + " s");
}

// ---------------------------------------------------------------------------

void criterion_3_published_significance() {
  SignificanceModel model{-0.0042, 0.0738, 20000};
  const bool pass = classify(-0.19, model) == Significance::Significant &&
                    classify(0.22, model) == Significance::Significant &&
                    classify(-0.03, model) == Significance::NotSignificant;
  report(3, "published significance decisions (reference mean/std)", pass,
         "bias -0.19 -> significant, +0.22 -> significant, -0.03 -> not");
}

// ---------------------------------------------------------------------------

void criterion_4_sgns_gradient() {
  Rng rng(77);
  const std::size_t dim = 10;
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> center(dim);
    for (auto& v : center) v = rng.uniform(-1.5, 1.5);
    const int n_out = 2 + static_cast<int>(rng.uniform_index(5));
    std::vector<std::vector<double>> outs(n_out, std::vector<double>(dim));
    for (auto& u : outs)
      for (auto& v : u) v = rng.uniform(-1.5, 1.5);
    auto spans = [&] {
      std::vector<std::span<const double>> s;
      for (const auto& u : outs) s.emplace_back(u);
      return s;
    };
    SgnsGradient grad = sgns_loss_and_grad(center, spans());
    std::vector<double> analytic, numeric;
    auto probe = [&](std::vector<double>& param, const std::vector<double>& g) {
      for (std::size_t i = 0; i < dim; ++i) {
        const double keep = param[i];
        param[i] = keep + h;
        const double up = sgns_loss(center, spans());
        param[i] = keep - h;
        const double down = sgns_loss(center, spans());
        param[i] = keep;
        analytic.push_back(g[i]);
        numeric.push_back((up - down) / (2.0 * h));
      }
    };
    probe(center, grad.center);
    for (int k = 0; k < n_out; ++k) probe(outs[k], grad.outputs[k]);
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
      scale += numeric[i] * numeric[i];
    }
    worst = std::max(worst, std::sqrt(diff) / std::max(std::sqrt(scale), 1e-12));
  }
  report(4, "SGNS analytic gradient vs central differences (50 triples)",
         worst < 1e-3, "worst relative error = " + fmt(worst));
}

// ---------------------------------------------------------------------------

void criterion_5_kmeans_blobs() {
  std::vector<int> truth;
  auto emb = synthetic::make_blob_embedding(
      999, {{{0.0, 0.0}}, {{10.0, 0.0}}, {{0.0, 10.0}}}, 100, 1.0, &truth);
  int exact = 0;
  bool monotone = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto cs = kmeans(emb, 3, seed);
    std::vector<int> labels;
    labels.reserve(emb.size());
    for (const auto& w : emb.words) labels.push_back(cs.assignments.at(w));
    if (oracle::adjusted_rand_index(labels, truth) == 1.0) ++exact;
    for (std::size_t i = 1; i < cs.inertia_history.size(); ++i)
      if (cs.inertia_history[i] >
          cs.inertia_history[i - 1] * (1.0 + 1e-12) + 1e-12)
        monotone = false;
  }
  report(5, "k-means three-blob recovery over 50 seeds", exact == 50 && monotone,
         std::to_string(exact) + "/50 exact (ARI = 1.0), inertia monotone = " +
             (monotone ? "yes" : "no"));
}

// ---------------------------------------------------------------------------

void criterion_6_ols_and_t() {
  std::vector<double> x, y;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(2.0 * i + 1.0);
  }
  auto r = ols_regress(x, y);
  const bool line_ok = std::abs(r.slope - 2.0) < 1e-12 &&
                       std::abs(r.intercept - 1.0) < 1e-12 &&
                       std::abs(r.r_squared - 1.0) < 1e-12;
  bool sf_zero_ok = true;
  for (std::int64_t df : {1, 2, 10, 100, 1000})
    if (student_t_sf(0.0, df) != 0.5) sf_zero_ok = false;
  const double cauchy_err = std::abs(student_t_sf(1.0, 1) - 0.25);
  const double p_err = std::abs(2.0 * student_t_sf(2.228, 10) - 0.05);
  const bool pass = line_ok && sf_zero_ok && cauchy_err < 1e-10 && p_err < 1e-3;
  report(6, "OLS noiseless line and Student-t anchors", pass,
         "line exact = " + std::string(line_ok ? "yes" : "no") +
             ", sf(0,df) = 0.5 exact = " + (sf_zero_ok ? "yes" : "no") +
             ", |sf(1,1)-0.25| = " + fmt(cauchy_err) +
             ", |p(2.228,10)-0.05| = " + fmt(p_err));
}

// ---------------------------------------------------------------------------

void criterion_7_weat_symmetry() {
  Rng rng(4242);
  Embedding emb;
  emb.dim = 8;
  for (int i = 0; i < 60; ++i) {
    std::string w = "w" + std::to_string(i);
    emb.vocab.emplace(w, emb.words.size());
    emb.words.push_back(w);
    for (std::size_t j = 0; j < emb.dim; ++j) emb.vectors.push_back(rng.gaussian());
    emb.frequency.emplace(w, 1 + static_cast<std::int64_t>(rng.uniform_index(500)));
  }
  GenderPairSet gp;
  gp.pairs = {{"w0", "w1"}, {"w2", "w3"}, {"w4", "w5"}};
  GenderPairSet gps;
  for (const auto& [m, f] : gp.pairs) gps.pairs.emplace_back(f, m);
  BiasCategory cat{"cat", {"w10", "w11", "w12", "w13", "w14", "w15"},
                   BiasCategory::Provenance::Manual, {}, 0, 0};

  auto r = bias_score(emb, cat, gp);
  auto rs = bias_score(emb, cat, gps);
  auto model = significance_model(emb, gp, 60);
  auto model_s = significance_model(emb, gps, 60);
  const bool swap_ok = rs.bias == -r.bias && model_s.mean == -model.mean &&
                       model_s.stddev == model.stddev &&
                       classify(r, model) == classify(rs, model_s);

  Embedding doubled = emb;
  for (auto& v : doubled.vectors) v *= 2.0;
  auto r2 = bias_score(doubled, cat, gp);
  auto model2 = significance_model(doubled, gp, 60);
  Embedding scaled = emb;
  for (auto& v : scaled.vectors) v *= 3.7;
  auto r3 = bias_score(scaled, cat, gp);
  auto model3 = significance_model(scaled, gp, 60);
  auto stab = base_pair_stability(emb, cat, gp, model);
  auto stab3 = base_pair_stability(scaled, cat, gp, model3);
  const bool scale_ok =
      r2.bias == r.bias && classify(r2, model2) == classify(r, model) &&
      std::abs(r3.bias - r.bias) < 1e-12 && r3.direction == r.direction &&
      classify(r3, model3) == classify(r, model) &&
      stab3.magnitude_stable == stab.magnitude_stable &&
      stab3.direction_consistency_rate == stab.direction_consistency_rate;

  GenderPairSet single;
  single.pairs = {{"w0", "w1"}};
  auto stab1 = base_pair_stability(emb, cat, single,
                                   SignificanceModel{0.0, 0.05, 60});
  const bool single_ok = stab1.direction_consistency_rate == 1.0;

  report(7, "WEAT pair-swap and scale symmetry suite",
         swap_ok && scale_ok && single_ok,
         std::string("swap negation exact = ") + (swap_ok ? "yes" : "no") +
             ", scaling invariant = " + (scale_ok ? "yes" : "no") +
             ", single-pair rate = " + fmt(stab1.direction_consistency_rate));
}

// ---------------------------------------------------------------------------

void criterion_8_timeline_trend() {
  const auto t0 = Clock::now();
  auto pc = synthetic::make_shrinking_corpus(31, 1000, 1950, 5);

  TimelineConfig tl;
  tl.slice_years = 5;
  tl.start_year = 1950;
  tl.end_year = 1969;
  tl.method = TimelineMethod::Manual;
  BiasCategory employment{"employment", synthetic::employment_tokens(),
                          BiasCategory::Provenance::Manual, {}, 0, 0};
  tl.manual_categories = {employment};
  tl.k_each = 100;
  tl.sparse_floor_tokens = 500;

  int inversions = 0;
  bool abs_ok = true;
  std::vector<TimeSeriesPoint> last_points;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    tl.train = planted_train_config(seed);
    auto points = run_timeline(pc.documents, pc.lexicon, tl);
    if (points.size() != 4) abs_ok = false;
    for (std::size_t i = 1; i < points.size(); ++i)
      if (points[i].abs_bias > points[i - 1].abs_bias) ++inversions;
    for (const auto& p : points)
      if (p.abs_bias != std::abs(p.bias)) abs_ok = false;
    last_points = points;
  }

  // monotone synthetic labor series over the same years
  std::vector<LaborRecord> labor{{1950, 0.25, 0.85},
                                 {1955, 0.30, 0.83},
                                 {1960, 0.36, 0.81},
                                 {1965, 0.43, 0.79},
                                 {1970, 0.50, 0.77}};
  auto reg = regress_timeline(last_points, labor, "employment");
  std::vector<double> xs, ys;
  for (const auto& [x, y] : reg.used) {
    xs.push_back(x);
    ys.push_back(y);
  }
  auto direct = oracle::ols_direct(xs, ys);
  const double r2_err =
      std::abs(reg.result.r_squared - static_cast<double>(direct.r_squared));

  const double dt = seconds_since(t0);
  const bool pass = abs_ok && inversions <= 1 && r2_err < 1e-9;
  report(8, "timeline trend on shrinking planted bias (5 seeds)", pass,
         std::to_string(inversions) +
             " inversion(s) across seeds; |R^2 - oracle| = " + fmt(r2_err) +
             "; runtime = " + fmt(dt) +
             " s. Full-corpus references R^2 = 0.8781, p = 1.172e-09 are not "
             "reproducible at this scale and are not asserted.");
}

// ---------------------------------------------------------------------------

void criterion_9_roundtrip() {
  std::vector<std::vector<std::string>> corpus;
  Rng rng(51);
  std::vector<std::string> vocab;
  for (int i = 0; i < 30; ++i) vocab.push_back("tok" + std::to_string(i));
  for (int s = 0; s < 300; ++s) {
    std::vector<std::string> sent;
    for (int t = 0; t < 8; ++t) sent.push_back(vocab[rng.uniform_index(vocab.size())]);
    corpus.push_back(std::move(sent));
  }
  TrainConfig tc = planted_train_config(9);
  tc.min_count = 1;
  Embedding emb = train_skipgram(corpus, tc);

  const fs::path tmp =
      fs::temp_directory_path() / "slant_acceptance_roundtrip.txt";
  export_embedding(emb, tmp);
  Embedding back = import_embedding(tmp);
  fs::remove(tmp);

  bool vocab_ok = back.words == emb.words && back.dim == emb.dim;
  double max_err = 0.0;
  for (std::size_t i = 0; i < emb.vectors.size(); ++i)
    max_err = std::max(max_err, std::abs(back.vectors[i] - emb.vectors[i]));
  bool neighbors_ok = true;
  for (const auto& w : emb.words)
    if (nearest_neighbor(back, w) != nearest_neighbor(emb, w)) neighbors_ok = false;

  const bool pass = vocab_ok && max_err < 1e-6 && neighbors_ok;
  report(9, "embedding export/import round-trip", pass,
         "vocab exact = " + std::string(vocab_ok ? "yes" : "no") +
             ", max |dv| = " + fmt(max_err) +
             ", neighbors preserved = " + (neighbors_ok ? "yes" : "no"));
}

// ---------------------------------------------------------------------------

int run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(SLANT_BIN) + " " + args + " >> " + log.string() +
                    " 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_10_determinism() {
  const auto t0 = Clock::now();
  const fs::path data = SLANT_DATA_DIR;
  const fs::path tmp = fs::temp_directory_path() / "slant_acceptance_det";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  const fs::path log = tmp / "log.txt";

  bool all_ok = true;
  std::string failed_artifact;
  for (const char* run_dir : {"a", "b"}) {
    const fs::path out = tmp / run_dir;
    const std::string base =
        "--corpus " + (data / "toy/toy.jsonl").string() +
        " --format jsonl --lexicon " + (data / "lexicon_default.txt").string() +
        " --out " + out.string() +
        " --deterministic --seed 7 --min-count 2 --dim 16 --epochs 2"
        " --subsample 0.01 --learning-rate 0.05 --window 4";
    if (run_cli("ingest " + base, log) != 0 ||
        run_cli("wlor " + base + " --k-each 100", log) != 0 ||
        run_cli("embed train " + base, log) != 0 ||
        run_cli("cluster --out " + out.string() +
                    " --deterministic --seed 7 --kmeans-k 12",
                log) != 0 ||
        run_cli("weat --out " + out.string() +
                    " --deterministic --seed 7 --fixtures caliskan-garg",
                log) != 0 ||
        run_cli("timeline " + base +
                    " --slice-years 20 --start-year 1920 --end-year 1999"
                    " --sparse-floor 50 --k-each 100 --categories " +
                    (data / "toy/toy_categories.csv").string() + " --labor-csv " +
                    (data / "fixtures/labor_us_example.csv").string() +
                    " --category employment",
                log) != 0 ||
        run_cli("report --out " + out.string() + " --labor-csv " +
                    (data / "fixtures/labor_us_example.csv").string() +
                    " --deterministic --seed 7",
                log) != 0) {
      all_ok = false;
      failed_artifact = "subcommand exit status (see " + log.string() + ")";
    }
  }
  if (all_ok) {
    for (const char* name :
         {"sentences.txt", "histograms.csv", "corpus_stats.json", "wlor.csv",
          "wordsets.csv", "theming.csv", "embedding.txt", "embedding_freq.csv",
          "clusters.csv", "cluster_categories.csv", "weat.json", "timeline.csv",
          "regression.json", "timeline_plot.svg"}) {
      if (slurp(tmp / "a" / name) != slurp(tmp / "b" / name) ||
          slurp(tmp / "a" / name).empty()) {
        all_ok = false;
        failed_artifact = name;
        break;
      }
    }
  }
  const double dt = seconds_since(t0);
  report(10, "byte-identical deterministic re-runs (--deterministic --seed 7)",
         all_ok,
         all_ok ? "14 artifacts identical across independent runs; runtime = " +
                      fmt(dt) + " s"
                : "mismatch at " + failed_artifact);
  if (all_ok) fs::remove_all(tmp);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_wlor_oracle();
  criterion_2_planted_end_to_end();
  criterion_3_published_significance();
  criterion_4_sgns_gradient();
  criterion_5_kmeans_blobs();
  criterion_6_ols_and_t();
  criterion_7_weat_symmetry();
  criterion_8_timeline_trend();
  criterion_9_roundtrip();
  criterion_10_determinism();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
