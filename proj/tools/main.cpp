// slant: gendered-language slant analysis over dated text corpora.
//
// Subcommands cover the full pipeline: ingest a corpus, score words with
// the weighted log-odds ratio, train or import an embedding, cluster it,
// run the association test with a significance model and stability audit,
// and regress bias magnitude over time against a labor series. Every
// stage persists its artifacts to the output directory so stages can run
// independently.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slant/slant.hpp"

namespace fs = std::filesystem;
using namespace slant;

namespace {

Provenance make_provenance(const RunConfig& cfg) {
  return Provenance{to_hex(fnv1a64(cfg.canonical_string())), cfg.seed};
}

fs::path artifact(const RunConfig& cfg, const char* name) {
  return fs::path(cfg.out) / name;
}

void require_artifact(const fs::path& p, const std::string& hint) {
  if (!fs::exists(p))
    throw DataError("missing " + p.string() + "; " + hint);
}

void print_warnings(const LoadResult& load) {
  for (const auto& w : load.warnings) std::cerr << "warning: " << w << '\n';
  if (load.skipped > load.warnings.size())
    std::cerr << "warning: " << (load.skipped - load.warnings.size())
              << " further lines skipped\n";
}

std::vector<Document> load_corpus(const RunConfig& cfg) {
  if (cfg.corpus.empty())
    throw ArgumentError("no corpus given; pass --corpus (and --format)");
  auto load = load_documents(cfg.corpus, parse_corpus_format(cfg.format));
  print_warnings(load);
  return std::move(load.documents);
}

GenderLexicon lexicon_for(const RunConfig& cfg) {
  if (cfg.lexicon.empty())
    throw ArgumentError("no gender lexicon given; pass --lexicon");
  return load_gender_lexicon(cfg.lexicon);
}

std::unordered_set<std::string> exclusions_for(const RunConfig& cfg) {
  if (cfg.exclusions.empty()) return {};
  return load_token_set(cfg.exclusions);
}

std::vector<std::pair<std::string, std::string>> read_pairs_csv(const fs::path& path) {
  auto rows = csv::read_file(path, "male,female");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 2)
      throw DataError(path.string() + ":" + std::to_string(row.lineno) +
                      ": expected 2 fields");
    out.emplace_back(row.fields[0], row.fields[1]);
  }
  if (out.empty()) throw DataError(path.string() + ": no pairs");
  return out;
}

GenderPairSet prune_pairs(const GenderPairSet& gp, const Embedding& emb) {
  GenderPairSet out;
  for (const auto& pr : gp.pairs)
    if (emb.has(pr.first) && emb.has(pr.second)) out.pairs.push_back(pr);
  if (out.pairs.empty())
    throw DataError("no gender pair is fully inside the embedding vocabulary");
  return out;
}

// ---------------------------------------------------------------------------

int cmd_ingest(const RunConfig& cfg) {
  auto docs = load_corpus(cfg);
  auto lex = lexicon_for(cfg);
  auto corpora = build_gendered_corpora(docs, lex, cfg.threads);
  auto sentences = corpus_sentences(docs);

  fs::create_directories(cfg.out);
  const Provenance prov = make_provenance(cfg);
  write_sentences_txt(sentences, artifact(cfg, "sentences.txt"));
  write_histograms_csv(corpora, artifact(cfg, "histograms.csv"), prov);

  int min_year = 0, max_year = 0;
  std::size_t undated = 0;
  for (const auto& d : docs) {
    if (d.year == 0) { ++undated; continue; }
    if (min_year == 0 || d.year < min_year) min_year = d.year;
    if (d.year > max_year) max_year = d.year;
  }
  nlohmann::json stats{
      {"documents", {{"loaded", docs.size()}, {"undated", undated}}},
      {"sentences",
       {{"male", corpora.n_male_sentences},
        {"female", corpora.n_female_sentences},
        {"mixed", corpora.n_mixed_sentences},
        {"neutral", corpora.n_neutral_sentences},
        {"total", corpora.n_sentences}}},
      {"tokens",
       {{"male_total", corpora.male.total},
        {"female_total", corpora.female.total},
        {"background_total", corpora.background.total},
        {"vocabulary", corpora.background.counts.size()}}},
      {"years", {{"min", min_year}, {"max", max_year}}},
      {"provenance", prov.json()}};
  write_json_report(stats, artifact(cfg, "corpus_stats.json"));

  std::cout << "ingested " << docs.size() << " documents, "
            << corpora.n_sentences << " sentences ("
            << corpora.n_male_sentences << " male / "
            << corpora.n_female_sentences << " female / "
            << corpora.n_mixed_sentences << " mixed / "
            << corpora.n_neutral_sentences << " neutral)\n";
  return 0;
}

GenderedCorpora corpora_for(const RunConfig& cfg) {
  const fs::path hist = artifact(cfg, "histograms.csv");
  if (fs::exists(hist)) return read_histograms_csv(hist);
  if (cfg.corpus.empty())
    throw DataError("missing " + hist.string() +
                    "; run `slant ingest` first or pass --corpus/--lexicon");
  return build_gendered_corpora(load_corpus(cfg), lexicon_for(cfg), cfg.threads);
}

int cmd_wlor(const RunConfig& cfg) {
  auto corpora = corpora_for(cfg);
  auto entries =
      wlor_scores(corpora.male, corpora.female, corpora.background, cfg.prior_config());
  auto sets = top_gendered(entries, cfg.k_each, exclusions_for(cfg));

  fs::create_directories(cfg.out);
  const Provenance prov = make_provenance(cfg);
  write_wlor_csv(entries, artifact(cfg, "wlor.csv"), prov);
  write_wordsets_csv(sets, entries, artifact(cfg, "wordsets.csv"), prov);
  export_for_theming(sets, entries, artifact(cfg, "theming.csv"));

  std::cout << "scored " << entries.size() << " words; kept "
            << sets.male_words.size() << " male / " << sets.female_words.size()
            << " female top words\n";
  return 0;
}

int cmd_embed_train(const RunConfig& cfg) {
  std::vector<std::vector<std::string>> sentences;
  const fs::path sent_path = artifact(cfg, "sentences.txt");
  if (fs::exists(sent_path)) {
    sentences = read_sentences_txt(sent_path);
  } else if (!cfg.corpus.empty()) {
    sentences = corpus_sentences(load_corpus(cfg));
  } else {
    throw DataError("missing " + sent_path.string() +
                    "; run `slant ingest` first or pass --corpus");
  }

  auto run = train_skipgram_run(sentences, cfg.train_config());
  fs::create_directories(cfg.out);
  export_embedding(run.embedding, artifact(cfg, "embedding.txt"));
  export_frequency_sidecar(run.embedding, artifact(cfg, "embedding_freq.csv"));

  std::cout << "trained " << run.embedding.size() << " vectors (dim "
            << run.embedding.dim << ") over " << cfg.epochs << " epochs; loss";
  for (double l : run.epoch_mean_loss) std::cout << ' ' << fmt_double(l);
  std::cout << '\n';
  return 0;
}

int cmd_embed_import(const RunConfig& cfg) {
  if (cfg.embedding_file.empty())
    throw ArgumentError("embed import needs --embedding <file>");
  Embedding emb = import_embedding(cfg.embedding_file);
  if (!cfg.frequency_file.empty()) load_frequency_sidecar(emb, cfg.frequency_file);

  fs::create_directories(cfg.out);
  export_embedding(emb, artifact(cfg, "embedding.txt"));
  if (emb.has_frequency())
    export_frequency_sidecar(emb, artifact(cfg, "embedding_freq.csv"));
  else
    std::cerr << "note: no frequency sidecar; the significance model will be "
                 "unavailable\n";
  std::cout << "imported " << emb.size() << " vectors (dim " << emb.dim << ")\n";
  return 0;
}

Embedding embedding_for(const RunConfig& cfg) {
  const fs::path emb_path = artifact(cfg, "embedding.txt");
  require_artifact(emb_path, "run `slant embed train` or `slant embed import` first");
  Embedding emb = import_embedding(emb_path);
  const fs::path freq = artifact(cfg, "embedding_freq.csv");
  if (fs::exists(freq)) load_frequency_sidecar(emb, freq);
  return emb;
}

int cmd_cluster(const RunConfig& cfg) {
  Embedding emb = embedding_for(cfg);
  const fs::path wlor_path = artifact(cfg, "wlor.csv");
  require_artifact(wlor_path, "run `slant wlor` first");
  auto entries = read_wlor_csv(wlor_path);
  auto sets = read_wordsets_csv(artifact(cfg, "wordsets.csv"));

  if (cfg.top500_only) {
    std::vector<std::string> keep = sets.male_words;
    keep.insert(keep.end(), sets.female_words.begin(), sets.female_words.end());
    emb = subset_embedding(emb, keep);
    if (emb.size() == 0)
      throw DataError("no top-k gendered word is in the embedding vocabulary");
  }

  ClusterSet cs = kmeans(emb, cfg.kmeans_k, cfg.seed, 100, cfg.normalize_first,
                         cfg.threads);
  auto categories = filter_gendered_clusters(cs, sets, cfg.min_cluster_members);

  const Provenance prov = make_provenance(cfg);
  write_cluster_csv(cs, sets, artifact(cfg, "clusters.csv"), prov);
  write_categories_csv(categories, entries, artifact(cfg, "cluster_categories.csv"),
                       prov);

  std::cout << "clustered " << emb.size() << " vectors into " << cs.k
            << " clusters; " << categories.size()
            << " gendered categories retained\n";
  return 0;
}

struct WeatSetup {
  Embedding emb;
  GenderPairSet pairs;
  SignificanceModel model;
  std::vector<BiasCategory> categories;
};

WeatSetup setup_weat(const RunConfig& cfg) {
  WeatSetup s;
  s.emb = embedding_for(cfg);

  if (!cfg.fixtures.empty()) {
    if (cfg.fixtures != "caliskan-garg")
      throw ArgumentError("unknown fixture set '" + cfg.fixtures +
                          "' (expected caliskan-garg)");
    s.categories = {fixtures::caliskan_employment()};
    s.pairs = prune_pairs(fixtures::garg_gender_pairs(), s.emb);
  } else {
    if (cfg.categories.empty())
      throw ArgumentError("pass --categories <word,z,category file> or --fixtures");
    const fs::path wlor_path = artifact(cfg, "wlor.csv");
    require_artifact(wlor_path, "run `slant wlor` first");
    auto entries = read_wlor_csv(wlor_path);
    auto sets = read_wordsets_csv(artifact(cfg, "wordsets.csv"));

    auto imported = import_themed_categories(cfg.categories, sets);
    for (const auto& w : imported.warnings) std::cerr << "warning: " << w << '\n';
    s.categories = std::move(imported.categories);
    if (s.categories.empty())
      throw DataError(cfg.categories + ": no annotated categories found");
    if (cfg.provenance == "kmeans")
      for (auto& c : s.categories) {
        c.provenance = BiasCategory::Provenance::Kmeans;
        if (c.name.rfind("cluster_", 0) == 0)
          c.source_cluster = std::atoi(c.name.c_str() + 8);
      }

    auto pair_sets = top_gendered(entries, cfg.k_each);  // pronouns stay eligible
    auto candidates = cfg.pairs_file.empty()
                          ? fixtures::default_pair_candidates()
                          : read_pairs_csv(cfg.pairs_file);
    auto family = cfg.family_exclusions.empty()
                      ? fixtures::default_family_exclusions()
                      : load_token_set(cfg.family_exclusions);
    s.pairs = prune_pairs(derive_base_pairs(pair_sets, candidates, family), s.emb);
  }
  s.pairs.validate(s.emb);
  s.model = significance_model(s.emb, s.pairs, cfg.top_n_significance);
  return s;
}

int cmd_weat(const RunConfig& cfg) {
  WeatSetup s = setup_weat(cfg);
  const Provenance prov = make_provenance(cfg);

  nlohmann::json results = nlohmann::json::array();
  for (const auto& cat : s.categories) {
    WeatResult r = bias_score(s.emb, cat, s.pairs);
    StabilityReport stab = base_pair_stability(s.emb, cat, s.pairs, s.model);
    results.push_back(weat_result_json(r, s.model, &stab));
    std::cout << cat.name << ": bias=" << fmt_double(r.bias)
              << " direction=" << to_string(r.direction) << " significant="
              << (classify(r, s.model) == Significance::Significant ? "yes" : "no")
              << " stability_rate=" << fmt_double(stab.direction_consistency_rate)
              << '\n';
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [m, f] : s.pairs.pairs) pairs.push_back({m, f});
  nlohmann::json report{{"results", results},
                        {"pairs", pairs},
                        {"model",
                         {{"mean", s.model.mean},
                          {"std", s.model.stddev},
                          {"n", s.model.n_words}}},
                        {"provenance", prov.json()}};
  fs::create_directories(cfg.out);
  write_json_report(report, artifact(cfg, "weat.json"));
  return 0;
}

int cmd_stability(const RunConfig& cfg) {
  WeatSetup s = setup_weat(cfg);
  const Provenance prov = make_provenance(cfg);

  fs::create_directories(cfg.out);
  auto out = open_report(artifact(cfg, "stability.csv"));
  out << "category,word,pair_male,pair_female,slant\n";
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& cat : s.categories) {
    StabilityReport rep = base_pair_stability(s.emb, cat, s.pairs, s.model);
    for (std::size_t i = 0; i < rep.words.size(); ++i)
      for (std::size_t j = 0; j < rep.pairs.size(); ++j)
        out << cat.name << ',' << rep.words[i] << ',' << rep.pairs[j].first
            << ',' << rep.pairs[j].second << ',' << fmt_double(rep.slant(i, j))
            << '\n';
    nlohmann::json offenders = nlohmann::json::array();
    for (const auto& o : rep.offending)
      offenders.push_back({{"word", o.word},
                           {"reason", o.reason},
                           {"min_slant", o.min_slant},
                           {"max_slant", o.max_slant}});
    summary.push_back({{"category", cat.name},
                       {"rate", rep.direction_consistency_rate},
                       {"stable", rep.magnitude_stable},
                       {"offenders", offenders}});
    std::cout << cat.name << ": rate="
              << fmt_double(rep.direction_consistency_rate) << " stable="
              << (rep.magnitude_stable ? "yes" : "no") << '\n';
  }
  out << prov.footer_comment() << '\n';
  write_json_report(nlohmann::json{{"categories", summary},
                                   {"model",
                                    {{"mean", s.model.mean},
                                     {"std", s.model.stddev},
                                     {"n", s.model.n_words}}},
                                   {"provenance", prov.json()}},
                    artifact(cfg, "stability.json"));
  return 0;
}

int cmd_timeline(const RunConfig& cfg) {
  auto docs = load_corpus(cfg);
  auto lex = lexicon_for(cfg);
  if (cfg.labor_csv.empty())
    throw ArgumentError("timeline needs --labor-csv <year,pct_women,pct_men file>");
  auto labor = load_labor_csv(cfg.labor_csv);

  TimelineConfig tl;
  tl.slice_years = cfg.slice_years;
  tl.start_year = cfg.start_year;
  tl.end_year = cfg.end_year;
  tl.method = parse_timeline_method(cfg.method);
  tl.k_each = cfg.k_each;
  tl.exclusions = exclusions_for(cfg);
  tl.kmeans_k = cfg.kmeans_k;
  tl.min_cluster_members = cfg.min_cluster_members;
  tl.top_n_significance = cfg.top_n_significance;
  tl.sparse_floor_tokens = cfg.sparse_floor_tokens;
  tl.prior = cfg.prior_config();
  tl.train = cfg.train_config();
  if (!cfg.pairs_file.empty()) tl.pair_candidates = read_pairs_csv(cfg.pairs_file);
  if (!cfg.family_exclusions.empty())
    tl.family_exclusions = load_token_set(cfg.family_exclusions);
  if (tl.method == TimelineMethod::Manual) {
    if (cfg.categories.empty())
      throw ArgumentError("timeline with method=manual needs --categories");
    tl.manual_categories = read_categories_csv(cfg.categories);
  }

  auto points = run_timeline(docs, lex, tl);
  if (points.empty()) throw DataError("timeline produced no scored points");

  fs::create_directories(cfg.out);
  const Provenance prov = make_provenance(cfg);
  write_timeline_csv(points, artifact(cfg, "timeline.csv"), prov);

  const std::string category =
      cfg.category.empty() ? points.front().category_name : cfg.category;
  auto reg = regress_timeline(points, labor, category,
                              parse_regression_mode(cfg.mode), cfg.swap_axes);
  write_json_report(regression_json(reg, prov), artifact(cfg, "regression.json"));

  std::cout << "timeline: " << points.size() << " points; regression on '"
            << category << "': slope=" << fmt_double(reg.result.slope)
            << " r_squared=" << fmt_double(reg.result.r_squared)
            << " p=" << fmt_double(reg.result.p_value) << '\n';
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  const fs::path tl_path = artifact(cfg, "timeline.csv");
  require_artifact(tl_path, "run `slant timeline` first");
  auto points = read_timeline_csv(tl_path);
  if (cfg.labor_csv.empty())
    throw ArgumentError("report needs --labor-csv <year,pct_women,pct_men file>");
  auto labor = load_labor_csv(cfg.labor_csv);

  std::vector<std::string> order;
  std::map<std::string, PlotSeries> by_cat;
  std::set<double> years;
  for (const auto& p : points) {
    if (p.sparse) continue;
    auto it = by_cat.find(p.category_name);
    if (it == by_cat.end()) {
      it = by_cat.emplace(p.category_name, PlotSeries{p.category_name, {}}).first;
      order.push_back(p.category_name);
    }
    it->second.points.emplace_back(p.midpoint_year(), p.abs_bias);
    years.insert(p.midpoint_year());
  }
  std::vector<PlotSeries> series;
  for (const auto& name : order) series.push_back(by_cat[name]);
  PlotSeries labor_series{"labor slant", {}};
  for (double y : years)
    labor_series.points.emplace_back(y, labor_slant_at(labor, y));
  series.push_back(std::move(labor_series));

  const Provenance prov = make_provenance(cfg);
  emit_plot(series, artifact(cfg, "timeline_plot.svg"), prov, "year",
            "abs bias / labor slant");
  std::cout << "wrote " << artifact(cfg, "timeline_plot.svg").string() << '\n';
  return 0;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--config", "flat key=value config file (flags override)")
      ->type_name("FILE");
  cmd->add_option("--out", cfg.out, "output directory for artifacts");
  cmd->add_option("--seed", cfg.seed, "seed for all randomness");
  cmd->add_flag("--deterministic", cfg.deterministic,
                "bit-reproducible mode (single worker)");
  cmd->add_option("--threads", cfg.threads, "worker count (0 = hardware)");
}

void add_corpus(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--corpus", cfg.corpus, "corpus path (file or directory)");
  cmd->add_option("--format", cfg.format, "corpus format: jsonl | plain_dir");
  cmd->add_option("--lexicon", cfg.lexicon, "gender lexicon file");
}

void add_train(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--dim", cfg.dim, "embedding dimensionality");
  cmd->add_option("--window", cfg.window, "context window");
  cmd->add_option("--negatives", cfg.negatives, "negative samples per pair");
  cmd->add_option("--epochs", cfg.epochs, "training epochs");
  cmd->add_option("--min-count", cfg.min_count, "minimum corpus count");
  cmd->add_option("--subsample", cfg.subsample_threshold,
                  "frequent-word subsampling threshold");
  cmd->add_option("--learning-rate", cfg.learning_rate, "initial learning rate");
}

void add_wlor(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--k-each", cfg.k_each, "words kept per gendered side");
  cmd->add_option("--exclusions", cfg.exclusions,
                  "token list removed before top-k extraction");
  cmd->add_option("--prior-mode", cfg.prior_mode,
                  "background_counts | scaled");
  cmd->add_option("--alpha0", cfg.alpha0, "total prior mass in scaled mode");
  cmd->add_option("--epsilon", cfg.epsilon, "smoothing for unseen words");
}

void add_weat_inputs(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--categories", cfg.categories, "word,z,category file");
  cmd->add_option("--provenance", cfg.provenance,
                  "category provenance: manual | kmeans");
  cmd->add_option("--fixtures", cfg.fixtures,
                  "bundled baseline lists (caliskan-garg)");
  cmd->add_option("--pairs-file", cfg.pairs_file,
                  "male,female CSV of candidate base pairs");
  cmd->add_option("--family-exclusions", cfg.family_exclusions,
                  "token list excluded from base pairs");
  cmd->add_option("--top-n-significance", cfg.top_n_significance,
                  "words in the significance model");
  cmd->add_option("--k-each", cfg.k_each, "words kept per gendered side");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // The config file loads before flag parsing so flags override its values.
  try {
    for (int i = 1; i < argc; ++i) {
      std::string_view a = argv[i];
      if (a == "--config" && i + 1 < argc) apply_config_file(cfg, argv[i + 1]);
      else if (a.rfind("--config=", 0) == 0)
        apply_config_file(cfg, std::string(a.substr(9)));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"gendered-language slant analysis over dated text corpora"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "load a corpus and build histograms");
  add_common(ingest, cfg);
  add_corpus(ingest, cfg);

  auto* wlor = app.add_subcommand("wlor", "weighted log-odds scores and top words");
  add_common(wlor, cfg);
  add_corpus(wlor, cfg);
  add_wlor(wlor, cfg);

  auto* embed = app.add_subcommand("embed", "train or import word vectors");
  embed->require_subcommand(1);
  auto* embed_train = embed->add_subcommand("train", "train skip-gram vectors");
  add_common(embed_train, cfg);
  add_corpus(embed_train, cfg);
  add_train(embed_train, cfg);
  auto* embed_import = embed->add_subcommand("import", "import word2vec text vectors");
  add_common(embed_import, cfg);
  embed_import->add_option("--embedding", cfg.embedding_file,
                           "word2vec text file to import");
  embed_import->add_option("--frequency", cfg.frequency_file,
                           "word,count sidecar CSV");

  auto* cluster = app.add_subcommand("cluster", "k-means over the embedding");
  add_common(cluster, cfg);
  cluster->add_option("--kmeans-k", cfg.kmeans_k, "number of clusters");
  cluster->add_option("--min-cluster-members", cfg.min_cluster_members,
                      "top-k words needed to keep a cluster");
  cluster->add_flag("--top500-only", cfg.top500_only,
                    "cluster only the gendered top-k words");
  cluster->add_flag("--normalize-first", cfg.normalize_first,
                    "L2-normalize vectors before clustering");

  auto* weat = app.add_subcommand("weat", "score categories with the association test");
  add_common(weat, cfg);
  add_weat_inputs(weat, cfg);

  auto* stability = app.add_subcommand("stability", "base-pair stability audit");
  add_common(stability, cfg);
  add_weat_inputs(stability, cfg);

  auto* timeline = app.add_subcommand("timeline", "per-slice pipeline and regression");
  add_common(timeline, cfg);
  add_corpus(timeline, cfg);
  add_train(timeline, cfg);
  add_wlor(timeline, cfg);
  timeline->add_option("--slice-years", cfg.slice_years, "years per slice");
  timeline->add_option("--start-year", cfg.start_year, "first year of the range");
  timeline->add_option("--end-year", cfg.end_year, "last year of the range");
  timeline->add_option("--method", cfg.method, "word-list method: manual | kmeans");
  timeline->add_option("--categories", cfg.categories,
                       "word,z,category file (manual method)");
  timeline->add_option("--labor-csv", cfg.labor_csv, "year,pct_women,pct_men file");
  timeline->add_option("--category", cfg.category, "category to regress");
  timeline->add_option("--mode", cfg.mode, "regression mode: levels | diff");
  timeline->add_flag("--swap-axes", cfg.swap_axes, "regress labor slant on bias");
  timeline->add_option("--sparse-floor", cfg.sparse_floor_tokens,
                       "minimum tokens per gender side");
  timeline->add_option("--kmeans-k", cfg.kmeans_k, "clusters (kmeans method)");
  timeline->add_option("--min-cluster-members", cfg.min_cluster_members,
                       "top-k words needed to keep a cluster");
  timeline->add_option("--pairs-file", cfg.pairs_file,
                       "male,female CSV of candidate base pairs");
  timeline->add_option("--family-exclusions", cfg.family_exclusions,
                       "token list excluded from base pairs");
  timeline->add_option("--top-n-significance", cfg.top_n_significance,
                       "words in the significance model");

  auto* report = app.add_subcommand("report", "render the timeline plot");
  add_common(report, cfg);
  report->add_option("--labor-csv", cfg.labor_csv, "year,pct_women,pct_men file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (app.got_subcommand(ingest)) return cmd_ingest(cfg);
    if (app.got_subcommand(wlor)) return cmd_wlor(cfg);
    if (app.got_subcommand(embed)) {
      if (embed->got_subcommand(embed_train)) return cmd_embed_train(cfg);
      return cmd_embed_import(cfg);
    }
    if (app.got_subcommand(cluster)) return cmd_cluster(cfg);
    if (app.got_subcommand(weat)) return cmd_weat(cfg);
    if (app.got_subcommand(stability)) return cmd_stability(cfg);
    if (app.got_subcommand(timeline)) return cmd_timeline(cfg);
    if (app.got_subcommand(report)) return cmd_report(cfg);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
