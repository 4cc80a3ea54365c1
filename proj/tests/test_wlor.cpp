#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "slant/rng.hpp"
#include "slant/wlor.hpp"
#include "support/oracles.hpp"

using namespace slant;
namespace fs = std::filesystem;

namespace {

LexicalHistogram hist(std::initializer_list<std::pair<const char*, std::int64_t>> items) {
  LexicalHistogram h;
  for (const auto& [w, n] : items) h.add(w, n);
  return h;
}

LexicalHistogram random_hist(Rng& rng, int vocab, int max_count) {
  LexicalHistogram h;
  for (int i = 0; i < vocab; ++i) {
    if (rng.uniform() < 0.3) continue;  // leave gaps in the vocabulary
    h.add("w" + std::to_string(i),
          1 + static_cast<std::int64_t>(rng.uniform_index(max_count)));
  }
  return h;
}

const WlorEntry& entry_of(const std::vector<WlorEntry>& entries,
                          const std::string& w) {
  for (const auto& e : entries)
    if (e.word == w) return e;
  FAIL("missing entry " << w);
  static WlorEntry dummy;
  return dummy;
}

}  // namespace

TEST_CASE("wlor matches the direct-formula oracle on the worked example") {
  // Frozen from an independent high-precision evaluation of the formula:
  // X={a:8,b:2}, Y={a:2,b:8}, Z={a:10,b:10}, background prior, eps=0.01.
  auto entries = wlor_scores(hist({{"a", 8}, {"b", 2}}), hist({{"a", 2}, {"b", 8}}),
                             hist({{"a", 10}, {"b", 10}}), PriorConfig{});
  REQUIRE(entries.size() == 2);
  const auto& a = entry_of(entries, "a");
  const auto& b = entry_of(entries, "b");
  REQUIRE(a.z == Catch::Approx(2.1752494900930690).margin(1e-9));
  REQUIRE(a.delta == Catch::Approx(0.8103750461919451).margin(1e-9));
  REQUIRE(b.z == Catch::Approx(-2.1752494900930690).margin(1e-9));
  REQUIRE(a.count_x == 8);
  REQUIRE(a.count_y == 2);
  REQUIRE(a.count_z == 10);
  // sorted by z descending
  REQUIRE(entries[0].word == "a");
}

TEST_CASE("wlor agrees with the oracle over random histogram triples") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    PriorConfig prior;
    if (trial % 3 == 1) {
      prior.mode = PriorConfig::Mode::Scaled;
      prior.alpha0 = 50.0 + 900.0 * rng.uniform();
    }
    auto x = random_hist(rng, 15, 40);
    auto y = random_hist(rng, 15, 40);
    auto z = random_hist(rng, 20, 80);
    z.merge(x);
    z.merge(y);
    auto entries = wlor_scores(x, y, z, prior);
    auto expected = oracle::wlor_direct(x, y, z, prior);
    REQUIRE(entries.size() == expected.size());
    for (const auto& e : entries) {
      REQUIRE(std::isfinite(e.z));
      REQUIRE(e.z == Catch::Approx(static_cast<double>(expected[e.word].z)).margin(1e-9));
      REQUIRE(e.delta ==
              Catch::Approx(static_cast<double>(expected[e.word].delta)).margin(1e-9));
      // sign(z) == sign(delta)
      REQUIRE((e.z > 0) == (e.delta > 0));
      REQUIRE((e.z < 0) == (e.delta < 0));
    }
  }
}

TEST_CASE("wlor antisymmetry under swapping X and Y is exact") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_hist(rng, 12, 30);
    auto y = random_hist(rng, 12, 30);
    auto z = random_hist(rng, 15, 60);
    z.merge(x);
    z.merge(y);
    auto fwd = wlor_scores(x, y, z);
    auto rev = wlor_scores(y, x, z);
    REQUIRE(fwd.size() == rev.size());
    for (const auto& e : fwd) {
      const auto& r = entry_of(rev, e.word);
      REQUIRE(r.z == -e.z);          // bitwise exact
      REQUIRE(r.delta == -e.delta);
    }
  }
}

TEST_CASE("identical histograms score zero everywhere") {
  auto x = hist({{"a", 5}, {"b", 3}, {"c", 9}});
  auto z = hist({{"a", 10}, {"b", 6}, {"c", 18}, {"d", 4}});
  for (const auto& e : wlor_scores(x, x, z)) {
    REQUIRE(e.z == 0.0);
    REQUIRE(e.delta == 0.0);
  }
}

TEST_CASE("disjoint vocabularies force the sign") {
  auto entries = wlor_scores(hist({{"office", 10}}), hist({{"husband", 10}}),
                             hist({{"office", 10}, {"husband", 10}}));
  REQUIRE(entry_of(entries, "office").z > 0.0);
  REQUIRE(entry_of(entries, "husband").z < 0.0);
}

TEST_CASE("uniform count scaling preserves every sign") {
  Rng rng(44);
  auto x = random_hist(rng, 10, 20);
  auto y = random_hist(rng, 10, 20);
  auto z = random_hist(rng, 12, 40);
  z.merge(x);
  z.merge(y);
  auto base = wlor_scores(x, y, z);
  LexicalHistogram x7, y7, z7;
  for (const auto& [w, n] : x.counts) x7.add(w, 7 * n);
  for (const auto& [w, n] : y.counts) y7.add(w, 7 * n);
  for (const auto& [w, n] : z.counts) z7.add(w, 7 * n);
  auto scaled = wlor_scores(x7, y7, z7);
  for (const auto& e : base) {
    const auto& s = entry_of(scaled, e.word);
    if (e.z > 0) REQUIRE(s.z > 0);
    if (e.z < 0) REQUIRE(s.z < 0);
  }
}

TEST_CASE("equal per-word counts give zero delta only with equal totals") {
  // same count c on both sides, equal totals
  auto eq = wlor_scores(hist({{"a", 4}, {"b", 6}}), hist({{"a", 4}, {"b", 6}}),
                        hist({{"a", 8}, {"b", 12}}));
  REQUIRE(entry_of(eq, "a").delta == 0.0);
  // same count c, different totals
  auto uneq = wlor_scores(hist({{"a", 4}, {"b", 6}}), hist({{"a", 4}, {"b", 20}}),
                          hist({{"a", 8}, {"b", 26}}));
  REQUIRE(entry_of(uneq, "a").delta != 0.0);
}

TEST_CASE("smoothing keeps every score finite") {
  // word absent from the background and from one side
  auto entries = wlor_scores(hist({{"rare", 1}, {"common", 30}}),
                             hist({{"common", 30}}), hist({{"common", 60}}));
  for (const auto& e : entries) {
    REQUIRE(std::isfinite(e.z));
    REQUIRE(std::isfinite(e.delta));
  }
}

TEST_CASE("wlor argument and edge contracts") {
  auto z = hist({{"a", 1}});
  REQUIRE(wlor_scores({}, {}, z).empty());

  PriorConfig bad_eps;
  bad_eps.epsilon = 0.0;
  REQUIRE_THROWS_AS(wlor_scores(hist({{"a", 1}}), {}, z, bad_eps), ArgumentError);

  PriorConfig scaled;
  scaled.mode = PriorConfig::Mode::Scaled;
  REQUIRE_THROWS_AS(wlor_scores(hist({{"a", 1}}), {}, {}, scaled), ArgumentError);
  scaled.alpha0 = -1;
  REQUIRE_THROWS_AS(wlor_scores(hist({{"a", 1}}), {}, z, scaled), ArgumentError);
}

TEST_CASE("top_gendered keeps the extremes and respects exclusions") {
  std::vector<WlorEntry> entries{
      {"strongmale", 3.0, 1.0, 0, 0, 0},
      {"weakmale", 1.0, 0.5, 0, 0, 0},
      {"weakfemale", -1.0, -0.5, 0, 0, 0},
      {"strongfemale", -3.0, -1.0, 0, 0, 0},
  };

  SECTION("k_each = 1 keeps the two extremes") {
    auto sets = top_gendered(entries, 1);
    REQUIRE(sets.male_words == std::vector<std::string>{"strongmale"});
    REQUIRE(sets.female_words == std::vector<std::string>{"strongfemale"});
  }

  SECTION("all-positive scores leave the female list empty") {
    std::vector<WlorEntry> pos{{"a", 2.0, 1.0, 0, 0, 0}, {"b", 1.0, 0.5, 0, 0, 0}};
    auto sets = top_gendered(pos, 2);
    REQUIRE(sets.male_words.size() == 2);
    REQUIRE(sets.female_words.empty());
  }

  SECTION("zero scores belong to neither side") {
    std::vector<WlorEntry> z0{{"a", 0.0, 0.0, 0, 0, 0}};
    auto sets = top_gendered(z0, 1);
    REQUIRE(sets.male_words.empty());
    REQUIRE(sets.female_words.empty());
  }

  SECTION("exclusions are removed before taking the top k") {
    auto sets = top_gendered(entries, 1, {"strongmale"});
    REQUIRE(sets.male_words == std::vector<std::string>{"weakmale"});
  }

  SECTION("ties break lexicographically") {
    std::vector<WlorEntry> tied{{"bb", 1.0, 1.0, 0, 0, 0},
                                {"aa", 1.0, 1.0, 0, 0, 0},
                                {"cc", 1.0, 1.0, 0, 0, 0}};
    auto sets = top_gendered(tied, 2);
    REQUIRE(sets.male_words == std::vector<std::string>{"aa", "bb"});
  }

  SECTION("k_each must be positive") {
    REQUIRE_THROWS_AS(top_gendered(entries, 0), ArgumentError);
  }
}

TEST_CASE("theming export and import round-trip") {
  std::vector<WlorEntry> entries{
      {"office", 3.0, 1.0, 9, 1, 10},
      {"pay", 2.0, 0.8, 8, 2, 10},
      {"work", 1.5, 0.6, 7, 3, 10},
      {"husband", -3.0, -1.0, 1, 9, 10},
  };
  auto sets = top_gendered(entries, 3);
  const fs::path dir = fs::temp_directory_path() / "slant_theming_test";
  fs::create_directories(dir);
  const fs::path file = dir / "theming.csv";

  SECTION("unannotated re-import yields zero categories") {
    export_for_theming(sets, entries, file);
    auto imported = import_themed_categories(file, sets);
    REQUIRE(imported.categories.empty());
    REQUIRE(imported.warnings.empty());
  }

  SECTION("annotating three words yields one manual category of size 3") {
    export_for_theming(sets, entries, file);
    std::ifstream in(file);
    std::string line, body;
    std::getline(in, line);  // header
    body = line + "\n";
    while (std::getline(in, line)) {
      if (line.rfind("office,", 0) == 0 || line.rfind("pay,", 0) == 0 ||
          line.rfind("work,", 0) == 0)
        line += "employment";
      body += line + "\n";
    }
    in.close();
    std::ofstream(file) << body;

    auto imported = import_themed_categories(file, sets);
    REQUIRE(imported.categories.size() == 1);
    const auto& cat = imported.categories[0];
    REQUIRE(cat.name == "employment");
    REQUIRE(cat.words.size() == 3);
    REQUIRE(cat.provenance == BiasCategory::Provenance::Manual);
    REQUIRE(cat.n_male_side == 3);
  }

  SECTION("unknown words are skipped with a warning") {
    std::ofstream(file) << "word,z,category\nnotaword,0.0,employment\n"
                           "office,3.0,employment\n";
    auto imported = import_themed_categories(file, sets);
    REQUIRE(imported.categories.size() == 1);
    REQUIRE(imported.categories[0].words == std::vector<std::string>{"office"});
    REQUIRE(imported.warnings.size() == 1);
  }

  fs::remove_all(dir);
}
