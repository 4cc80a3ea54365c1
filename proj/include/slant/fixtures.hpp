#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "slant/category.hpp"
#include "slant/weat.hpp"

namespace slant::fixtures {

/// General employment terms widely reused in the embedding-bias
/// literature; bundled for the baseline-comparison command.
inline BiasCategory caliskan_employment() {
  BiasCategory c;
  c.name = "caliskan_employment";
  c.provenance = BiasCategory::Provenance::Manual;
  c.words = {"executive", "management", "professional", "corporation",
             "salary",    "office",     "business",     "career"};
  return c;
}

/// The standard paired gender attribute terms (pronouns, kinship and
/// group nouns), as (male, female) pairs.
inline GenderPairSet garg_gender_pairs() {
  GenderPairSet gp;
  gp.pairs = {
      {"he", "she"},         {"son", "daughter"},   {"his", "hers"},
      {"him", "her"},        {"father", "mother"},  {"man", "woman"},
      {"boy", "girl"},       {"himself", "herself"},{"male", "female"},
      {"brother", "sister"}, {"sons", "daughters"}, {"fathers", "mothers"},
      {"men", "women"},      {"boys", "girls"},     {"males", "females"},
      {"brothers", "sisters"},{"uncle", "aunt"},    {"uncles", "aunts"},
      {"nephew", "niece"},   {"nephews", "nieces"},
  };
  return gp;
}

/// Default candidate pairs for base-pair derivation: the full paired list
/// above. Derivation then drops family terms and anything outside the
/// corpus's own top-k gendered words.
inline std::vector<std::pair<std::string, std::string>> default_pair_candidates() {
  return garg_gender_pairs().pairs;
}

/// Kinship terms excluded from derived base pairs: they are used in family
/// contexts, which biases the attribute axis for reasons unrelated to
/// gender.
inline std::unordered_set<std::string> default_family_exclusions() {
  return {"son",     "daughter", "father",  "mother",  "brother", "sister",
          "sons",    "daughters","fathers", "mothers", "brothers","sisters",
          "uncle",   "aunt",     "uncles",  "aunts",   "nephew",  "niece",
          "nephews", "nieces",   "husband", "wife",    "husbands","wives"};
}

}  // namespace slant::fixtures
