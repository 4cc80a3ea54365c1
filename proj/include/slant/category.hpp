#pragma once

#include <optional>
#include <string>
#include <vector>

namespace slant {

/// A named word list representing one candidate bias theme, together with
/// how it was produced. Cluster-derived categories also record how many of
/// their words came from each gendered side of the top-k lists.
struct BiasCategory {
  enum class Provenance { Manual, Kmeans };

  std::string name;
  std::vector<std::string> words;
  Provenance provenance = Provenance::Manual;
  std::optional<int> source_cluster;
  int n_male_side = 0;
  int n_female_side = 0;
};

inline const char* to_string(BiasCategory::Provenance p) {
  return p == BiasCategory::Provenance::Manual ? "manual" : "kmeans";
}

}  // namespace slant
