#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "uzopinion/features.hpp"

namespace uzopinion {

struct RankedFeature {
  std::size_t rank = 0;  // 1-based
  double score = 0.0;
  std::string name;
};

/// Instance-based feature ranking. Entries are sorted by score descending
/// with consecutive ranks from 1; every schema feature appears exactly once.
struct FeatureRanking {
  std::vector<RankedFeature> entries;
  std::size_t k_neighbors = 10;
  std::size_t m_iterations = 0;
  std::uint64_t seed = 0;
};

/// Ranks features by how well they separate each sampled instance from its
/// nearest other-class neighbours versus its nearest same-class neighbours.
/// Distances are Euclidean on internally min-max normalized features; a
/// constant feature scores exactly 0. `m` = 0 means "use every instance"
/// (the default scope is the whole dataset); otherwise m instances are
/// sampled without replacement. Every class needs at least k+1 members.
FeatureRanking relieff_rank(const Dataset& data, std::size_t k_neighbors = 10,
                            std::size_t m_iterations = 0, std::uint64_t seed = 0);

/// First n entries; n must not exceed the feature count.
std::vector<RankedFeature> top_n(const FeatureRanking& ranking, std::size_t n);

void write_ranking_csv(std::ostream& out, const FeatureRanking& ranking,
                       std::size_t n);

}  // namespace uzopinion
