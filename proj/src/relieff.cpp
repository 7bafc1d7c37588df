#include "uzopinion/relieff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "uzopinion/classifier.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/rng.hpp"

namespace uzopinion {

FeatureRanking relieff_rank(const Dataset& data, std::size_t k_neighbors,
                            std::size_t m_iterations, std::uint64_t seed) {
  if (!data.schema) throw Error("ranking data has no schema");
  if (k_neighbors == 0) throw Error("k_neighbors must be at least 1");
  const std::size_t n = data.rows.size();
  const std::size_t m_features = data.schema->size();

  std::vector<Label> labels(n);
  std::array<std::size_t, kNumClasses> class_n{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = data.rows[i];
    if (!row.label) throw Error("instance " + std::to_string(i) + " is unlabeled");
    if (row.values.size() != m_features)
      throw Error("instance " + std::to_string(i) + " has wrong dimensionality");
    for (double v : row.values)
      if (!std::isfinite(v))
        throw Error("instance " + std::to_string(i) + " has a non-finite value");
    labels[i] = *row.label;
    ++class_n[static_cast<std::size_t>(*row.label)];
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (class_n[c] < k_neighbors + 1)
      throw Error("class '" +
                  std::string(to_string(static_cast<Label>(c))) + "' has " +
                  std::to_string(class_n[c]) +
                  " instances but k+1 = " + std::to_string(k_neighbors + 1) +
                  " are needed; use a smaller k");
  }

  // normalize once over the whole dataset; constant features collapse to 0
  std::vector<const std::vector<double>*> row_ptrs;
  row_ptrs.reserve(n);
  for (const auto& row : data.rows) row_ptrs.push_back(&row.values);
  const MinMaxScaler scaler = MinMaxScaler::fit(row_ptrs);
  std::vector<std::vector<double>> x;
  x.reserve(n);
  for (const auto& row : data.rows) x.push_back(scaler.apply(row.values));

  std::array<double, kNumClasses> prior{};
  for (std::size_t c = 0; c < kNumClasses; ++c)
    prior[c] = static_cast<double>(class_n[c]) / static_cast<double>(n);

  const std::size_t m = (m_iterations == 0 || m_iterations > n) ? n : m_iterations;
  std::vector<std::size_t> samples(n);
  std::iota(samples.begin(), samples.end(), 0);
  Rng rng(seed);
  rng.shuffle(samples);
  samples.resize(m);

  std::vector<double> weights(m_features, 0.0);
  const double norm = static_cast<double>(m) * static_cast<double>(k_neighbors);
  std::vector<std::pair<double, std::size_t>> neighbours;
  neighbours.reserve(n);

  for (std::size_t r : samples) {
    const auto& ref = x[r];
    const auto ref_class = static_cast<std::size_t>(labels[r]);
    for (std::size_t other_class = 0; other_class < kNumClasses; ++other_class) {
      neighbours.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        if (static_cast<std::size_t>(labels[i]) != other_class) continue;
        double d2 = 0.0;
        for (std::size_t f = 0; f < m_features; ++f) {
          const double d = ref[f] - x[i][f];
          d2 += d * d;
        }
        neighbours.emplace_back(d2, i);
      }
      // nearest first; exact distance ties fall back to instance index
      std::sort(neighbours.begin(), neighbours.end());
      const std::size_t take = std::min(k_neighbors, neighbours.size());
      const bool is_hit = other_class == ref_class;
      const double miss_weight =
          is_hit ? 1.0 : prior[other_class] / (1.0 - prior[ref_class]);
      for (std::size_t j = 0; j < take; ++j) {
        const auto& neigh = x[neighbours[j].second];
        for (std::size_t f = 0; f < m_features; ++f) {
          const double diff = std::abs(ref[f] - neigh[f]);
          if (is_hit)
            weights[f] -= diff / norm;
          else
            weights[f] += miss_weight * diff / norm;
        }
      }
    }
  }

  FeatureRanking ranking;
  ranking.k_neighbors = k_neighbors;
  ranking.m_iterations = m;
  ranking.seed = seed;
  ranking.entries.reserve(m_features);
  std::vector<std::size_t> order(m_features);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return weights[a] > weights[b];  // score ties keep schema order
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    ranking.entries.push_back(
        {i + 1, weights[order[i]], data.schema->names[order[i]]});
  }
  return ranking;
}

std::vector<RankedFeature> top_n(const FeatureRanking& ranking, std::size_t n) {
  if (n > ranking.entries.size())
    throw Error("requested top " + std::to_string(n) + " of " +
                std::to_string(ranking.entries.size()) + " features");
  return {ranking.entries.begin(),
          ranking.entries.begin() + static_cast<std::ptrdiff_t>(n)};
}

void write_ranking_csv(std::ostream& out, const FeatureRanking& ranking,
                       std::size_t n) {
  const auto rows = top_n(ranking, n);
  out << "# k_neighbors=" << ranking.k_neighbors << '\n';
  out << "# m_iterations=" << ranking.m_iterations << '\n';
  out << "# seed=" << ranking.seed << '\n';
  out << "# scope=whole_dataset\n";
  out << "rank,score,feature\n";
  char buf[32];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.7f", row.score);
    std::string name = row.name;
    if (name.find(',') != std::string::npos) name = "\"" + name + "\"";
    out << row.rank << ',' << buf << ',' << name << '\n';
  }
}

}  // namespace uzopinion
