#include "doctest.h"

#include <cmath>
#include <sstream>

#include "support/synthetic.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/relieff.hpp"
#include "uzopinion/rng.hpp"

using namespace uzopinion;
using namespace uzopinion::testsupport;

namespace {

// f0 separates the classes with a margin, f1..f3 are uniform noise,
// f4 is constant
Dataset planted_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> x;
  std::vector<Label> y;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i % 2 == 0;
    std::vector<double> row(5);
    row[0] = positive ? 1.0 + rng.next_double() : -1.0 - rng.next_double();
    row[1] = rng.next_double();
    row[2] = rng.next_double();
    row[3] = rng.next_double();
    row[4] = 5.0;
    x.push_back(std::move(row));
    y.push_back(positive ? Label::positive : Label::negative);
  }
  return dataset_from_matrix(x, y);
}

}  // namespace

TEST_CASE("ranking structure: sorted, consecutive ranks, every feature once") {
  const auto data = planted_matrix(60, 1);
  const auto ranking = relieff_rank(data, 5, 0, 1);
  REQUIRE(ranking.entries.size() == 5);
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    CHECK(ranking.entries[i].rank == i + 1);
    if (i > 0) CHECK(ranking.entries[i - 1].score >= ranking.entries[i].score);
    CHECK(ranking.entries[i].score >= -1.0);
    CHECK(ranking.entries[i].score <= 1.0);
  }
}

TEST_CASE("a separating feature ranks first with a positive score") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto data = planted_matrix(80, seed);
    const auto ranking = relieff_rank(data, 5, 0, seed);
    if (ranking.entries[0].name == "f0" && ranking.entries[0].score > 0.0) ++hits;
  }
  CHECK(hits >= 29);
}

TEST_CASE("a constant feature scores exactly zero") {
  const auto data = planted_matrix(50, 2);
  const auto ranking = relieff_rank(data, 5, 0, 2);
  bool found = false;
  for (const auto& e : ranking.entries) {
    if (e.name == "f4") {
      CHECK(e.score == 0.0);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("duplicating every instance keeps the ranking order") {
  const auto data = planted_matrix(60, 3);
  Dataset doubled;
  doubled.schema = data.schema;
  for (const auto& row : data.rows) {
    doubled.rows.push_back(row);
    doubled.rows.push_back(row);
  }
  const auto base = relieff_rank(data, 5, 0, 3);
  const auto dup = relieff_rank(doubled, 5, 0, 3);
  REQUIRE(base.entries.size() == dup.entries.size());
  for (std::size_t i = 0; i < base.entries.size(); ++i)
    CHECK(base.entries[i].name == dup.entries[i].name);
}

TEST_CASE("relabeling classes leaves scores unchanged on balanced data") {
  const auto data = planted_matrix(60, 4);
  Dataset swapped = data;
  for (auto& row : swapped.rows)
    row.label = *row.label == Label::positive ? Label::negative : Label::positive;
  const auto a = relieff_rank(data, 5, 0, 9);
  const auto b = relieff_rank(swapped, 5, 0, 9);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].name == b.entries[i].name);
    CHECK(a.entries[i].score == doctest::Approx(b.entries[i].score).epsilon(1e-12));
  }
}

TEST_CASE("sampling m instances without replacement is deterministic") {
  const auto data = planted_matrix(80, 5);
  const auto a = relieff_rank(data, 5, 40, 17);
  const auto b = relieff_rank(data, 5, 40, 17);
  CHECK(a.m_iterations == 40);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].name == b.entries[i].name);
    CHECK(a.entries[i].score == b.entries[i].score);
  }
}

TEST_CASE("a class smaller than k+1 is a parameter error") {
  // 6 positive, 6 negative instances; k = 10 cannot work
  const auto data = planted_matrix(12, 6);
  CHECK_THROWS_WITH_AS(relieff_rank(data, 10, 0, 0),
                       doctest::Contains("smaller k"), Error);
}

TEST_CASE("top_n slices the ranking") {
  const auto data = planted_matrix(60, 7);
  const auto ranking = relieff_rank(data, 5, 0, 7);
  CHECK(top_n(ranking, ranking.entries.size()).size() == 5);
  CHECK(top_n(ranking, 3).size() == 3);
  CHECK(top_n(ranking, 0).empty());
  CHECK_THROWS_AS(top_n(ranking, 6), Error);
}

TEST_CASE("ranking csv carries parameters and one row per feature") {
  const auto data = planted_matrix(60, 8);
  const auto ranking = relieff_rank(data, 5, 0, 8);
  std::ostringstream out;
  write_ranking_csv(out, ranking, 3);
  const std::string text = out.str();
  CHECK(text.find("# k_neighbors=5") != std::string::npos);
  CHECK(text.find("# seed=8") != std::string::npos);
  CHECK(text.find("rank,score,feature") != std::string::npos);
  CHECK(text.find("1,") != std::string::npos);
}
