#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "uzopinion/classifier.hpp"
#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/features.hpp"
#include "uzopinion/post.hpp"

namespace uzopinion {

/// Binary confusion counts; the positive class is the positive opinion.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  void add(Label truth, Label predicted);
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
};

/// (tp + tn) / (tp + fp + tn + fn); the matrix must not be empty.
double accuracy(const ConfusionMatrix& cm);

/// Splits instances into k disjoint, exhaustive folds where per-class
/// counts differ by at most one across folds. Deterministic for a fixed
/// seed. k must be at least 2 and at most the instance count.
std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<Label>& labels, std::size_t k_folds, std::uint64_t seed);

struct CVReport {
  ClassifierSpec spec;
  bool include_emoji = false;
  std::size_t k_folds = 0;
  std::uint64_t seed = 0;
  std::vector<ConfusionMatrix> fold_matrices;
  ConfusionMatrix pooled;          // summed over folds
  double pooled_accuracy = 0.0;    // accuracy of the summed matrix
  double mean_fold_accuracy = 0.0; // unweighted mean of per-fold accuracies
};

/// Stratified k-fold cross-validation: per fold, the model (including its
/// normalization or discretization) is fitted on the other k-1 folds only.
CVReport cross_validate(const Dataset& data, const ClassifierSpec& spec,
                        bool include_emoji, std::size_t k_folds,
                        std::uint64_t seed);

/// Same, with the fold assignment supplied by the caller (must be a
/// disjoint, exhaustive partition of the dataset).
CVReport cross_validate_with_folds(const Dataset& data, const ClassifierSpec& spec,
                                   bool include_emoji,
                                   const std::vector<std::vector<std::size_t>>& folds,
                                   std::uint64_t seed);

struct AblationRow {
  ClassifierSpec spec;
  CVReport without_emoji;
  CVReport with_emoji;
};

/// Cross-validates every spec twice, once on the feature set without the
/// emoji block and once with it, using identical fold assignments for both
/// runs so the comparison isolates the emoji block.
std::vector<AblationRow> ablation(const std::vector<RawPost>& posts,
                                  const EmojiLexicon& lexicon,
                                  const std::vector<ClassifierSpec>& specs,
                                  std::size_t k_folds, std::uint64_t seed);

void write_cv_csv(std::ostream& out, const CVReport& report);
void write_cv_json(std::ostream& out, const CVReport& report);
void write_ablation_csv(std::ostream& out, const std::vector<AblationRow>& rows,
                        std::size_t k_folds, std::uint64_t seed);
void write_ablation_json(std::ostream& out, const std::vector<AblationRow>& rows,
                         std::size_t k_folds, std::uint64_t seed);

}  // namespace uzopinion
