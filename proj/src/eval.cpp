#include "uzopinion/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <nlohmann/json.hpp>

#include "uzopinion/error.hpp"
#include "uzopinion/rng.hpp"

namespace uzopinion {

namespace {

using json = nlohmann::json;

std::string format_params(const ClassifierSpec& spec) {
  std::string out;
  for (const auto& [key, value] : spec.params) {
    if (!out.empty()) out += ';';
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s=%g", key.c_str(), value);
    out += buf;
  }
  return out.empty() ? "defaults" : out;
}

std::string format_accuracy(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string format_percent(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value * 100.0);
  return buf;
}

void check_partition(const Dataset& data,
                     const std::vector<std::vector<std::size_t>>& folds) {
  std::vector<char> seen(data.rows.size(), 0);
  std::size_t covered = 0;
  for (const auto& fold : folds) {
    for (std::size_t i : fold) {
      if (i >= data.rows.size())
        throw Error("fold index " + std::to_string(i) + " out of range");
      if (seen[i]) throw Error("folds overlap at instance " + std::to_string(i));
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != data.rows.size())
    throw Error("folds do not cover the dataset (" + std::to_string(covered) +
                " of " + std::to_string(data.rows.size()) + " instances)");
}

json cv_to_json(const CVReport& report) {
  json folds = json::array();
  for (std::size_t f = 0; f < report.fold_matrices.size(); ++f) {
    const auto& cm = report.fold_matrices[f];
    folds.push_back({{"fold", f + 1},
                     {"tp", cm.tp},
                     {"tn", cm.tn},
                     {"fp", cm.fp},
                     {"fn", cm.fn},
                     {"accuracy", accuracy(cm)}});
  }
  return json{{"algorithm", to_string(report.spec.algorithm)},
              {"params", report.spec.params},
              {"seed", report.seed},
              {"k_folds", report.k_folds},
              {"include_emoji", report.include_emoji},
              {"folds", folds},
              {"pooled",
               {{"tp", report.pooled.tp},
                {"tn", report.pooled.tn},
                {"fp", report.pooled.fp},
                {"fn", report.pooled.fn}}},
              {"pooled_accuracy", report.pooled_accuracy},
              {"mean_fold_accuracy", report.mean_fold_accuracy}};
}

}  // namespace

void ConfusionMatrix::add(Label truth, Label predicted) {
  if (truth == Label::positive)
    predicted == Label::positive ? ++tp : ++fn;
  else
    predicted == Label::negative ? ++tn : ++fp;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  tn += other.tn;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

double accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw Error("accuracy of an empty confusion matrix");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
}

std::vector<std::vector<std::size_t>> stratified_folds(
    const std::vector<Label>& labels, std::size_t k_folds, std::uint64_t seed) {
  if (k_folds < 2) throw Error("k_folds must be at least 2");
  if (k_folds > labels.size())
    throw Error("k_folds (" + std::to_string(k_folds) +
                ") exceeds the instance count (" + std::to_string(labels.size()) +
                ")");
  std::vector<std::vector<std::size_t>> folds(k_folds);
  Rng rng(seed);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (static_cast<std::size_t>(labels[i]) == c) members.push_back(i);
    rng.shuffle(members);
    for (std::size_t j = 0; j < members.size(); ++j)
      folds[j % k_folds].push_back(members[j]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

CVReport cross_validate(const Dataset& data, const ClassifierSpec& spec,
                        bool include_emoji, std::size_t k_folds,
                        std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(data.rows.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    if (!data.rows[i].label)
      throw Error("instance " + std::to_string(i) + " is unlabeled");
    labels.push_back(*data.rows[i].label);
  }
  return cross_validate_with_folds(data, spec, include_emoji,
                                   stratified_folds(labels, k_folds, seed), seed);
}

CVReport cross_validate_with_folds(const Dataset& data, const ClassifierSpec& spec,
                                   bool include_emoji,
                                   const std::vector<std::vector<std::size_t>>& folds,
                                   std::uint64_t seed) {
  validate_spec(spec);
  check_partition(data, folds);

  CVReport report;
  report.spec = spec;
  report.include_emoji = include_emoji;
  report.k_folds = folds.size();
  report.seed = seed;

  for (std::size_t f = 0; f < folds.size(); ++f) {
    std::vector<char> held_out(data.rows.size(), 0);
    for (std::size_t i : folds[f]) held_out[i] = 1;

    Dataset training;
    training.schema = data.schema;
    training.rows.reserve(data.rows.size() - folds[f].size());
    for (std::size_t i = 0; i < data.rows.size(); ++i)
      if (!held_out[i]) training.rows.push_back(data.rows[i]);

    TrainedModel model;
    try {
      model = train(spec, training);
    } catch (const Error& e) {
      throw Error("fold " + std::to_string(f + 1) + ": " + e.what());
    }

    ConfusionMatrix cm;
    for (std::size_t i : folds[f])
      cm.add(*data.rows[i].label, predict(model, data.rows[i]).label);
    report.fold_matrices.push_back(cm);
    report.pooled += cm;
  }

  report.pooled_accuracy = accuracy(report.pooled);
  double sum = 0.0;
  for (const auto& cm : report.fold_matrices) sum += accuracy(cm);
  report.mean_fold_accuracy = sum / static_cast<double>(report.fold_matrices.size());
  return report;
}

std::vector<AblationRow> ablation(const std::vector<RawPost>& posts,
                                  const EmojiLexicon& lexicon,
                                  const std::vector<ClassifierSpec>& specs,
                                  std::size_t k_folds, std::uint64_t seed) {
  if (specs.empty()) throw Error("ablation needs at least one classifier spec");
  std::vector<Label> labels;
  labels.reserve(posts.size());
  for (const auto& p : posts) labels.push_back(p.label);
  // one fold assignment shared by the 38- and 42-dimensional runs
  const auto folds = stratified_folds(labels, k_folds, seed);

  const Dataset without = assemble_all(posts, lexicon, false);
  const Dataset with = assemble_all(posts, lexicon, true);

  std::vector<AblationRow> rows;
  rows.reserve(specs.size());
  for (const auto& spec : specs) {
    AblationRow row;
    row.spec = spec;
    row.without_emoji = cross_validate_with_folds(without, spec, false, folds, seed);
    row.with_emoji = cross_validate_with_folds(with, spec, true, folds, seed);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_cv_csv(std::ostream& out, const CVReport& report) {
  out << "# algorithm=" << to_string(report.spec.algorithm) << '\n';
  out << "# params=" << format_params(report.spec) << '\n';
  out << "# seed=" << report.seed << '\n';
  out << "# k_folds=" << report.k_folds << '\n';
  out << "# include_emoji=" << (report.include_emoji ? "true" : "false") << '\n';
  out << "fold,tp,tn,fp,fn,accuracy\n";
  for (std::size_t f = 0; f < report.fold_matrices.size(); ++f) {
    const auto& cm = report.fold_matrices[f];
    out << (f + 1) << ',' << cm.tp << ',' << cm.tn << ',' << cm.fp << ',' << cm.fn
        << ',' << format_accuracy(accuracy(cm)) << '\n';
  }
  const auto& cm = report.pooled;
  out << "pooled," << cm.tp << ',' << cm.tn << ',' << cm.fp << ',' << cm.fn << ','
      << format_accuracy(report.pooled_accuracy) << '\n';
  out << "# pooled_accuracy=" << format_accuracy(report.pooled_accuracy) << '\n';
  out << "# mean_fold_accuracy=" << format_accuracy(report.mean_fold_accuracy)
      << '\n';
}

void write_cv_json(std::ostream& out, const CVReport& report) {
  out << cv_to_json(report).dump(2) << '\n';
}

void write_ablation_csv(std::ostream& out, const std::vector<AblationRow>& rows,
                        std::size_t k_folds, std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "# k_folds=" << k_folds << '\n';
  out << "algorithm,params,accuracy_without_emoji,accuracy_with_emoji,"
         "accuracy_pct_without_emoji,accuracy_pct_with_emoji\n";
  for (const auto& row : rows) {
    out << to_string(row.spec.algorithm) << ',' << format_params(row.spec) << ','
        << format_accuracy(row.without_emoji.pooled_accuracy) << ','
        << format_accuracy(row.with_emoji.pooled_accuracy) << ','
        << format_percent(row.without_emoji.pooled_accuracy) << ','
        << format_percent(row.with_emoji.pooled_accuracy) << '\n';
  }
}

void write_ablation_json(std::ostream& out, const std::vector<AblationRow>& rows,
                         std::size_t k_folds, std::uint64_t seed) {
  json entries = json::array();
  for (const auto& row : rows) {
    entries.push_back({{"algorithm", to_string(row.spec.algorithm)},
                       {"params", row.spec.params},
                       {"without_emoji", cv_to_json(row.without_emoji)},
                       {"with_emoji", cv_to_json(row.with_emoji)}});
  }
  out << json{{"seed", seed}, {"k_folds", k_folds}, {"results", entries}}.dump(2)
      << '\n';
}

}  // namespace uzopinion
