// Command line front end: dataset statistics, feature extraction, model
// training and evaluation, emoji ablation, feature ranking and a thin
// comment-fetch client. Every command except `fetch` runs fully offline.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "uzopinion/classifier.hpp"
#include "uzopinion/dataset.hpp"
#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/eval.hpp"
#include "uzopinion/features.hpp"
#include "uzopinion/relieff.hpp"

#include "fetch.hpp"

namespace fs = std::filesystem;
using namespace uzopinion;

namespace {

// Reports are staged in memory and moved into place in one rename so a
// failing command never leaves a partial file behind.
void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& producer) {
  std::ostringstream buf;
  producer(buf);
  if (path.empty() || path == "-") {
    std::cout << buf.str();
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + path);
    out << buf.str();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("failed writing output file: " + path);
    }
  }
  fs::rename(tmp, target);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("bad --param '" + item + "', expected name=value");
    const std::string name = item.substr(0, eq);
    try {
      params[name] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error("bad value in --param '" + item + "'");
    }
  }
  return params;
}

ClassifierSpec spec_from_cli(const std::string& algorithm,
                             const std::vector<std::string>& raw_params,
                             std::uint64_t seed) {
  const auto parsed = algorithm_from_string(algorithm);
  if (!parsed)
    throw Error("unknown algorithm '" + algorithm +
                "' (expected knn, bayes, reptree or random_forest)");
  return make_spec(*parsed, parse_params(raw_params), seed);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_feature_matrix(std::ostream& out, const std::vector<RawPost>& posts,
                          const Dataset& data) {
  out << "id";
  for (const auto& name : data.schema->names) {
    if (name.find(',') != std::string::npos)
      out << ",\"" << name << "\"";
    else
      out << ',' << name;
  }
  out << ",label\n";
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    out << posts[i].id;
    for (double v : data.rows[i].values) out << ',' << format_value(v);
    out << ',' << to_string(*data.rows[i].label) << '\n';
  }
}

struct CommonInputs {
  std::string dataset_path;
  std::string lexicon_path;
};

void add_dataset_option(CLI::App* cmd, std::string& path) {
  cmd->add_option("--dataset", path, "Dataset JSONL file")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_lexicon_option(CLI::App* cmd, std::string& path) {
  cmd->add_option("--lexicon", path, "Emoji sentiment lexicon CSV")
      ->required()
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uzbek opinion classification pipeline"};
  app.require_subcommand(1);

  // --- stats ---------------------------------------------------------------
  auto* stats_cmd = app.add_subcommand("stats", "Dataset ingest statistics");
  stats_cmd->set_config("--config");
  std::string stats_dataset, stats_out;
  add_dataset_option(stats_cmd, stats_dataset);
  stats_cmd->add_option("--out", stats_out, "Output CSV (default stdout)");

  // --- features ------------------------------------------------------------
  auto* features_cmd =
      app.add_subcommand("features", "Extract the feature matrix");
  features_cmd->set_config("--config");
  std::string feat_dataset, feat_lexicon, feat_out, feat_schema_out;
  bool feat_no_emoji = false;
  add_dataset_option(features_cmd, feat_dataset);
  add_lexicon_option(features_cmd, feat_lexicon);
  features_cmd->add_flag("--no-emoji", feat_no_emoji,
                         "Drop the emoji block (38 features instead of 42)");
  features_cmd->add_option("--out", feat_out, "Output CSV (default stdout)");
  features_cmd->add_option("--schema-out", feat_schema_out,
                           "Also write the feature schema as JSON");

  // --- train ---------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Train a model on the full dataset");
  train_cmd->set_config("--config");
  std::string train_dataset, train_lexicon, train_algorithm, train_model_out;
  std::vector<std::string> train_params;
  std::uint64_t train_seed = 0;
  bool train_no_emoji = false;
  add_dataset_option(train_cmd, train_dataset);
  add_lexicon_option(train_cmd, train_lexicon);
  train_cmd->add_option("--algorithm", train_algorithm,
                        "knn | bayes | reptree | random_forest")
      ->required();
  train_cmd->add_option("--param", train_params,
                        "Hyperparameter as name=value; repeatable");
  train_cmd->add_option("--seed", train_seed, "Random seed")->required();
  train_cmd->add_flag("--no-emoji", train_no_emoji, "Train on the 38-feature set");
  train_cmd->add_option("--model", train_model_out, "Model output file")->required();

  // --- evaluate ------------------------------------------------------------
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Stratified k-fold cross-validation");
  eval_cmd->set_config("--config");
  std::string eval_dataset, eval_lexicon, eval_algorithm, eval_out, eval_json;
  std::vector<std::string> eval_params;
  std::uint64_t eval_seed = 0;
  std::size_t eval_folds = 10;
  bool eval_no_emoji = false;
  add_dataset_option(eval_cmd, eval_dataset);
  add_lexicon_option(eval_cmd, eval_lexicon);
  eval_cmd->add_option("--algorithm", eval_algorithm,
                       "knn | bayes | reptree | random_forest")
      ->required();
  eval_cmd->add_option("--param", eval_params,
                       "Hyperparameter as name=value; repeatable");
  eval_cmd->add_option("--folds", eval_folds, "Fold count (default 10)");
  eval_cmd->add_option("--seed", eval_seed, "Random seed")->required();
  eval_cmd->add_flag("--no-emoji", eval_no_emoji, "Evaluate the 38-feature set");
  eval_cmd->add_option("--out", eval_out, "Report CSV (default stdout)");
  eval_cmd->add_option("--json", eval_json, "Also write the report as JSON");

  // --- ablate --------------------------------------------------------------
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "Compare accuracy with and without the emoji features");
  ablate_cmd->set_config("--config");
  std::string abl_dataset, abl_lexicon, abl_out, abl_json;
  std::vector<std::string> abl_algorithms{"knn", "bayes", "reptree",
                                          "random_forest"};
  std::uint64_t abl_seed = 0;
  std::size_t abl_folds = 10;
  add_dataset_option(ablate_cmd, abl_dataset);
  add_lexicon_option(ablate_cmd, abl_lexicon);
  ablate_cmd->add_option("--algorithms", abl_algorithms,
                         "Algorithms to compare (default: all four)");
  ablate_cmd->add_option("--folds", abl_folds, "Fold count (default 10)");
  ablate_cmd->add_option("--seed", abl_seed, "Random seed")->required();
  ablate_cmd->add_option("--out", abl_out, "Report CSV (default stdout)");
  ablate_cmd->add_option("--json", abl_json, "Also write the report as JSON");

  // --- rank ----------------------------------------------------------------
  auto* rank_cmd = app.add_subcommand("rank", "Feature ranking");
  rank_cmd->set_config("--config");
  std::string rank_dataset, rank_lexicon, rank_out;
  std::uint64_t rank_seed = 0;
  std::size_t rank_top = 0, rank_neighbors = 10, rank_samples = 0;
  bool rank_no_emoji = false;
  add_dataset_option(rank_cmd, rank_dataset);
  add_lexicon_option(rank_cmd, rank_lexicon);
  rank_cmd->add_option("--top", rank_top, "Rows to emit (default: all features)");
  rank_cmd->add_option("--neighbors", rank_neighbors,
                       "Nearest hits/misses per instance (default 10)");
  rank_cmd->add_option("--samples", rank_samples,
                       "Instances to sample, 0 = all (default 0)");
  rank_cmd->add_option("--seed", rank_seed, "Random seed")->required();
  rank_cmd->add_flag("--no-emoji", rank_no_emoji, "Rank the 38-feature set");
  rank_cmd->add_option("--out", rank_out, "Ranking CSV (default stdout)");

  // --- fetch ---------------------------------------------------------------
  auto* fetch_cmd = app.add_subcommand(
      "fetch", "Download raw video comments as JSONL (network access)");
  fetch_cmd->set_config("--config");
  FetchOptions fetch_opts;
  std::string fetch_out;
  fetch_cmd->add_option("video_id", fetch_opts.video_id, "Video id")->required();
  fetch_cmd->add_option("--api-key", fetch_opts.api_key, "API key")->required();
  fetch_cmd->add_option("--max-pages", fetch_opts.max_pages,
                        "Page limit, 0 = all (default 0)");
  fetch_cmd->add_option("--base-url", fetch_opts.base_url,
                        "Endpoint base URL (for testing against a mock server)");
  fetch_cmd->add_option("--out", fetch_out, "Output JSONL file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats_cmd->parsed()) {
      const auto loaded = load_dataset(stats_dataset);
      write_output(stats_out,
                   [&](std::ostream& out) { write_stats_csv(out, loaded.stats); });
    } else if (features_cmd->parsed()) {
      const auto loaded = load_dataset(feat_dataset);
      const auto lexicon = EmojiLexicon::load(feat_lexicon);
      const auto data = assemble_all(loaded.posts, lexicon, !feat_no_emoji);
      if (!feat_schema_out.empty())
        write_output(feat_schema_out, [&](std::ostream& out) {
          write_schema_json(out, *data.schema);
        });
      write_output(feat_out, [&](std::ostream& out) {
        write_feature_matrix(out, loaded.posts, data);
      });
    } else if (train_cmd->parsed()) {
      const auto spec = spec_from_cli(train_algorithm, train_params, train_seed);
      const auto loaded = load_dataset(train_dataset);
      const auto lexicon = EmojiLexicon::load(train_lexicon);
      const auto data = assemble_all(loaded.posts, lexicon, !train_no_emoji);
      const auto model = train(spec, data);
      write_output(train_model_out,
                   [&](std::ostream& out) { out << model_to_json(model) << '\n'; });
      std::cerr << "model written to " << train_model_out << " ("
                << loaded.posts.size() << " instances, "
                << data.schema->size() << " features)\n";
    } else if (eval_cmd->parsed()) {
      const auto spec = spec_from_cli(eval_algorithm, eval_params, eval_seed);
      const auto loaded = load_dataset(eval_dataset);
      const auto lexicon = EmojiLexicon::load(eval_lexicon);
      const auto data = assemble_all(loaded.posts, lexicon, !eval_no_emoji);
      const auto report =
          cross_validate(data, spec, !eval_no_emoji, eval_folds, eval_seed);
      if (!eval_json.empty())
        write_output(eval_json,
                     [&](std::ostream& out) { write_cv_json(out, report); });
      write_output(eval_out, [&](std::ostream& out) { write_cv_csv(out, report); });
    } else if (ablate_cmd->parsed()) {
      std::vector<ClassifierSpec> specs;
      for (const auto& name : abl_algorithms)
        specs.push_back(spec_from_cli(name, {}, abl_seed));
      const auto loaded = load_dataset(abl_dataset);
      const auto lexicon = EmojiLexicon::load(abl_lexicon);
      const auto rows = ablation(loaded.posts, lexicon, specs, abl_folds, abl_seed);
      if (!abl_json.empty())
        write_output(abl_json, [&](std::ostream& out) {
          write_ablation_json(out, rows, abl_folds, abl_seed);
        });
      write_output(abl_out, [&](std::ostream& out) {
        write_ablation_csv(out, rows, abl_folds, abl_seed);
      });
    } else if (rank_cmd->parsed()) {
      const auto loaded = load_dataset(rank_dataset);
      const auto lexicon = EmojiLexicon::load(rank_lexicon);
      const auto data = assemble_all(loaded.posts, lexicon, !rank_no_emoji);
      const auto ranking =
          relieff_rank(data, rank_neighbors, rank_samples, rank_seed);
      const std::size_t n = rank_top == 0 ? ranking.entries.size() : rank_top;
      write_output(rank_out, [&](std::ostream& out) {
        write_ranking_csv(out, ranking, n);
      });
    } else if (fetch_cmd->parsed()) {
      const std::size_t items = fetch_comments(fetch_opts, fetch_out);
      std::cerr << "wrote " << items << " comment threads to " << fetch_out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
