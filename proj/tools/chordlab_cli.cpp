// Copyright 2026 The chordlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end over the chordlab C API: train, predict, evaluate and
// cross-validate over corpora of JSON piece files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chordlab.h"

using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 evaluation-level failure, 2 I/O or config error.
int fail(int code, char* err) {
  std::cerr << "error: " << (err ? err : "unknown failure") << "\n";
  chordlab_string_free(err);
  return code;
}

struct ConfigFlags {
  std::string preset;
  int max_seg_len = -1;
  double lambda = -1.0;
  long cutoff = -1;
  long bigram_cutoff = -1;
  double tol = -1.0;
  int max_iters = -1;
  int lbfgs_memory = -1;
  long long seed = -1;
  int jobs = -1;
  std::string config_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "JSON config file; explicit flags override it");
    cmd->add_option("--preset", preset,
                    "label preset: bach, tavern, kp or rock");
    cmd->add_option("--max-seg-len", max_seg_len,
                    "max segment length in events");
    cmd->add_option("--lambda", lambda, "L2 regularization strength");
    cmd->add_option("--cutoff", cutoff,
                    "min gold count for a feature instance");
    cmd->add_option("--bigram-cutoff", bigram_cutoff,
                    "min count for transition instances (default: --cutoff)");
    cmd->add_option("--tol", tol, "gradient max-norm stopping tolerance");
    cmd->add_option("--max-iters", max_iters, "optimizer iteration cap");
    cmd->add_option("--lbfgs-memory", lbfgs_memory,
                    "stored L-BFGS curvature pairs");
    cmd->add_option("--seed", seed, "seed for fold shuffling");
    cmd->add_option("--jobs", jobs, "worker threads for per-piece work");
  }

  std::string to_json() const {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        std::exit(2);
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      j = json::parse(ss.str(), nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        std::cerr << "error: config '" << config_path
                  << "' is not a JSON object\n";
        std::exit(2);
      }
    }
    if (!preset.empty()) j["preset"] = preset;
    if (max_seg_len >= 0) j["max_seg_len"] = max_seg_len;
    if (lambda >= 0) j["lambda"] = lambda;
    if (cutoff >= 0) j["cutoff"] = cutoff;
    if (bigram_cutoff >= 0) j["bigram_cutoff"] = bigram_cutoff;
    if (tol >= 0) j["tol"] = tol;
    if (max_iters >= 0) j["max_iters"] = max_iters;
    if (lbfgs_memory >= 0) j["lbfgs_memory"] = lbfgs_memory;
    if (seed >= 0) j["seed"] = seed;
    if (jobs >= 0) j["jobs"] = jobs;
    return j.dump();
  }
};

int run_train(const std::string& corpus, const std::string& model_path,
              const ConfigFlags& flags, bool quiet) {
  char* err = nullptr;
  char* out = nullptr;
  int rc = chordlab_train(corpus.c_str(), flags.to_json().c_str(),
                          model_path.c_str(), &out, &err);
  if (rc != CHORDLAB_OK) return fail(rc, err);
  json report = json::parse(out);
  chordlab_string_free(out);
  if (!quiet) {
    const auto& objective = report["objective"];
    const auto& gnorm = report["grad_norm"];
    for (std::size_t i = 0; i < objective.size(); ++i)
      std::fprintf(stderr, "iter %3zu  objective %.6f  |grad| %.2e\n", i,
                   objective[i].get<double>(), gnorm[i].get<double>());
    std::fprintf(stderr,
                 "trained on %lld pieces: %lld segment features, "
                 "%lld transition features, %s after %lld iterations\n",
                 report["pieces"].get<long long>(),
                 report["registry_size"].get<long long>(),
                 report["transition_registry_size"].get<long long>(),
                 report["converged"].get<bool>() ? "converged" : "stopped",
                 report["iterations"].get<long long>());
  }
  std::cout << "wrote " << model_path << "\n";
  return 0;
}

int run_predict(const std::string& model_path, const std::string& piece_path,
                bool resolve_sevenths, bool dump_figuration,
                bool dump_features) {
  char* err = nullptr;
  chordlab_model* model = nullptr;
  int rc = chordlab_model_load(model_path.c_str(), &model, &err);
  if (rc != CHORDLAB_OK) return fail(rc, err);

  json options;
  options["resolve_sevenths"] = resolve_sevenths;
  options["dump_figuration"] = dump_figuration;
  options["dump_features"] = dump_features;
  char* out = nullptr;
  rc = chordlab_predict_file(model, piece_path.c_str(),
                             options.dump().c_str(), &out, &err);
  chordlab_model_free(model);
  if (rc != CHORDLAB_OK) return fail(rc, err);

  json result = json::parse(out);
  chordlab_string_free(out);
  for (const char* key : {"figuration", "features"})
    if (result.contains(key))
      for (const auto& line : result[key])
        std::cerr << line.get<std::string>() << "\n";
  std::cout << result["annotation"].dump(2) << "\n";
  return 0;
}

int run_evaluate(const std::string& corpus, const std::string& pred,
                 bool root_only, bool as_json) {
  char* err = nullptr;
  char* out = nullptr;
  int rc = chordlab_evaluate(corpus.c_str(), pred.c_str(), &out, &err);
  if (rc != CHORDLAB_OK) return fail(rc, err);
  json report = json::parse(out);
  chordlab_string_free(out);
  if (as_json) {
    if (root_only) report.erase("full");
    report.erase("table");
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::string table = report["table"].get<std::string>();
  if (root_only) {
    // Keep the header and the root row.
    std::istringstream in(table);
    std::string line;
    while (std::getline(in, line))
      if (line.rfind("full", 0) != 0) std::cout << line << "\n";
  } else {
    std::cout << table;
  }
  return 0;
}

int run_cv(const std::string& corpus, const ConfigFlags& flags, int folds,
           int repeats, bool leave_one_out, bool root_only, bool as_json) {
  json cv;
  cv["folds"] = folds;
  cv["repeats"] = repeats;
  cv["leave_one_out"] = leave_one_out;
  char* err = nullptr;
  char* out = nullptr;
  int rc = chordlab_cross_validate(corpus.c_str(), flags.to_json().c_str(),
                                   cv.dump().c_str(), &out, &err);
  if (rc != CHORDLAB_OK) return fail(rc, err);
  json report = json::parse(out);
  chordlab_string_free(out);
  if (as_json) {
    if (root_only) report.erase("full");
    report.erase("table");
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::string table = report["table"].get<std::string>();
  if (root_only) {
    std::istringstream in(table);
    std::string line;
    bool in_full = false;
    while (std::getline(in, line)) {
      if (line.rfind("full", 0) == 0) {
        in_full = true;
        continue;
      }
      if (line.rfind("root", 0) == 0) in_full = false;
      if (!in_full || line.rfind("  std", 0) != 0) std::cout << line << "\n";
    }
  } else {
    std::cout << table;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chordlab: joint chord segmentation and labeling for "
               "symbolic music"};
  app.require_subcommand(1);

  std::string corpus, model_path, piece_path, pred_dir;
  bool resolve_sevenths = false, dump_figuration = false,
       dump_features = false;
  bool root_only = false, as_json = false, quiet = false;
  int folds = 10, repeats = 1;
  bool leave_one_out = false;
  ConfigFlags train_flags, cv_flags;

  CLI::App* train = app.add_subcommand("train", "train a model on a corpus");
  train->add_option("--corpus", corpus, "directory of pieces + gold sidecars")
      ->required();
  train->add_option("--model", model_path, "output model JSON path")
      ->required();
  train->add_flag("--quiet", quiet, "suppress the objective trace");
  train_flags.add_to(train);

  CLI::App* predict =
      app.add_subcommand("predict", "decode one piece with a trained model");
  predict->add_option("--model", model_path, "model JSON path")->required();
  predict->add_option("piece", piece_path, "piece JSON file")->required();
  predict->add_flag("--resolve-sevenths", resolve_sevenths,
                    "annotate add7 segments with the seventh type");
  predict->add_flag("--dump-figuration", dump_figuration,
                    "emit figuration verdicts as JSON lines on stderr");
  predict->add_flag("--dump-features", dump_features,
                    "emit per-segment features as JSON lines on stderr");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score predictions against gold");
  evaluate->add_option("--corpus", corpus, "directory of pieces + gold")
      ->required();
  evaluate->add_option("--pred", pred_dir, "directory of predicted sidecars")
      ->required();
  evaluate->add_flag("--root-only", root_only, "report root-level scores only");
  evaluate->add_flag("--json", as_json, "emit the JSON report");

  CLI::App* cv =
      app.add_subcommand("cv", "shuffled k-fold cross-validation");
  cv->add_option("--corpus", corpus, "directory of pieces + gold")->required();
  cv->add_option("--folds", folds, "fold count");
  cv->add_option("--repeats", repeats, "number of shuffled repetitions");
  cv->add_flag("--leave-one-out", leave_one_out, "one fold per piece");
  cv->add_flag("--root-only", root_only, "report root-level scores only");
  cv->add_flag("--json", as_json, "emit the JSON report");
  cv_flags.add_to(cv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (train->parsed()) return run_train(corpus, model_path, train_flags, quiet);
  if (predict->parsed())
    return run_predict(model_path, piece_path, resolve_sevenths,
                       dump_figuration, dump_features);
  if (evaluate->parsed())
    return run_evaluate(corpus, pred_dir, root_only, as_json);
  if (cv->parsed())
    return run_cv(corpus, cv_flags, folds, repeats, leave_one_out, root_only,
                  as_json);
  return 2;
}
