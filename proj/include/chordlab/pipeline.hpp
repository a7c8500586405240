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

#ifndef CHORDLAB_PIPELINE_HPP
#define CHORDLAB_PIPELINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chordlab/evaluate.hpp"
#include "chordlab/io.hpp"
#include "chordlab/model.hpp"
#include "chordlab/train.hpp"

namespace chordlab {

/// Everything a batch run needs. All defaults are overridable from the CLI
/// or a JSON config.
struct RunConfig {
  std::string preset = "bach";
  int max_seg_len = 32;
  double lambda = 0.1;
  long cutoff = 5;          // min gold count for segment-label instances
  long bigram_cutoff = -1;  // min count for transition instances; -1 = cutoff
  double tol = 1e-4;
  int max_iters = 500;
  int lbfgs_memory = 10;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<double> bins;  // discretization bounds; empty = default

  long effective_bigram_cutoff() const {
    return bigram_cutoff < 0 ? cutoff : bigram_cutoff;
  }
  Bins make_bins() const;
  void validate() const;

  /// Merges fields present in a JSON object over the current values.
  void apply_json(const std::string& text);
  std::string to_json() const;
};

struct PredictOptions {
  bool resolve_sevenths = false;
  bool dump_figuration = false;
  bool dump_features = false;
};

struct PredictResult {
  Annotation annotation;
  std::vector<double> segment_scores;
  double score = 0.0;
  // Parallel to `annotation` when resolve_sevenths is set; entries stay
  // empty for labels without an added seventh or when none is present.
  std::vector<std::optional<SeventhType>> sevenths;
  std::vector<std::string> figuration_lines;  // JSON lines
  std::vector<std::string> feature_lines;     // JSON lines
};

/// A trained model: label set, frozen registries, weights, and the engine
/// bound to them. Immutable after construction.
class Model {
 public:
  static std::unique_ptr<Model> train_on(const std::vector<CorpusItem>& corpus,
                                         const RunConfig& config,
                                         TrainLog* log = nullptr);
  static std::unique_ptr<Model> load_json(const std::string& text);
  static std::unique_ptr<Model> load_file(const std::filesystem::path& path);

  std::string to_json() const;
  void save_file(const std::filesystem::path& path) const;

  const RunConfig& config() const { return config_; }
  const Engine& engine() const { return *engine_; }
  const ModelParams& params() const { return params_; }
  const FeatureSpace& space() const { return space_; }

  Annotation predict(const Piece& piece) const;
  PredictResult predict_full(const Piece& piece,
                             const PredictOptions& options) const;

  /// Gold annotation -> label indices; rejects labels outside the preset.
  LabeledSegmentation to_labeled(const Piece& piece,
                                 const Annotation& ann) const;

 private:
  Model(RunConfig config, FeatureSpace space);

  RunConfig config_;
  FeatureSpace space_;
  FeatureRegistry seg_registry_;
  FeatureRegistry trans_registry_;
  ModelParams params_;
  std::unique_ptr<Engine> engine_;
};

struct CvMeasures {
  double acc_e = 0.0;
  double p_s = 0.0;
  double r_s = 0.0;
  double f_s = 0.0;
};

struct CvOptions {
  int folds = 10;
  int repeats = 1;
  bool leave_one_out = false;
};

/// Shuffled k-fold cross-validation: per repeat, pieces are shuffled and
/// split into folds whose sizes differ by at most one; fold results are
/// pooled into one value per measure; the mean and sample standard
/// deviation are taken over the repeats.
struct CvReport {
  int folds = 0;
  int repeats = 0;
  std::vector<CvMeasures> full_runs;
  std::vector<CvMeasures> root_runs;
  CvMeasures full_mean, full_std;
  CvMeasures root_mean, root_std;
  bool has_std = false;  // repeats > 1
};

CvReport cross_validate(const std::vector<CorpusItem>& corpus,
                        const RunConfig& config, const CvOptions& options);

/// Scores a directory of predictions against a gold corpus; counts pooled
/// over all pieces, both full and root-only modes.
struct CorpusEval {
  EvalReport full;
  EvalReport root;
  int pieces = 0;
};

CorpusEval evaluate_predictions(
    const std::vector<CorpusItem>& corpus,
    const std::vector<Annotation>& predictions);

std::string corpus_eval_to_json(const CorpusEval& eval);
std::string cv_report_to_json(const CvReport& report);

/// Aligned text table with the Acc_E, P_S, R_S, F_S columns.
std::string eval_table(const CorpusEval& eval);
std::string cv_table(const CvReport& report);

}  // namespace chordlab

#endif  // CHORDLAB_PIPELINE_HPP
