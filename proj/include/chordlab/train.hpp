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

#ifndef CHORDLAB_TRAIN_HPP
#define CHORDLAB_TRAIN_HPP

#include <functional>
#include <memory>
#include <vector>

#include "chordlab/model.hpp"

namespace chordlab {

/// One training piece with its gold segmentation and cached lattice.
struct TrainContext {
  const Piece* piece = nullptr;
  LabeledSegmentation gold;
  std::unique_ptr<PieceExtractor> extractor;
  std::unique_ptr<PieceLattice> lattice;
  std::vector<double> gold_f;  // dense gold feature sums
  std::vector<double> gold_g;
};

/// Builds extractor, lattice and gold vectors for each example. Validates
/// gold segmentations against the engine (tiling, max length). Extractors
/// already built for these pieces can be handed over via `reuse`.
std::vector<TrainContext> build_train_contexts(
    const Engine& engine, const std::vector<const Piece*>& pieces,
    const std::vector<LabeledSegmentation>& golds, int max_seg_len,
    std::vector<std::unique_ptr<PieceExtractor>>* reuse = nullptr);

struct ObjectiveValue {
  double value = 0.0;
  std::vector<double> grad_w;
  std::vector<double> grad_u;
};

/// Regularized negative log-likelihood and its gradient over the training
/// set. Per-piece terms are independent; `jobs` > 1 evaluates them in
/// parallel with a deterministic reduction order.
ObjectiveValue nll_and_gradient(const Engine& engine,
                                const std::vector<TrainContext>& data,
                                const ModelParams& params, int jobs = 1);

/// Objective value alone (skips the backward pass), for line searches.
double nll_value(const Engine& engine, const std::vector<TrainContext>& data,
                 const ModelParams& params, int jobs = 1);

struct TrainOptions {
  double tol = 1e-4;      // stop when the gradient max-norm drops below
  int max_iters = 500;
  int lbfgs_memory = 10;  // stored (s, y) pairs for the two-loop recursion
  int jobs = 1;
  std::function<void(int iter, double value, double grad_norm)> on_iteration;
};

struct TrainLog {
  std::vector<double> objective;  // value after each accepted step
  std::vector<double> grad_norm;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the regularized NLL with limited-memory BFGS (two-loop
/// recursion, backtracking line search with an Armijo condition). Returns
/// the final parameters; the objective trace is monotone non-increasing.
ModelParams train(const Engine& engine, const std::vector<TrainContext>& data,
                  ModelParams init, const TrainOptions& options,
                  TrainLog* log = nullptr);

}  // namespace chordlab

#endif  // CHORDLAB_TRAIN_HPP
