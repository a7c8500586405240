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

#ifndef CHORDLAB_MODEL_HPP
#define CHORDLAB_MODEL_HPP

#include <memory>
#include <vector>

#include "chordlab/features.hpp"

namespace chordlab {

/// Weights for segment-label features (w) and transition features (u),
/// plus the structural knobs of the distribution.
struct ModelParams {
  std::vector<double> w;
  std::vector<double> u;
  int max_seg_len = 32;
  double lambda = 0.1;
};

struct LabeledSegment {
  Segment seg;
  int label = -1;  // index into the engine's label set
};

/// A segmentation plus labels. Valid instances tile the event range
/// exactly, carry no sentinel labels, and respect the max segment length.
struct LabeledSegmentation {
  std::vector<LabeledSegment> items;
};

struct InferenceResult {
  LabeledSegmentation best;
  double score = 0.0;
  std::vector<double> segment_scores;  // per segment: w'f + u'g
};

struct Expectations {
  double log_z = 0.0;
  std::vector<double> ef;  // model expectation of the global f vector
  std::vector<double> eg;  // model expectation of the global g vector
};

class Engine;

/// Feature vectors of every candidate (first, len, label) of one piece,
/// extracted once. Scoring a candidate afterwards is a sparse dot product,
/// which makes repeated inference over the same piece (training) cheap.
class PieceLattice {
 public:
  PieceLattice(const Engine& engine, const PieceExtractor& extractor);

  const PieceExtractor& extractor() const { return *extractor_; }
  int num_events() const { return n_; }
  int max_len() const { return max_len_; }

  const SparseFeatureVector& vec(int first, int len, int label) const {
    return vecs_[index(first, len, label)];
  }
  double dot(int first, int len, int label,
             const std::vector<double>& w) const {
    return vecs_[index(first, len, label)].dot(w);
  }

 private:
  std::size_t index(int first, int len, int label) const {
    return (static_cast<std::size_t>(first) * max_len_ + (len - 1)) *
               num_labels_ +
           label;
  }

  const PieceExtractor* extractor_;
  int n_;
  int max_len_;
  int num_labels_;
  std::vector<SparseFeatureVector> vecs_;
};

/// The weak semi-CRF: linear scoring over segment-label and transition
/// features, semi-Markov Viterbi, and forward-backward for the partition
/// function and feature expectations. Bound to a fixed label set and a pair
/// of frozen registries.
class Engine {
 public:
  Engine(std::vector<ChordLabel> labels, const FeatureSpace& space,
         FeatureRegistry& seg_registry, FeatureRegistry& trans_registry);

  const std::vector<ChordLabel>& labels() const { return labels_; }
  const ChordTones& tones(int label) const { return tones_[label]; }
  const FeatureSpace& space() const { return space_; }
  FeatureRegistry& seg_registry() const { return *seg_registry_; }
  FeatureRegistry& trans_registry() const { return *trans_registry_; }

  /// Index of the (single) transition instance for label pair (y, y'),
  /// -1 when the combination is not in the registry.
  int transition_index(int label, int prev_label) const {
    return trans_idx_[static_cast<std::size_t>(label) * labels_.size() +
                      prev_label];
  }
  int initial_index(int label) const { return init_idx_[label]; }
  double transition_score(int label, int prev_label,
                          const std::vector<double>& u) const {
    int idx = transition_index(label, prev_label);
    return idx >= 0 ? u[idx] : 0.0;
  }
  double initial_score(int label, const std::vector<double>& u) const {
    int idx = initial_index(label);
    return idx >= 0 ? u[idx] : 0.0;
  }

  /// w'F + u'G of a labeled segmentation, with the nochord sentinel before
  /// the first segment. Throws RunError when `sy` does not tile the piece.
  double score_labeled(const PieceExtractor& extractor,
                       const LabeledSegmentation& sy,
                       const ModelParams& params) const;

  /// Dense gold feature vectors (sized like w and u) of a segmentation.
  void gold_vectors(const PieceExtractor& extractor,
                    const LabeledSegmentation& sy, std::vector<double>* f,
                    std::vector<double>* g) const;

  /// Max-score labeled segmentation. Ties prefer shorter last segments,
  /// then lower label indices, so decoding is reproducible.
  InferenceResult viterbi(const PieceLattice& lattice,
                          const ModelParams& params) const;

  /// log Z(x) only (forward pass), for objective-only evaluations.
  double log_partition(const PieceLattice& lattice,
                       const ModelParams& params) const;

  /// log Z(x) plus expected global feature vectors under the model.
  Expectations expectations(const PieceLattice& lattice,
                            const ModelParams& params) const;

  void validate_segmentation(const PieceExtractor& extractor,
                             const LabeledSegmentation& sy) const;

 private:
  std::vector<ChordLabel> labels_;
  const FeatureSpace& space_;
  FeatureRegistry* seg_registry_;
  FeatureRegistry* trans_registry_;
  std::vector<ChordTones> tones_;
  std::vector<int> trans_idx_;  // [label * |Y| + prev]
  std::vector<int> init_idx_;   // [label]
};

}  // namespace chordlab

#endif  // CHORDLAB_MODEL_HPP
