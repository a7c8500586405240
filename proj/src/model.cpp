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

#include "chordlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chordlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Streaming log-sum-exp accumulator.
class LogAdd {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }
  double value() const {
    return max_ == kNegInf ? kNegInf : max_ + std::log(sum_);
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace

PieceLattice::PieceLattice(const Engine& engine,
                           const PieceExtractor& extractor)
    : extractor_(&extractor),
      n_(extractor.piece().num_events()),
      max_len_(extractor.max_seg_len()),
      num_labels_(static_cast<int>(engine.labels().size())) {
  vecs_.resize(static_cast<std::size_t>(n_) * max_len_ * num_labels_);
  FeatureRegistry& reg = engine.seg_registry();
  for (int first = 0; first < n_; ++first) {
    const int longest = std::min(max_len_, n_ - first);
    for (int len = 1; len <= longest; ++len) {
      Segment seg{first, first + len - 1};
      for (int y = 0; y < num_labels_; ++y)
        vecs_[index(first, len, y)] =
            extractor.segment_vector(seg, engine.labels()[y], engine.tones(y),
                                     reg);
    }
  }
}

Engine::Engine(std::vector<ChordLabel> labels, const FeatureSpace& space,
               FeatureRegistry& seg_registry, FeatureRegistry& trans_registry)
    : labels_(std::move(labels)),
      space_(space),
      seg_registry_(&seg_registry),
      trans_registry_(&trans_registry) {
  if (labels_.empty()) throw InputError("empty label set");
  if (!seg_registry.frozen() || !trans_registry.frozen())
    throw RunError("engine requires frozen feature registries");
  tones_.reserve(labels_.size());
  for (const ChordLabel& y : labels_) {
    if (y.mode == Mode::nochord)
      throw InputError("nochord sentinel cannot be a decodable label");
    tones_.push_back(chord_tones(y));
  }
  const std::size_t m = labels_.size();
  trans_idx_.assign(m * m, -1);
  init_idx_.assign(m, -1);
  ChordLabel nochord{0, Mode::nochord, Added::none};
  for (std::size_t y = 0; y < m; ++y) {
    init_idx_[y] =
        trans_registry.lookup(transition_instance_name(labels_[y], nochord));
    for (std::size_t p = 0; p < m; ++p)
      trans_idx_[y * m + p] = trans_registry.lookup(
          transition_instance_name(labels_[y], labels_[p]));
  }
}

void Engine::validate_segmentation(const PieceExtractor& extractor,
                                   const LabeledSegmentation& sy) const {
  const int n = extractor.piece().num_events();
  if (sy.items.empty())
    throw RunError("empty segmentation for piece '" + extractor.piece().id +
                   "'");
  int expect = 0;
  for (const LabeledSegment& it : sy.items) {
    if (it.seg.first != expect)
      throw RunError("segmentation of piece '" + extractor.piece().id +
                     "' does not tile: segment starts at event " +
                     std::to_string(it.seg.first) + ", expected " +
                     std::to_string(expect));
    if (it.seg.last < it.seg.first || it.seg.last >= n)
      throw RunError("segment bounds out of range in piece '" +
                     extractor.piece().id + "'");
    if (it.seg.length() > extractor.max_seg_len())
      throw RunError("segment of length " + std::to_string(it.seg.length()) +
                     " exceeds max segment length " +
                     std::to_string(extractor.max_seg_len()) + " in piece '" +
                     extractor.piece().id + "'");
    if (it.label < 0 || it.label >= static_cast<int>(labels_.size()))
      throw RunError("segment label index out of range in piece '" +
                     extractor.piece().id + "'");
    expect = it.seg.last + 1;
  }
  if (expect != n)
    throw RunError("segmentation of piece '" + extractor.piece().id +
                   "' ends at event " + std::to_string(expect) +
                   ", expected " + std::to_string(n));
}

double Engine::score_labeled(const PieceExtractor& extractor,
                             const LabeledSegmentation& sy,
                             const ModelParams& params) const {
  validate_segmentation(extractor, sy);
  double score = 0.0;
  int prev = -1;
  for (const LabeledSegment& it : sy.items) {
    SparseFeatureVector f = extractor.segment_vector(
        it.seg, labels_[it.label], tones_[it.label], *seg_registry_);
    score += f.dot(params.w);
    score += prev < 0 ? initial_score(it.label, params.u)
                      : transition_score(it.label, prev, params.u);
    prev = it.label;
  }
  return score;
}

void Engine::gold_vectors(const PieceExtractor& extractor,
                          const LabeledSegmentation& sy,
                          std::vector<double>* f,
                          std::vector<double>* g) const {
  validate_segmentation(extractor, sy);
  f->assign(seg_registry_->size(), 0.0);
  g->assign(trans_registry_->size(), 0.0);
  int prev = -1;
  for (const LabeledSegment& it : sy.items) {
    SparseFeatureVector fv = extractor.segment_vector(
        it.seg, labels_[it.label], tones_[it.label], *seg_registry_);
    fv.add_scaled_to(1.0, f);
    int idx = prev < 0 ? initial_index(it.label)
                       : transition_index(it.label, prev);
    if (idx >= 0) (*g)[idx] += 1.0;
    prev = it.label;
  }
}

InferenceResult Engine::viterbi(const PieceLattice& lattice,
                                const ModelParams& params) const {
  const int n = lattice.num_events();
  const int L = lattice.max_len();
  const int m = static_cast<int>(labels_.size());
  if (n < 1) throw RunError("empty piece");

  // V[i][y]: best score of a partial segmentation ending at event i (1-based
  // position) whose last segment has label y. M[i][y]: best over previous
  // labels y' of V[i][y'] + u'g(y, y'), with the lowest y' kept on ties.
  std::vector<double> v(static_cast<std::size_t>(n + 1) * m, kNegInf);
  std::vector<double> best_prev_score(static_cast<std::size_t>(n + 1) * m,
                                      kNegInf);
  std::vector<int> best_prev_label(static_cast<std::size_t>(n + 1) * m, -1);
  std::vector<int> bp_len(static_cast<std::size_t>(n + 1) * m, 0);

  for (int i = 1; i <= n; ++i) {
    for (int y = 0; y < m; ++y) {
      double best = kNegInf;
      int best_len = 0;
      for (int l = 1; l <= std::min(L, i); ++l) {
        const int j = i - l;
        double s = lattice.dot(j, l, y, params.w);
        if (j == 0)
          s += initial_score(y, params.u);
        else {
          const double mj = best_prev_score[static_cast<std::size_t>(j) * m + y];
          if (mj == kNegInf) continue;
          s += mj;
        }
        if (s > best) {
          best = s;
          best_len = l;
        }
      }
      v[static_cast<std::size_t>(i) * m + y] = best;
      bp_len[static_cast<std::size_t>(i) * m + y] = best_len;
    }
    // Fold the transition into position i for use by later segments.
    for (int y = 0; y < m; ++y) {
      double best = kNegInf;
      int best_label = -1;
      for (int p = 0; p < m; ++p) {
        const double vp = v[static_cast<std::size_t>(i) * m + p];
        if (vp == kNegInf) continue;
        const double s = vp + transition_score(y, p, params.u);
        if (s > best) {
          best = s;
          best_label = p;
        }
      }
      best_prev_score[static_cast<std::size_t>(i) * m + y] = best;
      best_prev_label[static_cast<std::size_t>(i) * m + y] = best_label;
    }
  }

  int best_y = 0;
  double best_score = kNegInf;
  for (int y = 0; y < m; ++y) {
    const double s = v[static_cast<std::size_t>(n) * m + y];
    if (s > best_score) {
      best_score = s;
      best_y = y;
    }
  }

  InferenceResult res;
  res.score = best_score;
  int i = n;
  int y = best_y;
  while (i > 0) {
    const int l = bp_len[static_cast<std::size_t>(i) * m + y];
    LabeledSegment item;
    item.seg = Segment{i - l, i - 1};
    item.label = y;
    res.best.items.push_back(item);
    const int j = i - l;
    int prev_y = -1;
    if (j > 0) prev_y = best_prev_label[static_cast<std::size_t>(j) * m + y];
    i = j;
    y = prev_y;
  }
  std::reverse(res.best.items.begin(), res.best.items.end());

  res.segment_scores.reserve(res.best.items.size());
  int prev = -1;
  for (const LabeledSegment& it : res.best.items) {
    double s = lattice.dot(it.seg.first, it.seg.length(), it.label, params.w);
    s += prev < 0 ? initial_score(it.label, params.u)
                  : transition_score(it.label, prev, params.u);
    res.segment_scores.push_back(s);
    prev = it.label;
  }
  return res;
}

double Engine::log_partition(const PieceLattice& lattice,
                             const ModelParams& params) const {
  const int n = lattice.num_events();
  const int L = lattice.max_len();
  const int m = static_cast<int>(labels_.size());
  if (n < 1) throw RunError("empty piece");

  std::vector<double> alpha(static_cast<std::size_t>(n + 1) * m, kNegInf);
  std::vector<double> folded(static_cast<std::size_t>(n + 1) * m, kNegInf);
  for (int i = 1; i <= n; ++i) {
    for (int y = 0; y < m; ++y) {
      LogAdd acc;
      for (int l = 1; l <= std::min(L, i); ++l) {
        const int j = i - l;
        const double wf = lattice.dot(j, l, y, params.w);
        if (j == 0)
          acc.add(wf + initial_score(y, params.u));
        else
          acc.add(wf + folded[static_cast<std::size_t>(j) * m + y]);
      }
      alpha[static_cast<std::size_t>(i) * m + y] = acc.value();
    }
    if (i < n) {
      for (int y = 0; y < m; ++y) {
        LogAdd acc;
        for (int p = 0; p < m; ++p)
          acc.add(alpha[static_cast<std::size_t>(i) * m + p] +
                  transition_score(y, p, params.u));
        folded[static_cast<std::size_t>(i) * m + y] = acc.value();
      }
    }
  }
  LogAdd z;
  for (int y = 0; y < m; ++y)
    z.add(alpha[static_cast<std::size_t>(n) * m + y]);
  return z.value();
}

Expectations Engine::expectations(const PieceLattice& lattice,
                                  const ModelParams& params) const {
  const int n = lattice.num_events();
  const int L = lattice.max_len();
  const int m = static_cast<int>(labels_.size());
  if (n < 1) throw RunError("empty piece");

  auto at = [m](int i, int y) {
    return static_cast<std::size_t>(i) * m + y;
  };

  // Forward: alpha[i][y] sums partial segmentations ending at i with last
  // label y; folded[j][y] = LSE_y'(alpha[j][y'] + u'g(y, y')).
  std::vector<double> alpha(static_cast<std::size_t>(n + 1) * m, kNegInf);
  std::vector<double> folded(static_cast<std::size_t>(n + 1) * m, kNegInf);
  for (int i = 1; i <= n; ++i) {
    for (int y = 0; y < m; ++y) {
      LogAdd acc;
      for (int l = 1; l <= std::min(L, i); ++l) {
        const int j = i - l;
        const double wf = lattice.dot(j, l, y, params.w);
        if (j == 0)
          acc.add(wf + initial_score(y, params.u));
        else
          acc.add(wf + folded[at(j, y)]);
      }
      alpha[at(i, y)] = acc.value();
    }
    for (int y = 0; y < m; ++y) {
      LogAdd acc;
      for (int p = 0; p < m; ++p)
        acc.add(alpha[at(i, p)] + transition_score(y, p, params.u));
      folded[at(i, y)] = acc.value();
    }
  }
  LogAdd z;
  for (int y = 0; y < m; ++y) z.add(alpha[at(n, y)]);
  const double log_z = z.value();

  // Backward: beta[i][y'] sums continuations from boundary i given that the
  // previous segment carried y'; gamma[j][y] folds the next segment's
  // feature score into beta so both expectation sums reuse it.
  std::vector<double> beta(static_cast<std::size_t>(n + 1) * m, kNegInf);
  std::vector<double> gamma(static_cast<std::size_t>(n + 1) * m, kNegInf);
  for (int y = 0; y < m; ++y) beta[at(n, y)] = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    for (int y = 0; y < m; ++y) {
      LogAdd acc;
      for (int l = 1; l <= std::min(L, n - j); ++l)
        acc.add(lattice.dot(j, l, y, params.w) + beta[at(j + l, y)]);
      gamma[at(j, y)] = acc.value();
    }
    if (j > 0) {
      for (int p = 0; p < m; ++p) {
        LogAdd acc;
        for (int y = 0; y < m; ++y)
          acc.add(gamma[at(j, y)] + transition_score(y, p, params.u));
        beta[at(j, p)] = acc.value();
      }
    }
  }

  Expectations out;
  out.log_z = log_z;
  out.ef.assign(seg_registry_->size(), 0.0);
  out.eg.assign(trans_registry_->size(), 0.0);

  // Segment-label expectations: posterior mass of candidate (j, l, y).
  for (int j = 0; j < n; ++j) {
    for (int y = 0; y < m; ++y) {
      const double in =
          j == 0 ? initial_score(y, params.u) : folded[at(j, y)];
      if (in == kNegInf) continue;
      for (int l = 1; l <= std::min(L, n - j); ++l) {
        const double mass = std::exp(in + lattice.dot(j, l, y, params.w) +
                                     beta[at(j + l, y)] - log_z);
        if (mass > 0.0) lattice.vec(j, l, y).add_scaled_to(mass, &out.ef);
      }
    }
  }

  // Transition expectations. Initial instances sit at boundary 0.
  for (int y = 0; y < m; ++y) {
    const int idx = initial_index(y);
    if (idx < 0) continue;
    const double mass =
        std::exp(initial_score(y, params.u) + gamma[at(0, y)] - log_z);
    out.eg[idx] += mass;
  }
  for (int j = 1; j < n; ++j) {
    for (int y = 0; y < m; ++y) {
      for (int p = 0; p < m; ++p) {
        const int idx = transition_index(y, p);
        if (idx < 0) continue;
        const double mass =
            std::exp(alpha[at(j, p)] + transition_score(y, p, params.u) +
                     gamma[at(j, y)] - log_z);
        out.eg[idx] += mass;
      }
    }
  }
  return out;
}

}  // namespace chordlab
