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

#include "chordlab/evaluate.hpp"

#include <map>

namespace chordlab {

namespace {

bool labels_match(const ChordLabel& a, const ChordLabel& b, EvalMode mode) {
  if (mode == EvalMode::root) return a.root == b.root;
  return a == b;
}

}  // namespace

void validate_annotation(const Piece& piece, const Annotation& ann,
                         const char* what) {
  int expect = 0;
  for (const AnnSegment& s : ann) {
    if (s.seg.first != expect || s.seg.last < s.seg.first)
      throw RunError(std::string(what) + " for piece '" + piece.id +
                     "' does not tile the event stream at event " +
                     std::to_string(expect));
    expect = s.seg.last + 1;
  }
  if (expect != piece.num_events())
    throw RunError(std::string(what) + " for piece '" + piece.id +
                   "' covers " + std::to_string(expect) + " events, piece has " +
                   std::to_string(piece.num_events()));
}

EvalCounts evaluate_piece(const Piece& piece, const Annotation& pred,
                          const Annotation& gold, EvalMode mode) {
  validate_annotation(piece, pred, "prediction");
  validate_annotation(piece, gold, "gold annotation");
  const int n = piece.num_events();

  // Per-event views.
  std::vector<const AnnSegment*> pred_at(n), gold_at(n);
  for (const AnnSegment& s : pred)
    for (int e = s.seg.first; e <= s.seg.last; ++e) pred_at[e] = &s;
  for (const AnnSegment& s : gold)
    for (int e = s.seg.first; e <= s.seg.last; ++e) gold_at[e] = &s;

  const bool skip_aug6 = mode == EvalMode::root;
  std::vector<char> excluded_event(n, 0);
  if (skip_aug6)
    for (const AnnSegment& s : gold)
      if (s.label.is_aug6())
        for (int e = s.seg.first; e <= s.seg.last; ++e) excluded_event[e] = 1;

  EvalCounts c;
  for (int e = 0; e < n; ++e) {
    if (excluded_event[e]) continue;
    ++c.events_total;
    if (labels_match(pred_at[e]->label, gold_at[e]->label, mode))
      ++c.events_correct;
  }

  std::map<std::pair<int, int>, const AnnSegment*> gold_by_bounds;
  for (const AnnSegment& s : gold) {
    if (skip_aug6 && s.label.is_aug6()) continue;
    ++c.segs_gold;
    gold_by_bounds[{s.seg.first, s.seg.last}] = &s;
  }
  for (const AnnSegment& s : pred) {
    if (skip_aug6) {
      bool inside_excluded = true;
      for (int e = s.seg.first; e <= s.seg.last; ++e)
        if (!excluded_event[e]) {
          inside_excluded = false;
          break;
        }
      if (inside_excluded) continue;
    }
    ++c.segs_pred;
    auto it = gold_by_bounds.find({s.seg.first, s.seg.last});
    if (it != gold_by_bounds.end() &&
        labels_match(s.label, it->second->label, mode))
      ++c.segs_matched;
  }
  return c;
}

EvalReport EvalReport::from_counts(const EvalCounts& c) {
  EvalReport r;
  r.counts = c;
  r.acc_e = c.events_total > 0
                ? static_cast<double>(c.events_correct) / c.events_total
                : 1.0;
  if (c.segs_pred == 0 && c.segs_gold == 0) {
    r.p_s = r.r_s = r.f_s = 1.0;
    return r;
  }
  r.p_s = c.segs_pred > 0 ? static_cast<double>(c.segs_matched) / c.segs_pred
                          : 0.0;
  r.r_s = c.segs_gold > 0 ? static_cast<double>(c.segs_matched) / c.segs_gold
                          : 0.0;
  r.f_s = (r.p_s + r.r_s) > 0 ? 2.0 * r.p_s * r.r_s / (r.p_s + r.r_s) : 0.0;
  return r;
}

double event_accuracy(const Piece& piece, const Annotation& pred,
                      const Annotation& gold, EvalMode mode) {
  return EvalReport::from_counts(evaluate_piece(piece, pred, gold, mode))
      .acc_e;
}

Prf segment_prf(const Piece& piece, const Annotation& pred,
                const Annotation& gold, EvalMode mode) {
  EvalReport r =
      EvalReport::from_counts(evaluate_piece(piece, pred, gold, mode));
  return {r.p_s, r.r_s, r.f_s};
}

}  // namespace chordlab
