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

#ifndef CHORDLAB_EVALUATE_HPP
#define CHORDLAB_EVALUATE_HPP

#include <vector>

#include "chordlab/figuration.hpp"
#include "chordlab/music.hpp"

namespace chordlab {

/// A labeled event range, the unit of annotations and predictions.
struct AnnSegment {
  Segment seg;
  ChordLabel label;
};

/// A full labeling of a piece: segments tile the event range in order.
using Annotation = std::vector<AnnSegment>;

/// Throws RunError when `ann` does not tile the piece's event range.
void validate_annotation(const Piece& piece, const Annotation& ann,
                         const char* what);

enum class EvalMode { full, root };

/// Pooled counting state: corpus-level measures add these up.
struct EvalCounts {
  long events_total = 0;
  long events_correct = 0;
  long segs_pred = 0;
  long segs_gold = 0;
  long segs_matched = 0;

  EvalCounts& operator+=(const EvalCounts& o) {
    events_total += o.events_total;
    events_correct += o.events_correct;
    segs_pred += o.segs_pred;
    segs_gold += o.segs_gold;
    segs_matched += o.segs_matched;
    return *this;
  }
};

/// Event- and segment-level counts for one piece. In root mode labels are
/// compared by root only, events inside gold augmented sixth segments are
/// skipped, gold aug6 segments leave the segment pool, and predicted
/// segments wholly inside a gold aug6 span are dropped with them.
EvalCounts evaluate_piece(const Piece& piece, const Annotation& pred,
                          const Annotation& gold, EvalMode mode);

struct EvalReport {
  double acc_e = 0.0;
  double p_s = 0.0;
  double r_s = 0.0;
  double f_s = 0.0;
  EvalCounts counts;

  static EvalReport from_counts(const EvalCounts& c);
};

/// Fraction of events labeled correctly (root-compared in root mode).
double event_accuracy(const Piece& piece, const Annotation& pred,
                      const Annotation& gold, EvalMode mode);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

/// Segment precision/recall/F; a segment counts only on an exact boundary
/// and label match.
Prf segment_prf(const Piece& piece, const Annotation& pred,
                const Annotation& gold, EvalMode mode);

}  // namespace chordlab

#endif  // CHORDLAB_EVALUATE_HPP
