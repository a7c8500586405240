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

#ifndef CHORDLAB_FIGURATION_HPP
#define CHORDLAB_FIGURATION_HPP

#include <array>
#include <vector>

#include "chordlab/chords.hpp"
#include "chordlab/music.hpp"

namespace chordlab {

/// A contiguous run of events, 0-based inclusive indices.
struct Segment {
  int first = 0;
  int last = 0;

  int length() const { return last - first + 1; }
};

/// Indices of all notes overlapping the segment interval (s.Notes).
std::vector<int> segment_notes(const Piece& piece, Segment seg);

enum class FigKind { passing, neighbor, suspension, anticipation };

const char* fig_kind_name(FigKind k);

struct FigurationVerdict {
  int note = -1;
  FigKind kind = FigKind::passing;
  std::array<int, 2> anchors = {-1, -1};
  int anchor_count = 0;
};

/// Harmonicity heuristic for anchors that lie outside the candidate segment,
/// where no label is available: with two or more companion notes in the
/// anchor's event at least two must be consonant with it, with exactly one
/// companion that one must be, and a lone anchor passes vacuously.
/// Consonant interval classes are octaves, fifths, thirds and inversions.
bool anchor_is_harmonic_fallback(const Piece& piece, int anchor_note,
                                 int event_index);

/// Label-independent analysis of a segment's figuration candidates. All
/// structural clauses (anchor adjacency, step motion, length and accent
/// comparisons, out-of-segment anchor harmonicity) are resolved here once;
/// only the per-label tests remain for verdicts().
class SegmentFigAnalysis {
 public:
  SegmentFigAnalysis(const Piece& piece, Segment seg);

  /// Notes flagged as figuration with respect to the given chord tones.
  /// A note is excluded as soon as it is harmonic; otherwise the first
  /// candidate (in passing, neighbor, suspension, anticipation order) whose
  /// in-segment anchors are all chord tones yields the verdict.
  std::vector<FigurationVerdict> verdicts(const ChordTones& tones) const;

  const std::vector<int>& notes() const { return notes_; }

 private:
  struct Candidate {
    int note;
    FigKind kind;
    std::array<int, 2> anchors;
    int anchor_count;
    std::array<int, 2> label_checked;  // anchors inside the segment
    int label_checked_count;
  };

  void add_passing_neighbor(int note);
  void add_suspension(int note);
  void add_anticipation(int note);

  const Piece& piece_;
  Segment seg_;
  std::vector<int> notes_;
  std::vector<Candidate> candidates_;  // grouped by note, rule order inside
};

/// One-shot helper over SegmentFigAnalysis.
std::vector<FigurationVerdict> detect_figuration(const Piece& piece,
                                                 Segment seg,
                                                 const ChordTones& tones);

}  // namespace chordlab

#endif  // CHORDLAB_FIGURATION_HPP
