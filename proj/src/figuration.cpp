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

#include "chordlab/figuration.hpp"

#include <algorithm>
#include <cmath>

namespace chordlab {

namespace {

int pc(int x) { return ((x % 12) + 12) % 12; }

bool consonant(int a, int b) {
  switch (pc(std::abs(a - b))) {
    case 0:
    case 3:
    case 4:
    case 5:
    case 7:
    case 8:
    case 9:
      return true;
    default:
      return false;
  }
}

bool is_step(int a, int b) {
  int d = std::abs(a - b);
  return d == 1 || d == 2;
}

}  // namespace

const char* fig_kind_name(FigKind k) {
  switch (k) {
    case FigKind::passing:
      return "passing";
    case FigKind::neighbor:
      return "neighbor";
    case FigKind::suspension:
      return "suspension";
    case FigKind::anticipation:
      return "anticipation";
  }
  return "?";
}

std::vector<int> segment_notes(const Piece& piece, Segment seg) {
  std::vector<int> out;
  for (std::size_t n = 0; n < piece.notes.size(); ++n) {
    if (piece.note_first_event[n] <= seg.last &&
        piece.note_last_event[n] >= seg.first)
      out.push_back(static_cast<int>(n));
  }
  return out;
}

bool anchor_is_harmonic_fallback(const Piece& piece, int anchor_note,
                                 int event_index) {
  const Event& ev = piece.events[event_index];
  const int anchor_pitch = piece.notes[anchor_note].pitch;
  int companions = 0;
  int consonant_count = 0;
  for (const EventPitch& p : ev.pitches) {
    if (p.note == anchor_note) continue;
    ++companions;
    if (consonant(p.pitch, anchor_pitch)) ++consonant_count;
  }
  if (companions == 0) return true;
  if (companions == 1) return consonant_count == 1;
  return consonant_count >= 2;
}

SegmentFigAnalysis::SegmentFigAnalysis(const Piece& piece, Segment seg)
    : piece_(piece), seg_(seg), notes_(segment_notes(piece, seg)) {
  for (int n : notes_) {
    add_passing_neighbor(n);
    add_suspension(n);
    add_anticipation(n);
  }
  // notes_ ascends, so candidates_ is already grouped by note with the
  // passing, neighbor, suspension, anticipation order inside each group.
}

void SegmentFigAnalysis::add_passing_neighbor(int n) {
  const Note& note = piece_.notes[n];
  std::vector<int> before;  // anchors whose offset is n's onset
  std::vector<int> after;   // anchors whose onset is n's offset
  for (std::size_t m = 0; m < piece_.notes.size(); ++m) {
    const Note& other = piece_.notes[m];
    if (static_cast<int>(m) == n || !is_step(other.pitch, note.pitch))
      continue;
    if (other.offset == note.onset) before.push_back(static_cast<int>(m));
    if (other.onset == note.offset) after.push_back(static_cast<int>(m));
  }
  const double n_acc = piece_.note_acc(n);
  const Rational n_len = note.len();
  auto in_segment = [&](int m) {
    return piece_.note_first_event[m] <= seg_.last &&
           piece_.note_last_event[m] >= seg_.first;
  };
  for (FigKind kind : {FigKind::passing, FigKind::neighbor}) {
    for (int n1 : before) {
      for (int n2 : after) {
        const int d1 = piece_.notes[n1].pitch - note.pitch;
        const int d2 = piece_.notes[n2].pitch - note.pitch;
        const bool opposite = (d1 > 0) != (d2 > 0);
        if ((kind == FigKind::passing) != opposite) continue;
        if (n_len > piece_.notes[n1].len() || n_len > piece_.notes[n2].len())
          continue;
        if (!(n_acc < piece_.note_acc(n1))) continue;
        if (!in_segment(n1) && !in_segment(n2)) continue;
        Candidate c;
        c.note = n;
        c.kind = kind;
        c.anchors = {n1, n2};
        c.anchor_count = 2;
        c.label_checked_count = 0;
        bool ok = true;
        for (int a : {n1, n2}) {
          if (in_segment(a)) {
            c.label_checked[c.label_checked_count++] = a;
          } else {
            // Adjacent event outside the segment: the anchor's last event
            // for the left anchor, its first event for the right one.
            int ev = (a == n1) ? piece_.note_last_event[a]
                               : piece_.note_first_event[a];
            if (!anchor_is_harmonic_fallback(piece_, a, ev)) {
              ok = false;
              break;
            }
          }
        }
        if (ok) candidates_.push_back(c);
      }
    }
  }
}

void SegmentFigAnalysis::add_suspension(int n) {
  // n must sound in the first event and there must be a previous event.
  if (piece_.note_first_event[n] > seg_.first || seg_.first == 0) return;
  const int prev_ev = seg_.first - 1;
  const Note& note = piece_.notes[n];
  if (piece_.note_first_event[n] < seg_.first) {
    // Held over: the anchor is the note's own earlier span.
    if (anchor_is_harmonic_fallback(piece_, n, prev_ev)) {
      Candidate c;
      c.note = n;
      c.kind = FigKind::suspension;
      c.anchors = {n, -1};
      c.anchor_count = 1;
      c.label_checked_count = 0;
      candidates_.push_back(c);
    }
    return;
  }
  // Restruck: same pitch ending exactly where n begins.
  for (std::size_t m = 0; m < piece_.notes.size(); ++m) {
    if (static_cast<int>(m) == n) continue;
    const Note& other = piece_.notes[m];
    if (other.pitch != note.pitch || other.offset != note.onset) continue;
    if (note.len() > other.len()) continue;
    if (!anchor_is_harmonic_fallback(piece_, static_cast<int>(m), prev_ev))
      continue;
    Candidate c;
    c.note = n;
    c.kind = FigKind::suspension;
    c.anchors = {static_cast<int>(m), -1};
    c.anchor_count = 1;
    c.label_checked_count = 0;
    candidates_.push_back(c);
  }
}

void SegmentFigAnalysis::add_anticipation(int n) {
  if (piece_.note_last_event[n] < seg_.last ||
      seg_.last + 1 >= piece_.num_events())
    return;
  const int next_ev = seg_.last + 1;
  const Note& note = piece_.notes[n];
  if (piece_.note_last_event[n] > seg_.last) {
    // Held into the next segment: the anchor is the note's later span.
    if (anchor_is_harmonic_fallback(piece_, n, next_ev)) {
      Candidate c;
      c.note = n;
      c.kind = FigKind::anticipation;
      c.anchors = {n, -1};
      c.anchor_count = 1;
      c.label_checked_count = 0;
      candidates_.push_back(c);
    }
    return;
  }
  for (std::size_t m = 0; m < piece_.notes.size(); ++m) {
    if (static_cast<int>(m) == n) continue;
    const Note& other = piece_.notes[m];
    if (other.pitch != note.pitch || other.onset != note.offset) continue;
    if (note.len() > other.len()) continue;
    if (!anchor_is_harmonic_fallback(piece_, static_cast<int>(m), next_ev))
      continue;
    Candidate c;
    c.note = n;
    c.kind = FigKind::anticipation;
    c.anchors = {static_cast<int>(m), -1};
    c.anchor_count = 1;
    c.label_checked_count = 0;
    candidates_.push_back(c);
  }
}

std::vector<FigurationVerdict> SegmentFigAnalysis::verdicts(
    const ChordTones& tones) const {
  std::vector<FigurationVerdict> out;
  int done_note = -1;
  for (const Candidate& c : candidates_) {
    if (c.note == done_note) continue;
    if (tones.contains(pc(piece_.notes[c.note].pitch))) continue;
    bool ok = true;
    for (int i = 0; i < c.label_checked_count; ++i) {
      if (!tones.contains(pc(piece_.notes[c.label_checked[i]].pitch))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    FigurationVerdict v;
    v.note = c.note;
    v.kind = c.kind;
    v.anchors = c.anchors;
    v.anchor_count = c.anchor_count;
    out.push_back(v);
    done_note = c.note;
  }
  return out;
}

std::vector<FigurationVerdict> detect_figuration(const Piece& piece,
                                                 Segment seg,
                                                 const ChordTones& tones) {
  return SegmentFigAnalysis(piece, seg).verdicts(tones);
}

}  // namespace chordlab
