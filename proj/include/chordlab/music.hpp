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

#ifndef CHORDLAB_MUSIC_HPP
#define CHORDLAB_MUSIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "chordlab/rational.hpp"

namespace chordlab {

/// A sounding pitch. Times are quarter-note offsets from the piece start.
struct Note {
  int pitch = 0;  // semitone index, 60 = middle C
  Rational onset;
  Rational offset;

  Rational len() const { return offset - onset; }
};

/// Notated time signature. `anacrusis` is the quarter offset of the first
/// full measure (0 when the piece starts on a downbeat).
struct Meter {
  int beats_per_measure = 4;
  int beat_unit = 4;  // 1, 2, 4, 8 or 16
  Rational anacrusis;

  Rational measure_quarters() const {
    return Rational(4 * beats_per_measure, beat_unit);
  }
};

/// One pitch sounding inside an event. `held` is true when the owning note
/// already sounded in the previous event.
struct EventPitch {
  int pitch = 0;
  bool held = false;
  int note = -1;  // index into Piece::notes
};

/// The set of pitches sounding between two consecutive partition points.
struct Event {
  int index = 0;
  Rational start;
  Rational end;
  Rational len;
  double acc = 0.0;                 // metrical accent of `start`, in (0, 1]
  std::vector<EventPitch> pitches;  // sorted by (pitch, note); may be empty

  bool empty() const { return pitches.empty(); }
  std::optional<int> bass() const {
    if (pitches.empty()) return std::nullopt;
    return pitches.front().pitch;
  }
  /// True when some pitch in the event has the given pitch class.
  bool has_pitch_class(int pc) const {
    for (const auto& p : pitches)
      if (p.pitch % 12 == pc) return true;
    return false;
  }
};

/// A piece plus its derived event stream. Events tile [min onset, max offset]
/// with no gaps; every note covers a contiguous run of events.
struct Piece {
  std::string id;
  Meter meter;
  std::vector<Note> notes;

  // Derived on construction.
  std::vector<Event> events;
  std::vector<int> note_first_event;  // per note, first covered event
  std::vector<int> note_last_event;   // per note, last covered event

  int num_events() const { return static_cast<int>(events.size()); }
  Rational note_len(int n) const { return notes[n].len(); }
  /// Accent of the note's onset event.
  double note_acc(int n) const { return events[note_first_event[n]].acc; }
};

/// Sorted, deduplicated union of all note onsets and offsets.
/// Throws InputError("empty piece") when `notes` is empty.
std::vector<Rational> compute_partition_points(const std::vector<Note>& notes);

/// Beat strength of time `t` under the notated meter. The downbeat scores
/// 1.0 and each binary subdivision of the measure halves the value (in 4/4:
/// beat 3 -> 0.5, beats 2 and 4 -> 0.25, offbeat eighths -> 0.125, ...).
/// Positions off every binary grid take the value one level below the finest
/// grid that still brackets them.
double accent_value(const Rational& t, const Meter& meter);

/// Builds the event stream for a validated note list.
std::vector<Event> build_events(const std::vector<Note>& notes,
                                const Meter& meter);

/// Validates notes/meter and assembles a Piece with its event stream.
Piece make_piece(std::string id, const Meter& meter, std::vector<Note> notes);

}  // namespace chordlab

#endif  // CHORDLAB_MUSIC_HPP
