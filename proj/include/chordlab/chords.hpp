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

#ifndef CHORDLAB_CHORDS_HPP
#define CHORDLAB_CHORDS_HPP

#include <string>
#include <vector>

#include "chordlab/error.hpp"

namespace chordlab {

enum class Mode {
  maj,
  min,
  dim,
  it6,
  fr6,
  ger6,
  sus2,
  sus4,
  sus4_7,  // dominant seventh suspended fourth ("7sus4")
  pow,
  nochord,  // sentinel used only as the label before the first segment
};

enum class Added { none, fourth, sixth, seventh };

inline bool is_triad_mode(Mode m) {
  return m == Mode::maj || m == Mode::min || m == Mode::dim;
}
inline bool is_aug6_mode(Mode m) {
  return m == Mode::it6 || m == Mode::fr6 || m == Mode::ger6;
}
inline bool is_sus_pow_mode(Mode m) {
  return m == Mode::sus2 || m == Mode::sus4 || m == Mode::sus4_7 ||
         m == Mode::pow;
}

/// Root / mode / added-note chord label. For augmented sixth chords `root`
/// stores the chord's lowest note (the bass) since they carry no root.
struct ChordLabel {
  int root = 0;  // pitch class 0..11
  Mode mode = Mode::maj;
  Added added = Added::none;

  bool is_triad() const { return is_triad_mode(mode); }
  bool is_aug6() const { return is_aug6_mode(mode); }
  bool is_sus_pow() const { return is_sus_pow_mode(mode); }
  bool is_fr_or_ger() const { return mode == Mode::fr6 || mode == Mode::ger6; }
  bool has_added() const { return added != Added::none; }

  bool operator==(const ChordLabel& o) const {
    return root == o.root && mode == o.mode && added == o.added;
  }
  bool operator!=(const ChordLabel& o) const { return !(*this == o); }
};

/// Which labels a corpus configuration enumerates.
struct LabelSetConfig {
  bool include_aug6 = false;
  bool include_sus_pow = false;
  bool allow_add4 = true;
  bool allow_add6 = true;
  bool allow_add7 = true;

  /// Presets: "bach" (triads, added 4/6/7), "tavern" (triads, added 6/7),
  /// "kp" (triads, added 7, plus aug6), "rock" (triads, added 4/6/7, plus
  /// sus/pow). Throws InputError for unknown names.
  static LabelSetConfig from_preset(const std::string& name);
};

/// Pitch classes of a label's tones, by role. Roles that do not exist for
/// the label's mode are -1 / empty.
struct ChordTones {
  int root = -1;         // triads and sus/pow; stores the bass for aug6
  int third = -1;        // triads; the major third above the bass for aug6
  int fifth = -1;        // triads, sus/pow, and fr6/ger6
  int sixth = -1;        // the augmented sixth above the bass (aug6 only)
  int replacement = -1;  // sus2 second / sus4 fourth
  std::vector<int> added;  // classes accepted for the added tone; for
                           // sus4_7 holds the minor seventh
  std::vector<int> all;    // union of every harmonic pitch class

  bool contains(int pc) const {
    for (int c : all)
      if (c == pc) return true;
    return false;
  }
  bool added_contains(int pc) const {
    for (int c : added)
      if (c == pc) return true;
    return false;
  }
};

/// Interval table lookup for a non-sentinel label.
/// Throws InputError for the nochord sentinel ("sentinel has no tones").
ChordTones chord_tones(const ChordLabel& label);

/// Full cartesian enumeration for a configuration, in a fixed order:
/// triads (root-major, then mode, then added), then aug6, then sus/pow.
std::vector<ChordLabel> build_label_set(const LabelSetConfig& config);

/// Canonical root name for I/O: major/sus2/pow and aug6 basses use the
/// flat-leaning set {C, Db, ..., Bb, B}; minor/diminished/sus4 use the
/// sharp-leaning set {C, C#, ..., Bb, B}.
std::string root_name(int pc, Mode mode);

std::string mode_name(Mode mode);
std::string added_name(Added added);  // "none", "add4", "add6", "add7"

/// "<Root>:<mode>[:<addN>]", e.g. "G:maj:add7", "F:it6", "D:pow".
std::string label_to_string(const ChordLabel& label);

/// Parses a spelled label, collapsing enharmonic roots (C# -> Db for major,
/// etc.) to their pitch class. Throws InputError with the offending token.
ChordLabel parse_label(const std::string& text);

/// Seventh-chord qualities recoverable from a recognized add7 label.
enum class SeventhType { maj7, dom7, min7, minmaj7, fulldim7, halfdim7 };

std::string seventh_type_name(SeventhType t);

/// Post-processing for add7 labels: scans the given (non-figuration) pitch
/// classes for a tone 11, 10 or 9 semitones above the root and combines it
/// with the mode. Throws RunError("no seventh present") when none qualifies.
SeventhType seventh_type(const ChordLabel& label,
                         const std::vector<int>& pitch_classes);

/// Number of distinct (mode.added)-(mode.added)'-interval combinations the
/// transition template can generate over the full label algebra.
int transition_template_capacity();

}  // namespace chordlab

#endif  // CHORDLAB_CHORDS_HPP
