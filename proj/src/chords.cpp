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

#include "chordlab/chords.hpp"

#include <algorithm>
#include <array>

namespace chordlab {

namespace {

constexpr const char* kFlatNames[12] = {"C", "Db", "D",  "Eb", "E",  "F",
                                        "Gb", "G",  "Ab", "A",  "Bb", "B"};
constexpr const char* kSharpNames[12] = {"C",  "C#", "D",  "D#", "E",  "F",
                                         "F#", "G",  "G#", "A",  "Bb", "B"};

int pc(int x) { return ((x % 12) + 12) % 12; }

bool uses_flat_set(Mode mode) {
  // Canonical spellings: flats for major-family roots, sharps for the
  // minor-family; sus2/pow follow major, sus4 variants follow minor.
  switch (mode) {
    case Mode::maj:
    case Mode::sus2:
    case Mode::pow:
    case Mode::it6:
    case Mode::fr6:
    case Mode::ger6:
      return true;
    default:
      return false;
  }
}

struct ModeToken {
  const char* name;
  Mode mode;
};

constexpr ModeToken kModeTokens[] = {
    {"maj", Mode::maj},   {"min", Mode::min},       {"dim", Mode::dim},
    {"it6", Mode::it6},   {"fr6", Mode::fr6},       {"ger6", Mode::ger6},
    {"sus2", Mode::sus2}, {"sus4", Mode::sus4},     {"7sus4", Mode::sus4_7},
    {"pow", Mode::pow},   {"nochord", Mode::nochord}};

}  // namespace

LabelSetConfig LabelSetConfig::from_preset(const std::string& name) {
  LabelSetConfig c;
  if (name == "bach") {
    // triads with added 4th/6th/7th: 144 labels
  } else if (name == "tavern") {
    c.allow_add4 = false;  // 12 x 3 x 3 = 108
  } else if (name == "kp") {
    c.allow_add4 = false;
    c.allow_add6 = false;
    c.include_aug6 = true;  // 72 + 36 = 108
  } else if (name == "rock") {
    c.include_sus_pow = true;  // 144 + 48 = 192
  } else {
    throw InputError("unknown label preset '" + name + "'");
  }
  return c;
}

ChordTones chord_tones(const ChordLabel& label) {
  ChordTones t;
  const int r = pc(label.root);
  switch (label.mode) {
    case Mode::maj:
    case Mode::min:
    case Mode::dim: {
      t.root = r;
      t.third = pc(r + (label.mode == Mode::maj ? 4 : 3));
      t.fifth = pc(r + (label.mode == Mode::dim ? 6 : 7));
      t.all = {t.root, t.third, t.fifth};
      switch (label.added) {
        case Added::none:
          break;
        case Added::fourth:
          t.added = {pc(r + 5)};
          break;
        case Added::sixth:
          t.added = {pc(r + 9)};
          break;
        case Added::seventh:
          // Generic added seventh: major or minor seventh for maj/min
          // triads, diminished or minor seventh for dim triads.
          if (label.mode == Mode::dim)
            t.added = {pc(r + 9), pc(r + 10)};
          else
            t.added = {pc(r + 10), pc(r + 11)};
          break;
      }
      t.all.insert(t.all.end(), t.added.begin(), t.added.end());
      break;
    }
    case Mode::it6:
    case Mode::fr6:
    case Mode::ger6: {
      t.root = r;  // bass
      t.third = pc(r + 4);
      t.sixth = pc(r + 10);
      t.all = {t.root, t.third, t.sixth};
      if (label.mode == Mode::ger6) t.fifth = pc(r + 7);
      if (label.mode == Mode::fr6) t.fifth = pc(r + 6);
      if (t.fifth >= 0) t.all.push_back(t.fifth);
      break;
    }
    case Mode::sus2:
    case Mode::sus4:
    case Mode::sus4_7: {
      t.root = r;
      t.replacement = pc(r + (label.mode == Mode::sus2 ? 2 : 5));
      t.fifth = pc(r + 7);
      t.all = {t.root, t.replacement, t.fifth};
      if (label.mode == Mode::sus4_7) {
        t.added = {pc(r + 10)};
        t.all.push_back(t.added[0]);
      }
      break;
    }
    case Mode::pow: {
      t.root = r;
      t.fifth = pc(r + 7);
      t.all = {t.root, t.fifth};
      break;
    }
    case Mode::nochord:
      throw InputError("sentinel has no tones");
  }
  return t;
}

std::vector<ChordLabel> build_label_set(const LabelSetConfig& config) {
  std::vector<ChordLabel> labels;
  std::vector<Added> addeds = {Added::none};
  if (config.allow_add4) addeds.push_back(Added::fourth);
  if (config.allow_add6) addeds.push_back(Added::sixth);
  if (config.allow_add7) addeds.push_back(Added::seventh);
  for (int root = 0; root < 12; ++root)
    for (Mode mode : {Mode::maj, Mode::min, Mode::dim})
      for (Added added : addeds) labels.push_back({root, mode, added});
  if (config.include_aug6)
    for (int bass = 0; bass < 12; ++bass)
      for (Mode mode : {Mode::it6, Mode::fr6, Mode::ger6})
        labels.push_back({bass, mode, Added::none});
  if (config.include_sus_pow)
    for (int root = 0; root < 12; ++root)
      for (Mode mode : {Mode::sus2, Mode::sus4, Mode::sus4_7, Mode::pow})
        labels.push_back({root, mode, Added::none});
  return labels;
}

std::string root_name(int p, Mode mode) {
  return uses_flat_set(mode) ? kFlatNames[pc(p)] : kSharpNames[pc(p)];
}

std::string mode_name(Mode mode) {
  for (const auto& tok : kModeTokens)
    if (tok.mode == mode) return tok.name;
  return "?";
}

std::string added_name(Added added) {
  switch (added) {
    case Added::none:
      return "none";
    case Added::fourth:
      return "add4";
    case Added::sixth:
      return "add6";
    case Added::seventh:
      return "add7";
  }
  return "?";
}

std::string label_to_string(const ChordLabel& label) {
  std::string s = root_name(label.root, label.mode) + ":" +
                  mode_name(label.mode);
  if (label.added != Added::none) s += ":" + added_name(label.added);
  return s;
}

ChordLabel parse_label(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3)
    throw InputError("bad chord label '" + text + "'");

  // Root: letter plus up to two accidentals.
  const std::string& root_tok = parts[0];
  static constexpr int kLetterPc[7] = {9, 11, 0, 2, 4, 5, 7};  // A..G
  if (root_tok.empty() || root_tok[0] < 'A' || root_tok[0] > 'G')
    throw InputError("bad chord root '" + root_tok + "' in '" + text + "'");
  int root = kLetterPc[root_tok[0] - 'A'];
  for (std::size_t i = 1; i < root_tok.size(); ++i) {
    if (root_tok[i] == '#')
      ++root;
    else if (root_tok[i] == 'b')
      --root;
    else
      throw InputError("bad chord root '" + root_tok + "' in '" + text + "'");
  }
  if (root_tok.size() > 3)
    throw InputError("bad chord root '" + root_tok + "' in '" + text + "'");

  const std::string& mode_tok = parts[1];
  Mode mode = Mode::nochord;
  bool found = false;
  for (const auto& tok : kModeTokens)
    if (mode_tok == tok.name) {
      mode = tok.mode;
      found = true;
      break;
    }
  if (!found || mode == Mode::nochord)
    throw InputError("bad chord mode '" + mode_tok + "' in '" + text + "'");

  Added added = Added::none;
  if (parts.size() == 3) {
    const std::string& added_tok = parts[2];
    if (added_tok == "add4")
      added = Added::fourth;
    else if (added_tok == "add6")
      added = Added::sixth;
    else if (added_tok == "add7")
      added = Added::seventh;
    else
      throw InputError("bad added note '" + added_tok + "' in '" + text +
                       "'");
    if (!is_triad_mode(mode))
      throw InputError("added note on non-triad label '" + text + "'");
  }
  return {pc(root), mode, added};
}

std::string seventh_type_name(SeventhType t) {
  switch (t) {
    case SeventhType::maj7:
      return "maj7";
    case SeventhType::dom7:
      return "dom7";
    case SeventhType::min7:
      return "min7";
    case SeventhType::minmaj7:
      return "minmaj7";
    case SeventhType::fulldim7:
      return "fulldim7";
    case SeventhType::halfdim7:
      return "halfdim7";
  }
  return "?";
}

SeventhType seventh_type(const ChordLabel& label,
                         const std::vector<int>& pitch_classes) {
  if (label.added != Added::seventh || !label.is_triad())
    throw RunError("seventh type requested for non-add7 label '" +
                   label_to_string(label) + "'");
  auto has_interval = [&](int semis) {
    for (int p : pitch_classes)
      if (pc(p - label.root) == semis) return true;
    return false;
  };
  // Scan 11, then 10, then 9 half steps above the root, restricted to the
  // intervals valid for the mode.
  for (int semis : {11, 10, 9}) {
    if (label.mode == Mode::dim && semis == 11) continue;
    if (label.mode != Mode::dim && semis == 9) continue;
    if (!has_interval(semis)) continue;
    if (label.mode == Mode::maj)
      return semis == 11 ? SeventhType::maj7 : SeventhType::dom7;
    if (label.mode == Mode::min)
      return semis == 11 ? SeventhType::minmaj7 : SeventhType::min7;
    return semis == 9 ? SeventhType::fulldim7 : SeventhType::halfdim7;
  }
  throw RunError("no seventh present");
}

int transition_template_capacity() {
  // Distinct (mode, added) pairs: triads pair with every added option, all
  // other modes only with "none".
  int pairs = 0;
  for (Mode mode : {Mode::maj, Mode::min, Mode::dim}) {
    (void)mode;
    pairs += 4;
  }
  for (Mode mode : {Mode::it6, Mode::fr6, Mode::ger6, Mode::sus2, Mode::sus4,
                    Mode::sus4_7, Mode::pow}) {
    (void)mode;
    pairs += 1;
  }
  return pairs * pairs * 12;
}

}  // namespace chordlab
