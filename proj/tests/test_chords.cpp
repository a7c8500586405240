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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "chordlab/chords.hpp"

using namespace chordlab;

TEST_CASE("label set cardinalities per preset") {
  CHECK(build_label_set(LabelSetConfig::from_preset("bach")).size() == 144);
  CHECK(build_label_set(LabelSetConfig::from_preset("tavern")).size() == 108);
  CHECK(build_label_set(LabelSetConfig::from_preset("kp")).size() == 108);
  CHECK(build_label_set(LabelSetConfig::from_preset("rock")).size() == 192);
  CHECK_THROWS_AS(LabelSetConfig::from_preset("nope"), InputError);

  // Labels are unique within a set.
  auto labels = build_label_set(LabelSetConfig::from_preset("rock"));
  std::set<std::string> names;
  for (const ChordLabel& y : labels) names.insert(label_to_string(y));
  CHECK(names.size() == labels.size());
}

TEST_CASE("triad chord tones") {
  ChordTones c = chord_tones({0, Mode::maj, Added::none});
  CHECK(c.root == 0);
  CHECK(c.third == 4);
  CHECK(c.fifth == 7);
  CHECK(c.added.empty());

  c = chord_tones({9, Mode::min, Added::none});
  CHECK(c.third == 0);
  CHECK(c.fifth == 4);

  c = chord_tones({11, Mode::dim, Added::seventh});
  CHECK(c.root == 11);
  CHECK(c.third == 2);
  CHECK(c.fifth == 5);
  CHECK(c.added == std::vector<int>{8, 9});

  c = chord_tones({0, Mode::maj, Added::fourth});
  CHECK(c.added == std::vector<int>{5});
  c = chord_tones({0, Mode::maj, Added::sixth});
  CHECK(c.added == std::vector<int>{9});
  c = chord_tones({0, Mode::maj, Added::seventh});
  CHECK(c.added == std::vector<int>{10, 11});

  CHECK_THROWS_AS(chord_tones({0, Mode::nochord, Added::none}), InputError);
}

TEST_CASE("aug6 and sus/pow chord tones") {
  // Italian sixth on F: F, A, Eb-as-D# (an augmented sixth above the bass).
  ChordTones it = chord_tones({5, Mode::it6, Added::none});
  CHECK(it.root == 5);
  CHECK(it.third == 9);
  CHECK(it.sixth == 3);
  CHECK(it.fifth == -1);
  CHECK(it.all.size() == 3);

  ChordTones fr = chord_tones({5, Mode::fr6, Added::none});
  CHECK(fr.fifth == 11);  // diminished fifth above the bass
  ChordTones ger = chord_tones({5, Mode::ger6, Added::none});
  CHECK(ger.fifth == 0);  // perfect fifth above the bass
  CHECK(fr.all.size() == 4);
  CHECK(ger.all.size() == 4);

  ChordTones sus2 = chord_tones({0, Mode::sus2, Added::none});
  CHECK(sus2.replacement == 2);
  CHECK(sus2.fifth == 7);
  ChordTones sus4 = chord_tones({0, Mode::sus4, Added::none});
  CHECK(sus4.replacement == 5);
  ChordTones sev = chord_tones({0, Mode::sus4_7, Added::none});
  CHECK(sev.added == std::vector<int>{10});
  ChordTones pow_t = chord_tones({0, Mode::pow, Added::none});
  CHECK(pow_t.all == std::vector<int>{0, 7});
}

TEST_CASE("triad tone sets have exactly three triad classes") {
  for (const ChordLabel& y : build_label_set(LabelSetConfig::from_preset("bach"))) {
    ChordTones t = chord_tones(y);
    std::set<int> triad = {t.root, t.third, t.fifth};
    CHECK(triad.size() == 3);
    // add6 and add7 classes never overlap for the same root.
    if (y.mode == Mode::maj) {
      ChordTones six = chord_tones({y.root, y.mode, Added::sixth});
      ChordTones sev = chord_tones({y.root, y.mode, Added::seventh});
      for (int c : six.added)
        CHECK(std::find(sev.added.begin(), sev.added.end(), c) ==
              sev.added.end());
    }
  }
}

TEST_CASE("enharmonic normalization of spelled labels") {
  ChordLabel l = parse_label("C#:maj");
  CHECK(l.root == 1);
  CHECK(label_to_string(l) == "Db:maj");

  l = parse_label("D:min");
  CHECK(l.root == 2);
  CHECK(label_to_string(l) == "D:min");

  l = parse_label("D#:maj");
  CHECK(l.root == 3);
  CHECK(label_to_string(l) == "Eb:maj");

  // Minor and diminished keep the sharp-leaning names.
  CHECK(label_to_string(parse_label("Eb:min")) == "D#:min");
  CHECK(label_to_string(parse_label("Gb:dim")) == "F#:dim");
  // Sus2/pow use the flat set, sus4 the sharp set.
  CHECK(label_to_string(parse_label("C#:sus2")) == "Db:sus2");
  CHECK(label_to_string(parse_label("Db:sus4")) == "C#:sus4");

  CHECK(label_to_string(parse_label("G:maj:add7")) == "G:maj:add7");
  CHECK(label_to_string(parse_label("F:it6")) == "F:it6");
  CHECK(label_to_string(parse_label("D:pow")) == "D:pow");
  CHECK(parse_label("Bbb:maj").root == 9);
  CHECK(parse_label("B##:min").root == 1);

  CHECK_THROWS_WITH_AS(parse_label("H:maj"),
                       "bad chord root 'H' in 'H:maj'", InputError);
  CHECK_THROWS_AS(parse_label("C"), InputError);
  CHECK_THROWS_AS(parse_label("C:weird"), InputError);
  CHECK_THROWS_AS(parse_label("C:maj:add9"), InputError);
  CHECK_THROWS_AS(parse_label("C:pow:add7"), InputError);
  CHECK_THROWS_AS(parse_label("C:nochord"), InputError);
}

TEST_CASE("normalization is idempotent over every label") {
  LabelSetConfig config;
  config.include_aug6 = true;
  config.include_sus_pow = true;
  for (const ChordLabel& y : build_label_set(config)) {
    std::string name = label_to_string(y);
    ChordLabel round = parse_label(name);
    CHECK(round == y);
    CHECK(label_to_string(round) == name);
  }
}

TEST_CASE("seventh type from mode and interval") {
  // G:maj:add7 with F natural (10 half steps above G) is a dominant 7th.
  CHECK(seventh_type({7, Mode::maj, Added::seventh}, {5}) ==
        SeventhType::dom7);
  CHECK(seventh_type({0, Mode::maj, Added::seventh}, {11}) ==
        SeventhType::maj7);
  CHECK(seventh_type({0, Mode::min, Added::seventh}, {10}) ==
        SeventhType::min7);
  CHECK(seventh_type({0, Mode::min, Added::seventh}, {11}) ==
        SeventhType::minmaj7);
  // B:dim:add7 with Ab (9 above B) is fully diminished.
  CHECK(seventh_type({11, Mode::dim, Added::seventh}, {8}) ==
        SeventhType::fulldim7);
  CHECK(seventh_type({11, Mode::dim, Added::seventh}, {9}) ==
        SeventhType::halfdim7);
  // Major seventh outranks the dominant when both sound.
  CHECK(seventh_type({0, Mode::maj, Added::seventh}, {10, 11}) ==
        SeventhType::maj7);
  // The major-seventh interval never qualifies for diminished triads.
  CHECK_THROWS_WITH_AS(
      seventh_type({0, Mode::dim, Added::seventh}, {11}),
      "no seventh present", RunError);
  CHECK_THROWS_WITH_AS(
      seventh_type({7, Mode::maj, Added::seventh}, {7, 2}),
      "no seventh present", RunError);
  CHECK_THROWS_AS(seventh_type({0, Mode::maj, Added::none}, {10}), RunError);
}

TEST_CASE("transition template capacity") {
  CHECK(transition_template_capacity() == 4332);
}
