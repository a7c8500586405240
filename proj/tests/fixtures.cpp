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

#include "fixtures.hpp"

#include <algorithm>
#include <sstream>

namespace chordlab::testing {

namespace {

Note note(int pitch, Rational onset, Rational offset) {
  return Note{pitch, onset, offset};
}

// Midi pitches used by the measure-12 fixture.
constexpr int kG3 = 55, kB3 = 59, kD4 = 62, kG5 = 79, kF5 = 77, kB4 = 71,
              kD5 = 74, kC4 = 60, kC5 = 72, kE5 = 76, kE3 = 52, kC3 = 48,
              kG4 = 67;

}  // namespace

Piece table1_piece() {
  std::vector<Note> notes;
  // First half: G3, B3, D4 held for a quarter (two events); G5 then F5 on
  // eighths; B4/D5 restruck as dotted eighth + sixteenth.
  notes.push_back(note(kG3, Rational(0), Rational(1)));
  notes.push_back(note(kB3, Rational(0), Rational(1)));
  notes.push_back(note(kD4, Rational(0), Rational(1)));
  notes.push_back(note(kG5, Rational(0), Rational(1, 2)));
  notes.push_back(note(kF5, Rational(1, 2), Rational(1)));
  notes.push_back(note(kB4, Rational(1), Rational(7, 4)));
  notes.push_back(note(kD5, Rational(1), Rational(7, 4)));
  notes.push_back(note(kB4, Rational(7, 4), Rational(2)));
  notes.push_back(note(kD5, Rational(7, 4), Rational(2)));
  // Second half: C5/E5 held through four events over a walking bass.
  notes.push_back(note(kC4, Rational(2), Rational(5, 2)));
  notes.push_back(note(kC5, Rational(2), Rational(4)));
  notes.push_back(note(kE5, Rational(2), Rational(4)));
  notes.push_back(note(kG3, Rational(5, 2), Rational(3)));
  notes.push_back(note(kE3, Rational(3), Rational(7, 2)));
  notes.push_back(note(kG4, Rational(3), Rational(4)));
  notes.push_back(note(kC3, Rational(7, 2), Rational(4)));
  return make_piece("woo68-m12", Meter{4, 4, Rational(0)}, std::move(notes));
}

std::string table1_piece_json() {
  const Piece piece = table1_piece();
  std::ostringstream os;
  os << "{\n  \"id\": \"" << piece.id << "\",\n"
     << "  \"meter\": {\"beats\": 4, \"unit\": 4, \"anacrusis\": \"0\"},\n"
     << "  \"notes\": [\n";
  for (std::size_t i = 0; i < piece.notes.size(); ++i) {
    const Note& n = piece.notes[i];
    os << "    {\"pitch\": " << n.pitch << ", \"onset\": \"" << n.onset.str()
       << "\", \"offset\": \"" << n.offset.str() << "\"}"
       << (i + 1 < piece.notes.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

std::vector<std::vector<int>> table1_event_pitches() {
  return {
      {kG3, kB3, kD4, kG5}, {kG3, kB3, kD4, kF5}, {kB4, kD5}, {kB4, kD5},
      {kC4, kC5, kE5},      {kG3, kC5, kE5},      {kE3, kG4, kC5, kE5},
      {kC3, kG4, kC5, kE5},
  };
}

std::vector<Rational> table1_event_lens() {
  return {Rational(1, 2), Rational(1, 2), Rational(3, 4), Rational(1, 4),
          Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
}

Piece random_piece(std::mt19937_64& rng, int n_events) {
  static const Rational kDurations[] = {Rational(1, 4), Rational(1, 2),
                                        Rational(3, 4), Rational(1),
                                        Rational(3, 2)};
  std::uniform_int_distribution<int> dur_pick(0, 4);
  std::uniform_int_distribution<int> bass_pick(36, 55);
  std::uniform_int_distribution<int> upper_pick(55, 83);
  std::uniform_int_distribution<int> n_upper(0, 2);

  std::vector<Rational> bounds{Rational(0)};
  for (int i = 0; i < n_events; ++i)
    bounds.push_back(bounds.back() + kDurations[dur_pick(rng)]);

  std::vector<Note> notes;
  for (int i = 0; i < n_events; ++i) {
    // A bass note per slot pins every boundary.
    notes.push_back(note(bass_pick(rng), bounds[i], bounds[i + 1]));
    const int uppers = n_upper(rng);
    for (int u = 0; u < uppers; ++u) {
      std::uniform_int_distribution<int> span_pick(
          1, std::min(2, n_events - i));
      notes.push_back(
          note(upper_pick(rng), bounds[i], bounds[i + span_pick(rng)]));
    }
  }
  return make_piece("random", Meter{4, 4, Rational(0)}, std::move(notes));
}

std::vector<ChordLabel> random_labels(std::mt19937_64& rng, int m) {
  LabelSetConfig config;
  config.include_aug6 = true;
  config.include_sus_pow = true;
  std::vector<ChordLabel> all = build_label_set(config);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<ChordLabel> out;
  for (const ChordLabel& y : all) {
    if (out.empty() && !y.is_triad()) continue;  // keep one triad at least
    out.push_back(y);
    if (static_cast<int>(out.size()) == m) break;
  }
  return out;
}

LabeledSegmentation random_gold(std::mt19937_64& rng, int n_events,
                                int max_len, int n_labels) {
  LabeledSegmentation sy;
  std::uniform_int_distribution<int> label_pick(0, n_labels - 1);
  int at = 0;
  while (at < n_events) {
    std::uniform_int_distribution<int> len_pick(
        1, std::min(max_len, n_events - at));
    const int len = len_pick(rng);
    sy.items.push_back({Segment{at, at + len - 1}, label_pick(rng)});
    at += len;
  }
  return sy;
}

std::unique_ptr<FixtureModel> make_fixture(Piece piece,
                                           std::vector<ChordLabel> labels,
                                           int max_seg_len,
                                           std::mt19937_64& rng) {
  auto fm = std::make_unique<FixtureModel>(FeatureSpace{});
  fm->labels = std::move(labels);
  fm->piece = std::make_unique<Piece>(std::move(piece));
  fm->extractor = std::make_unique<PieceExtractor>(*fm->piece, fm->space,
                                                   max_seg_len);

  // Register every instance any candidate can fire, then freeze.
  const int n = fm->piece->num_events();
  for (int first = 0; first < n; ++first)
    for (int len = 1; len <= std::min(max_seg_len, n - first); ++len)
      for (const ChordLabel& y : fm->labels)
        fm->extractor->segment_vector(Segment{first, first + len - 1}, y,
                                      fm->seg_reg);
  const ChordLabel nochord{0, Mode::nochord, Added::none};
  for (const ChordLabel& y : fm->labels) {
    transition_vector(y, nochord, fm->trans_reg);
    for (const ChordLabel& p : fm->labels)
      transition_vector(y, p, fm->trans_reg);
  }
  fm->seg_reg.freeze();
  fm->trans_reg.freeze();

  fm->engine = std::make_unique<Engine>(fm->labels, fm->space, fm->seg_reg,
                                        fm->trans_reg);
  fm->lattice = std::make_unique<PieceLattice>(*fm->engine, *fm->extractor);

  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  fm->params.max_seg_len = max_seg_len;
  fm->params.w.resize(fm->seg_reg.size());
  fm->params.u.resize(fm->trans_reg.size());
  for (double& w : fm->params.w) w = weight(rng);
  for (double& u : fm->params.u) u = weight(rng);
  return fm;
}

namespace {

// One measure of the synthetic corpus: sustained root + fifth, a melody in
// octave 6 that optionally carries a passing or neighbor tone. Appends to
// `notes`; `t0` is the measure start in quarters.
enum class MeasurePattern { plain, passing, neighbor };

void add_measure(std::vector<Note>* notes, int root_pc,
                 MeasurePattern pattern, Rational t0,
                 Rational melody_tail = Rational(0)) {
  const int bass = 36 + root_pc;
  const int fifth_mid = 48 + ((root_pc + 7) % 12);
  const int root_hi = 72 + root_pc;
  const int third_hi = 72 + ((root_pc + 4) % 12);
  const int fifth_hi = 72 + ((root_pc + 7) % 12);
  const int step_hi = 72 + ((root_pc + 2) % 12);  // non-harmonic step tone

  notes->push_back(note(bass, t0, t0 + Rational(4)));
  notes->push_back(note(fifth_mid, t0, t0 + Rational(4)));
  const Rational end = t0 + Rational(4) + melody_tail;
  switch (pattern) {
    case MeasurePattern::plain:
      notes->push_back(note(third_hi, t0, t0 + Rational(2)));
      notes->push_back(note(root_hi, t0 + Rational(2), end));
      break;
    case MeasurePattern::passing:
      // third -> (passing step) -> root, strong-to-weak accents.
      notes->push_back(note(third_hi, t0, t0 + Rational(1)));
      notes->push_back(
          note(step_hi, t0 + Rational(1), t0 + Rational(3, 2)));
      notes->push_back(note(root_hi, t0 + Rational(3, 2),
                            t0 + Rational(5, 2)));
      notes->push_back(note(third_hi, t0 + Rational(5, 2), end));
      break;
    case MeasurePattern::neighbor:
      // root -> upper neighbor -> root.
      notes->push_back(note(root_hi, t0, t0 + Rational(1)));
      notes->push_back(
          note(step_hi, t0 + Rational(1), t0 + Rational(3, 2)));
      notes->push_back(note(root_hi, t0 + Rational(3, 2),
                            t0 + Rational(5, 2)));
      notes->push_back(note(fifth_hi, t0 + Rational(5, 2), end));
      break;
  }
}

}  // namespace

std::vector<CorpusItem> synthetic_overfit_corpus() {
  // Transposed I-IV-V-I progressions; measure 2 carries a passing tone,
  // measure 3 a neighbor, and measure 3's final melody note (the fifth of
  // V, non-harmonic over I) hangs half a beat into measure 4 as a
  // suspension.
  const int starts[5] = {0, 2, 5, 7, 9};
  std::vector<CorpusItem> corpus;
  for (int p = 0; p < 5; ++p) {
    const int i_pc = starts[p];
    const int iv_pc = (i_pc + 5) % 12;
    const int v_pc = (i_pc + 7) % 12;

    std::vector<Note> notes;
    add_measure(&notes, i_pc, MeasurePattern::plain, Rational(0));
    add_measure(&notes, iv_pc, MeasurePattern::passing, Rational(4));
    add_measure(&notes, v_pc, MeasurePattern::neighbor, Rational(8),
                Rational(1, 2));
    // Measure 4 melody starts after the suspension resolves.
    const int root_hi = 72 + i_pc;
    const int third_hi = 72 + ((i_pc + 4) % 12);
    notes.push_back(note(36 + i_pc, Rational(12), Rational(16)));
    notes.push_back(note(48 + ((i_pc + 7) % 12), Rational(12), Rational(16)));
    notes.push_back(note(third_hi, Rational(25, 2), Rational(14)));
    notes.push_back(note(root_hi, Rational(14), Rational(16)));

    CorpusItem item;
    item.stem = "piece" + std::to_string(p);
    item.piece = make_piece(item.stem, Meter{4, 4, Rational(0)},
                            std::move(notes));
    item.has_gold = true;

    auto event_at = [&](const Rational& t) {
      for (const Event& e : item.piece.events)
        if (e.start == t) return e.index;
      throw std::logic_error("no event at " + t.str());
    };
    auto seg_between = [&](int from_q, int to_q, int root) {
      AnnSegment s;
      s.seg.first = event_at(Rational(from_q));
      s.seg.last = event_at(Rational(to_q)) - 1;
      s.label = ChordLabel{root, Mode::maj, Added::none};
      return s;
    };
    item.gold.push_back(seg_between(0, 4, i_pc));
    item.gold.push_back(seg_between(4, 8, iv_pc));
    item.gold.push_back(seg_between(8, 12, v_pc));
    AnnSegment last;
    last.seg.first = event_at(Rational(12));
    last.seg.last = item.piece.num_events() - 1;
    last.label = ChordLabel{i_pc, Mode::maj, Added::none};
    item.gold.push_back(last);

    corpus.push_back(std::move(item));
  }
  return corpus;
}

std::vector<CorpusItem> tiny_two_chord_corpus(int pieces) {
  std::vector<CorpusItem> corpus;
  for (int p = 0; p < pieces; ++p) {
    std::vector<Note> notes = {{48, Rational(0), Rational(2)},
                               {64, Rational(0), Rational(1)},
                               {67, Rational(1), Rational(2)},
                               {50, Rational(2), Rational(4)},
                               {65, Rational(2), Rational(3)},
                               {69, Rational(3), Rational(4)}};
    if (p % 3 == 1) notes[1].offset = Rational(3, 2);
    if (p % 3 == 2) notes[4].offset = Rational(7, 2);
    CorpusItem item;
    item.stem = "tiny" + std::to_string(p);
    item.piece = make_piece(item.stem, Meter{4, 4, Rational(0)}, notes);
    item.has_gold = true;
    int split = -1;
    for (const Event& e : item.piece.events)
      if (e.start == Rational(2)) split = e.index;
    item.gold.push_back(
        {Segment{0, split - 1}, ChordLabel{0, Mode::maj, Added::none}});
    item.gold.push_back({Segment{split, item.piece.num_events() - 1},
                         ChordLabel{2, Mode::min, Added::none}});
    corpus.push_back(std::move(item));
  }
  return corpus;
}

std::string piece_to_json(const Piece& piece) {
  std::ostringstream os;
  os << "{\n  \"id\": \"" << piece.id << "\",\n  \"meter\": {\"beats\": "
     << piece.meter.beats_per_measure << ", \"unit\": "
     << piece.meter.beat_unit << ", \"anacrusis\": \""
     << piece.meter.anacrusis.str() << "\"},\n  \"notes\": [\n";
  for (std::size_t i = 0; i < piece.notes.size(); ++i) {
    const Note& n = piece.notes[i];
    os << "    {\"pitch\": " << n.pitch << ", \"onset\": \"" << n.onset.str()
       << "\", \"offset\": \"" << n.offset.str() << "\"}"
       << (i + 1 < piece.notes.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace chordlab::testing
