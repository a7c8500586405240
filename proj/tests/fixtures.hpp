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

#ifndef CHORDLAB_TESTS_FIXTURES_HPP
#define CHORDLAB_TESTS_FIXTURES_HPP

#include <memory>
#include <random>
#include <vector>

#include "chordlab/pipeline.hpp"

namespace chordlab::testing {

/// Beethoven WoO68 measure 12: one 4/4 measure whose event stream is the
/// 8-event reference (G3,B3,D4 held over the first two events; B4/D5
/// restruck dotted-eighth+sixteenth; C5/E5 held through the second half).
Piece table1_piece();
std::string table1_piece_json();

/// Expected pitch sets (as sorted midi pitches) and durations in quarters
/// for the 8 events of the fixture.
std::vector<std::vector<int>> table1_event_pitches();
std::vector<Rational> table1_event_lens();

/// Random piece with exactly `n_events` events. Every slot boundary is
/// pinned by a bass note; upper voices may span several slots so held
/// pitches and cross-boundary anchors occur.
Piece random_piece(std::mt19937_64& rng, int n_events);

/// `m` distinct labels sampled from the full algebra (triads with all added
/// notes, aug6, sus/pow), always including at least one triad.
std::vector<ChordLabel> random_labels(std::mt19937_64& rng, int m);

/// Random tiling of [0, n_events) into segments of length <= max_len with
/// random label indices < n_labels.
LabeledSegmentation random_gold(std::mt19937_64& rng, int n_events,
                                int max_len, int n_labels);

/// A full inference fixture: registries auto-populated over every candidate
/// (segment, label) and every transition pair, then frozen; weights drawn
/// uniformly from [-2, 2].
struct FixtureModel {
  FeatureSpace space;
  std::vector<ChordLabel> labels;
  FeatureRegistry seg_reg;
  FeatureRegistry trans_reg;
  std::unique_ptr<Piece> piece;
  std::unique_ptr<Engine> engine;
  std::unique_ptr<PieceExtractor> extractor;
  std::unique_ptr<PieceLattice> lattice;
  ModelParams params;

  explicit FixtureModel(FeatureSpace s) : space(std::move(s)) {}
};

std::unique_ptr<FixtureModel> make_fixture(Piece piece,
                                           std::vector<ChordLabel> labels,
                                           int max_seg_len,
                                           std::mt19937_64& rng);

/// Five synthetic pieces (transposed I-IV-V-I progressions, one measure per
/// segment) with injected passing, neighbor and suspension figuration.
std::vector<CorpusItem> synthetic_overfit_corpus();

/// Minimal separable corpus: each piece is a C major measure-half followed
/// by a D minor one, with slight rhythmic variation per copy.
std::vector<CorpusItem> tiny_two_chord_corpus(int pieces = 3);

/// Serializes a piece in the canonical input format.
std::string piece_to_json(const Piece& piece);

}  // namespace chordlab::testing

#endif  // CHORDLAB_TESTS_FIXTURES_HPP
