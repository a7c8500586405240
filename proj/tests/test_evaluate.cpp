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

#include <random>

#include "chordlab/evaluate.hpp"
#include "fixtures.hpp"

using namespace chordlab;
using chordlab::testing::random_piece;

namespace {

const ChordLabel kC{0, Mode::maj, Added::none};
const ChordLabel kC7{0, Mode::maj, Added::seventh};
const ChordLabel kG{7, Mode::maj, Added::none};
const ChordLabel kF{5, Mode::maj, Added::none};

Annotation tile(const std::vector<int>& lengths,
                const std::vector<ChordLabel>& labels) {
  Annotation ann;
  int at = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    ann.push_back({Segment{at, at + lengths[i] - 1}, labels[i]});
    at += lengths[i];
  }
  return ann;
}

Annotation random_annotation(std::mt19937_64& rng, int n_events,
                             const std::vector<ChordLabel>& labels) {
  Annotation ann;
  int at = 0;
  while (at < n_events) {
    std::uniform_int_distribution<int> len_pick(1, n_events - at);
    int len = len_pick(rng);
    ann.push_back({Segment{at, at + len - 1},
                   labels[rng() % labels.size()]});
    at += len;
  }
  return ann;
}

}  // namespace

TEST_CASE("identical prediction scores perfectly") {
  std::mt19937_64 rng(7);
  Piece piece = random_piece(rng, 6);
  Annotation ann = tile({2, 3, 1}, {kC, kG, kF});
  EvalReport r = EvalReport::from_counts(
      evaluate_piece(piece, ann, ann, EvalMode::full));
  CHECK(r.acc_e == 1.0);
  CHECK(r.p_s == 1.0);
  CHECK(r.r_s == 1.0);
  CHECK(r.f_s == 1.0);
}

TEST_CASE("root mode forgives the added note") {
  std::mt19937_64 rng(11);
  Piece piece = random_piece(rng, 4);
  Annotation gold = tile({4}, {kC});
  Annotation pred = tile({4}, {kC7});
  CHECK(event_accuracy(piece, pred, gold, EvalMode::full) == 0.0);
  CHECK(event_accuracy(piece, pred, gold, EvalMode::root) == 1.0);
  Prf full = segment_prf(piece, pred, gold, EvalMode::full);
  Prf root = segment_prf(piece, pred, gold, EvalMode::root);
  CHECK(full.f_measure == 0.0);
  CHECK(root.f_measure == 1.0);
}

TEST_CASE("event accuracy counts events") {
  std::mt19937_64 rng(13);
  Piece piece = random_piece(rng, 8);
  Annotation gold = tile({4, 4}, {kC, kG});
  Annotation pred = tile({4, 2, 2}, {kC, kF, kG});
  CHECK(event_accuracy(piece, pred, gold, EvalMode::full) == 0.75);
}

TEST_CASE("segment precision, recall, F on the 2-gold/3-pred example") {
  std::mt19937_64 rng(17);
  Piece piece = random_piece(rng, 6);
  Annotation gold = tile({3, 3}, {kC, kG});
  Annotation pred = tile({3, 2, 1}, {kC, kG, kF});
  Prf prf = segment_prf(piece, pred, gold, EvalMode::full);
  CHECK(prf.precision == 1.0 / 3.0);
  CHECK(prf.recall == 0.5);
  const double expected_f = 2.0 * (1.0 / 3.0) * 0.5 / ((1.0 / 3.0) + 0.5);
  CHECK(prf.f_measure == expected_f);
  CHECK(prf.f_measure == doctest::Approx(0.4));
}

TEST_CASE("no matches yields all-zero measures") {
  std::mt19937_64 rng(19);
  Piece piece = random_piece(rng, 4);
  Annotation gold = tile({2, 2}, {kC, kG});
  Annotation pred = tile({1, 3}, {kC, kG});
  Prf prf = segment_prf(piece, pred, gold, EvalMode::full);
  CHECK(prf.precision == 0.0);
  CHECK(prf.recall == 0.0);
  CHECK(prf.f_measure == 0.0);
}

TEST_CASE("segment F is one exactly when the labeled tilings agree") {
  std::mt19937_64 rng(23);
  std::vector<ChordLabel> labels = {kC, kG, kF, kC7};
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Piece piece = random_piece(rng, n);
    Annotation gold = random_annotation(rng, n, labels);
    Annotation pred = random_annotation(rng, n, labels);
    Prf prf = segment_prf(piece, pred, gold, EvalMode::full);
    bool same = gold.size() == pred.size();
    for (std::size_t i = 0; same && i < gold.size(); ++i)
      same = gold[i].seg.first == pred[i].seg.first &&
             gold[i].seg.last == pred[i].seg.last &&
             gold[i].label == pred[i].label;
    CHECK((prf.f_measure == 1.0) == same);
    CHECK(prf.f_measure <= std::max(prf.precision, prf.recall) + 1e-12);
    CHECK(prf.f_measure >= std::min(prf.precision, prf.recall) - 1e-12);
  }
}

TEST_CASE("root accuracy dominates full accuracy") {
  std::mt19937_64 rng(29);
  std::vector<ChordLabel> labels = {kC, kG, kF, kC7,
                                    {9, Mode::min, Added::none},
                                    {7, Mode::maj, Added::seventh}};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Piece piece = random_piece(rng, n);
    Annotation gold = random_annotation(rng, n, labels);
    Annotation pred = random_annotation(rng, n, labels);
    CHECK(event_accuracy(piece, pred, gold, EvalMode::root) >=
          event_accuracy(piece, pred, gold, EvalMode::full) - 1e-12);
  }
}

TEST_CASE("corpus counts pool across pieces") {
  std::mt19937_64 rng(31);
  EvalCounts pooled;
  long matched_sum = 0;
  for (int p = 0; p < 4; ++p) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Piece piece = random_piece(rng, n);
    Annotation gold = random_annotation(rng, n, {kC, kG});
    Annotation pred = random_annotation(rng, n, {kC, kG});
    EvalCounts c = evaluate_piece(piece, pred, gold, EvalMode::full);
    matched_sum += c.segs_matched;
    pooled += c;
  }
  CHECK(pooled.segs_matched == matched_sum);
}

TEST_CASE("gold aug6 segments are excluded from root-only scoring") {
  std::mt19937_64 rng(37);
  Piece piece = random_piece(rng, 6);
  const ChordLabel it6{5, Mode::it6, Added::none};
  Annotation gold = tile({2, 2, 2}, {kC, it6, kG});
  // Prediction nails the outer segments, rambles inside the aug6 span.
  Annotation pred = tile({2, 1, 1, 2}, {kC, kF, kF, kG});

  EvalCounts full = evaluate_piece(piece, pred, gold, EvalMode::full);
  CHECK(full.events_total == 6);
  CHECK(full.events_correct == 4);
  CHECK(full.segs_gold == 3);
  CHECK(full.segs_pred == 4);
  CHECK(full.segs_matched == 2);

  EvalCounts root = evaluate_piece(piece, pred, gold, EvalMode::root);
  CHECK(root.events_total == 4);  // the two aug6 events drop out
  CHECK(root.events_correct == 4);
  CHECK(root.segs_gold == 2);
  CHECK(root.segs_pred == 2);  // predictions inside the aug6 span drop too
  CHECK(root.segs_matched == 2);
  EvalReport r = EvalReport::from_counts(root);
  CHECK(r.f_s == 1.0);
}

TEST_CASE("tiling mismatches are rejected") {
  std::mt19937_64 rng(41);
  Piece piece = random_piece(rng, 4);
  Annotation good = tile({4}, {kC});
  Annotation short_ann = {{Segment{0, 2}, kC}};
  Annotation gapped = {{Segment{0, 1}, kC}, {Segment{3, 3}, kC}};
  CHECK_THROWS_AS(evaluate_piece(piece, short_ann, good, EvalMode::full),
                  RunError);
  CHECK_THROWS_AS(evaluate_piece(piece, good, gapped, EvalMode::full),
                  RunError);
}

TEST_CASE("empty versus empty F-measure conventions") {
  EvalCounts both_empty;
  EvalReport r = EvalReport::from_counts(both_empty);
  CHECK(r.p_s == 1.0);
  CHECK(r.r_s == 1.0);
  CHECK(r.f_s == 1.0);

  EvalCounts one_side;
  one_side.segs_gold = 2;
  r = EvalReport::from_counts(one_side);
  CHECK(r.f_s == 0.0);
}
