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

#include "chordlab/music.hpp"

#include <algorithm>
#include <cmath>

namespace chordlab {

namespace {

bool valid_beat_unit(int u) {
  return u == 1 || u == 2 || u == 4 || u == 8 || u == 16;
}

void validate_meter(const Meter& m) {
  if (m.beats_per_measure < 1 || !valid_beat_unit(m.beat_unit))
    throw InputError("invalid meter " + std::to_string(m.beats_per_measure) +
                     "/" + std::to_string(m.beat_unit));
}

}  // namespace

std::vector<Rational> compute_partition_points(
    const std::vector<Note>& notes) {
  if (notes.empty()) throw InputError("empty piece");
  std::vector<Rational> points;
  points.reserve(notes.size() * 2);
  for (const auto& n : notes) {
    points.push_back(n.onset);
    points.push_back(n.offset);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double accent_value(const Rational& t, const Meter& meter) {
  validate_meter(meter);
  Rational measure = meter.measure_quarters();
  Rational pos = (t - meter.anacrusis).mod(measure) / measure;  // in [0, 1)
  // Depth of the finest binary grid the position sits on: write pos = p/q
  // with q = 2^a * b, b odd. b == 1 means on-grid at depth a; otherwise the
  // position is off every binary grid and takes the value one level deeper.
  std::int64_t q = pos.den();
  int a = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++a;
  }
  int depth = (q == 1) ? a : a + 1;
  return std::ldexp(1.0, -depth);
}

std::vector<Event> build_events(const std::vector<Note>& notes,
                                const Meter& meter) {
  validate_meter(meter);
  std::vector<Rational> points = compute_partition_points(notes);
  std::vector<Event> events;
  events.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Event ev;
    ev.index = static_cast<int>(i);
    ev.start = points[i];
    ev.end = points[i + 1];
    ev.len = ev.end - ev.start;
    ev.acc = accent_value(ev.start, meter);
    for (std::size_t n = 0; n < notes.size(); ++n) {
      const Note& note = notes[n];
      if (note.onset <= ev.start && note.offset >= ev.end) {
        EventPitch p;
        p.pitch = note.pitch;
        p.held = note.onset < ev.start;
        p.note = static_cast<int>(n);
        ev.pitches.push_back(p);
      }
    }
    std::sort(ev.pitches.begin(), ev.pitches.end(),
              [](const EventPitch& x, const EventPitch& y) {
                return x.pitch != y.pitch ? x.pitch < y.pitch : x.note < y.note;
              });
    events.push_back(std::move(ev));
  }
  return events;
}

Piece make_piece(std::string id, const Meter& meter, std::vector<Note> notes) {
  validate_meter(meter);
  if (notes.empty()) throw InputError("empty piece: '" + id + "'");
  for (const auto& n : notes) {
    if (n.pitch < 0 || n.pitch > 127)
      throw InputError("piece '" + id + "': pitch " + std::to_string(n.pitch) +
                       " out of range [0, 127]");
    if (!(n.offset > n.onset))
      throw InputError("piece '" + id + "': note at " + n.onset.str() +
                       " has non-positive duration");
  }
  Piece piece;
  piece.id = std::move(id);
  piece.meter = meter;
  piece.notes = std::move(notes);
  piece.events = build_events(piece.notes, meter);
  piece.note_first_event.assign(piece.notes.size(), -1);
  piece.note_last_event.assign(piece.notes.size(), -1);
  for (const Event& ev : piece.events) {
    for (const EventPitch& p : ev.pitches) {
      if (piece.note_first_event[p.note] < 0)
        piece.note_first_event[p.note] = ev.index;
      piece.note_last_event[p.note] = ev.index;
    }
  }
  return piece;
}

}  // namespace chordlab
