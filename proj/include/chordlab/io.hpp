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

#ifndef CHORDLAB_IO_HPP
#define CHORDLAB_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chordlab/evaluate.hpp"
#include "chordlab/music.hpp"

namespace chordlab {

/// Parses the canonical piece format:
///   { "id": str,
///     "meter": { "beats": int, "unit": int, "anacrusis": "num/den" },
///     "notes": [ { "pitch": int, "onset": "num/den", "offset": "num/den" } ] }
/// Rational fields accept "num/den" strings, bare-integer strings, or
/// JSON integers. `anacrusis` defaults to 0.
Piece load_piece_json(const std::string& text,
                      const std::string& fallback_id = "");
Piece load_piece_file(const std::filesystem::path& path);

/// Parses a gold-annotation sidecar
///   { "segments": [ { "start": .., "end": .., "label": "G:maj:add7" } ] }
/// and aligns segment boundaries to the piece's events. Boundaries that
/// miss a partition point raise RunError naming the piece and time.
Annotation load_annotation_json(const std::string& text, const Piece& piece);
Annotation load_annotation_file(const std::filesystem::path& path,
                                const Piece& piece);

/// Serializes an annotation in the sidecar format. When `sevenths` is given
/// (parallel to `ann`), resolved entries add a "seventh" key.
std::string annotation_to_json(
    const Piece& piece, const Annotation& ann,
    const std::vector<std::optional<SeventhType>>* sevenths = nullptr);

struct CorpusItem {
  std::string stem;  // file stem, used to pair predictions with pieces
  Piece piece;
  Annotation gold;  // empty when the sidecar is absent and not required
  bool has_gold = false;
};

/// Loads every piece file in a directory ("*.json" except "*.chords.json"
/// and "*.model.json", sorted by name) with its "<stem>.chords.json"
/// sidecar. Throws InputError("no pieces found ...") for an empty corpus,
/// and for a missing sidecar when `require_gold` is set.
std::vector<CorpusItem> load_corpus(const std::filesystem::path& dir,
                                    bool require_gold);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace chordlab

#endif  // CHORDLAB_IO_HPP
