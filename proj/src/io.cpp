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

#include "chordlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace chordlab {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InputError("expected rational (int or \"num/den\") at " + where);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON in " + what);
  return j;
}

}  // namespace

Piece load_piece_json(const std::string& text, const std::string& fallback_id) {
  json j = parse_json(text, "piece");
  if (!j.is_object() || !j.contains("notes") || !j["notes"].is_array())
    throw InputError("piece JSON must be an object with a \"notes\" array");
  std::string id = fallback_id;
  if (j.contains("id")) id = j["id"].get<std::string>();
  if (id.empty()) throw InputError("piece JSON is missing \"id\"");

  Meter meter;
  if (j.contains("meter")) {
    const json& m = j["meter"];
    if (!m.is_object()) throw InputError("piece \"meter\" must be an object");
    if (m.contains("beats")) meter.beats_per_measure = m["beats"].get<int>();
    if (m.contains("unit")) meter.beat_unit = m["unit"].get<int>();
    if (m.contains("anacrusis"))
      meter.anacrusis = rational_from_json(m["anacrusis"], id + ".anacrusis");
  }

  std::vector<Note> notes;
  notes.reserve(j["notes"].size());
  for (const json& nj : j["notes"]) {
    if (!nj.is_object() || !nj.contains("pitch") || !nj.contains("onset") ||
        !nj.contains("offset"))
      throw InputError("piece '" + id +
                       "': every note needs pitch, onset and offset");
    Note n;
    n.pitch = nj["pitch"].get<int>();
    n.onset = rational_from_json(nj["onset"], id + ".onset");
    n.offset = rational_from_json(nj["offset"], id + ".offset");
    notes.push_back(n);
  }
  return make_piece(std::move(id), meter, std::move(notes));
}

Piece load_piece_file(const std::filesystem::path& path) {
  return load_piece_json(read_file(path), path.stem().string());
}

Annotation load_annotation_json(const std::string& text, const Piece& piece) {
  json j = parse_json(text, "annotation for piece '" + piece.id + "'");
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array())
    throw InputError("annotation for piece '" + piece.id +
                     "' must contain a \"segments\" array");

  std::map<Rational, int> start_of;
  std::map<Rational, int> end_of;
  for (const Event& e : piece.events) {
    start_of.emplace(e.start, e.index);
    end_of.emplace(e.end, e.index);
  }

  Annotation ann;
  for (const json& sj : j["segments"]) {
    if (!sj.is_object() || !sj.contains("start") || !sj.contains("end") ||
        !sj.contains("label"))
      throw InputError("annotation for piece '" + piece.id +
                       "': every segment needs start, end and label");
    Rational start = rational_from_json(sj["start"], piece.id + ".start");
    Rational end = rational_from_json(sj["end"], piece.id + ".end");
    auto s_it = start_of.find(start);
    if (s_it == start_of.end())
      throw RunError("piece '" + piece.id + "': segment start " + start.str() +
                     " is not on a partition point");
    auto e_it = end_of.find(end);
    if (e_it == end_of.end())
      throw RunError("piece '" + piece.id + "': segment end " + end.str() +
                     " is not on a partition point");
    AnnSegment seg;
    seg.seg = Segment{s_it->second, e_it->second};
    seg.label = parse_label(sj["label"].get<std::string>());
    if (seg.seg.last < seg.seg.first)
      throw RunError("piece '" + piece.id + "': segment ending " + end.str() +
                     " precedes its start " + start.str());
    ann.push_back(seg);
  }
  return ann;
}

Annotation load_annotation_file(const std::filesystem::path& path,
                                const Piece& piece) {
  return load_annotation_json(read_file(path), piece);
}

std::string annotation_to_json(
    const Piece& piece, const Annotation& ann,
    const std::vector<std::optional<SeventhType>>* sevenths) {
  json segments = json::array();
  for (std::size_t k = 0; k < ann.size(); ++k) {
    const AnnSegment& s = ann[k];
    json seg;
    seg["start"] = piece.events[s.seg.first].start.str();
    seg["end"] = piece.events[s.seg.last].end.str();
    seg["label"] = label_to_string(s.label);
    if (sevenths && k < sevenths->size() && (*sevenths)[k])
      seg["seventh"] = seventh_type_name(*(*sevenths)[k]);
    segments.push_back(std::move(seg));
  }
  json out;
  out["id"] = piece.id;
  out["segments"] = std::move(segments);
  return out.dump(2);
}

std::vector<CorpusItem> load_corpus(const std::filesystem::path& dir,
                                    bool require_gold) {
  if (!std::filesystem::is_directory(dir))
    throw InputError("corpus directory '" + dir.string() + "' not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() < 5 || name.substr(name.size() - 5) != ".json") continue;
    if (name.size() >= 12 &&
        name.substr(name.size() - 12) == ".chords.json")
      continue;
    if (name.size() >= 11 && name.substr(name.size() - 11) == ".model.json")
      continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw InputError("no pieces found in '" + dir.string() + "'");

  std::vector<CorpusItem> items;
  items.reserve(files.size());
  for (const auto& path : files) {
    CorpusItem item;
    item.stem = path.stem().string();
    item.piece = load_piece_file(path);
    auto sidecar = path;
    sidecar.replace_extension();  // drop .json
    sidecar += ".chords.json";
    if (std::filesystem::exists(sidecar)) {
      item.gold = load_annotation_file(sidecar, item.piece);
      item.has_gold = true;
    } else if (require_gold) {
      throw InputError("missing gold annotation '" + sidecar.string() + "'");
    }
    items.push_back(std::move(item));
  }
  return items;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace chordlab
