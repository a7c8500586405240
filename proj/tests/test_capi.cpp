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

// Exercises the shared library strictly through include/chordlab.h.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "chordlab.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("chordlab-capi-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

// A two-chord piece (C major measure, D minor measure) with a little
// variation per copy so the corpus has three distinct pieces.
std::string piece_json(const std::string& id, int variant) {
  json notes = json::array();
  auto add = [&](int pitch, const std::string& on, const std::string& off) {
    notes.push_back({{"pitch", pitch}, {"onset", on}, {"offset", off}});
  };
  add(48, "0", "2");
  add(64, "0", variant == 1 ? "3/2" : "1");
  add(67, "1", "2");
  add(50, "2", "4");
  add(65, "2", variant == 2 ? "7/2" : "3");
  add(69, "3", "4");
  json j;
  j["id"] = id;
  j["meter"] = {{"beats", 4}, {"unit", 4}, {"anacrusis", "0"}};
  j["notes"] = notes;
  return j.dump();
}

constexpr const char* kGold =
    R"({"segments": [{"start": "0", "end": "2", "label": "C:maj"},
                     {"start": "2", "end": "4", "label": "D:min"}]})";

struct Corpus {
  TempDir dir;
  Corpus() {
    for (int p = 0; p < 3; ++p) {
      std::string stem = "p" + std::to_string(p);
      write(dir.path / (stem + ".json"), piece_json(stem, p));
      write(dir.path / (stem + ".chords.json"), kGold);
    }
  }
};

constexpr const char* kConfig =
    R"({"cutoff": 1, "lambda": 0.01, "max_iters": 120})";

}  // namespace

TEST_CASE("version string") {
  REQUIRE(chordlab_version() != nullptr);
  CHECK(std::string(chordlab_version()).find('.') != std::string::npos);
}

TEST_CASE("train, load, predict, evaluate, cross-validate") {
  Corpus corpus;
  TempDir work;
  fs::path model_path = work.path / "model.json";

  char* err = nullptr;
  char* out = nullptr;
  REQUIRE(chordlab_train(corpus.dir.path.c_str(), kConfig,
                         model_path.c_str(), &out, &err) == CHORDLAB_OK);
  REQUIRE(out != nullptr);
  json report = json::parse(out);
  chordlab_string_free(out);
  CHECK(report["pieces"] == 3);
  CHECK(report["iterations"].get<int>() >= 1);
  CHECK(report["objective"].size() >= 2);

  chordlab_model* model = nullptr;
  REQUIRE(chordlab_model_load(model_path.c_str(), &model, &err) ==
          CHORDLAB_OK);

  std::string piece = piece_json("solo", 0);
  out = nullptr;
  REQUIRE(chordlab_predict_json(model, piece.c_str(),
                                R"({"dump_features": true})", &out,
                                &err) == CHORDLAB_OK);
  json pred = json::parse(out);
  chordlab_string_free(out);
  REQUIRE(pred.contains("annotation"));
  REQUIRE(pred["annotation"]["segments"].size() >= 1);
  CHECK(pred.contains("features"));
  // The trained model reproduces the gold labeling of the training data.
  CHECK(pred["annotation"]["segments"].size() == 2);
  CHECK(pred["annotation"]["segments"][0]["label"] == "C:maj");
  CHECK(pred["annotation"]["segments"][1]["label"] == "D:min");

  // Predict from a file too.
  fs::path piece_path = corpus.dir.path / "p0.json";
  out = nullptr;
  REQUIRE(chordlab_predict_file(model, piece_path.c_str(), nullptr, &out,
                                &err) == CHORDLAB_OK);
  chordlab_string_free(out);
  chordlab_model_free(model);

  // Gold evaluated against itself is perfect.
  out = nullptr;
  REQUIRE(chordlab_evaluate(corpus.dir.path.c_str(),
                            corpus.dir.path.c_str(), &out,
                            &err) == CHORDLAB_OK);
  json eval = json::parse(out);
  chordlab_string_free(out);
  CHECK(eval["full"]["acc_e"] == 1.0);
  CHECK(eval["full"]["f_s"] == 1.0);
  CHECK(eval["root"]["f_s"] == 1.0);
  CHECK(eval.contains("table"));

  // Leave-one-out cross-validation over the three pieces.
  out = nullptr;
  REQUIRE(chordlab_cross_validate(corpus.dir.path.c_str(), kConfig,
                                  R"({"leave_one_out": true})", &out,
                                  &err) == CHORDLAB_OK);
  json cv = json::parse(out);
  chordlab_string_free(out);
  CHECK(cv["folds"] == 3);
  CHECK(cv["repeats"] == 1);
  double acc = cv["full"]["mean"]["acc_e"].get<double>();
  CHECK(acc >= 0.0);
  CHECK(acc <= 1.0);
}

TEST_CASE("error reporting and exit codes") {
  TempDir empty;
  char* err = nullptr;
  CHECK(chordlab_train(empty.path.c_str(), "", "/tmp/never.json", nullptr,
                       &err) == CHORDLAB_ERR_INPUT);
  REQUIRE(err != nullptr);
  CHECK(std::string(err).find("no pieces found") != std::string::npos);
  chordlab_string_free(err);
  err = nullptr;

  chordlab_model* model = nullptr;
  CHECK(chordlab_model_load((empty.path / "missing.json").c_str(), &model,
                            &err) == CHORDLAB_ERR_INPUT);
  chordlab_string_free(err);
  err = nullptr;

  Corpus corpus;
  TempDir work;
  fs::path model_path = work.path / "model.json";
  REQUIRE(chordlab_train(corpus.dir.path.c_str(), kConfig,
                         model_path.c_str(), nullptr, nullptr) == CHORDLAB_OK);
  REQUIRE(chordlab_model_load(model_path.c_str(), &model, &err) ==
          CHORDLAB_OK);
  char* out = nullptr;
  CHECK(chordlab_predict_json(model, "{broken", nullptr, &out, &err) ==
        CHORDLAB_ERR_INPUT);
  chordlab_string_free(err);
  err = nullptr;
  // A piece whose annotation cannot align is a run error on evaluate.
  TempDir preds;
  write(preds.path / "p0.chords.json",
        R"({"segments": [{"start": "0", "end": "1/3", "label": "C:maj"}]})");
  write(preds.path / "p1.chords.json", kGold);
  write(preds.path / "p2.chords.json", kGold);
  CHECK(chordlab_evaluate(corpus.dir.path.c_str(), preds.path.c_str(), &out,
                          &err) == CHORDLAB_ERR_RUN);
  REQUIRE(err != nullptr);
  CHECK(std::string(err).find("partition point") != std::string::npos);
  chordlab_string_free(err);
  chordlab_model_free(model);

  // Bad config is an input error.
  CHECK(chordlab_cross_validate(corpus.dir.path.c_str(),
                                R"({"preset": "zzz"})", nullptr, &out,
                                &err) == CHORDLAB_ERR_INPUT);
  chordlab_string_free(err);
}
