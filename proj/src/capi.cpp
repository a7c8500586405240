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

#include "chordlab.h"

#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "chordlab/parallel.hpp"
#include "chordlab/pipeline.hpp"

using nlohmann::json;

struct chordlab_model {
  std::unique_ptr<chordlab::Model> impl;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

template <typename Fn>
int guarded(char** err, Fn&& fn) {
  try {
    fn();
    return CHORDLAB_OK;
  } catch (const chordlab::InputError& e) {
    set_err(err, e.what());
    return CHORDLAB_ERR_INPUT;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return CHORDLAB_ERR_RUN;
  }
}

chordlab::RunConfig config_from(const char* config_json) {
  chordlab::RunConfig config;
  if (config_json && *config_json) config.apply_json(config_json);
  config.validate();
  return config;
}

json predict_result_json(const chordlab::Piece& piece,
                         const chordlab::PredictResult& res,
                         const chordlab::PredictOptions& options) {
  json out;
  out["annotation"] = json::parse(chordlab::annotation_to_json(
      piece, res.annotation,
      options.resolve_sevenths ? &res.sevenths : nullptr));
  out["score"] = res.score;
  if (options.dump_figuration) out["figuration"] = res.figuration_lines;
  if (options.dump_features) out["features"] = res.feature_lines;
  return out;
}

}  // namespace

extern "C" {

const char* chordlab_version(void) { return "0.1.0"; }

void chordlab_string_free(char* s) { std::free(s); }

int chordlab_train(const char* corpus_dir, const char* config_json,
                   const char* model_path, char** out_json, char** err) {
  return guarded(err, [&]() {
    if (!corpus_dir || !model_path)
      throw chordlab::InputError("corpus_dir and model_path are required");
    chordlab::RunConfig config = config_from(config_json);
    std::vector<chordlab::CorpusItem> corpus =
        chordlab::load_corpus(corpus_dir, /*require_gold=*/true);
    chordlab::TrainLog log;
    std::unique_ptr<chordlab::Model> model =
        chordlab::Model::train_on(corpus, config, &log);
    model->save_file(model_path);
    if (out_json) {
      json j;
      j["pieces"] = corpus.size();
      j["registry_size"] = model->engine().seg_registry().size();
      j["transition_registry_size"] = model->engine().trans_registry().size();
      j["iterations"] = log.iterations;
      j["converged"] = log.converged;
      j["objective"] = log.objective;
      j["grad_norm"] = log.grad_norm;
      *out_json = dup_string(j.dump(2));
    }
  });
}

int chordlab_model_load(const char* model_path, chordlab_model** out,
                        char** err) {
  return guarded(err, [&]() {
    if (!model_path || !out)
      throw chordlab::InputError("model_path and out are required");
    auto impl = chordlab::Model::load_file(model_path);
    *out = new chordlab_model{std::move(impl)};
  });
}

void chordlab_model_free(chordlab_model* model) { delete model; }

int chordlab_predict_json(const chordlab_model* model, const char* piece_json,
                          const char* options_json, char** out_json,
                          char** err) {
  return guarded(err, [&]() {
    if (!model || !piece_json || !out_json)
      throw chordlab::InputError("model, piece_json and out_json are required");
    chordlab::PredictOptions options;
    if (options_json && *options_json) {
      json oj = json::parse(options_json, nullptr, false);
      if (oj.is_discarded() || !oj.is_object())
        throw chordlab::InputError("options must be a JSON object");
      options.resolve_sevenths = oj.value("resolve_sevenths", false);
      options.dump_figuration = oj.value("dump_figuration", false);
      options.dump_features = oj.value("dump_features", false);
    }
    chordlab::Piece piece = chordlab::load_piece_json(piece_json, "piece");
    chordlab::PredictResult res = model->impl->predict_full(piece, options);
    *out_json = dup_string(predict_result_json(piece, res, options).dump(2));
  });
}

int chordlab_predict_file(const chordlab_model* model, const char* piece_path,
                          const char* options_json, char** out_json,
                          char** err) {
  return guarded(err, [&]() {
    if (!model || !piece_path || !out_json)
      throw chordlab::InputError("model, piece_path and out_json are required");
    std::string text = chordlab::read_file(piece_path);
    char* sub_err = nullptr;
    int rc = chordlab_predict_json(model, text.c_str(), options_json, out_json,
                                   &sub_err);
    if (rc != CHORDLAB_OK) {
      std::string msg = sub_err ? sub_err : "prediction failed";
      chordlab_string_free(sub_err);
      if (rc == CHORDLAB_ERR_INPUT) throw chordlab::InputError(msg);
      throw chordlab::RunError(msg);
    }
  });
}

int chordlab_evaluate(const char* corpus_dir, const char* pred_dir,
                      char** out_json, char** err) {
  return guarded(err, [&]() {
    if (!corpus_dir || !pred_dir || !out_json)
      throw chordlab::InputError(
          "corpus_dir, pred_dir and out_json are required");
    std::vector<chordlab::CorpusItem> corpus =
        chordlab::load_corpus(corpus_dir, /*require_gold=*/true);
    std::vector<chordlab::Annotation> preds;
    preds.reserve(corpus.size());
    for (const chordlab::CorpusItem& item : corpus) {
      std::filesystem::path pred_path =
          std::filesystem::path(pred_dir) / (item.stem + ".chords.json");
      preds.push_back(chordlab::load_annotation_file(pred_path, item.piece));
    }
    chordlab::CorpusEval eval = chordlab::evaluate_predictions(corpus, preds);
    json j = json::parse(chordlab::corpus_eval_to_json(eval));
    j["table"] = chordlab::eval_table(eval);
    *out_json = dup_string(j.dump(2));
  });
}

int chordlab_cross_validate(const char* corpus_dir, const char* config_json,
                            const char* cv_json, char** out_json, char** err) {
  return guarded(err, [&]() {
    if (!corpus_dir || !out_json)
      throw chordlab::InputError("corpus_dir and out_json are required");
    chordlab::RunConfig config = config_from(config_json);
    chordlab::CvOptions options;
    if (cv_json && *cv_json) {
      json cj = json::parse(cv_json, nullptr, false);
      if (cj.is_discarded() || !cj.is_object())
        throw chordlab::InputError("cv options must be a JSON object");
      options.folds = cj.value("folds", options.folds);
      options.repeats = cj.value("repeats", options.repeats);
      options.leave_one_out = cj.value("leave_one_out", false);
    }
    std::vector<chordlab::CorpusItem> corpus =
        chordlab::load_corpus(corpus_dir, /*require_gold=*/true);
    chordlab::CvReport report =
        chordlab::cross_validate(corpus, config, options);
    json j = json::parse(chordlab::cv_report_to_json(report));
    j["table"] = chordlab::cv_table(report);
    *out_json = dup_string(j.dump(2));
  });
}

}  // extern "C"
