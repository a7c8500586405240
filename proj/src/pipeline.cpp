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

#include "chordlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "chordlab/parallel.hpp"

namespace chordlab {

using nlohmann::json;

Bins RunConfig::make_bins() const {
  if (bins.empty()) return Bins::default_bins();
  Bins b;
  b.bounds = bins;
  if (b.bounds.size() < 2 || b.bounds.front() != 0.0 || b.bounds.back() != 1.0)
    throw InputError("bins must start at 0 and end at 1");
  for (std::size_t i = 1; i < b.bounds.size(); ++i)
    if (!(b.bounds[i] > b.bounds[i - 1]))
      throw InputError("bins must be strictly increasing");
  return b;
}

void RunConfig::validate() const {
  if (max_seg_len < 1) throw InputError("max segment length must be >= 1");
  if (lambda < 0.0) throw InputError("lambda must be >= 0");
  if (cutoff < 0) throw InputError("cutoff must be >= 0");
  if (tol <= 0.0) throw InputError("tol must be > 0");
  if (max_iters < 1) throw InputError("max iterations must be >= 1");
  if (lbfgs_memory < 1) throw InputError("lbfgs memory must be >= 1");
  if (jobs < 1) throw InputError("jobs must be >= 1");
  (void)make_bins();
  (void)LabelSetConfig::from_preset(preset);
}

void RunConfig::apply_json(const std::string& text) {
  if (text.empty()) return;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError("config must be a JSON object");
  if (j.contains("preset")) preset = j["preset"].get<std::string>();
  if (j.contains("max_seg_len")) max_seg_len = j["max_seg_len"].get<int>();
  if (j.contains("lambda")) lambda = j["lambda"].get<double>();
  if (j.contains("cutoff")) cutoff = j["cutoff"].get<long>();
  if (j.contains("bigram_cutoff"))
    bigram_cutoff = j["bigram_cutoff"].get<long>();
  if (j.contains("tol")) tol = j["tol"].get<double>();
  if (j.contains("max_iters")) max_iters = j["max_iters"].get<int>();
  if (j.contains("lbfgs_memory")) lbfgs_memory = j["lbfgs_memory"].get<int>();
  if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
  if (j.contains("jobs")) jobs = j["jobs"].get<int>();
  if (j.contains("bins")) bins = j["bins"].get<std::vector<double>>();
}

std::string RunConfig::to_json() const {
  json j;
  j["preset"] = preset;
  j["max_seg_len"] = max_seg_len;
  j["lambda"] = lambda;
  j["cutoff"] = cutoff;
  j["bigram_cutoff"] = bigram_cutoff;
  j["tol"] = tol;
  j["max_iters"] = max_iters;
  j["lbfgs_memory"] = lbfgs_memory;
  j["seed"] = seed;
  j["jobs"] = jobs;
  if (!bins.empty()) j["bins"] = bins;
  return j.dump();
}

Model::Model(RunConfig config, FeatureSpace space)
    : config_(std::move(config)), space_(std::move(space)) {}

std::unique_ptr<Model> Model::train_on(const std::vector<CorpusItem>& corpus,
                                       const RunConfig& config,
                                       TrainLog* log) {
  config.validate();
  if (corpus.empty()) throw InputError("no pieces found in training corpus");
  auto model = std::unique_ptr<Model>(
      new Model(config, FeatureSpace{FeatureConfig{config.make_bins()}}));

  std::vector<ChordLabel> labels =
      build_label_set(LabelSetConfig::from_preset(config.preset));
  std::unordered_map<std::string, int> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    label_index.emplace(label_to_string(labels[i]), static_cast<int>(i));
  std::vector<ChordTones> tones;
  tones.reserve(labels.size());
  for (const ChordLabel& y : labels) tones.push_back(chord_tones(y));

  // Pass 1: count feature instances over the gold segmentations and label
  // bigrams, then keep only those above the cutoffs.
  std::vector<std::unique_ptr<PieceExtractor>> extractors(corpus.size());
  std::vector<LabeledSegmentation> golds(corpus.size());
  std::vector<const Piece*> pieces(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusItem& item = corpus[i];
    if (!item.has_gold)
      throw InputError("piece '" + item.piece.id +
                       "' has no gold annotation; cannot train on it");
    validate_annotation(item.piece, item.gold, "gold annotation");
    pieces[i] = &item.piece;
    extractors[i] = std::make_unique<PieceExtractor>(
        item.piece, model->space_, config.max_seg_len);
    LabeledSegmentation& sy = golds[i];
    for (const AnnSegment& s : item.gold) {
      if (s.seg.length() > config.max_seg_len)
        throw RunError("piece '" + item.piece.id + "': gold segment at " +
                       item.piece.events[s.seg.first].start.str() +
                       " spans " + std::to_string(s.seg.length()) +
                       " events, more than the max segment length " +
                       std::to_string(config.max_seg_len));
      auto it = label_index.find(label_to_string(s.label));
      if (it == label_index.end())
        throw RunError("piece '" + item.piece.id + "': gold label '" +
                       label_to_string(s.label) + "' is not in preset '" +
                       config.preset + "'");
      sy.items.push_back({s.seg, it->second});
    }
    const ChordLabel nochord{0, Mode::nochord, Added::none};
    const ChordLabel* prev = &nochord;
    for (const LabeledSegment& ls : sy.items) {
      const ChordLabel& y = labels[ls.label];
      extractors[i]->segment_vector(ls.seg, y, tones[ls.label],
                                    model->seg_registry_);
      transition_vector(y, *prev, model->trans_registry_);
      prev = &y;
    }
  }
  model->seg_registry_.prune_and_freeze(config.cutoff);
  model->trans_registry_.prune_and_freeze(config.effective_bigram_cutoff());

  model->engine_ = std::make_unique<Engine>(
      labels, model->space_, model->seg_registry_, model->trans_registry_);

  std::vector<TrainContext> data = build_train_contexts(
      *model->engine_, pieces, golds, config.max_seg_len, &extractors);

  ModelParams init;
  init.max_seg_len = config.max_seg_len;
  init.lambda = config.lambda;
  TrainOptions opts;
  opts.tol = config.tol;
  opts.max_iters = config.max_iters;
  opts.lbfgs_memory = config.lbfgs_memory;
  opts.jobs = config.jobs;
  model->params_ = train(*model->engine_, data, std::move(init), opts, log);
  return model;
}

std::unique_ptr<Model> Model::load_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw InputError("malformed model JSON");
  RunConfig config;
  if (j.contains("label_config"))
    config.preset = j["label_config"].get<std::string>();
  if (j.contains("L")) config.max_seg_len = j["L"].get<int>();
  if (j.contains("lambda")) config.lambda = j["lambda"].get<double>();
  if (j.contains("bins")) config.bins = j["bins"].get<std::vector<double>>();
  config.validate();

  auto model = std::unique_ptr<Model>(
      new Model(config, FeatureSpace{FeatureConfig{config.make_bins()}}));
  if (!j.contains("registry") || !j.contains("transition_registry") ||
      !j.contains("w") || !j.contains("u"))
    throw InputError(
        "model JSON needs registry, transition_registry, w and u");
  model->seg_registry_ = FeatureRegistry::from_names(
      j["registry"].get<std::vector<std::string>>());
  model->trans_registry_ = FeatureRegistry::from_names(
      j["transition_registry"].get<std::vector<std::string>>());
  model->params_.w = j["w"].get<std::vector<double>>();
  model->params_.u = j["u"].get<std::vector<double>>();
  model->params_.max_seg_len = config.max_seg_len;
  model->params_.lambda = config.lambda;
  if (model->params_.w.size() != model->seg_registry_.size())
    throw InputError("model JSON: w has " +
                     std::to_string(model->params_.w.size()) +
                     " weights for " +
                     std::to_string(model->seg_registry_.size()) +
                     " registry entries");
  if (model->params_.u.size() != model->trans_registry_.size())
    throw InputError("model JSON: u has " +
                     std::to_string(model->params_.u.size()) +
                     " weights for " +
                     std::to_string(model->trans_registry_.size()) +
                     " transition registry entries");
  model->engine_ = std::make_unique<Engine>(
      build_label_set(LabelSetConfig::from_preset(config.preset)),
      model->space_, model->seg_registry_, model->trans_registry_);
  return model;
}

std::unique_ptr<Model> Model::load_file(const std::filesystem::path& path) {
  return load_json(read_file(path));
}

std::string Model::to_json() const {
  json j;
  j["format"] = "chordlab-model";
  j["label_config"] = config_.preset;
  j["L"] = config_.max_seg_len;
  j["lambda"] = config_.lambda;
  if (!config_.bins.empty()) j["bins"] = config_.bins;
  j["registry"] = seg_registry_.names();
  j["transition_registry"] = trans_registry_.names();
  j["w"] = params_.w;
  j["u"] = params_.u;
  return j.dump(1);
}

void Model::save_file(const std::filesystem::path& path) const {
  write_file(path, to_json() + "\n");
}

LabeledSegmentation Model::to_labeled(const Piece& piece,
                                      const Annotation& ann) const {
  validate_annotation(piece, ann, "annotation");
  const auto& labels = engine_->labels();
  LabeledSegmentation sy;
  for (const AnnSegment& s : ann) {
    int idx = -1;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == s.label) {
        idx = static_cast<int>(i);
        break;
      }
    if (idx < 0)
      throw RunError("piece '" + piece.id + "': label '" +
                     label_to_string(s.label) + "' is not in preset '" +
                     config_.preset + "'");
    sy.items.push_back({s.seg, idx});
  }
  return sy;
}

Annotation Model::predict(const Piece& piece) const {
  return predict_full(piece, PredictOptions{}).annotation;
}

PredictResult Model::predict_full(const Piece& piece,
                                  const PredictOptions& options) const {
  PieceExtractor extractor(piece, space_, config_.max_seg_len);
  PieceLattice lattice(*engine_, extractor);
  InferenceResult inf = engine_->viterbi(lattice, params_);

  PredictResult out;
  out.score = inf.score;
  out.segment_scores = inf.segment_scores;
  for (const LabeledSegment& it : inf.best.items)
    out.annotation.push_back({it.seg, engine_->labels()[it.label]});

  if (options.resolve_sevenths) {
    out.sevenths.resize(out.annotation.size());
    for (std::size_t k = 0; k < out.annotation.size(); ++k) {
      const AnnSegment& s = out.annotation[k];
      if (s.label.added != Added::seventh) continue;
      const ChordTones tones = chord_tones(s.label);
      std::vector<FigurationVerdict> fig =
          extractor.figuration(s.seg, tones);
      std::vector<int> fig_notes;
      for (const auto& v : fig) fig_notes.push_back(v.note);
      std::vector<int> pcs;
      for (int n : extractor.analysis(s.seg).notes()) {
        if (std::binary_search(fig_notes.begin(), fig_notes.end(), n))
          continue;
        pcs.push_back(((piece.notes[n].pitch % 12) + 12) % 12);
      }
      try {
        out.sevenths[k] = seventh_type(s.label, pcs);
      } catch (const RunError&) {
        // decoded an add7 label without a sounding seventh; leave unset
      }
    }
  }

  if (options.dump_figuration) {
    for (std::size_t k = 0; k < out.annotation.size(); ++k) {
      const AnnSegment& s = out.annotation[k];
      const ChordTones tones = chord_tones(s.label);
      for (const FigurationVerdict& v : extractor.figuration(s.seg, tones)) {
        json line;
        line["piece"] = piece.id;
        line["segment"] = k;
        line["label"] = label_to_string(s.label);
        line["note"] = v.note;
        line["pitch"] = piece.notes[v.note].pitch;
        line["onset"] = piece.notes[v.note].onset.str();
        line["kind"] = fig_kind_name(v.kind);
        json anchors = json::array();
        for (int a = 0; a < v.anchor_count; ++a) anchors.push_back(v.anchors[a]);
        line["anchors"] = std::move(anchors);
        out.figuration_lines.push_back(line.dump());
      }
    }
  }

  if (options.dump_features) {
    for (std::size_t k = 0; k < out.annotation.size(); ++k) {
      const AnnSegment& s = out.annotation[k];
      SparseFeatureVector f = extractor.segment_vector(
          s.seg, s.label, chord_tones(s.label), engine_->seg_registry());
      json feats = json::object();
      for (const auto& [idx, value] : f.items)
        feats[engine_->seg_registry().name(idx)] = value;
      json line;
      line["piece"] = piece.id;
      line["segment"] = k;
      line["label"] = label_to_string(s.label);
      line["score"] = inf.segment_scores[k];
      line["features"] = std::move(feats);
      out.feature_lines.push_back(line.dump());
    }
  }
  return out;
}

namespace {

CvMeasures measures_from(const EvalCounts& counts) {
  EvalReport r = EvalReport::from_counts(counts);
  return {r.acc_e, r.p_s, r.r_s, r.f_s};
}

}  // namespace

CvReport cross_validate(const std::vector<CorpusItem>& corpus,
                        const RunConfig& config, const CvOptions& options) {
  config.validate();
  const int n = static_cast<int>(corpus.size());
  const int k = options.leave_one_out ? n : options.folds;
  if (k < 2) throw InputError("cross-validation needs at least 2 folds");
  if (options.repeats < 1) throw InputError("repeats must be >= 1");
  if (n < k)
    throw InputError("cross-validation needs at least as many pieces (" +
                     std::to_string(n) + ") as folds (" + std::to_string(k) +
                     ")");
  for (const CorpusItem& item : corpus)
    if (!item.has_gold)
      throw InputError("piece '" + item.piece.id +
                       "' has no gold annotation; cannot cross-validate");

  CvReport report;
  report.folds = k;
  report.repeats = options.repeats;
  std::mt19937_64 rng(config.seed);

  for (int rep = 0; rep < options.repeats; ++rep) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    // Fold sizes differ by at most one; the first n % k folds are larger.
    std::vector<std::vector<int>> folds(k);
    {
      int base = n / k, extra = n % k, pos = 0;
      for (int f = 0; f < k; ++f) {
        int size = base + (f < extra ? 1 : 0);
        for (int s = 0; s < size; ++s) folds[f].push_back(perm[pos++]);
      }
    }

    EvalCounts full_counts, root_counts;
    for (int f = 0; f < k; ++f) {
      std::vector<char> in_test(n, 0);
      for (int idx : folds[f]) in_test[idx] = 1;
      std::vector<CorpusItem> train_set;
      for (int i = 0; i < n; ++i)
        if (!in_test[i]) train_set.push_back(corpus[i]);

      std::unique_ptr<Model> model = Model::train_on(train_set, config);

      std::vector<Annotation> preds(folds[f].size());
      parallel_for(static_cast<int>(folds[f].size()), config.jobs,
                   [&](int t) {
                     preds[t] = model->predict(corpus[folds[f][t]].piece);
                   });
      for (std::size_t t = 0; t < folds[f].size(); ++t) {
        const CorpusItem& item = corpus[folds[f][t]];
        full_counts +=
            evaluate_piece(item.piece, preds[t], item.gold, EvalMode::full);
        root_counts +=
            evaluate_piece(item.piece, preds[t], item.gold, EvalMode::root);
      }
    }
    report.full_runs.push_back(measures_from(full_counts));
    report.root_runs.push_back(measures_from(root_counts));
  }

  auto aggregate = [&](const std::vector<CvMeasures>& runs, CvMeasures* mean,
                       CvMeasures* stddev) {
    const double r = static_cast<double>(runs.size());
    for (const CvMeasures& m : runs) {
      mean->acc_e += m.acc_e / r;
      mean->p_s += m.p_s / r;
      mean->r_s += m.r_s / r;
      mean->f_s += m.f_s / r;
    }
    if (runs.size() > 1) {
      double va = 0, vp = 0, vr = 0, vf = 0;
      for (const CvMeasures& m : runs) {
        va += (m.acc_e - mean->acc_e) * (m.acc_e - mean->acc_e);
        vp += (m.p_s - mean->p_s) * (m.p_s - mean->p_s);
        vr += (m.r_s - mean->r_s) * (m.r_s - mean->r_s);
        vf += (m.f_s - mean->f_s) * (m.f_s - mean->f_s);
      }
      stddev->acc_e = std::sqrt(va / (r - 1));
      stddev->p_s = std::sqrt(vp / (r - 1));
      stddev->r_s = std::sqrt(vr / (r - 1));
      stddev->f_s = std::sqrt(vf / (r - 1));
    }
  };
  aggregate(report.full_runs, &report.full_mean, &report.full_std);
  aggregate(report.root_runs, &report.root_mean, &report.root_std);
  report.has_std = options.repeats > 1;
  return report;
}

CorpusEval evaluate_predictions(const std::vector<CorpusItem>& corpus,
                                const std::vector<Annotation>& predictions) {
  if (corpus.size() != predictions.size())
    throw InputError("corpus and prediction counts differ");
  EvalCounts full_counts, root_counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].has_gold)
      throw InputError("piece '" + corpus[i].piece.id +
                       "' has no gold annotation; cannot evaluate");
    full_counts += evaluate_piece(corpus[i].piece, predictions[i],
                                  corpus[i].gold, EvalMode::full);
    root_counts += evaluate_piece(corpus[i].piece, predictions[i],
                                  corpus[i].gold, EvalMode::root);
  }
  CorpusEval out;
  out.full = EvalReport::from_counts(full_counts);
  out.root = EvalReport::from_counts(root_counts);
  out.pieces = static_cast<int>(corpus.size());
  return out;
}

namespace {

json report_json(const EvalReport& r) {
  json j;
  j["acc_e"] = r.acc_e;
  j["p_s"] = r.p_s;
  j["r_s"] = r.r_s;
  j["f_s"] = r.f_s;
  j["events_total"] = r.counts.events_total;
  j["events_correct"] = r.counts.events_correct;
  j["segments_predicted"] = r.counts.segs_pred;
  j["segments_gold"] = r.counts.segs_gold;
  j["segments_matched"] = r.counts.segs_matched;
  return j;
}

json measures_json(const CvMeasures& m) {
  return json{{"acc_e", m.acc_e},
              {"p_s", m.p_s},
              {"r_s", m.r_s},
              {"f_s", m.f_s}};
}

void table_row(std::ostringstream& os, const std::string& name, double acc,
               double p, double r, double f) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-8s %7.2f %7.2f %7.2f %7.2f\n",
                name.c_str(), 100.0 * acc, 100.0 * p, 100.0 * r, 100.0 * f);
  os << buf;
}

}  // namespace

std::string corpus_eval_to_json(const CorpusEval& eval) {
  json j;
  j["pieces"] = eval.pieces;
  j["full"] = report_json(eval.full);
  j["root"] = report_json(eval.root);
  return j.dump(2);
}

std::string cv_report_to_json(const CvReport& report) {
  json j;
  j["folds"] = report.folds;
  j["repeats"] = report.repeats;
  json full_runs = json::array(), root_runs = json::array();
  for (const CvMeasures& m : report.full_runs)
    full_runs.push_back(measures_json(m));
  for (const CvMeasures& m : report.root_runs)
    root_runs.push_back(measures_json(m));
  j["full"] = {{"runs", full_runs}, {"mean", measures_json(report.full_mean)}};
  j["root"] = {{"runs", root_runs}, {"mean", measures_json(report.root_mean)}};
  if (report.has_std) {
    j["full"]["std"] = measures_json(report.full_std);
    j["root"]["std"] = measures_json(report.root_std);
  }
  return j.dump(2);
}

std::string eval_table(const CorpusEval& eval) {
  std::ostringstream os;
  os << "         Acc_E     P_S     R_S     F_S\n";
  table_row(os, "full", eval.full.acc_e, eval.full.p_s, eval.full.r_s,
            eval.full.f_s);
  table_row(os, "root", eval.root.acc_e, eval.root.p_s, eval.root.r_s,
            eval.root.f_s);
  return os.str();
}

std::string cv_table(const CvReport& report) {
  std::ostringstream os;
  os << "         Acc_E     P_S     R_S     F_S\n";
  table_row(os, "full", report.full_mean.acc_e, report.full_mean.p_s,
            report.full_mean.r_s, report.full_mean.f_s);
  if (report.has_std)
    table_row(os, "  std", report.full_std.acc_e, report.full_std.p_s,
              report.full_std.r_s, report.full_std.f_s);
  table_row(os, "root", report.root_mean.acc_e, report.root_mean.p_s,
            report.root_mean.r_s, report.root_mean.f_s);
  if (report.has_std)
    table_row(os, "  std", report.root_std.acc_e, report.root_std.p_s,
              report.root_std.r_s, report.root_std.f_s);
  return os.str();
}

}  // namespace chordlab
