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

#include "chordlab/features.hpp"

#include <algorithm>
#include <cstdio>

namespace chordlab {

namespace {

int pc(int x) { return ((x % 12) + 12) % 12; }

std::string fmt_bound(double b) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", b);
  return buf;
}

constexpr const char* kRealFamNames[kRealFamCount] = {
    "purity.plain",
    "purity.dur",
    "purity.acc",
    "cov.triad.root.dur",
    "cov.triad.third.dur",
    "cov.triad.fifth.dur",
    "cov.triad.root.acc",
    "cov.triad.third.acc",
    "cov.triad.fifth.acc",
    "cov.triad.added.dur",
    "cov.triad.added.acc",
    "cov.triad.root.evt",
    "cov.triad.third.evt",
    "cov.triad.fifth.evt",
    "cov.triad.added.evt",
    "cov.aug6.bass.dur",
    "cov.aug6.fifth.dur",
    "cov.aug6.bass.acc",
    "cov.aug6.fifth.acc",
    "cov.aug6.bass.evt",
    "cov.sp.root.dur",
    "cov.sp.seventh.dur",
    "cov.sp.root.acc",
    "cov.sp.seventh.acc",
    "cov.sp.root.evt",
    "bass.triad.root.dur",
    "bass.triad.third.dur",
    "bass.triad.fifth.dur",
    "bass.triad.added.dur",
    "bass.triad.root.acc",
    "bass.triad.third.acc",
    "bass.triad.fifth.acc",
    "bass.triad.added.acc",
    "bass.aug6.bass.dur",
    "bass.aug6.fifth.dur",
    "bass.sp.root.dur",
    "bass.sp.seventh.dur",
    "accent.first",
};

constexpr const char* kBoolFeatNames[kBoolFeatCount] = {
    "cov.triad.root",
    "cov.triad.third",
    "cov.triad.fifth",
    "cov.triad.all",
    "cov.triad.added.present",
    "cov.triad.added.absent",
    "cov.triad.added.longer",
    "cov.aug6.bass",
    "cov.aug6.third",
    "cov.aug6.sixth",
    "cov.aug6.fifth",
    "cov.sp.root",
    "cov.sp.repl",
    "cov.sp.fifth",
    "cov.sp.seventh.present",
    "cov.sp.seventh.absent",
    "cov.sp.seventh.longer",
    "bass.triad.first.root",
    "bass.triad.first.third",
    "bass.triad.first.fifth",
    "bass.triad.first.added",
    "bass.triad.min.root",
    "bass.triad.min.third",
    "bass.triad.min.fifth",
    "bass.triad.min.added",
    "bass.aug6.first.bass",
    "bass.aug6.first.third",
    "bass.aug6.first.sixth",
    "bass.aug6.first.fifth",
    "bass.aug6.min.bass",
    "bass.aug6.min.third",
    "bass.aug6.min.sixth",
    "bass.aug6.min.fifth",
    "bass.sp.first.root",
    "bass.sp.first.repl",
    "bass.sp.first.fifth",
    "bass.sp.first.seventh",
    "bass.sp.min.root",
    "bass.sp.min.repl",
    "bass.sp.min.fifth",
    "bass.sp.min.seventh",
};

}  // namespace

Bins Bins::default_bins() {
  Bins b;
  for (int k = 0; k <= 10; ++k) b.bounds.push_back(k / 10.0);
  return b;
}

int Bins::discretize(double value) const {
  // Ratios of partial sums may drift past the endpoints by rounding only.
  if (value < -1e-9 || value > 1.0 + 1e-9)
    throw std::invalid_argument("feature value " + std::to_string(value) +
                                " outside [0, 1]");
  if (value <= 0.0) return 0;
  if (value >= 1.0) return bin_count() + 1;
  for (int k = 1; k <= bin_count(); ++k)
    if (value <= bounds[k]) return k;
  return bin_count();  // unreachable for value < 1
}

std::string Bins::instance_suffix(int instance) const {
  if (instance == 0) return "/eq0";
  if (instance == bin_count() + 1) return "/eq1";
  return "/bin(" + fmt_bound(bounds[instance - 1]) + "," +
         fmt_bound(bounds[instance]) + "]";
}

FeatureSpace::FeatureSpace(FeatureConfig cfg) : cfg_(std::move(cfg)) {
  bins_per_fam_ = cfg_.bins.instance_count();
  real_names_.reserve(kRealFamCount * 2 * bins_per_fam_);
  for (int fam = 0; fam < kRealFamCount; ++fam)
    for (int fig = 0; fig < 2; ++fig)
      for (int inst = 0; inst < bins_per_fam_; ++inst)
        real_names_.push_back(std::string(kRealFamNames[fam]) +
                              (fig ? ".fig" : "") +
                              cfg_.bins.instance_suffix(inst));
  bool_names_.reserve(kBoolFeatCount * 2);
  for (int feat = 0; feat < kBoolFeatCount; ++feat)
    for (int fig = 0; fig < 2; ++fig)
      bool_names_.push_back(std::string(kBoolFeatNames[feat]) +
                            (fig ? ".fig" : ""));
}

int FeatureRegistry::touch(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    if (!frozen_) ++counts_[it->second];
    return it->second;
  }
  if (frozen_) return -1;
  int idx = static_cast<int>(names_.size());
  index_.emplace(name, idx);
  names_.push_back(name);
  counts_.push_back(1);
  return idx;
}

int FeatureRegistry::lookup(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void FeatureRegistry::prune_and_freeze(long min_count) {
  std::vector<std::string> kept_names;
  std::vector<long> kept_counts;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (counts_[i] >= min_count) {
      kept_names.push_back(std::move(names_[i]));
      kept_counts.push_back(counts_[i]);
    }
  }
  names_ = std::move(kept_names);
  counts_ = std::move(kept_counts);
  index_.clear();
  for (std::size_t i = 0; i < names_.size(); ++i)
    index_.emplace(names_[i], static_cast<int>(i));
  frozen_ = true;
}

FeatureRegistry FeatureRegistry::from_names(
    const std::vector<std::string>& names) {
  FeatureRegistry reg;
  for (const auto& n : names) {
    if (reg.lookup(n) >= 0)
      throw InputError("duplicate feature name '" + n + "' in registry");
    reg.touch(n);
  }
  reg.freeze();
  return reg;
}

void SparseFeatureVector::finish() {
  std::sort(items.begin(), items.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (out > 0 && items[out - 1].first == items[i].first)
      items[out - 1].second += items[i].second;
    else
      items[out++] = items[i];
  }
  items.resize(out);
}

double SparseFeatureVector::dot(const std::vector<double>& w) const {
  double s = 0.0;
  for (const auto& [idx, v] : items) s += w[idx] * v;
  return s;
}

void SparseFeatureVector::add_scaled_to(double coef,
                                        std::vector<double>* dense) const {
  for (const auto& [idx, v] : items) (*dense)[idx] += coef * v;
}

std::string mode_added_token(const ChordLabel& y) {
  return mode_name(y.mode) + "." + added_name(y.added);
}

std::string transition_instance_name(const ChordLabel& y,
                                     const ChordLabel& prev) {
  if (prev.mode == Mode::nochord) return "initial/" + mode_added_token(y);
  return "bigram/" + mode_added_token(y) + "|" + mode_added_token(prev) + "|" +
         std::to_string(pc(y.root - prev.root));
}

SparseFeatureVector transition_vector(const ChordLabel& y,
                                      const ChordLabel& prev,
                                      FeatureRegistry& registry) {
  SparseFeatureVector out;
  int idx = registry.touch(transition_instance_name(y, prev));
  if (idx >= 0) out.add(idx, 1.0);
  out.finish();
  return out;
}

PieceExtractor::PieceExtractor(const Piece& piece, const FeatureSpace& space,
                               int max_seg_len)
    : piece_(piece), space_(space), max_len_(max_seg_len) {
  if (max_len_ < 1) throw InputError("max segment length must be positive");
  const int n = piece_.num_events();
  analyses_.resize(static_cast<std::size_t>(n) * max_len_);
  for (int first = 0; first < n; ++first) {
    const int longest = std::min(max_len_, n - first);
    for (int len = 1; len <= longest; ++len)
      analyses_[static_cast<std::size_t>(first) * max_len_ + len - 1] =
          std::make_unique<SegmentFigAnalysis>(
              piece_, Segment{first, first + len - 1});
  }
}

const SegmentFigAnalysis& PieceExtractor::analysis(Segment seg) const {
  const int len = seg.length();
  if (seg.first < 0 || seg.last >= piece_.num_events() || len < 1 ||
      len > max_len_)
    throw RunError("segment [" + std::to_string(seg.first) + ", " +
                   std::to_string(seg.last) + "] invalid for piece '" +
                   piece_.id + "' with max segment length " +
                   std::to_string(max_len_));
  return *analyses_[static_cast<std::size_t>(seg.first) * max_len_ + len - 1];
}

std::vector<FigurationVerdict> PieceExtractor::figuration(
    Segment seg, const ChordTones& tones) const {
  return analysis(seg).verdicts(tones);
}

SparseFeatureVector PieceExtractor::segment_vector(
    Segment seg, const ChordLabel& y, FeatureRegistry& registry) const {
  return segment_vector(seg, y, chord_tones(y), registry);
}

SparseFeatureVector PieceExtractor::segment_vector(
    Segment seg, const ChordLabel& y, const ChordTones& tones,
    FeatureRegistry& registry) const {
  SparseFeatureVector out;
  const Bins& bins = space_.bins();
  auto emit_real = [&](int fam, bool fig, double value) {
    int idx = registry.touch(space_.real_name(fam, fig, bins.discretize(value)));
    if (idx >= 0) out.add(idx, 1.0);
  };
  auto emit_bool = [&](int feat, bool fig) {
    int idx = registry.touch(space_.bool_name(feat, fig));
    if (idx >= 0) out.add(idx, 1.0);
  };

  const SegmentFigAnalysis& an = analysis(seg);
  std::vector<int> fig_notes;
  for (const FigurationVerdict& v : an.verdicts(tones))
    fig_notes.push_back(v.note);
  auto is_fig = [&](int n) {
    return std::binary_search(fig_notes.begin(), fig_notes.end(), n);
  };

  const std::vector<int>& notes = an.notes();
  auto note_pc = [&](int n) { return pc(piece_.notes[n].pitch); };

  // Event range of the segment.
  const Event& e1 = piece_.events[seg.first];

  // Each block below runs twice: pass 0 over s.Notes / s.Events, pass 1 over
  // the figuration-controlled restriction.
  for (int fg = 0; fg < 2; ++fg) {
    const bool fig_pass = fg == 1;

    // --- segment purity ---
    double cnt = 0, cnt_h = 0, dur = 0, dur_h = 0, acw = 0, acw_h = 0;
    for (int n : notes) {
      if (fig_pass && is_fig(n)) continue;
      const double len = piece_.note_len(n).to_double();
      const double acc = piece_.note_acc(n);
      cnt += 1;
      dur += len;
      acw += acc;
      if (tones.contains(note_pc(n))) {
        cnt_h += 1;
        dur_h += len;
        acw_h += acc;
      }
    }
    if (cnt > 0) emit_real(kPurityPlain, fig_pass, cnt_h / cnt);
    if (dur > 0) emit_real(kPurityDur, fig_pass, dur_h / dur);
    if (acw > 0) emit_real(kPurityAcc, fig_pass, acw_h / acw);

    // Note-set helpers for the current pass.
    auto class_present = [&](int tone) {
      if (tone < 0) return false;
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        if (note_pc(n) == tone) return true;
      }
      return false;
    };
    auto added_present = [&]() {
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        if (tones.added_contains(note_pc(n))) return true;
      }
      return false;
    };
    auto class_weights = [&](int tone, bool use_added, double* out_dur,
                             double* out_acc, Rational* out_rdur) {
      *out_dur = 0;
      *out_acc = 0;
      *out_rdur = Rational(0);
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        const int p = note_pc(n);
        const bool member = use_added ? tones.added_contains(p) : p == tone;
        if (!member) continue;
        *out_dur += piece_.note_len(n).to_double();
        *out_acc += piece_.note_acc(n);
        *out_rdur += piece_.note_len(n);
      }
    };

    // Event helpers: class membership and bass under the current pass.
    auto ev_has_class = [&](const Event& e, int tone, bool use_added) {
      if (!use_added && tone < 0) return false;
      for (const EventPitch& p : e.pitches) {
        if (fig_pass && is_fig(p.note)) continue;
        const int q = pc(p.pitch);
        if (use_added ? tones.added_contains(q) : q == tone) return true;
      }
      return false;
    };
    auto ev_bass_is_fig = [&](const Event& e) {
      if (e.empty()) return false;
      const int bottom = e.pitches.front().pitch;
      for (const EventPitch& p : e.pitches) {
        if (p.pitch != bottom) break;  // sorted by pitch
        if (!is_fig(p.note)) return false;
      }
      return true;
    };
    // In the figuration-controlled pass, events whose bass note is
    // figuration are dropped from every bass formula.
    auto ev_included = [&](const Event& e) {
      return !(fig_pass && ev_bass_is_fig(e));
    };

    // --- chord coverage ---
    if (y.is_triad()) {
      const bool root_p = class_present(tones.root);
      const bool third_p = class_present(tones.third);
      const bool fifth_p = class_present(tones.fifth);
      const bool added_p = y.has_added() && added_present();
      if (root_p) emit_bool(kCovTriadRoot, fig_pass);
      if (third_p) emit_bool(kCovTriadThird, fig_pass);
      if (fifth_p) emit_bool(kCovTriadFifth, fig_pass);
      const bool all_p =
          root_p && third_p && fifth_p && (!y.has_added() || added_p);
      if (all_p) emit_bool(kCovTriadAll, fig_pass);
      if (y.has_added()) {
        if (added_p)
          emit_bool(kCovTriadAddedPresent, fig_pass);
        else
          emit_bool(kCovTriadAddedAbsent, fig_pass);
      }

      double den_dur = 0, den_acc = 0;
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        den_dur += piece_.note_len(n).to_double();
        den_acc += piece_.note_acc(n);
      }
      double d, a;
      Rational rd;
      class_weights(tones.root, false, &d, &a, &rd);
      const Rational rlen = rd;
      if (den_dur > 0) emit_real(kCovTriadRootDur, fig_pass, d / den_dur);
      if (den_acc > 0) emit_real(kCovTriadRootAcc, fig_pass, a / den_acc);
      class_weights(tones.third, false, &d, &a, &rd);
      if (den_dur > 0) emit_real(kCovTriadThirdDur, fig_pass, d / den_dur);
      if (den_acc > 0) emit_real(kCovTriadThirdAcc, fig_pass, a / den_acc);
      class_weights(tones.fifth, false, &d, &a, &rd);
      if (den_dur > 0) emit_real(kCovTriadFifthDur, fig_pass, d / den_dur);
      if (den_acc > 0) emit_real(kCovTriadFifthAcc, fig_pass, a / den_acc);
      class_weights(0, true, &d, &a, &rd);
      const Rational alen = rd;
      const double gate = y.has_added() ? 1.0 : 0.0;
      if (den_dur > 0)
        emit_real(kCovTriadAddedDur, fig_pass, gate * d / den_dur);
      if (den_acc > 0)
        emit_real(kCovTriadAddedAcc, fig_pass, gate * a / den_acc);
      if (y.has_added() && alen > rlen) emit_bool(kCovTriadAddedLonger, fig_pass);

      // Event-time coverage, normalized by the segment's event time.
      double ev_den = 0, ev_root = 0, ev_third = 0, ev_fifth = 0, ev_add = 0;
      for (int ei = seg.first; ei <= seg.last; ++ei) {
        const Event& e = piece_.events[ei];
        const double el = e.len.to_double();
        ev_den += el;
        if (ev_has_class(e, tones.root, false)) ev_root += el;
        if (ev_has_class(e, tones.third, false)) ev_third += el;
        if (ev_has_class(e, tones.fifth, false)) ev_fifth += el;
        if (ev_has_class(e, 0, true)) ev_add += el;
      }
      if (ev_den > 0) {
        emit_real(kCovTriadRootEvt, fig_pass, ev_root / ev_den);
        emit_real(kCovTriadThirdEvt, fig_pass, ev_third / ev_den);
        emit_real(kCovTriadFifthEvt, fig_pass, ev_fifth / ev_den);
        emit_real(kCovTriadAddedEvt, fig_pass, gate * ev_add / ev_den);
      }
    } else if (y.is_aug6()) {
      const bool fg_chord = y.is_fr_or_ger();
      if (class_present(tones.root)) emit_bool(kCovAug6Bass, fig_pass);
      if (class_present(tones.third)) emit_bool(kCovAug6Third, fig_pass);
      if (class_present(tones.sixth)) emit_bool(kCovAug6Sixth, fig_pass);
      if (fg_chord && class_present(tones.fifth))
        emit_bool(kCovAug6Fifth, fig_pass);

      double den_dur = 0, den_acc = 0;
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        den_dur += piece_.note_len(n).to_double();
        den_acc += piece_.note_acc(n);
      }
      double d, a;
      Rational rd;
      class_weights(tones.root, false, &d, &a, &rd);
      if (den_dur > 0) emit_real(kCovAug6BassDur, fig_pass, d / den_dur);
      if (den_acc > 0) emit_real(kCovAug6BassAcc, fig_pass, a / den_acc);
      class_weights(tones.fifth, false, &d, &a, &rd);
      const double gate = fg_chord ? 1.0 : 0.0;
      if (den_dur > 0) emit_real(kCovAug6FifthDur, fig_pass, gate * d / den_dur);
      if (den_acc > 0) emit_real(kCovAug6FifthAcc, fig_pass, gate * a / den_acc);

      double ev_den = 0, ev_bass = 0;
      for (int ei = seg.first; ei <= seg.last; ++ei) {
        const Event& e = piece_.events[ei];
        ev_den += e.len.to_double();
        if (ev_has_class(e, tones.root, false)) ev_bass += e.len.to_double();
      }
      if (ev_den > 0) emit_real(kCovAug6BassEvt, fig_pass, ev_bass / ev_den);
    } else if (y.is_sus_pow()) {
      const bool is7 = y.mode == Mode::sus4_7;
      if (class_present(tones.root)) emit_bool(kCovSpRoot, fig_pass);
      if (class_present(tones.replacement)) emit_bool(kCovSpRepl, fig_pass);
      if (class_present(tones.fifth)) emit_bool(kCovSpFifth, fig_pass);
      if (is7) {
        if (added_present())
          emit_bool(kCovSpSeventhPresent, fig_pass);
        else
          emit_bool(kCovSpSeventhAbsent, fig_pass);
      }

      double den_dur = 0, den_acc = 0;
      for (int n : notes) {
        if (fig_pass && is_fig(n)) continue;
        den_dur += piece_.note_len(n).to_double();
        den_acc += piece_.note_acc(n);
      }
      double d, a;
      Rational rd;
      class_weights(tones.root, false, &d, &a, &rd);
      const Rational rlen = rd;
      if (den_dur > 0) emit_real(kCovSpRootDur, fig_pass, d / den_dur);
      if (den_acc > 0) emit_real(kCovSpRootAcc, fig_pass, a / den_acc);
      class_weights(0, true, &d, &a, &rd);
      const Rational alen = rd;
      const double gate = is7 ? 1.0 : 0.0;
      if (den_dur > 0) emit_real(kCovSpSeventhDur, fig_pass, gate * d / den_dur);
      if (den_acc > 0) emit_real(kCovSpSeventhAcc, fig_pass, gate * a / den_acc);
      if (is7 && alen > rlen) emit_bool(kCovSpSeventhLonger, fig_pass);

      double ev_den = 0, ev_root = 0;
      for (int ei = seg.first; ei <= seg.last; ++ei) {
        const Event& e = piece_.events[ei];
        ev_den += e.len.to_double();
        if (ev_has_class(e, tones.root, false)) ev_root += e.len.to_double();
      }
      if (ev_den > 0) emit_real(kCovSpRootEvt, fig_pass, ev_root / ev_den);
    }

    // --- bass ---
    const bool e1_usable = !e1.empty() && ev_included(e1);
    const int e1_bass = e1_usable ? pc(*e1.bass()) : -1;
    int min_bass_pitch = 128;
    for (int ei = seg.first; ei <= seg.last; ++ei) {
      const Event& e = piece_.events[ei];
      if (e.empty() || !ev_included(e)) continue;
      min_bass_pitch = std::min(min_bass_pitch, *e.bass());
    }
    const int min_bass = min_bass_pitch < 128 ? pc(min_bass_pitch) : -1;

    double bden_dur = 0, bden_acc = 0;
    auto bass_weights = [&](int tone, bool use_added, double* wd, double* wa) {
      *wd = 0;
      *wa = 0;
      for (int ei = seg.first; ei <= seg.last; ++ei) {
        const Event& e = piece_.events[ei];
        if (!ev_included(e)) continue;
        if (e.empty()) continue;
        const int b = pc(*e.bass());
        const bool member = use_added ? tones.added_contains(b)
                                      : (tone >= 0 && b == tone);
        if (!member) continue;
        *wd += e.len.to_double();
        *wa += e.acc;
      }
    };
    for (int ei = seg.first; ei <= seg.last; ++ei) {
      const Event& e = piece_.events[ei];
      if (!ev_included(e)) continue;
      bden_dur += e.len.to_double();
      bden_acc += e.acc;
    }

    if (y.is_triad()) {
      if (e1_bass == tones.root) emit_bool(kBassTriadFirstRoot, fig_pass);
      if (e1_bass == tones.third) emit_bool(kBassTriadFirstThird, fig_pass);
      if (e1_bass == tones.fifth) emit_bool(kBassTriadFirstFifth, fig_pass);
      if (y.has_added() && e1_bass >= 0 && tones.added_contains(e1_bass))
        emit_bool(kBassTriadFirstAdded, fig_pass);
      if (min_bass >= 0) {
        if (min_bass == tones.root) emit_bool(kBassTriadMinRoot, fig_pass);
        if (min_bass == tones.third) emit_bool(kBassTriadMinThird, fig_pass);
        if (min_bass == tones.fifth) emit_bool(kBassTriadMinFifth, fig_pass);
        if (y.has_added() && tones.added_contains(min_bass))
          emit_bool(kBassTriadMinAdded, fig_pass);
      }
      double wd, wa;
      const double gate = y.has_added() ? 1.0 : 0.0;
      bass_weights(tones.root, false, &wd, &wa);
      if (bden_dur > 0) emit_real(kBassTriadRootDur, fig_pass, wd / bden_dur);
      if (bden_acc > 0) emit_real(kBassTriadRootAcc, fig_pass, wa / bden_acc);
      bass_weights(tones.third, false, &wd, &wa);
      if (bden_dur > 0) emit_real(kBassTriadThirdDur, fig_pass, wd / bden_dur);
      if (bden_acc > 0) emit_real(kBassTriadThirdAcc, fig_pass, wa / bden_acc);
      bass_weights(tones.fifth, false, &wd, &wa);
      if (bden_dur > 0) emit_real(kBassTriadFifthDur, fig_pass, wd / bden_dur);
      if (bden_acc > 0) emit_real(kBassTriadFifthAcc, fig_pass, wa / bden_acc);
      bass_weights(0, true, &wd, &wa);
      if (bden_dur > 0)
        emit_real(kBassTriadAddedDur, fig_pass, gate * wd / bden_dur);
      if (bden_acc > 0)
        emit_real(kBassTriadAddedAcc, fig_pass, gate * wa / bden_acc);
    } else if (y.is_aug6()) {
      const bool fg_chord = y.is_fr_or_ger();
      if (e1_bass == tones.root) emit_bool(kBassAug6FirstBass, fig_pass);
      if (e1_bass == tones.third) emit_bool(kBassAug6FirstThird, fig_pass);
      if (e1_bass == tones.sixth) emit_bool(kBassAug6FirstSixth, fig_pass);
      if (fg_chord && e1_bass >= 0 && e1_bass == tones.fifth)
        emit_bool(kBassAug6FirstFifth, fig_pass);
      if (min_bass >= 0) {
        if (min_bass == tones.root) emit_bool(kBassAug6MinBass, fig_pass);
        if (min_bass == tones.third) emit_bool(kBassAug6MinThird, fig_pass);
        if (min_bass == tones.sixth) emit_bool(kBassAug6MinSixth, fig_pass);
        if (fg_chord && min_bass == tones.fifth)
          emit_bool(kBassAug6MinFifth, fig_pass);
      }
      double wd, wa;
      bass_weights(tones.root, false, &wd, &wa);
      if (bden_dur > 0) emit_real(kBassAug6BassDur, fig_pass, wd / bden_dur);
      bass_weights(tones.fifth, false, &wd, &wa);
      const double gate = fg_chord ? 1.0 : 0.0;
      if (bden_dur > 0)
        emit_real(kBassAug6FifthDur, fig_pass, gate * wd / bden_dur);
    } else if (y.is_sus_pow()) {
      const bool is7 = y.mode == Mode::sus4_7;
      if (e1_bass == tones.root) emit_bool(kBassSpFirstRoot, fig_pass);
      if (e1_bass >= 0 && e1_bass == tones.replacement)
        emit_bool(kBassSpFirstRepl, fig_pass);
      if (e1_bass == tones.fifth) emit_bool(kBassSpFirstFifth, fig_pass);
      if (is7 && e1_bass >= 0 && tones.added_contains(e1_bass))
        emit_bool(kBassSpFirstSeventh, fig_pass);
      if (min_bass >= 0) {
        if (min_bass == tones.root) emit_bool(kBassSpMinRoot, fig_pass);
        if (min_bass == tones.replacement) emit_bool(kBassSpMinRepl, fig_pass);
        if (min_bass == tones.fifth) emit_bool(kBassSpMinFifth, fig_pass);
        if (is7 && tones.added_contains(min_bass))
          emit_bool(kBassSpMinSeventh, fig_pass);
      }
      double wd, wa;
      bass_weights(tones.root, false, &wd, &wa);
      if (bden_dur > 0) emit_real(kBassSpRootDur, fig_pass, wd / bden_dur);
      bass_weights(0, true, &wd, &wa);
      const double gate = is7 ? 1.0 : 0.0;
      if (bden_dur > 0)
        emit_real(kBassSpSeventhDur, fig_pass, gate * wd / bden_dur);
    }
  }

  // --- metrical accent of the segment's first event (no fig variant) ---
  emit_real(kAccentFirst, false, e1.acc);

  out.finish();
  return out;
}

}  // namespace chordlab
