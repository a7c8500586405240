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

#ifndef CHORDLAB_FEATURES_HPP
#define CHORDLAB_FEATURES_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chordlab/chords.hpp"
#include "chordlab/figuration.hpp"
#include "chordlab/music.hpp"

namespace chordlab {

/// Discretization bins for real-valued features in [0, 1]. A value maps to
/// exactly one instance: the zero boundary, the one boundary, or the
/// half-open bin (b[k-1], b[k]] that contains it.
struct Bins {
  std::vector<double> bounds;  // strictly increasing, 0 to 1

  static Bins default_bins();  // 0, 0.1, ..., 0.9, 1.0

  int bin_count() const { return static_cast<int>(bounds.size()) - 1; }
  int instance_count() const { return bin_count() + 2; }

  /// Instance index: 0 = eq0, 1..K = bins, K+1 = eq1.
  int discretize(double value) const;
  std::string instance_suffix(int instance) const;
};

/// Real-valued segment-label feature families (each is discretized; all but
/// the accent family also exist in a figuration-controlled variant).
enum RealFam : int {
  kPurityPlain,
  kPurityDur,
  kPurityAcc,
  kCovTriadRootDur,
  kCovTriadThirdDur,
  kCovTriadFifthDur,
  kCovTriadRootAcc,
  kCovTriadThirdAcc,
  kCovTriadFifthAcc,
  kCovTriadAddedDur,
  kCovTriadAddedAcc,
  kCovTriadRootEvt,
  kCovTriadThirdEvt,
  kCovTriadFifthEvt,
  kCovTriadAddedEvt,
  kCovAug6BassDur,
  kCovAug6FifthDur,
  kCovAug6BassAcc,
  kCovAug6FifthAcc,
  kCovAug6BassEvt,
  kCovSpRootDur,
  kCovSpSeventhDur,
  kCovSpRootAcc,
  kCovSpSeventhAcc,
  kCovSpRootEvt,
  kBassTriadRootDur,
  kBassTriadThirdDur,
  kBassTriadFifthDur,
  kBassTriadAddedDur,
  kBassTriadRootAcc,
  kBassTriadThirdAcc,
  kBassTriadFifthAcc,
  kBassTriadAddedAcc,
  kBassAug6BassDur,
  kBassAug6FifthDur,
  kBassSpRootDur,
  kBassSpSeventhDur,
  kAccentFirst,
  kRealFamCount,
};

/// Boolean segment-label features (all have figuration-controlled twins).
enum BoolFeat : int {
  kCovTriadRoot,
  kCovTriadThird,
  kCovTriadFifth,
  kCovTriadAll,
  kCovTriadAddedPresent,
  kCovTriadAddedAbsent,
  kCovTriadAddedLonger,
  kCovAug6Bass,
  kCovAug6Third,
  kCovAug6Sixth,
  kCovAug6Fifth,
  kCovSpRoot,
  kCovSpRepl,
  kCovSpFifth,
  kCovSpSeventhPresent,
  kCovSpSeventhAbsent,
  kCovSpSeventhLonger,
  kBassTriadFirstRoot,
  kBassTriadFirstThird,
  kBassTriadFirstFifth,
  kBassTriadFirstAdded,
  kBassTriadMinRoot,
  kBassTriadMinThird,
  kBassTriadMinFifth,
  kBassTriadMinAdded,
  kBassAug6FirstBass,
  kBassAug6FirstThird,
  kBassAug6FirstSixth,
  kBassAug6FirstFifth,
  kBassAug6MinBass,
  kBassAug6MinThird,
  kBassAug6MinSixth,
  kBassAug6MinFifth,
  kBassSpFirstRoot,
  kBassSpFirstRepl,
  kBassSpFirstFifth,
  kBassSpFirstSeventh,
  kBassSpMinRoot,
  kBassSpMinRepl,
  kBassSpMinFifth,
  kBassSpMinSeventh,
  kBoolFeatCount,
};

struct FeatureConfig {
  Bins bins = Bins::default_bins();
};

/// Precomposed instance names for every family/bin combination so that
/// extraction does a single hash lookup per emission.
class FeatureSpace {
 public:
  explicit FeatureSpace(FeatureConfig cfg = {});

  const Bins& bins() const { return cfg_.bins; }
  const std::string& real_name(int fam, bool fig, int instance) const {
    return real_names_[(fam * 2 + (fig ? 1 : 0)) * bins_per_fam_ + instance];
  }
  const std::string& bool_name(int feat, bool fig) const {
    return bool_names_[feat * 2 + (fig ? 1 : 0)];
  }

 private:
  FeatureConfig cfg_;
  int bins_per_fam_;
  std::vector<std::string> real_names_;
  std::vector<std::string> bool_names_;
};

/// Maps feature-instance names to dense indices. Unfrozen registries admit
/// new names and track occurrence counts; frozen registries only look up.
class FeatureRegistry {
 public:
  /// Unfrozen: intern (bumping the occurrence count). Frozen: lookup.
  int touch(const std::string& name);
  int lookup(const std::string& name) const;

  std::size_t size() const { return names_.size(); }
  const std::string& name(int idx) const { return names_[idx]; }
  const std::vector<std::string>& names() const { return names_; }
  long count(int idx) const { return counts_[idx]; }
  bool frozen() const { return frozen_; }

  void freeze() { frozen_ = true; }
  /// Drops instances with count < min_count, reindexes densely in first-seen
  /// order, and freezes.
  void prune_and_freeze(long min_count);

  static FeatureRegistry from_names(const std::vector<std::string>& names);

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> names_;
  std::vector<long> counts_;
  bool frozen_ = false;
};

/// Sorted sparse (index, value) vector over a registry's coordinates.
struct SparseFeatureVector {
  std::vector<std::pair<int, double>> items;

  void add(int idx, double value) { items.emplace_back(idx, value); }
  void finish();  // sort by index, merge duplicates
  double dot(const std::vector<double>& w) const;
  void add_scaled_to(double coef, std::vector<double>* dense) const;
  std::size_t size() const { return items.size(); }
};

/// "maj.add7", "it6.none", ... token used by transition instance names.
std::string mode_added_token(const ChordLabel& y);

/// Transition instance name for g(y, y'). The previous label may be the
/// nochord sentinel, which yields a dedicated "initial/<mode.added>"
/// instance; otherwise "bigram/<y>|<y'>|<(root - root') mod 12>" with the
/// bass standing in for the root of augmented sixth labels.
std::string transition_instance_name(const ChordLabel& y,
                                     const ChordLabel& prev);

/// The (at most one) firing transition instance as a sparse vector.
SparseFeatureVector transition_vector(const ChordLabel& y,
                                      const ChordLabel& prev,
                                      FeatureRegistry& registry);

/// Per-piece extraction context. Memoizes the label-independent figuration
/// analysis for every candidate segment up to max_seg_len.
class PieceExtractor {
 public:
  PieceExtractor(const Piece& piece, const FeatureSpace& space,
                 int max_seg_len);

  const Piece& piece() const { return piece_; }
  int max_seg_len() const { return max_len_; }

  /// All firing segment-label instances for (seg, y). With an unfrozen
  /// registry this interns every instance it emits (and bumps counts);
  /// frozen registries silently drop unknown instances.
  SparseFeatureVector segment_vector(Segment seg, const ChordLabel& y,
                                     const ChordTones& tones,
                                     FeatureRegistry& registry) const;
  SparseFeatureVector segment_vector(Segment seg, const ChordLabel& y,
                                     FeatureRegistry& registry) const;

  const SegmentFigAnalysis& analysis(Segment seg) const;

  /// Figuration verdicts for (seg, y); convenience over analysis().
  std::vector<FigurationVerdict> figuration(Segment seg,
                                            const ChordTones& tones) const;

 private:
  const Piece& piece_;
  const FeatureSpace& space_;
  int max_len_;
  std::vector<std::unique_ptr<SegmentFigAnalysis>> analyses_;
};

}  // namespace chordlab

#endif  // CHORDLAB_FEATURES_HPP
