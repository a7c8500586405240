/* Copyright 2026 The chordlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the chordlab chord recognition library.
 *
 * All functions return CHORDLAB_OK on success. On failure they return an
 * error code and, when `err` is non-NULL, store a heap-allocated message in
 * *err; release it with chordlab_string_free(). Output strings (*out_json)
 * follow the same ownership rule.
 */

#ifndef CHORDLAB_H
#define CHORDLAB_H

#ifdef __cplusplus
extern "C" {
#endif

#define CHORDLAB_OK 0
/* Failure while processing well-formed inputs (misaligned annotations,
 * model/preset mismatch, numeric breakdown). */
#define CHORDLAB_ERR_RUN 1
/* Unreadable files, malformed JSON, invalid configuration. */
#define CHORDLAB_ERR_INPUT 2

typedef struct chordlab_model chordlab_model;

const char* chordlab_version(void);

void chordlab_string_free(char* s);

/* Trains on a corpus directory of "<stem>.json" pieces with
 * "<stem>.chords.json" gold sidecars and writes the model JSON to
 * model_path. config_json (optional) may set: preset, max_seg_len, lambda,
 * cutoff, bigram_cutoff, tol, max_iters, lbfgs_memory, seed, jobs, bins.
 * When out_json is non-NULL it receives the training report (objective
 * trace, gradient norms, registry sizes). */
int chordlab_train(const char* corpus_dir, const char* config_json,
                   const char* model_path, char** out_json, char** err);

int chordlab_model_load(const char* model_path, chordlab_model** out,
                        char** err);
void chordlab_model_free(chordlab_model* model);

/* Decodes one piece. options_json (optional) keys: resolve_sevenths,
 * dump_figuration, dump_features (booleans). The result JSON holds
 * "annotation" (the labeled segmentation in the sidecar format) plus
 * "figuration" / "features" arrays of JSON-line strings when requested. */
int chordlab_predict_json(const chordlab_model* model, const char* piece_json,
                          const char* options_json, char** out_json,
                          char** err);
int chordlab_predict_file(const chordlab_model* model, const char* piece_path,
                          const char* options_json, char** out_json,
                          char** err);

/* Scores "<stem>.chords.json" predictions in pred_dir against the gold
 * corpus in corpus_dir. The report JSON carries pooled full and root-only
 * measures plus an aligned text table under "table". */
int chordlab_evaluate(const char* corpus_dir, const char* pred_dir,
                      char** out_json, char** err);

/* Shuffled k-fold cross-validation over a gold corpus. cv_json (optional)
 * keys: folds, repeats, leave_one_out. */
int chordlab_cross_validate(const char* corpus_dir, const char* config_json,
                            const char* cv_json, char** out_json, char** err);

#ifdef __cplusplus
}
#endif

#endif /* CHORDLAB_H */
