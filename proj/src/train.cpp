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

#include "chordlab/train.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "chordlab/parallel.hpp"

namespace chordlab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<TrainContext> build_train_contexts(
    const Engine& engine, const std::vector<const Piece*>& pieces,
    const std::vector<LabeledSegmentation>& golds, int max_seg_len,
    std::vector<std::unique_ptr<PieceExtractor>>* reuse) {
  if (pieces.size() != golds.size())
    throw InputError("training pieces and gold segmentations differ in size");
  std::vector<TrainContext> out(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    TrainContext& ctx = out[i];
    ctx.piece = pieces[i];
    ctx.gold = golds[i];
    if (reuse && i < reuse->size() && (*reuse)[i])
      ctx.extractor = std::move((*reuse)[i]);
    else
      ctx.extractor = std::make_unique<PieceExtractor>(*pieces[i],
                                                       engine.space(),
                                                       max_seg_len);
    engine.validate_segmentation(*ctx.extractor, ctx.gold);
    ctx.lattice = std::make_unique<PieceLattice>(engine, *ctx.extractor);
    engine.gold_vectors(*ctx.extractor, ctx.gold, &ctx.gold_f, &ctx.gold_g);
  }
  return out;
}

ObjectiveValue nll_and_gradient(const Engine& engine,
                                const std::vector<TrainContext>& data,
                                const ModelParams& params, int jobs) {
  const std::size_t nw = engine.seg_registry().size();
  const std::size_t nu = engine.trans_registry().size();
  if (params.w.size() != nw || params.u.size() != nu)
    throw RunError("parameter vector sizes do not match the registries");

  std::vector<Expectations> per_piece(data.size());
  parallel_for(static_cast<int>(data.size()), jobs, [&](int i) {
    per_piece[i] = engine.expectations(*data[i].lattice, params);
  });

  ObjectiveValue out;
  out.grad_w.assign(nw, 0.0);
  out.grad_u.assign(nu, 0.0);
  double value = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Expectations& ex = per_piece[i];
    if (!std::isfinite(ex.log_z))
      throw RunError("non-finite log partition for piece '" +
                     data[i].piece->id + "'");
    const double gold_score =
        dot(params.w, data[i].gold_f) + dot(params.u, data[i].gold_g);
    value += ex.log_z - gold_score;
    for (std::size_t k = 0; k < nw; ++k)
      out.grad_w[k] += ex.ef[k] - data[i].gold_f[k];
    for (std::size_t k = 0; k < nu; ++k)
      out.grad_u[k] += ex.eg[k] - data[i].gold_g[k];
  }
  value += 0.5 * params.lambda *
           (dot(params.w, params.w) + dot(params.u, params.u));
  for (std::size_t k = 0; k < nw; ++k)
    out.grad_w[k] += params.lambda * params.w[k];
  for (std::size_t k = 0; k < nu; ++k)
    out.grad_u[k] += params.lambda * params.u[k];
  out.value = value;
  if (!std::isfinite(out.value)) throw RunError("non-finite objective");
  return out;
}

double nll_value(const Engine& engine, const std::vector<TrainContext>& data,
                 const ModelParams& params, int jobs) {
  std::vector<double> log_zs(data.size());
  parallel_for(static_cast<int>(data.size()), jobs, [&](int i) {
    log_zs[i] = engine.log_partition(*data[i].lattice, params);
  });
  double value = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(log_zs[i]))
      throw RunError("non-finite log partition for piece '" +
                     data[i].piece->id + "'");
    value += log_zs[i] - dot(params.w, data[i].gold_f) -
             dot(params.u, data[i].gold_g);
  }
  value += 0.5 * params.lambda *
           (dot(params.w, params.w) + dot(params.u, params.u));
  return value;
}

ModelParams train(const Engine& engine, const std::vector<TrainContext>& data,
                  ModelParams init, const TrainOptions& options,
                  TrainLog* log) {
  if (data.empty()) throw InputError("empty training set");
  const std::size_t nw = engine.seg_registry().size();
  const std::size_t nu = engine.trans_registry().size();
  if (init.w.size() != nw) init.w.assign(nw, 0.0);
  if (init.u.size() != nu) init.u.assign(nu, 0.0);

  const std::size_t dim = nw + nu;
  auto pack = [&](const ModelParams& p) {
    std::vector<double> x(dim);
    std::copy(p.w.begin(), p.w.end(), x.begin());
    std::copy(p.u.begin(), p.u.end(), x.begin() + nw);
    return x;
  };
  auto unpack = [&](const std::vector<double>& x) {
    ModelParams p = init;
    p.w.assign(x.begin(), x.begin() + nw);
    p.u.assign(x.begin() + nw, x.end());
    return p;
  };
  auto eval = [&](const std::vector<double>& x, std::vector<double>* grad) {
    ModelParams p = unpack(x);
    if (grad) {
      ObjectiveValue o = nll_and_gradient(engine, data, p, options.jobs);
      grad->resize(dim);
      std::copy(o.grad_w.begin(), o.grad_w.end(), grad->begin());
      std::copy(o.grad_u.begin(), o.grad_u.end(), grad->begin() + nw);
      return o.value;
    }
    return nll_value(engine, data, p, options.jobs);
  };

  std::vector<double> x = pack(init);
  std::vector<double> g;
  double fx = eval(x, &g);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  TrainLog local_log;
  TrainLog* tl = log ? log : &local_log;
  tl->objective.clear();
  tl->grad_norm.clear();
  tl->objective.push_back(fx);
  tl->grad_norm.push_back(max_abs(g));
  tl->converged = false;

  int iter = 0;
  for (; iter < options.max_iters; ++iter) {
    const double gnorm = max_abs(g);
    if (options.on_iteration) options.on_iteration(iter, fx, gnorm);
    if (gnorm < options.tol) {
      tl->converged = true;
      break;
    }

    // Two-loop recursion for d = -H g.
    std::vector<double> d = g;
    std::vector<double> alpha(s_hist.size());
    for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
      alpha[k] = rho_hist[k] * dot(s_hist[k], d);
      for (std::size_t j = 0; j < dim; ++j) d[j] -= alpha[k] * y_hist[k][j];
    }
    if (!s_hist.empty()) {
      const double gamma = dot(s_hist.back(), y_hist.back()) /
                           dot(y_hist.back(), y_hist.back());
      for (double& dj : d) dj *= gamma;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * dot(y_hist[k], d);
      for (std::size_t j = 0; j < dim; ++j)
        d[j] += (alpha[k] - beta) * s_hist[k][j];
    }
    for (double& dj : d) dj = -dj;

    double dg = dot(d, g);
    if (dg >= 0.0) {
      // Bad curvature slipped through; fall back to steepest descent.
      for (std::size_t j = 0; j < dim; ++j) d[j] = -g[j];
      dg = -dot(g, g);
    }

    // Backtracking line search with sufficient decrease.
    constexpr double kArmijo = 1e-4;
    double step = 1.0;
    double fnew = 0.0;
    std::vector<double> xnew(dim);
    bool accepted = false;
    for (int half = 0; half < 50; ++half) {
      for (std::size_t j = 0; j < dim; ++j) xnew[j] = x[j] + step * d[j];
      fnew = eval(xnew, nullptr);
      if (fnew <= fx + kArmijo * step * dg) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further progress representable

    std::vector<double> gnew;
    eval(xnew, &gnew);

    std::vector<double> s(dim), yv(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s[j] = xnew[j] - x[j];
      yv[j] = gnew[j] - g[j];
    }
    const double sy = dot(s, yv);
    if (sy > 1e-10) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.lbfgs_memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = std::move(xnew);
    g = std::move(gnew);
    fx = fnew;
    tl->objective.push_back(fx);
    tl->grad_norm.push_back(max_abs(g));
  }
  tl->iterations = iter;
  if (!tl->converged && max_abs(g) < options.tol) tl->converged = true;
  return unpack(x);
}

}  // namespace chordlab
