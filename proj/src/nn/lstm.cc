// Copyright 2026 The nasforge Authors.
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

#include "nasforge/nn/lstm.h"

#include <cmath>

#include "nasforge/common/error.h"
#include "nasforge/nn/activation.h"

namespace nasforge::nn {

LstmParams LstmParams::Zeros(size_t input_size, size_t hidden_size) {
  LstmParams p;
  p.input_size = input_size;
  p.hidden_size = hidden_size;
  for (int g = 0; g < 4; ++g) {
    p.weight[g] = Tensor2(hidden_size, input_size + hidden_size);
    p.bias[g] = Tensor2(1, hidden_size);
  }
  return p;
}

LstmParams LstmParams::Initialized(size_t input_size, size_t hidden_size,
                                   Rng& rng) {
  LstmParams p = Zeros(input_size, hidden_size);
  const double bound =
      1.0 / std::sqrt(static_cast<double>(input_size + hidden_size));
  for (int g = 0; g < 4; ++g) {
    for (size_t i = 0; i < p.weight[g].size(); ++i) {
      p.weight[g][i] = rng.Uniform(-bound, bound);
    }
    for (size_t i = 0; i < p.bias[g].size(); ++i) {
      p.bias[g][i] = rng.Uniform(-bound, bound);
    }
  }
  p.bias[kGateF].Fill(1.0);
  return p;
}

std::vector<Tensor2*> LstmParams::Parameters() {
  std::vector<Tensor2*> out;
  for (int g = 0; g < 4; ++g) {
    out.push_back(&weight[g]);
    out.push_back(&bias[g]);
  }
  return out;
}

std::vector<const Tensor2*> LstmParams::Parameters() const {
  std::vector<const Tensor2*> out;
  for (int g = 0; g < 4; ++g) {
    out.push_back(&weight[g]);
    out.push_back(&bias[g]);
  }
  return out;
}

LstmState LstmCellForward(const LstmParams& params, const Tensor2& x,
                          const LstmState& prev, LstmStepCache* cache) {
  const size_t hidden = params.hidden_size;
  if (x.cols() != params.input_size || prev.h.cols() != hidden ||
      prev.c.cols() != hidden || prev.h.rows() != x.rows() ||
      prev.c.rows() != x.rows()) {
    throw ShapeError("LstmCellForward: x " + x.ShapeString() + ", h " +
                     prev.h.ShapeString() + ", c " + prev.c.ShapeString() +
                     " for input " + std::to_string(params.input_size) +
                     ", hidden " + std::to_string(hidden));
  }
  Tensor2 xh = ConcatCols(x, prev.h);
  std::array<Tensor2, 4> gate;
  for (int g = 0; g < 4; ++g) {
    gate[g] = MatMulTransB(xh, params.weight[g]);
    AddRowBroadcast(gate[g], params.bias[g]);
  }
  for (size_t k = 0; k < gate[0].size(); ++k) {
    gate[kGateI][k] = Sigmoid(gate[kGateI][k]);
    gate[kGateF][k] = Sigmoid(gate[kGateF][k]);
    gate[kGateG][k] = std::tanh(gate[kGateG][k]);
    gate[kGateO][k] = Sigmoid(gate[kGateO][k]);
  }
  LstmState next{Tensor2(x.rows(), hidden), Tensor2(x.rows(), hidden)};
  Tensor2 tanh_c(x.rows(), hidden);
  for (size_t k = 0; k < next.c.size(); ++k) {
    next.c[k] = gate[kGateF][k] * prev.c[k] + gate[kGateI][k] * gate[kGateG][k];
    tanh_c[k] = std::tanh(next.c[k]);
    next.h[k] = gate[kGateO][k] * tanh_c[k];
  }
  if (cache != nullptr) {
    cache->xh = std::move(xh);
    cache->i = std::move(gate[kGateI]);
    cache->f = std::move(gate[kGateF]);
    cache->g = std::move(gate[kGateG]);
    cache->o = std::move(gate[kGateO]);
    cache->c_prev = prev.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

LstmStepGrads LstmCellBackward(const LstmParams& params,
                               const LstmStepCache& cache, const Tensor2& dh,
                               const Tensor2& dc, LstmParams* grads) {
  CheckSameShape(dh, cache.o, "LstmCellBackward(dh)");
  CheckSameShape(dc, cache.o, "LstmCellBackward(dc)");
  const size_t n = dh.size();
  std::array<Tensor2, 4> dpre;
  for (auto& t : dpre) t = Tensor2(dh.rows(), dh.cols());
  Tensor2 dc_prev(dh.rows(), dh.cols());
  for (size_t k = 0; k < n; ++k) {
    const double do_ = dh[k] * cache.tanh_c[k];
    const double dc_total =
        dc[k] + dh[k] * cache.o[k] * (1.0 - cache.tanh_c[k] * cache.tanh_c[k]);
    const double di = dc_total * cache.g[k];
    const double df = dc_total * cache.c_prev[k];
    const double dg = dc_total * cache.i[k];
    dc_prev[k] = dc_total * cache.f[k];
    dpre[kGateI][k] = di * cache.i[k] * (1.0 - cache.i[k]);
    dpre[kGateF][k] = df * cache.f[k] * (1.0 - cache.f[k]);
    dpre[kGateG][k] = dg * (1.0 - cache.g[k] * cache.g[k]);
    dpre[kGateO][k] = do_ * cache.o[k] * (1.0 - cache.o[k]);
  }
  Tensor2 dxh(cache.xh.rows(), cache.xh.cols());
  for (int g = 0; g < 4; ++g) {
    dxh += MatMul(dpre[g], params.weight[g]);
    if (grads != nullptr) {
      grads->weight[g] += MatMulTransA(dpre[g], cache.xh);
      grads->bias[g] += SumRows(dpre[g]);
    }
  }
  LstmStepGrads out;
  out.x = SliceCols(dxh, 0, params.input_size);
  out.h_prev = SliceCols(dxh, params.input_size, dxh.cols());
  out.c_prev = std::move(dc_prev);
  return out;
}

}  // namespace nasforge::nn
