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

#ifndef NASFORGE_NN_LSTM_H_
#define NASFORGE_NN_LSTM_H_

#include <array>
#include <cstddef>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/nn/tensor.h"

namespace nasforge::nn {

// Gate order everywhere: input, forget, candidate (g), output.
enum LstmGate { kGateI = 0, kGateF = 1, kGateG = 2, kGateO = 3 };

// Each gate weight is hidden x (input + hidden) acting on [x, h_prev];
// each bias is 1 x hidden. Gradients use the same type.
struct LstmParams {
  size_t input_size = 0;
  size_t hidden_size = 0;
  std::array<Tensor2, 4> weight;
  std::array<Tensor2, 4> bias;

  static LstmParams Zeros(size_t input_size, size_t hidden_size);
  // Uniform +-1/sqrt(input + hidden); forget-gate bias set to 1.
  static LstmParams Initialized(size_t input_size, size_t hidden_size,
                                Rng& rng);

  std::vector<Tensor2*> Parameters();
  std::vector<const Tensor2*> Parameters() const;
};

struct LstmState {
  Tensor2 h;  // batch x hidden
  Tensor2 c;  // batch x hidden

  static LstmState Zeros(size_t batch, size_t hidden) {
    return {Tensor2(batch, hidden), Tensor2(batch, hidden)};
  }
};

struct LstmStepCache {
  Tensor2 xh;
  Tensor2 i, f, g, o;
  Tensor2 c_prev;
  Tensor2 tanh_c;
};

// c_t = f * c_prev + i * g, h_t = o * tanh(c_t).
LstmState LstmCellForward(const LstmParams& params, const Tensor2& x,
                          const LstmState& prev,
                          LstmStepCache* cache = nullptr);

struct LstmStepGrads {
  Tensor2 x;
  Tensor2 h_prev;
  Tensor2 c_prev;
};

// Backward of one step given dL/dh_t and dL/dc_t (the latter from the
// following step). Parameter gradients are accumulated into `grads`.
LstmStepGrads LstmCellBackward(const LstmParams& params,
                               const LstmStepCache& cache, const Tensor2& dh,
                               const Tensor2& dc, LstmParams* grads);

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_LSTM_H_
