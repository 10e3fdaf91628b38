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

#include "testing/oracles.h"

#include <cmath>
#include <stdexcept>

namespace nasforge::testing {

void ForEachRawGenotype(const std::vector<int>& cardinalities,
                        const std::function<void(const Genotype&)>& visit) {
  Genotype g(cardinalities.size(), 0);
  while (true) {
    visit(g);
    size_t i = 0;
    for (; i < g.size(); ++i) {
      if (++g[i] < cardinalities[i]) break;
      g[i] = 0;
    }
    if (i == g.size()) return;
  }
}

std::set<Genotype> BruteForceCanonicalSet(const SearchSpace& space) {
  std::set<Genotype> out;
  ForEachRawGenotype(space.cardinalities(),
                     [&](const Genotype& g) { out.insert(space.Canonicalize(g)); });
  return out;
}

uint64_t CellSpaceSizeClosedForm(int num_nodes, int num_ops) {
  uint64_t total = 1;
  for (int i = 2; i < num_nodes + 2; ++i) {
    const uint64_t edge = static_cast<uint64_t>(i) * num_ops;
    total *= edge * edge;
  }
  return total;
}

uint64_t BlockwiseStageSizeClosedForm(const std::vector<int>& depths, int num_expansions,
                                      int num_kernels) {
  uint64_t total = 0;
  for (int d : depths) {
    uint64_t term = 1;
    for (int i = 0; i < d; ++i) term *= static_cast<uint64_t>(num_expansions * num_kernels);
    total += term;
  }
  return total;
}

double OracleAccuracy(const std::vector<double>& weights, const Genotype& optimum,
                      const Genotype& genotype) {
  const size_t n = genotype.size();
  double mismatch = 0.0;
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    total += weights[i];
    if (genotype[i] != optimum[i]) mismatch += weights[i];
  }
  double pairs = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    if (genotype[i] != optimum[i] && genotype[i + 1] != optimum[i + 1]) pairs += 1.0;
  }
  const double d = mismatch / total;
  const double h = n > 1 ? pairs / static_cast<double>(n - 1) : 0.0;
  return (1.0 - d) * (1.0 - 0.1 * h);
}

int RankOf(const std::vector<double>& scores, double score) {
  int rank = 1;
  for (double s : scores) {
    if (s > score) ++rank;
  }
  return rank;
}

double ReferenceActivation(nn::Activation act, double pre) {
  switch (act) {
    case nn::Activation::kIdentity:
      return pre;
    case nn::Activation::kRelu:
      return pre > 0.0 ? pre : 0.0;
    case nn::Activation::kTanh:
      return std::tanh(pre);
    case nn::Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-pre));
  }
  throw std::logic_error("activation");
}

nn::Tensor2 ReferenceDense(const nn::Tensor2& x, const nn::Tensor2& weight,
                           const nn::Tensor2& bias, nn::Activation act) {
  nn::Tensor2 out(x.rows(), weight.rows());
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t o = 0; o < weight.rows(); ++o) {
      double s = bias(0, o);
      for (size_t i = 0; i < x.cols(); ++i) s += x(r, i) * weight(o, i);
      out(r, o) = ReferenceActivation(act, s);
    }
  }
  return out;
}

void ReferenceLstmStep(const nn::LstmParams& p, const nn::Tensor2& x,
                       const nn::Tensor2& h_prev, const nn::Tensor2& c_prev,
                       nn::Tensor2* h, nn::Tensor2* c) {
  const size_t batch = x.rows();
  const size_t in = p.input_size;
  const size_t hid = p.hidden_size;
  *h = nn::Tensor2(batch, hid);
  *c = nn::Tensor2(batch, hid);
  for (size_t b = 0; b < batch; ++b) {
    for (size_t j = 0; j < hid; ++j) {
      double gate[4];
      for (int k = 0; k < 4; ++k) {
        double s = p.bias[k](0, j);
        for (size_t i = 0; i < in; ++i) s += p.weight[k](j, i) * x(b, i);
        for (size_t i = 0; i < hid; ++i) s += p.weight[k](j, in + i) * h_prev(b, i);
        gate[k] = s;
      }
      const double ig = 1.0 / (1.0 + std::exp(-gate[0]));
      const double fg = 1.0 / (1.0 + std::exp(-gate[1]));
      const double gg = std::tanh(gate[2]);
      const double og = 1.0 / (1.0 + std::exp(-gate[3]));
      const double cell = fg * c_prev(b, j) + ig * gg;
      (*c)(b, j) = cell;
      (*h)(b, j) = og * std::tanh(cell);
    }
  }
}

double ReferenceMacs(int in_c, int in_h, int in_w, int out_c, int kernel, int stride,
                     int expansion) {
  const double hidden = static_cast<double>(in_c) * expansion;
  const double out_h = (in_h + stride - 1) / stride;
  const double out_w = (in_w + stride - 1) / stride;
  double macs = 0.0;
  if (expansion != 1) macs += static_cast<double>(in_c) * hidden * in_h * in_w;
  macs += hidden * kernel * kernel * out_h * out_w;
  macs += hidden * out_c * out_h * out_w;
  return macs;
}

namespace {

double Det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

std::vector<double> CramerLeastSquares(const std::vector<std::vector<double>>& x,
                                       const std::vector<double>& y) {
  const size_t k = x.front().size();
  if (k < 2 || k > 3) throw std::invalid_argument("2 or 3 columns");
  double a[3][3] = {};
  double b[3] = {};
  for (size_t r = 0; r < x.size(); ++r) {
    for (size_t i = 0; i < k; ++i) {
      b[i] += x[r][i] * y[r];
      for (size_t j = 0; j < k; ++j) a[i][j] += x[r][i] * x[r][j];
    }
  }
  if (k == 2) {
    a[2][2] = 1.0;
  }
  const double det = Det3(a);
  std::vector<double> out(k);
  for (size_t col = 0; col < k; ++col) {
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = (j == static_cast<int>(col)) ? b[i] : a[i][j];
    }
    out[col] = Det3(m) / det;
  }
  return out;
}

}  // namespace nasforge::testing
