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

#ifndef NASFORGE_TESTS_TESTING_ORACLES_H_
#define NASFORGE_TESTS_TESTING_ORACLES_H_

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "nasforge/core/rollout.h"
#include "nasforge/nn/activation.h"
#include "nasforge/nn/lstm.h"
#include "nasforge/nn/tensor.h"
#include "nasforge/search_space/search_space.h"

// Reference implementations written independently of the library code
// under test: plain loops, closed forms and brute-force enumeration.
namespace nasforge::testing {

// Every raw genotype of `cardinalities`, in mixed-radix order.
void ForEachRawGenotype(const std::vector<int>& cardinalities,
                        const std::function<void(const Genotype&)>& visit);

// Distinct canonical forms over all raw genotypes.
std::set<Genotype> BruteForceCanonicalSet(const SearchSpace& space);

// prod over nodes i of (i * |ops|)^2, with node i in [2, n + 1].
uint64_t CellSpaceSizeClosedForm(int num_nodes, int num_ops);
// sum over depth choices d of (|expansions| * |kernels|)^d, per stage.
uint64_t BlockwiseStageSizeClosedForm(const std::vector<int>& depths, int num_expansions,
                                      int num_kernels);

// acc = (1 - d)(1 - 0.1 h) with weighted Hamming distance d and adjacent
// mismatch-pair fraction h.
double OracleAccuracy(const std::vector<double>& weights, const Genotype& optimum,
                      const Genotype& genotype);

// 1 + number of genotypes in `scores` strictly better than `score`.
int RankOf(const std::vector<double>& scores, double score);

double ReferenceActivation(nn::Activation act, double pre);

// act(x W^T + b) with triple loops.
nn::Tensor2 ReferenceDense(const nn::Tensor2& x, const nn::Tensor2& weight,
                           const nn::Tensor2& bias, nn::Activation act);

// One LSTM step with scalar loops; gate order i, f, g, o.
void ReferenceLstmStep(const nn::LstmParams& p, const nn::Tensor2& x,
                       const nn::Tensor2& h_prev, const nn::Tensor2& c_prev,
                       nn::Tensor2* h, nn::Tensor2* c);

// 1x1 expand (skipped at expansion 1), kxk depthwise, 1x1 project.
double ReferenceMacs(int in_c, int in_h, int in_w, int out_c, int kernel, int stride,
                     int expansion);

// Ordinary least squares by explicit 2x2 / 3x3 Cramer's rule.
std::vector<double> CramerLeastSquares(const std::vector<std::vector<double>>& x,
                                       const std::vector<double>& y);

}  // namespace nasforge::testing

#endif  // NASFORGE_TESTS_TESTING_ORACLES_H_
