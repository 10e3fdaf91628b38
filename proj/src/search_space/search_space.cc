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

#include "nasforge/search_space/search_space.h"

#include <algorithm>
#include <cctype>

#include "nasforge/common/error.h"

namespace nasforge {

std::string BigCountToString(BigCount n) {
  if (n == 0) return "0";
  std::string out;
  while (n > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
    n /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SearchSpace::SearchSpace(std::vector<int> cardinalities)
    : cardinalities_(std::move(cardinalities)) {
  if (cardinalities_.empty()) throw ConfigError("search space has no decisions");
  for (int c : cardinalities_) {
    if (c < 1) throw ConfigError("decision cardinality must be >= 1");
  }
}

bool SearchSpace::IsValid(const Genotype& genotype) const {
  if (genotype.size() != cardinalities_.size()) return false;
  for (size_t i = 0; i < genotype.size(); ++i) {
    if (genotype[i] < 0 || genotype[i] >= cardinalities_[i]) return false;
  }
  return true;
}

void SearchSpace::Validate(const Genotype& genotype) const {
  if (genotype.size() != cardinalities_.size()) {
    throw GenotypeError(type_name() + ": genotype has " +
                        std::to_string(genotype.size()) + " decisions, expected " +
                        std::to_string(cardinalities_.size()));
  }
  for (size_t i = 0; i < genotype.size(); ++i) {
    if (genotype[i] < 0 || genotype[i] >= cardinalities_[i]) {
      throw GenotypeError(type_name() + ": decision " + std::to_string(i) +
                          " = " + std::to_string(genotype[i]) +
                          " outside [0, " + std::to_string(cardinalities_[i]) +
                          ")");
    }
  }
}

DiscreteRollout SearchSpace::RandomRollout(Rng& rng) const {
  DiscreteRollout rollout;
  rollout.genotype.reserve(cardinalities_.size());
  for (int c : cardinalities_) rollout.genotype.push_back(rng.UniformInt(c));
  return rollout;
}

DiscreteRollout SearchSpace::Mutate(const DiscreteRollout& parent,
                                    Rng& rng) const {
  Validate(parent.genotype);
  std::vector<int> mutable_positions;
  for (size_t i = 0; i < cardinalities_.size(); ++i) {
    if (cardinalities_[i] > 1) mutable_positions.push_back(static_cast<int>(i));
  }
  if (mutable_positions.empty()) {
    throw Error(type_name() + ": no decision can be mutated");
  }
  const int pos = mutable_positions[rng.UniformInt(
      static_cast<int>(mutable_positions.size()))];
  DiscreteRollout child;
  child.genotype = parent.genotype;
  // Draw from the other c - 1 values.
  int value = rng.UniformInt(cardinalities_[pos] - 1);
  if (value >= parent.genotype[pos]) ++value;
  child.genotype[pos] = value;
  return child;
}

BigCount SearchSpace::SpaceSize() const {
  BigCount n = 1;
  for (int c : cardinalities_) n *= static_cast<BigCount>(c);
  return n;
}

void SearchSpace::ForEachGenotype(
    const std::function<void(const Genotype&)>& visit) const {
  Genotype g(cardinalities_.size(), 0);
  while (true) {
    visit(g);
    size_t i = g.size();
    while (i > 0) {
      --i;
      if (++g[i] < cardinalities_[i]) break;
      g[i] = 0;
      if (i == 0) return;
    }
  }
}

std::vector<Genotype> SearchSpace::Enumerate(uint64_t limit) const {
  const BigCount size = SpaceSize();
  if (size > limit) {
    throw Error(type_name() + ": refusing to enumerate " +
                BigCountToString(size) + " genotypes (limit " +
                std::to_string(limit) + ")");
  }
  std::vector<Genotype> out;
  out.reserve(static_cast<size_t>(size));
  ForEachGenotype([&](const Genotype& g) { out.push_back(g); });
  return out;
}

std::vector<double> SearchSpace::OneHot(const Genotype& genotype) const {
  Validate(genotype);
  const Genotype canonical = Canonicalize(genotype);
  std::vector<double> out(OneHotSize(), 0.0);
  size_t offset = 0;
  for (size_t i = 0; i < cardinalities_.size(); ++i) {
    out[offset + canonical[i]] = 1.0;
    offset += cardinalities_[i];
  }
  return out;
}

size_t SearchSpace::OneHotSize() const {
  size_t n = 0;
  for (int c : cardinalities_) n += c;
  return n;
}

CategoricalSpace::CategoricalSpace(std::vector<int> cardinalities)
    : SearchSpace(std::move(cardinalities)) {}

std::string CategoricalSpace::ToString(const Genotype& genotype) const {
  Validate(genotype);
  std::string out = "cat(";
  for (size_t i = 0; i < genotype.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(genotype[i]);
  }
  return out + ")";
}

Genotype CategoricalSpace::Parse(std::string_view text) const {
  GenotypeScanner scan(text);
  scan.Expect("cat(");
  Genotype g;
  do {
    const std::string token = scan.CurrentToken();
    const int v = scan.ReadInt("decision");
    const size_t pos = g.size();
    if (pos >= cardinalities().size()) {
      scan.FailToken(token, "too many decisions (expected " +
                                std::to_string(cardinalities().size()) + ")");
    }
    if (v < 0 || v >= cardinalities()[pos]) {
      scan.FailToken(token, "decision " + std::to_string(pos) +
                                " out of range [0, " +
                                std::to_string(cardinalities()[pos]) + ")");
    }
    g.push_back(v);
  } while (scan.Consume(","));
  scan.Expect(")");
  scan.ExpectEnd();
  if (g.size() != cardinalities().size()) {
    scan.Fail("expected " + std::to_string(cardinalities().size()) +
              " decisions, got " + std::to_string(g.size()));
  }
  return g;
}

GenotypeScanner::GenotypeScanner(std::string_view text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
  }
}

bool GenotypeScanner::Peek(std::string_view literal) const {
  return text_.compare(pos_, literal.size(), literal) == 0;
}

bool GenotypeScanner::Consume(std::string_view literal) {
  if (!Peek(literal)) return false;
  pos_ += literal.size();
  return true;
}

void GenotypeScanner::Expect(std::string_view literal) {
  if (!Consume(literal)) {
    Fail("expected '" + std::string(literal) + "'");
  }
}

int GenotypeScanner::ReadInt(std::string_view what) {
  size_t end = pos_;
  if (end < text_.size() && text_[end] == '-') ++end;
  const size_t digits = end;
  while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
    ++end;
  }
  if (end == digits || end - digits > 9) {
    Fail("expected integer " + std::string(what));
  }
  const int v = std::stoi(text_.substr(pos_, end - pos_));
  pos_ = end;
  return v;
}

std::string GenotypeScanner::ReadIdent(std::string_view what) {
  size_t end = pos_;
  while (end < text_.size() &&
         (std::isalnum(static_cast<unsigned char>(text_[end])) ||
          text_[end] == '_')) {
    ++end;
  }
  if (end == pos_ || std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    Fail("expected name of " + std::string(what));
  }
  std::string out = text_.substr(pos_, end - pos_);
  pos_ = end;
  return out;
}

void GenotypeScanner::ExpectEnd() {
  if (!AtEnd()) Fail("unexpected trailing text");
}

std::string GenotypeScanner::CurrentToken() const {
  size_t end = pos_;
  while (end < text_.size() &&
         std::string_view(",;:[]()-").find(text_[end]) == std::string_view::npos) {
    ++end;
  }
  if (end == pos_ && end < text_.size()) ++end;
  return text_.substr(pos_, end - pos_);
}

void GenotypeScanner::Fail(const std::string& message) const {
  FailToken(AtEnd() ? std::string("<end>") : CurrentToken(), message);
}

void GenotypeScanner::FailToken(const std::string& token,
                                const std::string& message) const {
  throw GenotypeError("genotype parse error at token \"" + token +
                      "\" (offset " + std::to_string(pos_) + "): " + message);
}

}  // namespace nasforge
