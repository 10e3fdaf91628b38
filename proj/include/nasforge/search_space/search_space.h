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

#ifndef NASFORGE_SEARCH_SPACE_SEARCH_SPACE_H_
#define NASFORGE_SEARCH_SPACE_SEARCH_SPACE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/core/rollout.h"

namespace nasforge {

// Large enough for the full blockwise space (7371^5 > 2^64).
using BigCount = unsigned __int128;
std::string BigCountToString(BigCount n);

// A fixed sequence of categorical decisions. Subclasses define the
// structure (canonical form, size, text grammar); sampling, mutation and
// validation are shared.
class SearchSpace : public Component {
 public:
  ComponentKind kind() const final { return ComponentKind::kSearchSpace; }
  virtual std::string type_name() const = 0;

  const std::vector<int>& cardinalities() const { return cardinalities_; }
  size_t decision_count() const { return cardinalities_.size(); }

  bool IsValid(const Genotype& genotype) const;
  // Throws GenotypeError naming the first bad position.
  void Validate(const Genotype& genotype) const;

  // Rewrites positions that do not affect the architecture to 0.
  virtual Genotype Canonicalize(const Genotype& genotype) const {
    return genotype;
  }
  bool Equivalent(const Genotype& a, const Genotype& b) const {
    return Canonicalize(a) == Canonicalize(b);
  }

  // Every decision uniform over its cardinality.
  DiscreteRollout RandomRollout(Rng& rng) const;
  // Resamples one uniformly chosen position (among those with cardinality
  // > 1) to a different value.
  DiscreteRollout Mutate(const DiscreteRollout& parent, Rng& rng) const;

  // Number of distinct canonical genotypes.
  virtual BigCount SpaceSize() const;
  // Visits each canonical genotype exactly once.
  virtual void ForEachGenotype(
      const std::function<void(const Genotype&)>& visit) const;
  static constexpr uint64_t kEnumerationLimit = 1'000'000;
  // Throws Error when SpaceSize() exceeds `limit`.
  std::vector<Genotype> Enumerate(uint64_t limit = kEnumerationLimit) const;

  // Human-readable, whitespace-insensitive text form of the canonical
  // genotype.
  virtual std::string ToString(const Genotype& genotype) const = 0;
  // Throws GenotypeError citing the offending token.
  virtual Genotype Parse(std::string_view text) const = 0;

  // Concatenated per-position one-hot vectors of the canonical genotype.
  std::vector<double> OneHot(const Genotype& genotype) const;
  size_t OneHotSize() const;

 protected:
  explicit SearchSpace(std::vector<int> cardinalities);

 private:
  std::vector<int> cardinalities_;
};

// Categorical decisions with explicit cardinalities; text form
// "cat(1,0,2)". Also serves as the bandit space.
class CategoricalSpace : public SearchSpace {
 public:
  explicit CategoricalSpace(std::vector<int> cardinalities);
  std::string type_name() const override { return "categorical"; }
  std::string ToString(const Genotype& genotype) const override;
  Genotype Parse(std::string_view text) const override;
};

// Cursor over a genotype string with whitespace removed. Errors quote the
// token under the cursor.
class GenotypeScanner {
 public:
  explicit GenotypeScanner(std::string_view text);

  bool AtEnd() const { return pos_ >= text_.size(); }
  bool Peek(std::string_view literal) const;
  bool Consume(std::string_view literal);
  void Expect(std::string_view literal);
  int ReadInt(std::string_view what);
  // [A-Za-z_][A-Za-z0-9_]*
  std::string ReadIdent(std::string_view what);
  void ExpectEnd();

  // Text of the token starting at the cursor (up to a delimiter).
  std::string CurrentToken() const;
  [[noreturn]] void Fail(const std::string& message) const;
  [[noreturn]] void FailToken(const std::string& token,
                              const std::string& message) const;

 private:
  std::string text_;
  size_t pos_ = 0;
};

}  // namespace nasforge

#endif  // NASFORGE_SEARCH_SPACE_SEARCH_SPACE_H_
