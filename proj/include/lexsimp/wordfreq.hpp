// Copyright 2026 The lexsimp Authors.
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

#ifndef LEXSIMP_WORDFREQ_HPP_
#define LEXSIMP_WORDFREQ_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexsimp {

// Scores a bare replacement term; higher means simpler.
class TermScorer {
 public:
  virtual ~TermScorer() = default;
  virtual double score(std::span<const std::string> term) const = 0;
};

inline constexpr double kDefaultEpsilon = 1e-10;

// word -> P(word) over a general corpus, lowercased keys.
class FrequencyTable : public TermScorer {
 public:
  explicit FrequencyTable(double epsilon = kDefaultEpsilon);

  // `word<TAB>probability` lines. A repeated word keeps the last value and
  // appends a warning when `warnings` is given.
  static FrequencyTable load(std::istream &in,
                             double epsilon = kDefaultEpsilon,
                             std::vector<std::string> *warnings = nullptr);

  // P(w) = C(w) / |W| over the tokens of a corpus, one sentence per line.
  static FrequencyTable build(std::istream &corpus,
                              double epsilon = kDefaultEpsilon);

  // 0 for unknown words.
  double probability(std::string_view word) const;
  double epsilon() const { return epsilon_; }
  std::size_t size() const { return probs_.size(); }
  const std::unordered_map<std::string, double> &probabilities() const {
    return probs_;
  }

  void set(std::string_view word, double probability);

  double score(std::span<const std::string> term) const override;

 private:
  std::unordered_map<std::string, double> probs_;
  double epsilon_;
};

// WF(w_1..w_k) = min_i ln(P(w_i) + eps). Throws on an empty term.
double wf(std::span<const std::string> term, const FrequencyTable &table);

}  // namespace lexsimp

#endif  // LEXSIMP_WORDFREQ_HPP_
