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

#ifndef LEXSIMP_NGRAM_LM_HPP_
#define LEXSIMP_NGRAM_LM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexsimp {

// Scores a token sequence by its mean per-token natural-log probability.
// Implementations must be deterministic and safe for concurrent calls.
class LmScorer {
 public:
  virtual ~LmScorer() = default;
  virtual double score(std::span<const std::string> tokens) const = 0;
};

inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknown = "<unk>";

struct TrainOptions {
  int order = 3;
  double discount = 0.75;
  // Words seen fewer times than this are trained as <unk>.
  std::uint64_t min_count = 2;
};

using WordId = std::uint32_t;
using Ngram = std::vector<WordId>;

struct NgramHash {
  std::size_t operator()(const Ngram &gram) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (WordId w : gram) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Backoff n-gram model with natural-log probabilities in memory.
//
// Training uses interpolated absolute discounting; the interpolated model is
// stored in backoff form so it serializes to ARPA without loss:
//   P(w|h) = max(c(hw) - D, 0) / c(h) + D * N1+(h.) / c(h) * P(w|h')
// and the backoff weight of h is D * N1+(h.) / c(h).
class NgramModel : public LmScorer {
 public:
  struct Entry {
    double log_prob = 0.0;
    double log_backoff = 0.0;
  };
  using Table = std::unordered_map<Ngram, Entry, NgramHash>;

  // Each sentence is one line of whitespace-separated tokens.
  static NgramModel train(std::span<const std::vector<std::string>> sentences,
                          const TrainOptions &options = {});
  static NgramModel train(std::istream &corpus,
                          const TrainOptions &options = {});

  static NgramModel load_arpa(std::istream &in);
  void save_arpa(std::ostream &out) const;

  int order() const { return static_cast<int>(tables_.size()); }
  const std::vector<std::string> &vocab() const { return words_; }
  std::size_t vocab_size() const { return words_.size(); }

  // Id of word, or of <unk> when the word is not in the vocabulary.
  WordId id(std::string_view word) const;
  bool contains(std::string_view word) const;

  // ln P(word | context); context is ordered oldest first and truncated to
  // the last order-1 words.
  double log_prob(std::span<const std::string> context,
                  std::string_view word) const;
  double log_prob(std::span<const WordId> context, WordId word) const;

  // Mean of ln P(w_i | history) over the tokens, with order-1 <s> padding.
  // The end-of-sentence term is not part of the mean.
  double score(std::span<const std::string> tokens) const override;

  // Sum of ln P over the tokens and </s>; the conventional sentence log-prob.
  double sentence_log_prob(std::span<const std::string> tokens) const;

  // Every context that carries a backoff weight, as word strings.
  std::vector<std::vector<std::string>> contexts() const;

  // Table of n-grams of length n (1-based).
  const Table &table(int n) const { return tables_.at(n - 1); }

 private:
  void index_vocab();
  const Entry *find(std::span<const WordId> gram) const;

  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<Table> tables_;
  WordId unk_ = 0;
  bool has_unk_ = false;
  WordId bos_ = 0;
};

// ln P̂(w_1..w_n) = (1/n) sum ln P(w_i | history); errors on empty input.
double score(const LmScorer &lm, std::span<const std::string> tokens);

}  // namespace lexsimp

#endif  // LEXSIMP_NGRAM_LM_HPP_
