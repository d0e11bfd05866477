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

#ifndef LEXSIMP_EVAL_HPP_
#define LEXSIMP_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/ontology.hpp"
#include "lexsimp/simplifier.hpp"
#include "lexsimp/wordfreq.hpp"

namespace lexsimp {

// Pairwise judgment tallies for one system. A is the original sentence and
// B the system output.
struct EvalCounts {
  std::uint64_t simpler = 0;     // S: B easier
  std::uint64_t failed = 0;      // F: A easier
  std::uint64_t equal = 0;       // E
  std::uint64_t neither = 0;     // N: neither understood
  std::uint64_t unchanged = 0;   // U: output identical to the original

  std::uint64_t total() const {
    return simpler + failed + equal + neither + unchanged;
  }
  bool operator==(const EvalCounts &) const = default;
};

enum class Category { kSimpler, kFailed, kEqual, kNeither };

// 'S', 'F', 'E', 'N' or the annotation option number 1..4.
Category parse_category(std::string_view token);
char category_letter(Category c);

struct JudgmentRecord {
  std::string sentence_id;
  std::string system_id;
  Category category = Category::kEqual;
  std::size_t line = 0;
};

struct UnchangedFlag {
  std::string sentence_id;
  std::string system_id;
};

// `sentence_id,system_id,category`; an optional header row is skipped.
std::vector<JudgmentRecord> parse_judgments(std::istream &in);
// `sentence_id,system_id`; an optional header row is skipped.
std::vector<UnchangedFlag> parse_unchanged(std::istream &in);

inline constexpr int kDefaultReplications = 7;

// Per-system tallies; each unchanged pair contributes `replications` U.
std::map<std::string, EvalCounts> aggregate_judgments(
    std::span<const JudgmentRecord> records,
    std::span<const UnchangedFlag> unchanged,
    int replications = kDefaultReplications);

// SG = (S - F) / T.
double simplification_gain(const EvalCounts &counts);

// Two-sided bootstrap p-value for SG(a) != SG(b).
double sg_significance(const EvalCounts &a, const EvalCounts &b,
                       int iterations = 10000, std::uint64_t seed = 42);

// Lowercased whitespace tokens, as SARI expects.
std::vector<std::string> metric_tokens(std::string_view sentence,
                                       bool lowercase);

// Sentence-level SARI in [0, 100].
double sari(std::string_view source, std::string_view output,
            std::span<const std::string> references);

// Corpus BLEU in [0, 100]; one reference per output, n <= 4, no smoothing.
double bleu(std::span<const std::string> outputs,
            std::span<const std::string> references);

struct ParallelPair {
  std::string source;
  std::string reference;
};

// `source<TAB>reference` per line.
std::vector<ParallelPair> parse_parallel(std::istream &in);

// {0.00, 0.05, ..., 1.00} united with {0.90, 0.91, ..., 1.00}, ascending.
std::vector<double> default_alpha_grid();

// "default", "start:stop:step" or a comma list. Throws Error when malformed.
std::vector<double> parse_grid(std::string_view spec);

struct GridSearchResult {
  double best_alpha = 0.0;
  double best_sari = 0.0;
  std::vector<std::pair<double, double>> curve;  // (alpha, mean SARI)
};

// Mean single-reference SARI for each alpha; ties go to the smaller alpha.
GridSearchResult grid_search_alpha(std::span<const ParallelPair> dev,
                                   const PhraseTable &table,
                                   const LmScorer &lm, const TermScorer &wf,
                                   std::span<const double> grid,
                                   SimplifierConfig base = {},
                                   unsigned threads = 1);

void write_report_tsv(std::ostream &out,
                      const std::map<std::string, EvalCounts> &counts);
void write_report_table(std::ostream &out,
                        const std::map<std::string, EvalCounts> &counts);

}  // namespace lexsimp

#endif  // LEXSIMP_EVAL_HPP_
