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

#ifndef LEXSIMP_SIMPLIFIER_HPP_
#define LEXSIMP_SIMPLIFIER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/ontology.hpp"
#include "lexsimp/textproc.hpp"
#include "lexsimp/wordfreq.hpp"

namespace lexsimp {

struct SimplifierConfig {
  double alpha = 0.7;
  int max_iterations = 5;
  // Keep the matched term itself among the candidates. With alpha = 0 and
  // include_original = false the engine reduces to plain table substitution.
  bool include_original = true;

  // Throws Error when alpha is outside [0, 1] or max_iterations < 1.
  void validate() const;
};

struct Candidate {
  std::vector<std::string> term;
  std::vector<std::string> candidate_sentence;  // normalized tokens
  double lm_score = 0.0;
  double wf_score = 0.0;
  double combined = 0.0;  // alpha * lm_score + (1 - alpha) * wf_score
};

inline double combine(double alpha, double lm, double wf) {
  return alpha * lm + (1.0 - alpha) * wf;
}

struct Ranking {
  std::size_t chosen = 0;  // index into candidates
  std::vector<Candidate> candidates;

  const Candidate &best() const { return candidates.at(chosen); }
};

// Scores every label of the span's group (plus the matched text when
// include_original) in the context of the sentence and picks the highest
// combined score. Ties go to the higher LM score, then the smallest term.
Ranking rank_span(std::span<const Token> tokens, const Span &span,
                  const AlternativeGroup &group, const LmScorer &lm,
                  const TermScorer &wf, double alpha,
                  bool include_original = true);

// One applied replacement with the scores that chose it.
struct Replacement {
  Span span;
  std::vector<std::string> chosen;
  std::vector<Candidate> candidates;
};

struct PassResult {
  std::string sentence;
  std::vector<Token> tokens;
  std::vector<Replacement> replacements;
};

// Ranks every span against the same input sentence and applies all chosen
// replacements at once.
PassResult simplify_once(std::string_view sentence,
                         std::span<const Token> tokens,
                         const PhraseTable &table, const LmScorer &lm,
                         const TermScorer &wf, const SimplifierConfig &config);

struct IterationTrace {
  std::string input;
  std::string output;
  std::vector<Replacement> replacements;  // empty on the converging pass
};

struct SimplificationResult {
  std::string original;
  std::string final;
  int iterations = 0;  // passes that changed the sentence
  std::vector<IterationTrace> trace;  // every pass run
  bool changed = false;
  bool converged = false;  // a pass made no replacement
  bool cycled = false;     // stopped on a previously seen sentence
};

// Repeats simplify_once until no replacement is made, a sentence repeats,
// or max_iterations passes have run.
SimplificationResult simplify(std::string_view sentence,
                              const PhraseTable &table, const LmScorer &lm,
                              const TermScorer &wf,
                              const SimplifierConfig &config);

// Sentences are independent; threads = 0 picks the hardware concurrency.
// Output order follows the input regardless of scheduling.
std::vector<SimplificationResult> simplify_batch(
    std::span<const std::string> sentences, const PhraseTable &table,
    const LmScorer &lm, const TermScorer &wf, const SimplifierConfig &config,
    unsigned threads = 1);

struct IterationStats {
  std::size_t sentences = 0;
  std::size_t changed = 0;
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  int max_iterations = 0;
};

IterationStats iteration_stats(std::span<const SimplificationResult> results);

// JSON array, one object per sentence. Key names are listed in README.md.
std::string trace_to_json(std::span<const SimplificationResult> results,
                          const SimplifierConfig &config);

}  // namespace lexsimp

#endif  // LEXSIMP_SIMPLIFIER_HPP_
