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

#include "lexsimp/simplifier.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"
#include "lexsimp/error.hpp"

namespace lexsimp {

namespace {

bool better(const Candidate &a, const Candidate &b) {
  if (a.combined != b.combined) return a.combined > b.combined;
  if (a.lm_score != b.lm_score) return a.lm_score > b.lm_score;
  return join(a.term) < join(b.term);
}

std::string render(std::span<const std::string> term, bool capitalize) {
  std::string text = join(term);
  if (capitalize && !text.empty() && text[0] >= 'a' && text[0] <= 'z') {
    text[0] = static_cast<char>(text[0] - 'a' + 'A');
  }
  return text;
}

}  // namespace

void SimplifierConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
  if (max_iterations < 1) throw Error("max_iterations must be at least 1");
}

Ranking rank_span(std::span<const Token> tokens, const Span &span,
                  const AlternativeGroup &group, const LmScorer &lm,
                  const TermScorer &wf, double alpha, bool include_original) {
  std::vector<std::vector<std::string>> terms;
  for (const GroupLabel &label : group.labels) {
    if (!include_original && label.tokens == span.matched) continue;
    terms.push_back(label.tokens);
  }
  if (include_original && !group.contains(span.matched)) {
    terms.push_back(span.matched);
  }
  if (terms.empty()) throw Error("span has no replacement candidates");

  Ranking ranking;
  ranking.candidates.reserve(terms.size());
  for (auto &term : terms) {
    Candidate c;
    c.candidate_sentence.reserve(tokens.size() - span.length() + term.size());
    for (std::size_t i = 0; i < span.start; ++i) {
      c.candidate_sentence.push_back(tokens[i].norm);
    }
    c.candidate_sentence.insert(c.candidate_sentence.end(), term.begin(),
                                term.end());
    for (std::size_t i = span.end; i < tokens.size(); ++i) {
      c.candidate_sentence.push_back(tokens[i].norm);
    }
    c.lm_score = lm.score(c.candidate_sentence);
    c.wf_score = wf.score(term);
    c.combined = combine(alpha, c.lm_score, c.wf_score);
    c.term = std::move(term);
    ranking.candidates.push_back(std::move(c));
  }
  for (std::size_t i = 1; i < ranking.candidates.size(); ++i) {
    if (better(ranking.candidates[i], ranking.candidates[ranking.chosen])) {
      ranking.chosen = i;
    }
  }
  return ranking;
}

PassResult simplify_once(std::string_view sentence,
                         std::span<const Token> tokens,
                         const PhraseTable &table, const LmScorer &lm,
                         const TermScorer &wf, const SimplifierConfig &config) {
  PassResult result;
  for (const Span &span : extract_spans(tokens, table)) {
    Ranking r = rank_span(tokens, span, table.group(span.group_id), lm, wf,
                          config.alpha, config.include_original);
    const Candidate &best = r.best();
    if (best.term == span.matched) continue;
    result.replacements.push_back(
        Replacement{span, best.term, std::move(r.candidates)});
  }

  // Splice right to left so earlier byte offsets stay valid.
  std::string text(sentence);
  for (auto it = result.replacements.rbegin(); it != result.replacements.rend();
       ++it) {
    const Token &first = tokens[it->span.start];
    const Token &last = tokens[it->span.end - 1];
    std::size_t begin = first.char_offset;
    std::size_t end = last.char_offset + last.text.size();
    bool capitalize = it->span.start == 0 &&
                      std::isupper(static_cast<unsigned char>(first.text[0]));
    text.replace(begin, end - begin, render(it->chosen, capitalize));
  }
  result.tokens = tokenize(text);
  result.sentence = std::move(text);
  return result;
}

SimplificationResult simplify(std::string_view sentence,
                              const PhraseTable &table, const LmScorer &lm,
                              const TermScorer &wf,
                              const SimplifierConfig &config) {
  config.validate();
  SimplificationResult result;
  result.original = std::string(sentence);
  std::string current = result.original;
  std::vector<Token> tokens = tokenize(current);
  std::set<std::string> seen{current};

  for (int pass = 0; pass < config.max_iterations; ++pass) {
    PassResult next = simplify_once(current, tokens, table, lm, wf, config);
    result.trace.push_back(
        IterationTrace{current, next.sentence, next.replacements});
    if (next.replacements.empty()) {
      result.converged = true;
      break;
    }
    ++result.iterations;
    current = std::move(next.sentence);
    tokens = std::move(next.tokens);
    if (!seen.insert(current).second) {
      result.cycled = true;
      break;
    }
  }
  result.final = std::move(current);
  result.changed = result.final != result.original;
  return result;
}

std::vector<SimplificationResult> simplify_batch(
    std::span<const std::string> sentences, const PhraseTable &table,
    const LmScorer &lm, const TermScorer &wf, const SimplifierConfig &config,
    unsigned threads) {
  config.validate();
  std::vector<SimplificationResult> results(sentences.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, sentences.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= sentences.size()) return;
      try {
        results[i] = simplify(sentences[i], table, lm, wf, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = sentences.size();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

IterationStats iteration_stats(std::span<const SimplificationResult> results) {
  IterationStats stats;
  stats.sentences = results.size();
  if (results.empty()) return stats;
  std::vector<int> its;
  its.reserve(results.size());
  double sum = 0.0;
  for (const auto &r : results) {
    its.push_back(r.iterations);
    sum += r.iterations;
    if (r.changed) ++stats.changed;
  }
  std::sort(its.begin(), its.end());
  stats.mean_iterations = sum / static_cast<double>(its.size());
  std::size_t mid = its.size() / 2;
  stats.median_iterations = its.size() % 2 == 1
                                ? its[mid]
                                : (its[mid - 1] + its[mid]) / 2.0;
  stats.max_iterations = its.back();
  return stats;
}

std::string trace_to_json(std::span<const SimplificationResult> results,
                          const SimplifierConfig &config) {
  using nlohmann::json;
  json sentences = json::array();
  for (const auto &r : results) {
    json passes = json::array();
    for (const auto &pass : r.trace) {
      json reps = json::array();
      for (const auto &rep : pass.replacements) {
        json cands = json::array();
        for (const auto &c : rep.candidates) {
          cands.push_back({{"term", join(c.term)},
                           {"lm", c.lm_score},
                           {"wf", c.wf_score},
                           {"score", c.combined}});
        }
        reps.push_back({{"start", rep.span.start},
                        {"end", rep.span.end},
                        {"group_id", rep.span.group_id},
                        {"matched", join(rep.span.matched)},
                        {"chosen", join(rep.chosen)},
                        {"candidates", std::move(cands)}});
      }
      passes.push_back({{"input", pass.input},
                        {"output", pass.output},
                        {"replacements", std::move(reps)}});
    }
    sentences.push_back({{"original", r.original},
                         {"final", r.final},
                         {"iterations", r.iterations},
                         {"changed", r.changed},
                         {"converged", r.converged},
                         {"cycled", r.cycled},
                         {"passes", std::move(passes)}});
  }
  json doc = {{"alpha", config.alpha},
              {"max_iterations", config.max_iterations},
              {"include_original", config.include_original},
              {"sentences", std::move(sentences)}};
  return doc.dump(2);
}

}  // namespace lexsimp
