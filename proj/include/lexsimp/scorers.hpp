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

#ifndef LEXSIMP_SCORERS_HPP_
#define LEXSIMP_SCORERS_HPP_

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>

#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/wordfreq.hpp"

namespace lexsimp {

// First line of a fixed score table file.
inline constexpr std::string_view kScoreTableMagic = "#score-table";

// Fixed scores keyed by the space-joined lowercase token sequence. Used to
// replay published scores for models that cannot be retrained. A missing
// key throws, so fixtures fail loudly.
class ScoreTable {
 public:
  static ScoreTable read(std::istream &in);

  void set(std::string key, double value) { scores_[std::move(key)] = value; }
  double at(std::span<const std::string> tokens) const;
  std::size_t size() const { return scores_.size(); }

 private:
  std::unordered_map<std::string, double> scores_;
};

class TableLmScorer : public LmScorer {
 public:
  explicit TableLmScorer(ScoreTable table) : table_(std::move(table)) {}
  double score(std::span<const std::string> tokens) const override {
    return table_.at(tokens);
  }

 private:
  ScoreTable table_;
};

class TableTermScorer : public TermScorer {
 public:
  explicit TableTermScorer(ScoreTable table) : table_(std::move(table)) {}
  double score(std::span<const std::string> term) const override {
    return table_.at(term);
  }

 private:
  ScoreTable table_;
};

// Loads an ARPA model or a score table, chosen by the file's first line.
std::unique_ptr<LmScorer> load_lm_scorer(const std::string &path);

// Loads a frequency TSV or a score table, chosen by the file's first line.
std::unique_ptr<TermScorer> load_term_scorer(const std::string &path);

}  // namespace lexsimp

#endif  // LEXSIMP_SCORERS_HPP_
