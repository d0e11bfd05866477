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

// Test doubles and shared fixtures.

#ifndef LEXSIMP_TESTS_FIXTURES_HPP_
#define LEXSIMP_TESTS_FIXTURES_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/ontology.hpp"
#include "lexsimp/scorers.hpp"
#include "lexsimp/textproc.hpp"
#include "lexsimp/wordfreq.hpp"

namespace lexsimp::testing {

// Mean of per-token scores; tokens not in the map score `fallback`.
class TokenMeanLm : public LmScorer {
 public:
  TokenMeanLm(std::map<std::string, double> scores, double fallback)
      : scores_(std::move(scores)), fallback_(fallback) {}

  double score(std::span<const std::string> tokens) const override {
    double sum = 0.0;
    for (const auto &t : tokens) {
      auto it = scores_.find(t);
      sum += it == scores_.end() ? fallback_ : it->second;
    }
    return tokens.empty() ? 0.0 : sum / static_cast<double>(tokens.size());
  }

 private:
  std::map<std::string, double> scores_;
  double fallback_;
};

// Scores keyed by the space-joined term; unknown terms score `fallback`.
class TermTable : public TermScorer {
 public:
  TermTable(std::map<std::string, double> scores, double fallback)
      : scores_(std::move(scores)), fallback_(fallback) {}

  double score(std::span<const std::string> term) const override {
    auto it = scores_.find(join(term));
    return it == scores_.end() ? fallback_ : it->second;
  }

 private:
  std::map<std::string, double> scores_;
  double fallback_;
};

// Constant scores for every input.
class ConstantLm : public LmScorer {
 public:
  explicit ConstantLm(double v) : v_(v) {}
  double score(std::span<const std::string>) const override { return v_; }

 private:
  double v_;
};

class ConstantTerm : public TermScorer {
 public:
  explicit ConstantTerm(double v) : v_(v) {}
  double score(std::span<const std::string>) const override { return v_; }

 private:
  double v_;
};

inline AlternativeGroup make_group(GroupId id,
                                   const std::vector<std::string> &labels) {
  AlternativeGroup g;
  g.id = id;
  for (const auto &l : labels) g.labels.push_back(GroupLabel{normalize_label(l), {}});
  return g;
}

inline PhraseTable make_table(
    const std::vector<std::vector<std::string>> &groups) {
  std::vector<AlternativeGroup> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    out.push_back(make_group(static_cast<GroupId>(i), groups[i]));
  }
  return PhraseTable::from_groups(std::move(out));
}

// Scores published for the alternatives of "myocardial infarctions" in the
// context "Patient had multiple ...".
struct RankingRow {
  const char *term;
  double lm;
  double wf;
};

inline const std::vector<RankingRow> &ranking_rows() {
  static const std::vector<RankingRow> rows = {
      {"myocardial infarctions", -5.45, -14.32},
      {"heart attack", -4.38, -9.05},
      {"heart attacks", -3.91, -9.05},
      {"mies", -6.09, -14.34},
      {"myocardial necrosis", -6.13, -14.23},
  };
  return rows;
}

inline const char *kRankingSentence = "Patient had multiple myocardial infarctions";

struct RankingFixture {
  PhraseTable table;
  TableLmScorer lm{ScoreTable{}};
  TableTermScorer wf{ScoreTable{}};
  std::vector<Token> tokens;
  Span span;
};

inline RankingFixture ranking_fixture() {
  RankingFixture f;
  std::vector<std::string> labels;
  ScoreTable lm, wf;
  for (const auto &row : ranking_rows()) {
    labels.push_back(row.term);
    lm.set(std::string("patient had multiple ") + row.term, row.lm);
    wf.set(row.term, row.wf);
  }
  f.table = make_table({labels});
  f.lm = TableLmScorer(std::move(lm));
  f.wf = TableTermScorer(std::move(wf));
  f.tokens = tokenize(kRankingSentence);
  f.span = Span{3, 5, 0, {"myocardial", "infarctions"}};
  return f;
}

}  // namespace lexsimp::testing

#endif  // LEXSIMP_TESTS_FIXTURES_HPP_
