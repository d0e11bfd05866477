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

#include "lexsimp/scorers.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "lexsimp/error.hpp"
#include "lexsimp/textproc.hpp"

namespace lexsimp {

namespace {

std::string first_content_line(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  return {};
}

std::ifstream open(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

// Format: the magic line, then `tokens<TAB>score` per line. Keys are
// re-tokenized so "heart attacks." and "heart attacks ." are the same key.
ScoreTable ScoreTable::read(std::istream &in) {
  ScoreTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw ParseError(line_no, "expected key<TAB>score");
    std::string key = join(norms(tokenize(std::string_view(line).substr(0, tab))));
    std::string_view num = std::string_view(line).substr(tab + 1);
    double v = 0.0;
    auto r = std::from_chars(num.data(), num.data() + num.size(), v);
    if (key.empty() || r.ec != std::errc() || r.ptr != num.data() + num.size()) {
      throw ParseError(line_no, "malformed score entry");
    }
    table.scores_[key] = v;
  }
  return table;
}

double ScoreTable::at(std::span<const std::string> tokens) const {
  std::string key = to_lower(join(tokens));
  auto it = scores_.find(key);
  if (it == scores_.end()) throw Error("no fixed score for '" + key + "'");
  return it->second;
}

std::unique_ptr<LmScorer> load_lm_scorer(const std::string &path) {
  std::string first = first_content_line(path);
  auto in = open(path);
  if (first.rfind(kScoreTableMagic, 0) == 0) {
    return std::make_unique<TableLmScorer>(ScoreTable::read(in));
  }
  return std::make_unique<NgramModel>(NgramModel::load_arpa(in));
}

std::unique_ptr<TermScorer> load_term_scorer(const std::string &path) {
  std::string first = first_content_line(path);
  auto in = open(path);
  if (first.rfind(kScoreTableMagic, 0) == 0) {
    return std::make_unique<TableTermScorer>(ScoreTable::read(in));
  }
  return std::make_unique<FrequencyTable>(FrequencyTable::load(in));
}

}  // namespace lexsimp
