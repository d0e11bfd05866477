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

#include "lexsimp/wordfreq.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>

#include "lexsimp/error.hpp"
#include "lexsimp/textproc.hpp"

namespace lexsimp {

FrequencyTable::FrequencyTable(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
}

void FrequencyTable::set(std::string_view word, double probability) {
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw Error("probability of '" + std::string(word) +
                "' outside (0, 1]");
  }
  probs_[to_lower(word)] = probability;
}

FrequencyTable FrequencyTable::load(std::istream &in, double epsilon,
                                    std::vector<std::string> *warnings) {
  FrequencyTable table(epsilon);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(line_no, "expected word<TAB>probability");
    }
    std::string word = to_lower(std::string_view(line).substr(0, tab));
    std::string_view num = std::string_view(line).substr(tab + 1);
    double p = 0.0;
    auto r = std::from_chars(num.data(), num.data() + num.size(), p);
    if (word.empty() || r.ec != std::errc() || r.ptr != num.data() + num.size()) {
      throw ParseError(line_no, "malformed entry");
    }
    if (!(p > 0.0 && p <= 1.0)) {
      throw ParseError(line_no, "probability " + std::string(num) +
                                    " outside (0, 1]");
    }
    auto [it, inserted] = table.probs_.insert_or_assign(word, p);
    if (!inserted && warnings) {
      warnings->push_back("line " + std::to_string(line_no) +
                          ": duplicate word '" + word + "', keeping last value");
    }
  }
  return table;
}

FrequencyTable FrequencyTable::build(std::istream &corpus, double epsilon) {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::string line;
  while (std::getline(corpus, line)) {
    for (const Token &t : tokenize(line)) {
      ++counts[t.norm];
      ++total;
    }
  }
  if (total == 0) throw Error("no training data");
  FrequencyTable table(epsilon);
  for (const auto &[w, c] : counts) {
    table.probs_[w] = static_cast<double>(c) / static_cast<double>(total);
  }
  return table;
}

double FrequencyTable::probability(std::string_view word) const {
  auto it = probs_.find(to_lower(word));
  return it == probs_.end() ? 0.0 : it->second;
}

double FrequencyTable::score(std::span<const std::string> term) const {
  return wf(term, *this);
}

double wf(std::span<const std::string> term, const FrequencyTable &table) {
  if (term.empty()) throw Error("cannot score an empty term");
  double lowest = 0.0;
  bool first = true;
  for (const auto &w : term) {
    double v = std::log(table.probability(w) + table.epsilon());
    if (first || v < lowest) lowest = v;
    first = false;
  }
  return lowest;
}

}  // namespace lexsimp
