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

#include "lexsimp/ngram_lm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "lexsimp/error.hpp"
#include "lexsimp/textproc.hpp"

namespace lexsimp {

namespace {

const double kLn10 = std::log(10.0);
// ARPA convention for "never predicted": log10 p = -99.
const double kNeverLogProb = -99.0 * kLn10;
constexpr WordId kNoWord = std::numeric_limits<WordId>::max();

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double &out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

void NgramModel::index_vocab() {
  ids_.clear();
  for (WordId i = 0; i < words_.size(); ++i) ids_.emplace(words_[i], i);
  auto unk = ids_.find(std::string(kUnknown));
  has_unk_ = unk != ids_.end();
  unk_ = has_unk_ ? unk->second : kNoWord;
  auto bos = ids_.find(std::string(kSentenceStart));
  if (bos == ids_.end()) {
    words_.emplace_back(kSentenceStart);
    bos_ = static_cast<WordId>(words_.size() - 1);
    ids_.emplace(words_.back(), bos_);
  } else {
    bos_ = bos->second;
  }
}

WordId NgramModel::id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? unk_ : it->second;
}

bool NgramModel::contains(std::string_view word) const {
  return ids_.count(std::string(word)) > 0;
}

NgramModel NgramModel::train(std::span<const std::vector<std::string>> sentences,
                             const TrainOptions &options) {
  if (sentences.empty()) throw Error("no training data");
  if (options.order < 1) throw Error("order must be at least 1");
  if (!(options.discount > 0.0 && options.discount < 1.0)) {
    throw Error("discount must lie in (0, 1)");
  }
  if (options.min_count < 1) throw Error("min_count must be at least 1");
  const int order = options.order;
  const double d = options.discount;

  std::unordered_map<std::string, std::uint64_t> word_counts;
  for (const auto &s : sentences) {
    for (const auto &w : s) ++word_counts[w];
  }

  NgramModel model;
  model.words_ = {std::string(kSentenceStart), std::string(kSentenceEnd),
                  std::string(kUnknown)};
  std::vector<std::string> kept;
  for (const auto &[w, c] : word_counts) {
    if (c >= options.min_count && w != kSentenceStart && w != kSentenceEnd &&
        w != kUnknown) {
      kept.push_back(w);
    }
  }
  std::sort(kept.begin(), kept.end());
  model.words_.insert(model.words_.end(), kept.begin(), kept.end());
  model.index_vocab();
  const WordId bos = model.bos_;
  const WordId eos = model.id(kSentenceEnd);

  // counts[k] holds n-grams of length k + 1: every suffix of every predicted
  // event, so each lower-order distribution sees the same events.
  std::vector<std::unordered_map<Ngram, std::uint64_t, NgramHash>> counts(order);
  Ngram seq;
  for (const auto &s : sentences) {
    seq.assign(order - 1, bos);
    for (const auto &w : s) {
      WordId wid = model.id(w);
      if (w == kSentenceStart || w == kSentenceEnd) wid = model.unk_;
      seq.push_back(wid);
    }
    seq.push_back(eos);
    for (std::size_t pos = order - 1; pos < seq.size(); ++pos) {
      for (int k = 0; k < order; ++k) {
        Ngram gram(seq.begin() + (pos - k), seq.begin() + pos + 1);
        ++counts[k][gram];
      }
    }
  }

  model.tables_.assign(order, Table{});
  std::vector<std::unordered_map<Ngram, double, NgramHash>> prob(order);

  // Unigrams: discounted mass is spread uniformly over every word that can
  // be predicted (all of the vocabulary except <s>).
  std::uint64_t total = 0;
  for (const auto &[g, c] : counts[0]) total += c;
  const double predictable = static_cast<double>(model.words_.size() - 1);
  const double uniform_mass = d * static_cast<double>(counts[0].size()) /
                              static_cast<double>(total) / predictable;
  for (WordId w = 0; w < model.words_.size(); ++w) {
    if (w == bos) {
      model.tables_[0][{w}] = Entry{kNeverLogProb, 0.0};
      continue;
    }
    auto it = counts[0].find({w});
    double c = it == counts[0].end() ? 0.0 : static_cast<double>(it->second);
    double p = std::max(c - d, 0.0) / static_cast<double>(total) + uniform_mass;
    prob[0][{w}] = p;
    model.tables_[0][{w}] = Entry{std::log(p), 0.0};
  }

  for (int k = 1; k < order; ++k) {
    struct ContextStats {
      std::uint64_t count = 0;
      std::uint64_t types = 0;
    };
    std::unordered_map<Ngram, ContextStats, NgramHash> contexts;
    for (const auto &[gram, c] : counts[k]) {
      Ngram h(gram.begin(), gram.end() - 1);
      auto &st = contexts[h];
      st.count += c;
      ++st.types;
    }
    for (const auto &[gram, c] : counts[k]) {
      Ngram h(gram.begin(), gram.end() - 1);
      Ngram lower(gram.begin() + 1, gram.end());
      const auto &st = contexts[h];
      double gamma = d * static_cast<double>(st.types) /
                     static_cast<double>(st.count);
      double p = (static_cast<double>(c) - d) / static_cast<double>(st.count) +
                 gamma * prob[k - 1].at(lower);
      prob[k][gram] = p;
      model.tables_[k][gram] = Entry{std::log(p), 0.0};
    }
    for (const auto &[h, st] : contexts) {
      double gamma = d * static_cast<double>(st.types) /
                     static_cast<double>(st.count);
      auto [it, inserted] =
          model.tables_[k - 1].emplace(h, Entry{kNeverLogProb, 0.0});
      it->second.log_backoff = std::log(gamma);
    }
  }
  return model;
}

NgramModel NgramModel::train(std::istream &corpus, const TrainOptions &options) {
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(corpus, line)) {
    auto toks = norms(tokenize(line));
    if (!toks.empty()) sentences.push_back(std::move(toks));
  }
  return train(sentences, options);
}

const NgramModel::Entry *NgramModel::find(std::span<const WordId> gram) const {
  if (gram.empty() || gram.size() > tables_.size()) return nullptr;
  const Table &t = tables_[gram.size() - 1];
  auto it = t.find(Ngram(gram.begin(), gram.end()));
  return it == t.end() ? nullptr : &it->second;
}

double NgramModel::log_prob(std::span<const WordId> context, WordId word) const {
  std::size_t k = std::min<std::size_t>(context.size(), tables_.size() - 1);
  Ngram gram(context.end() - k, context.end());
  gram.push_back(word);
  double backoff = 0.0;
  while (true) {
    if (word != kNoWord) {
      if (const Entry *e = find(gram)) return backoff + e->log_prob;
    }
    if (gram.size() == 1) break;
    if (const Entry *ctx = find(std::span<const WordId>(gram).first(gram.size() - 1))) {
      backoff += ctx->log_backoff;
    }
    gram.erase(gram.begin());
  }
  return backoff + kNeverLogProb;
}

double NgramModel::log_prob(std::span<const std::string> context,
                            std::string_view word) const {
  Ngram ids;
  ids.reserve(context.size());
  for (const auto &w : context) ids.push_back(id(w));
  return log_prob(ids, id(word));
}

double NgramModel::score(std::span<const std::string> tokens) const {
  if (tokens.empty()) throw Error("cannot score empty sequence");
  const std::size_t history = tables_.size() - 1;
  Ngram seq(history, bos_);
  for (const auto &w : tokens) seq.push_back(id(w));
  double sum = 0.0;
  for (std::size_t i = history; i < seq.size(); ++i) {
    sum += log_prob(std::span<const WordId>(seq.data() + i - history, history),
                    seq[i]);
  }
  return sum / static_cast<double>(tokens.size());
}

double NgramModel::sentence_log_prob(std::span<const std::string> tokens) const {
  const std::size_t history = tables_.size() - 1;
  Ngram seq(history, bos_);
  for (const auto &w : tokens) seq.push_back(id(w));
  seq.push_back(id(kSentenceEnd));
  double sum = 0.0;
  for (std::size_t i = history; i < seq.size(); ++i) {
    sum += log_prob(std::span<const WordId>(seq.data() + i - history, history),
                    seq[i]);
  }
  return sum;
}

std::vector<std::vector<std::string>> NgramModel::contexts() const {
  std::vector<std::vector<std::string>> out;
  for (std::size_t k = 0; k + 1 < tables_.size(); ++k) {
    for (const auto &[gram, e] : tables_[k]) {
      if (e.log_backoff == 0.0) continue;
      std::vector<std::string> words;
      for (WordId w : gram) words.push_back(words_[w]);
      out.push_back(std::move(words));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void NgramModel::save_arpa(std::ostream &out) const {
  out << "\\data\\\n";
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    out << "ngram " << k + 1 << '=' << tables_[k].size() << '\n';
  }
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    out << "\n\\" << k + 1 << "-grams:\n";
    std::vector<std::pair<std::vector<std::string>, Entry>> rows;
    rows.reserve(tables_[k].size());
    for (const auto &[gram, e] : tables_[k]) {
      std::vector<std::string> words;
      for (WordId w : gram) words.push_back(words_[w]);
      rows.emplace_back(std::move(words), e);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    const bool with_backoff = k + 1 < tables_.size();
    for (const auto &[words, e] : rows) {
      out << format_double(e.log_prob / kLn10) << '\t' << join(words);
      if (with_backoff) out << '\t' << format_double(e.log_backoff / kLn10);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NgramModel NgramModel::load_arpa(std::istream &in) {
  NgramModel model;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw) == "\\data\\") {
      seen_data = true;
      break;
    }
  }
  if (!seen_data) throw ParseError(line_no, "missing \\data\\ header");

  std::vector<std::size_t> declared;
  std::string_view line;
  bool have_line = false;
  while (std::getline(in, raw)) {
    ++line_no;
    line = trim(raw);
    if (line.empty()) continue;
    if (line.substr(0, 6) != "ngram ") {
      have_line = true;
      break;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "malformed ngram count line");
    }
    std::size_t n = 0, count = 0;
    std::string_view ns = trim(line.substr(6, eq - 6));
    std::string_view cs = trim(line.substr(eq + 1));
    auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), n);
    auto r2 = std::from_chars(cs.data(), cs.data() + cs.size(), count);
    if (r1.ec != std::errc() || r2.ec != std::errc() ||
        r1.ptr != ns.data() + ns.size() || r2.ptr != cs.data() + cs.size()) {
      throw ParseError(line_no, "malformed ngram count line");
    }
    if (n != declared.size() + 1) {
      throw ParseError(line_no, "ngram counts must be listed in order 1..N");
    }
    declared.push_back(count);
  }
  if (declared.empty()) throw ParseError(line_no, "no ngram counts in header");

  const std::size_t order = declared.size();
  model.tables_.assign(order, Table{});
  std::vector<std::vector<std::pair<std::vector<std::string>, Entry>>> rows(order);

  std::size_t current = 0;  // 0 = no section yet
  auto close_section = [&](std::size_t at) {
    if (current == 0) return;
    if (rows[current - 1].size() != declared[current - 1]) {
      throw ParseError(at, "count mismatch for " + std::to_string(current) +
                               "-grams: header says " +
                               std::to_string(declared[current - 1]) +
                               ", found " +
                               std::to_string(rows[current - 1].size()));
    }
  };

  bool ended = false;
  while (true) {
    if (!have_line) {
      if (!std::getline(in, raw)) break;
      ++line_no;
      line = trim(raw);
    }
    have_line = false;
    if (line.empty()) continue;
    if (line.front() == '\\') {
      close_section(line_no);
      if (line == "\\end\\") {
        ended = true;
        break;
      }
      std::size_t n = 0;
      const char *first = line.data() + 1;
      auto r = std::from_chars(first, line.data() + line.size(), n);
      std::string_view rest(r.ptr, line.data() + line.size() - r.ptr);
      if (r.ec != std::errc() || rest != "-grams:") {
        throw ParseError(line_no, "malformed section header '" +
                                      std::string(line) + "'");
      }
      if (n != current + 1 || n > order) {
        throw ParseError(line_no, "unexpected section \\" + std::to_string(n) +
                                      "-grams:");
      }
      current = n;
      continue;
    }
    if (current == 0) throw ParseError(line_no, "n-gram outside a section");
    auto fields = split_ws(line);
    if (fields.size() != current + 1 && fields.size() != current + 2) {
      throw ParseError(line_no, "expected " + std::to_string(current) +
                                    " words with a probability and optional "
                                    "backoff");
    }
    Entry e;
    double v = 0.0;
    if (!parse_double(fields[0], v)) {
      throw ParseError(line_no, "bad probability '" + std::string(fields[0]) + "'");
    }
    e.log_prob = v * kLn10;
    if (fields.size() == current + 2) {
      if (!parse_double(fields.back(), v)) {
        throw ParseError(line_no, "bad backoff '" + std::string(fields.back()) + "'");
      }
      e.log_backoff = v * kLn10;
    }
    std::vector<std::string> words;
    for (std::size_t i = 1; i <= current; ++i) words.emplace_back(fields[i]);
    rows[current - 1].emplace_back(std::move(words), e);
  }
  if (!ended) throw ParseError(line_no, "missing \\end\\ marker");
  for (std::size_t k = 0; k < order; ++k) {
    if (rows[k].size() != declared[k]) {
      throw ParseError(line_no, "count mismatch for " + std::to_string(k + 1) +
                                    "-grams: header says " +
                                    std::to_string(declared[k]) + ", found " +
                                    std::to_string(rows[k].size()));
    }
  }

  for (const auto &[words, e] : rows[0]) model.words_.push_back(words[0]);
  model.index_vocab();
  for (std::size_t k = 0; k < order; ++k) {
    for (const auto &[words, e] : rows[k]) {
      Ngram gram;
      for (const auto &w : words) {
        auto it = model.ids_.find(w);
        if (it == model.ids_.end()) {
          throw Error("n-gram word '" + w + "' missing from the unigrams");
        }
        gram.push_back(it->second);
      }
      model.tables_[k][gram] = e;
    }
  }
  return model;
}

double score(const LmScorer &lm, std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error("cannot score empty sequence");
  return lm.score(tokens);
}

}  // namespace lexsimp
