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

#include "lexsimp/textproc.hpp"

#include <algorithm>
#include <cctype>

namespace lexsimp {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

void push(std::vector<Token> &out, std::string_view sentence, std::size_t pos,
          std::size_t len) {
  std::string text(sentence.substr(pos, len));
  std::string norm = to_lower(text);
  out.push_back(Token{std::move(text), std::move(norm), pos});
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0 &&
         static_cast<unsigned char>(c) < 0x80;
}

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  while (i < n) {
    while (i < n && is_space(sentence[i])) ++i;
    if (i == n) break;
    std::size_t begin = i;
    while (i < n && !is_space(sentence[i])) ++i;
    std::size_t end = i;

    std::size_t core_begin = begin;
    while (core_begin < end && is_punct(sentence[core_begin])) ++core_begin;
    std::size_t core_end = end;
    while (core_end > core_begin && is_punct(sentence[core_end - 1])) {
      --core_end;
    }
    for (std::size_t p = begin; p < core_begin; ++p) push(tokens, sentence, p, 1);
    if (core_end > core_begin) {
      push(tokens, sentence, core_begin, core_end - core_begin);
    }
    for (std::size_t p = core_end; p < end; ++p) push(tokens, sentence, p, 1);
  }
  return tokens;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      const Token &prev = tokens[i - 1];
      if (tokens[i].char_offset > prev.char_offset + prev.text.size()) {
        out.push_back(' ');
      }
    }
    out += tokens[i].text;
  }
  return out;
}

std::vector<std::string> norms(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token &t : tokens) out.push_back(t.norm);
  return out;
}

std::string join(std::span<const std::string> words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += sep;
    out += words[i];
  }
  return out;
}

std::vector<std::string> normalize_label(std::string_view label) {
  return norms(tokenize(label));
}

std::vector<Span> extract_spans(std::span<const Token> tokens,
                                const PhraseTable &table,
                                std::size_t max_len) {
  std::vector<Span> spans;
  if (max_len == 0) max_len = table.max_label_length();
  if (max_len == 0 || table.empty()) return spans;

  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t longest = std::min(max_len, tokens.size() - i);
    bool found = false;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string key = tokens[i].norm;
      for (std::size_t k = 1; k < len; ++k) {
        key.push_back(' ');
        key += tokens[i + k].norm;
      }
      if (auto id = table.lookup(key)) {
        Span span{i, i + len, *id, {}};
        for (std::size_t k = i; k < i + len; ++k) {
          span.matched.push_back(tokens[k].norm);
        }
        spans.push_back(std::move(span));
        i += len;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  return spans;
}

}  // namespace lexsimp
