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

#ifndef LEXSIMP_TEXTPROC_HPP_
#define LEXSIMP_TEXTPROC_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexsimp/ontology.hpp"

namespace lexsimp {

struct Token {
  std::string text;         // surface form
  std::string norm;         // lowercase(text)
  std::size_t char_offset;  // byte offset of text in the sentence

  bool operator==(const Token &) const = default;
};

// Token range [start, end) matched against a phrase-table group.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  GroupId group_id = 0;
  std::vector<std::string> matched;

  std::size_t length() const { return end - start; }
  bool operator==(const Span &) const = default;
};

std::string to_lower(std::string_view text);
bool is_punct(char c);

// Splits on whitespace and detaches leading and trailing punctuation
// characters, one token per character.
std::vector<Token> tokenize(std::string_view sentence);

// Inverse of tokenize up to whitespace: tokens that were separated by
// whitespace get exactly one space, attached tokens stay attached.
std::string detokenize(std::span<const Token> tokens);

std::vector<std::string> norms(std::span<const Token> tokens);
std::string join(std::span<const std::string> words, std::string_view sep = " ");

// Lowercased, trimmed, whitespace-collapsed tokens of an ontology label.
std::vector<std::string> normalize_label(std::string_view label);

// Greedy leftmost-longest matching: at each position take the longest table
// phrase of at most max_len tokens, then continue after it. max_len = 0 means
// the table's longest label.
std::vector<Span> extract_spans(std::span<const Token> tokens,
                                const PhraseTable &table,
                                std::size_t max_len = 0);

}  // namespace lexsimp

#endif  // LEXSIMP_TEXTPROC_HPP_
