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

#ifndef LEXSIMP_ONTOLOGY_HPP_
#define LEXSIMP_ONTOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexsimp {

using GroupId = std::uint32_t;

// One row of an ontology label dump.
struct ConceptRecord {
  std::string concept_id;
  std::string label;
  std::string source;
  bool is_primary = false;
  std::size_t line = 0;  // 1-based source line, 0 when built in memory

  bool operator==(const ConceptRecord &) const = default;
};

// A normalized label and the ontologies it came from.
struct GroupLabel {
  std::vector<std::string> tokens;
  std::vector<std::string> sources;  // sorted, unique

  std::string text() const;
};

// Labels that can replace one another. Labels are sorted by text().
struct AlternativeGroup {
  GroupId id = 0;
  std::vector<GroupLabel> labels;

  bool contains(std::span<const std::string> tokens) const;
};

struct AlignOptions {
  // Add a naive plural of each label's final word as an extra member.
  bool plurals = true;
};

// Immutable substitution vocabulary built by align() or read().
//
// Invariants: every group holds at least two distinct labels, no label occurs
// in two groups, and the index covers exactly the labels in the groups.
class PhraseTable {
 public:
  PhraseTable() = default;

  const std::vector<AlternativeGroup> &groups() const { return groups_; }
  const AlternativeGroup &group(GroupId id) const { return groups_.at(id); }
  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }

  // Group containing the normalized token sequence, if any.
  std::optional<GroupId> lookup(std::span<const std::string> tokens) const;
  std::optional<GroupId> lookup(std::string_view joined) const;

  // Length in tokens of the longest label; 0 for an empty table.
  std::size_t max_label_length() const { return max_len_; }
  std::size_t label_count() const { return index_.size(); }

  // `group_id<TAB>label` per line, sorted by group then label.
  void write(std::ostream &out) const;
  static PhraseTable read(std::istream &in);

  // Compares group ids and label token sequences; provenance is ignored
  // because the table file does not carry it.
  bool operator==(const PhraseTable &other) const;

  static PhraseTable from_groups(std::vector<AlternativeGroup> groups);

 private:
  std::vector<AlternativeGroup> groups_;
  std::unordered_map<std::string, GroupId> index_;
  std::size_t max_len_ = 0;
};

// Reads the 4-column TSV `concept_id, label, source, P|A`. Lines starting
// with '#' and blank lines are skipped.
std::vector<ConceptRecord> parse_records(std::istream &in);

// Merges concepts that share a normalized label and keeps groups with at
// least two labels. Group ids ascend with the smallest member concept_id.
PhraseTable align(std::span<const ConceptRecord> records,
                  const AlignOptions &options = {});

std::optional<GroupId> lookup(const PhraseTable &table,
                              std::span<const std::string> phrase);

// Naive English plural of the final token: "s", "y"->"ies" after a
// consonant, "es" after s/x/z/ch/sh.
std::vector<std::string> pluralize(std::span<const std::string> tokens);

}  // namespace lexsimp

#endif  // LEXSIMP_ONTOLOGY_HPP_
