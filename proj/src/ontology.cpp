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

#include "lexsimp/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "lexsimp/error.hpp"
#include "lexsimp/textproc.hpp"
#include "lexsimp/union_find.hpp"

namespace lexsimp {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

std::string GroupLabel::text() const { return join(tokens); }

bool AlternativeGroup::contains(std::span<const std::string> tokens) const {
  return std::any_of(labels.begin(), labels.end(), [&](const GroupLabel &l) {
    return std::equal(l.tokens.begin(), l.tokens.end(), tokens.begin(),
                      tokens.end());
  });
}

std::optional<GroupId> PhraseTable::lookup(
    std::span<const std::string> tokens) const {
  return lookup(join(tokens));
}

std::optional<GroupId> PhraseTable::lookup(std::string_view joined) const {
  auto it = index_.find(std::string(joined));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PhraseTable PhraseTable::from_groups(std::vector<AlternativeGroup> groups) {
  PhraseTable table;
  for (GroupId id = 0; id < groups.size(); ++id) {
    AlternativeGroup &g = groups[id];
    g.id = id;
    std::sort(g.labels.begin(), g.labels.end(),
              [](const GroupLabel &a, const GroupLabel &b) {
                return a.text() < b.text();
              });
    if (g.labels.size() < 2) {
      throw Error("group " + std::to_string(id) + " has fewer than 2 labels");
    }
    for (const GroupLabel &label : g.labels) {
      if (label.tokens.empty()) {
        throw Error("group " + std::to_string(id) + " has an empty label");
      }
      auto [it, inserted] = table.index_.emplace(label.text(), id);
      if (!inserted) {
        throw Error("label '" + label.text() + "' appears in groups " +
                    std::to_string(it->second) + " and " + std::to_string(id));
      }
      table.max_len_ = std::max(table.max_len_, label.tokens.size());
    }
  }
  table.groups_ = std::move(groups);
  return table;
}

void PhraseTable::write(std::ostream &out) const {
  for (const AlternativeGroup &g : groups_) {
    for (const GroupLabel &label : g.labels) {
      out << g.id << '\t' << label.text() << '\n';
    }
  }
}

PhraseTable PhraseTable::read(std::istream &in) {
  std::vector<AlternativeGroup> groups;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected 2 columns");
    GroupId id = 0;
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(std::string(fields[0]), &used);
      if (used != fields[0].size()) throw std::invalid_argument("trailing");
      id = static_cast<GroupId>(v);
    } catch (const std::exception &) {
      throw ParseError(line_no, "bad group id '" + std::string(fields[0]) + "'");
    }
    if (id != groups.size() && id + 1 != groups.size()) {
      throw ParseError(line_no, "group ids must be consecutive from 0");
    }
    if (id == groups.size()) groups.push_back(AlternativeGroup{id, {}});
    auto tokens = normalize_label(fields[1]);
    if (tokens.empty()) throw ParseError(line_no, "empty label");
    groups.back().labels.push_back(GroupLabel{std::move(tokens), {}});
  }
  try {
    return from_groups(std::move(groups));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    throw Error(std::string("invalid phrase table: ") + e.what());
  }
}

bool PhraseTable::operator==(const PhraseTable &other) const {
  if (groups_.size() != other.groups_.size()) return false;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto &a = groups_[i];
    const auto &b = other.groups_[i];
    if (a.id != b.id || a.labels.size() != b.labels.size()) return false;
    for (std::size_t k = 0; k < a.labels.size(); ++k) {
      if (a.labels[k].tokens != b.labels[k].tokens) return false;
    }
  }
  return true;
}

std::vector<ConceptRecord> parse_records(std::istream &in) {
  std::vector<ConceptRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 columns");
    ConceptRecord rec;
    rec.concept_id = std::string(trim(fields[0]));
    rec.label = std::string(trim(fields[1]));
    rec.source = std::string(trim(fields[2]));
    std::string_view kind = trim(fields[3]);
    rec.line = line_no;
    if (rec.concept_id.empty()) throw ParseError(line_no, "empty concept_id");
    if (rec.label.empty()) throw ParseError(line_no, "empty label");
    if (kind == "P") {
      rec.is_primary = true;
    } else if (kind == "A") {
      rec.is_primary = false;
    } else {
      throw ParseError(line_no, "label kind must be P or A, got '" +
                                    std::string(kind) + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

PhraseTable align(std::span<const ConceptRecord> records,
                  const AlignOptions &options) {
  // Dense concept indices in lexicographic order so the union-find layout,
  // and everything derived from it, does not depend on record order.
  std::set<std::string> concept_names;
  for (const auto &r : records) concept_names.insert(r.concept_id);
  std::vector<std::string> concepts(concept_names.begin(), concept_names.end());
  auto concept_index = [&](const std::string &id) {
    return static_cast<std::size_t>(
        std::lower_bound(concepts.begin(), concepts.end(), id) -
        concepts.begin());
  };

  DisjointSet sets(concepts.size());
  std::map<std::string, std::size_t> label_owner;  // label -> first concept
  std::map<std::string, std::vector<std::string>> label_tokens;
  std::map<std::string, std::set<std::string>> label_sources;
  std::vector<std::pair<std::size_t, std::string>> memberships;

  for (const auto &r : records) {
    auto tokens = normalize_label(r.label);
    if (tokens.empty()) continue;
    std::string key = join(tokens);
    std::size_t c = concept_index(r.concept_id);
    auto [it, inserted] = label_owner.emplace(key, c);
    if (!inserted) sets.unite(it->second, c);
    label_tokens.emplace(key, std::move(tokens));
    label_sources[key].insert(r.source);
    memberships.emplace_back(c, key);
  }

  // Root -> labels; the smallest concept index of a set is its first name.
  std::map<std::size_t, std::set<std::string>> by_root;
  std::map<std::size_t, std::size_t> root_min;
  for (const auto &[c, key] : memberships) {
    std::size_t root = sets.find(c);
    by_root[root].insert(key);
    auto [it, inserted] = root_min.emplace(root, c);
    if (!inserted) it->second = std::min(it->second, c);
  }

  std::vector<std::pair<std::size_t, std::size_t>> order;  // (min, root)
  for (const auto &[root, labels] : by_root) {
    if (labels.size() >= 2) order.emplace_back(root_min[root], root);
  }
  std::sort(order.begin(), order.end());

  std::vector<AlternativeGroup> groups;
  groups.reserve(order.size());
  for (const auto &[min_concept, root] : order) {
    AlternativeGroup g;
    g.id = static_cast<GroupId>(groups.size());
    for (const std::string &key : by_root[root]) {
      const auto &src = label_sources[key];
      g.labels.push_back(GroupLabel{label_tokens[key],
                                    {src.begin(), src.end()}});
    }
    groups.push_back(std::move(g));
  }

  if (options.plurals) {
    std::set<std::string> taken;
    for (const auto &g : groups) {
      for (const auto &l : g.labels) taken.insert(l.text());
    }
    for (auto &g : groups) {
      std::vector<GroupLabel> extra;
      for (const auto &l : g.labels) {
        auto plural = pluralize(l.tokens);
        if (taken.insert(join(plural)).second) {
          extra.push_back(GroupLabel{std::move(plural), {"plural"}});
        }
      }
      for (auto &e : extra) g.labels.push_back(std::move(e));
    }
  }
  return PhraseTable::from_groups(std::move(groups));
}

std::optional<GroupId> lookup(const PhraseTable &table,
                              std::span<const std::string> phrase) {
  return table.lookup(phrase);
}

std::vector<std::string> pluralize(std::span<const std::string> tokens) {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  if (out.empty()) return out;
  std::string &head = out.back();
  if (head.empty() || !std::isalpha(static_cast<unsigned char>(head.back()))) {
    return out;
  }
  if (ends_with(head, "s") || ends_with(head, "x") || ends_with(head, "z") ||
      ends_with(head, "ch") || ends_with(head, "sh")) {
    head += "es";
  } else if (head.size() >= 2 && head.back() == 'y' &&
             !is_vowel(head[head.size() - 2])) {
    head.pop_back();
    head += "ies";
  } else {
    head += "s";
  }
  return out;
}

}  // namespace lexsimp
