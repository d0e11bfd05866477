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

#include "lexsimp/eval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <future>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lexsimp/error.hpp"
#include "lexsimp/textproc.hpp"

namespace lexsimp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(trim(line.substr(start)));
      return out;
    }
    out.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

using Counter = std::unordered_map<std::string, long long>;

Counter ngram_counts(std::span<const std::string> tokens, std::size_t n) {
  Counter counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[join(tokens.subspan(i, n))];
  }
  return counts;
}

long long get(const Counter &c, const std::string &key) {
  auto it = c.find(key);
  return it == c.end() ? 0 : it->second;
}

double f1(double p, double r) {
  return (p > 0.0 || r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
}

struct SariParts {
  double keep = 0.0;
  double del = 0.0;
  double add = 0.0;
};

// Keep F1, deletion precision and addition F1 for one n-gram order, with the
// source and output counts replicated once per reference.
SariParts sari_ngram(const Counter &src, const Counter &out, const Counter &ref,
                     long long num_refs) {
  SariParts parts;

  // Keep: min(src, out), good = min(keep, ref), all = min(src, ref).
  double keep_p_sum = 0.0, keep_r_sum = 0.0;
  std::size_t keep_size = 0, keep_all_size = 0;
  for (const auto &[g, sc] : src) {
    long long s = sc * num_refs;
    long long keep = std::min(s, get(out, g) * num_refs);
    long long r = get(ref, g);
    long long all = std::min(s, r);
    if (all > 0) ++keep_all_size;
    if (keep <= 0) continue;
    ++keep_size;
    long long good = std::min(keep, r);
    if (good > 0) {
      keep_p_sum += static_cast<double>(good) / static_cast<double>(keep);
      keep_r_sum += static_cast<double>(good) / static_cast<double>(all);
    }
  }
  double keep_p = keep_size > 0 ? keep_p_sum / keep_size : 0.0;
  double keep_r = keep_all_size > 0 ? keep_r_sum / keep_all_size : 0.0;
  parts.keep = f1(keep_p, keep_r);

  // Deletion precision: del = src - out, good = del - ref.
  double del_sum = 0.0;
  std::size_t del_size = 0;
  for (const auto &[g, sc] : src) {
    long long del = sc * num_refs - get(out, g) * num_refs;
    if (del <= 0) continue;
    ++del_size;
    long long good = del - get(ref, g);
    if (good > 0) del_sum += static_cast<double>(good) / static_cast<double>(del);
  }
  parts.del = del_size > 0 ? del_sum / del_size : 0.0;

  // Addition works on n-gram types.
  std::size_t added = 0, added_good = 0, ref_new = 0;
  for (const auto &[g, oc] : out) {
    if (src.count(g)) continue;
    ++added;
    if (ref.count(g)) ++added_good;
  }
  for (const auto &[g, rc] : ref) {
    if (!src.count(g)) ++ref_new;
  }
  double add_p = added > 0 ? static_cast<double>(added_good) / added : 0.0;
  double add_r = ref_new > 0 ? static_cast<double>(added_good) / ref_new : 0.0;
  parts.add = f1(add_p, add_r);
  return parts;
}

}  // namespace

Category parse_category(std::string_view token) {
  token = trim(token);
  if (token == "S" || token == "s" || token == "2") return Category::kSimpler;
  if (token == "F" || token == "f" || token == "1") return Category::kFailed;
  if (token == "E" || token == "e" || token == "3") return Category::kEqual;
  if (token == "N" || token == "n" || token == "4") return Category::kNeither;
  throw Error("unknown judgment category '" + std::string(token) + "'");
}

char category_letter(Category c) {
  switch (c) {
    case Category::kSimpler: return 'S';
    case Category::kFailed: return 'F';
    case Category::kEqual: return 'E';
    case Category::kNeither: return 'N';
  }
  return '?';
}

std::vector<JudgmentRecord> parse_judgments(std::istream &in) {
  std::vector<JudgmentRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 columns");
    if (first && to_lower(fields[2]) == "category") {
      first = false;
      continue;
    }
    first = false;
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(line_no, "empty sentence or system id");
    }
    JudgmentRecord rec{fields[0], fields[1], Category::kEqual, line_no};
    try {
      rec.category = parse_category(fields[2]);
    } catch (const Error &e) {
      throw ParseError(line_no, e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<UnchangedFlag> parse_unchanged(std::istream &in) {
  std::vector<UnchangedFlag> flags;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 2) throw ParseError(line_no, "expected 2 columns");
    if (first && to_lower(fields[0]) == "sentence_id") {
      first = false;
      continue;
    }
    first = false;
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(line_no, "empty sentence or system id");
    }
    flags.push_back(UnchangedFlag{fields[0], fields[1]});
  }
  return flags;
}

std::map<std::string, EvalCounts> aggregate_judgments(
    std::span<const JudgmentRecord> records,
    std::span<const UnchangedFlag> unchanged, int replications) {
  if (replications < 1) throw Error("replications must be at least 1");
  std::map<std::string, EvalCounts> counts;
  for (const auto &r : records) {
    EvalCounts &c = counts[r.system_id];
    switch (r.category) {
      case Category::kSimpler: ++c.simpler; break;
      case Category::kFailed: ++c.failed; break;
      case Category::kEqual: ++c.equal; break;
      case Category::kNeither: ++c.neither; break;
    }
  }
  for (const auto &u : unchanged) {
    counts[u.system_id].unchanged += static_cast<std::uint64_t>(replications);
  }
  return counts;
}

double simplification_gain(const EvalCounts &c) {
  if (c.total() == 0) throw Error("no judgments");
  return (static_cast<double>(c.simpler) - static_cast<double>(c.failed)) /
         static_cast<double>(c.total());
}

double sg_significance(const EvalCounts &a, const EvalCounts &b,
                       int iterations, std::uint64_t seed) {
  if (a.total() == 0 || b.total() == 0) throw Error("no judgments");
  if (iterations < 1000) throw Error("bootstrap needs at least 1000 iterations");
  std::mt19937_64 rng(seed);

  // A multinomial resample of T judgments, reduced to its (S, F) marginals.
  auto resample_sg = [&rng](const EvalCounts &c) {
    const auto t = static_cast<long long>(c.total());
    const double ps = static_cast<double>(c.simpler) / static_cast<double>(t);
    long long s = std::binomial_distribution<long long>(t, ps)(rng);
    long long f = 0;
    const auto rest_mass = static_cast<long long>(c.total() - c.simpler);
    if (rest_mass > 0 && t - s > 0) {
      const double pf =
          static_cast<double>(c.failed) / static_cast<double>(rest_mass);
      f = std::binomial_distribution<long long>(t - s, pf)(rng);
    }
    return static_cast<double>(s - f) / static_cast<double>(t);
  };

  long long at_or_below = 0, at_or_above = 0;
  for (int i = 0; i < iterations; ++i) {
    double diff = resample_sg(a) - resample_sg(b);
    if (diff <= 0.0) ++at_or_below;
    if (diff >= 0.0) ++at_or_above;
  }
  double tail = static_cast<double>(std::min(at_or_below, at_or_above) + 1) /
                static_cast<double>(iterations + 1);
  return std::min(1.0, 2.0 * tail);
}

std::vector<std::string> metric_tokens(std::string_view sentence,
                                       bool lowercase) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t start = i;
    while (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    if (i > start) {
      std::string_view tok = sentence.substr(start, i - start);
      out.push_back(lowercase ? to_lower(tok) : std::string(tok));
    }
  }
  return out;
}

double sari(std::string_view source, std::string_view output,
            std::span<const std::string> references) {
  if (references.empty()) throw Error("SARI needs at least one reference");
  auto src = metric_tokens(source, true);
  auto out = metric_tokens(output, true);
  if (src.empty() && out.empty()) {
    throw Error("SARI is undefined for an empty source and output");
  }
  std::vector<std::vector<std::string>> refs;
  for (const auto &r : references) refs.push_back(metric_tokens(r, true));
  const auto num_refs = static_cast<long long>(refs.size());

  double keep = 0.0, del = 0.0, add = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    Counter ref_counts;
    for (const auto &r : refs) {
      for (const auto &[g, c] : ngram_counts(r, n)) ref_counts[g] += c;
    }
    SariParts p = sari_ngram(ngram_counts(src, n), ngram_counts(out, n),
                             ref_counts, num_refs);
    keep += p.keep;
    del += p.del;
    add += p.add;
  }
  return 100.0 * (keep / 4.0 + del / 4.0 + add / 4.0) / 3.0;
}

double bleu(std::span<const std::string> outputs,
            std::span<const std::string> references) {
  if (outputs.size() != references.size()) {
    throw Error("BLEU needs one reference per output (got " +
                std::to_string(outputs.size()) + " outputs and " +
                std::to_string(references.size()) + " references)");
  }
  if (outputs.empty()) throw Error("BLEU needs at least one sentence");
  long long matches[4] = {0, 0, 0, 0};
  long long totals[4] = {0, 0, 0, 0};
  long long out_len = 0, ref_len = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    auto hyp = metric_tokens(outputs[i], false);
    auto ref = metric_tokens(references[i], false);
    out_len += static_cast<long long>(hyp.size());
    ref_len += static_cast<long long>(ref.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      Counter hc = ngram_counts(hyp, n);
      Counter rc = ngram_counts(ref, n);
      for (const auto &[g, c] : hc) {
        matches[n - 1] += std::min(c, get(rc, g));
        totals[n - 1] += c;
      }
    }
  }
  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    if (matches[n] == 0 || totals[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matches[n]) /
                        static_cast<double>(totals[n]));
  }
  double bp = out_len > ref_len
                  ? 1.0
                  : std::exp(1.0 - static_cast<double>(ref_len) /
                                       static_cast<double>(out_len));
  return 100.0 * bp * std::exp(log_sum / 4.0);
}

std::vector<ParallelPair> parse_parallel(std::istream &in) {
  std::vector<ParallelPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(line_no, "expected source<TAB>reference");
    }
    pairs.push_back(ParallelPair{line.substr(0, tab), line.substr(tab + 1)});
  }
  return pairs;
}

std::vector<double> default_alpha_grid() {
  std::set<double> grid;
  for (int i = 0; i <= 20; ++i) grid.insert(i / 20.0);
  for (int i = 90; i <= 100; ++i) grid.insert(i / 100.0);
  return {grid.begin(), grid.end()};
}

std::vector<double> parse_grid(std::string_view spec) {
  spec = trim(spec);
  if (spec == "default") return default_alpha_grid();
  auto number = [](std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) {
      throw Error("malformed grid value '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw Error("grid range must be start:stop:step");
    double start = number(parts[0]), stop = number(parts[1]),
           step = number(parts[2]);
    if (!(step > 0.0) || stop < start) throw Error("empty or invalid grid range");
    const auto steps = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long i = 0; i <= steps; ++i) {
      grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e10) / 1e10);
    }
  } else {
    for (const auto &p : split(spec, ',')) grid.push_back(number(p));
  }
  if (grid.empty()) throw Error("empty grid");
  for (double a : grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error("grid values must lie in [0, 1]");
  }
  return grid;
}

GridSearchResult grid_search_alpha(std::span<const ParallelPair> dev,
                                   const PhraseTable &table,
                                   const LmScorer &lm, const TermScorer &wf,
                                   std::span<const double> grid,
                                   SimplifierConfig base, unsigned threads) {
  if (dev.empty()) throw Error("empty development set");
  if (grid.empty()) throw Error("empty alpha grid");

  auto evaluate = [&](double alpha) {
    SimplifierConfig config = base;
    config.alpha = alpha;
    double total = 0.0;
    for (const auto &pair : dev) {
      SimplificationResult r = simplify(pair.source, table, lm, wf, config);
      std::string ref[] = {pair.reference};
      total += sari(pair.source, r.final, ref);
    }
    return total / static_cast<double>(dev.size());
  };

  std::vector<double> scores(grid.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) scores[i] = evaluate(grid[i]);
  } else {
    std::vector<std::future<double>> pending;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      pending.push_back(std::async(std::launch::async, evaluate, grid[i]));
      if (pending.size() == threads || i + 1 == grid.size()) {
        std::size_t first = i + 1 - pending.size();
        for (std::size_t k = 0; k < pending.size(); ++k) {
          scores[first + k] = pending[k].get();
        }
        pending.clear();
      }
    }
  }

  GridSearchResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.curve.emplace_back(grid[i], scores[i]);
    bool take = i == 0 || scores[i] > result.best_sari ||
                (scores[i] == result.best_sari && grid[i] < result.best_alpha);
    if (take) {
      result.best_alpha = grid[i];
      result.best_sari = scores[i];
    }
  }
  return result;
}

void write_report_tsv(std::ostream &out,
                      const std::map<std::string, EvalCounts> &counts) {
  out << "system\tS\tF\tE\tN\tU\tT\tSG\n";
  for (const auto &[system, c] : counts) {
    out << system << '\t' << c.simpler << '\t' << c.failed << '\t' << c.equal
        << '\t' << c.neither << '\t' << c.unchanged << '\t' << c.total() << '\t';
    if (c.total() > 0) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", simplification_gain(c));
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  }
}

void write_report_table(std::ostream &out,
                        const std::map<std::string, EvalCounts> &counts) {
  std::size_t width = 6;
  for (const auto &[system, c] : counts) width = std::max(width, system.size());
  auto row = [&](const std::string &name, const std::vector<std::string> &cells) {
    out << std::left << std::setw(static_cast<int>(width)) << name;
    for (const auto &cell : cells) out << " | " << std::right << std::setw(6) << cell;
    out << '\n';
  };
  row("system", {"S", "F", "E", "N", "U", "SG"});
  out << std::string(width + 9 * 6, '-') << '\n';
  for (const auto &[system, c] : counts) {
    std::string sg = "NA";
    if (c.total() > 0) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", simplification_gain(c));
      sg = buf;
    }
    row(system, {std::to_string(c.simpler), std::to_string(c.failed),
                 std::to_string(c.equal), std::to_string(c.neither),
                 std::to_string(c.unchanged), sg});
  }
}

}  // namespace lexsimp
