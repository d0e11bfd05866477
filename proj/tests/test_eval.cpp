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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "lexsimp/error.hpp"
#include "lexsimp/eval.hpp"
#include "oracles.hpp"

using namespace lexsimp;
using namespace lexsimp::testing;

namespace {

EvalCounts counts(std::uint64_t s, std::uint64_t f, std::uint64_t e,
                  std::uint64_t n, std::uint64_t u) {
  return EvalCounts{s, f, e, n, u};
}

const EvalCounts kHuman = counts(1730, 273, 904, 40, 4053);
const EvalCounts kNgram = counts(1452, 1004, 1732, 110, 2702);
const EvalCounts kGpt1 = counts(1404, 747, 1736, 117, 2996);

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string random_sentence(std::mt19937 &rng, int min_len) {
  std::uniform_int_distribution<int> len(min_len, 10), word(0, 7);
  std::string s;
  for (int i = 0, n = len(rng); i < n; ++i) {
    if (i) s += ' ';
    s += static_cast<char>('a' + word(rng));
  }
  return s;
}

}  // namespace

TEST_CASE("simplification gain of the published rows") {
  CHECK(kHuman.total() == 7000);
  CHECK(kNgram.total() == 7000);
  CHECK(kGpt1.total() == 7000);
  CHECK(simplification_gain(kHuman) == doctest::Approx(1457.0 / 7000.0));
  CHECK(round2(simplification_gain(kHuman)) == 0.21);
  CHECK(round2(simplification_gain(kNgram)) == 0.06);
  CHECK(round2(simplification_gain(kGpt1)) == 0.09);
  CHECK(simplification_gain(counts(5, 5, 3, 1, 9)) == 0.0);
  CHECK_THROWS_WITH_AS(simplification_gain(EvalCounts{}), "no judgments", Error);
}

TEST_CASE("simplification gain properties") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<std::uint64_t> c(0, 500);
  for (int i = 0; i < 200; ++i) {
    auto x = counts(c(rng), c(rng), c(rng), c(rng), c(rng) + 1);
    auto swapped = x;
    std::swap(swapped.simpler, swapped.failed);
    CHECK(simplification_gain(swapped) == -simplification_gain(x));
    for (std::uint64_t k : {2u, 3u, 7u}) {
      auto scaled = counts(x.simpler * k, x.failed * k, x.equal * k,
                           x.neither * k, x.unchanged * k);
      CHECK(simplification_gain(scaled) == doctest::Approx(simplification_gain(x)));
    }
    double sg = simplification_gain(x);
    CHECK(sg >= -1.0);
    CHECK(sg <= 1.0);
  }
}

TEST_CASE("category tokens") {
  CHECK(parse_category("S") == Category::kSimpler);
  CHECK(parse_category("f") == Category::kFailed);
  CHECK(parse_category("1") == Category::kFailed);
  CHECK(parse_category("2") == Category::kSimpler);
  CHECK(parse_category("3") == Category::kEqual);
  CHECK(parse_category("4") == Category::kNeither);
  CHECK(category_letter(Category::kNeither) == 'N');
  CHECK_THROWS_AS(parse_category("X"), Error);
  CHECK_THROWS_AS(parse_category("5"), Error);
}

TEST_CASE("aggregating judgments") {
  std::ostringstream judg, flags;
  judg << "sentence_id,system_id,category\n";
  flags << "sentence_id,system_id\n";
  // 1000 pairs; 579 unchanged, the rest judged 7 times each.
  for (int i = 0; i < 1000; ++i) {
    if (i < 579) {
      flags << "s" << i << ",human\n";
      continue;
    }
    for (int k = 0; k < 7; ++k) judg << "s" << i << ",human," << "SFEN"[k % 4] << "\n";
  }
  judg << "s1,ngram,S\ns2,ngram,F\n";
  std::istringstream jin(judg.str()), fin(flags.str());
  auto records = parse_judgments(jin);
  auto unchanged = parse_unchanged(fin);
  auto by_system = aggregate_judgments(records, unchanged);
  REQUIRE(by_system.size() == 2);
  const auto &h = by_system.at("human");
  CHECK(h.unchanged == 4053);
  CHECK(h.total() == 7000);
  CHECK(h.simpler == 421 * 2);
  CHECK(by_system.at("ngram") == counts(1, 1, 0, 0, 0));

  auto none = aggregate_judgments({}, {});
  CHECK(none.empty());
  auto triple = aggregate_judgments(records, unchanged, 3);
  CHECK(triple.at("human").unchanged == 579 * 3);
}

TEST_CASE("judgment parse errors carry the line") {
  std::istringstream bad("a,b,S\nc,d,Q\n");
  CHECK_THROWS_WITH_AS(parse_judgments(bad), doctest::Contains("line 2"), ParseError);
  std::istringstream short_row("a,b\n");
  CHECK_THROWS_WITH_AS(parse_judgments(short_row), "line 1: expected 3 columns",
                       ParseError);
  std::istringstream flags("a,b,c\n");
  CHECK_THROWS_AS(parse_unchanged(flags), ParseError);
}

TEST_CASE("SARI matches frozen reference values") {
  std::vector<std::string> r1{"a b c d"};
  CHECK(sari("a b c d", "a b c d", r1) == doctest::Approx(33.333333333333).epsilon(1e-10));
  std::vector<std::string> r2{"a e c d"};
  CHECK(sari("a b c d", "a e c d", r2) == doctest::Approx(83.333333333333).epsilon(1e-10));
  CHECK(sari("a b c d", "x y z", r2) == doctest::Approx(24.305555555556).epsilon(1e-10));
  std::vector<std::string> r3{"the patient has earache ."};
  CHECK(sari("the patient has otalgia .", "The patient has ear pain .", r3) ==
        doctest::Approx(58.333333333333).epsilon(1e-10));

  std::vector<std::string> none;
  CHECK_THROWS_AS(sari("a", "a", none), Error);
  CHECK_THROWS_AS(sari("", " ", r1), Error);
}

TEST_CASE("SARI agrees with the brute-force oracle") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> nrefs(1, 3);
  for (int i = 0; i < 200; ++i) {
    std::string src = random_sentence(rng, 1);
    std::string out = random_sentence(rng, 1);
    std::vector<std::string> refs;
    for (int k = 0, n = nrefs(rng); k < n; ++k) refs.push_back(random_sentence(rng, 1));
    double got = sari(src, out, refs);
    CHECK(std::abs(got - oracle::sari(src, out, refs)) < 1e-6);
    CHECK(got >= 0.0);
    CHECK(got <= 100.0);
  }
}

TEST_CASE("BLEU matches frozen reference values") {
  std::vector<std::string> outs{"the cat sat on the mat today",
                                "a quick brown fox jumps over",
                                "he has ear pain and a fever"};
  std::vector<std::string> refs{"the cat sat on a mat today",
                                "the quick brown fox jumps over it",
                                "he has earache and a fever"};
  CHECK(bleu(outs, refs) == doctest::Approx(49.595969443820).epsilon(1e-10));
  CHECK(bleu(refs, refs) == doctest::Approx(100.0));

  std::vector<std::string> o{"a b c d e"}, r{"a b c x e"};
  CHECK(bleu(o, r) == 0.0);

  std::vector<std::string> two{"a b c d", "e f g h"};
  CHECK_THROWS_AS(bleu(o, two), Error);
  std::vector<std::string> empty;
  CHECK_THROWS_AS(bleu(empty, empty), Error);
}

TEST_CASE("BLEU agrees with the brute-force oracle") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> size(1, 5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> outs, refs;
    for (int k = 0, n = size(rng); k < n; ++k) {
      outs.push_back(random_sentence(rng, 1));
      refs.push_back(random_sentence(rng, 1));
    }
    double got = bleu(outs, refs);
    CHECK(std::abs(got - oracle::bleu(outs, refs)) < 1e-6);
  }
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> x{random_sentence(rng, 4), random_sentence(rng, 4)};
    CHECK(bleu(x, x) == doctest::Approx(100.0).epsilon(1e-12));
  }
}

TEST_CASE("bootstrap significance") {
  CHECK(sg_significance(kHuman, kHuman) > 0.9);
  double p = sg_significance(kHuman, kNgram, 10000, 42);
  CHECK(p < 0.05);
  CHECK(p == sg_significance(kHuman, kNgram, 10000, 42));
  double tiny = sg_significance(counts(1, 1, 1, 0, 0), counts(2, 0, 1, 0, 0), 1000, 7);
  CHECK(tiny > 0.0);
  CHECK(tiny <= 1.0);
  CHECK_THROWS_AS(sg_significance(kHuman, kNgram, 999), Error);
  CHECK_THROWS_AS(sg_significance(kHuman, EvalCounts{}), Error);
}

TEST_CASE("alpha grids") {
  auto g = default_alpha_grid();
  CHECK(g.size() == 29);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  CHECK(std::find(g.begin(), g.end(), 0.7) != g.end());
  CHECK(std::find(g.begin(), g.end(), 0.93) != g.end());

  CHECK(parse_grid("default") == g);
  auto r = parse_grid("0:1:0.25");
  CHECK(r == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_grid("0.9:1:0.01").size() == 11);
  CHECK(parse_grid(" 0.2, 0.7 ") == std::vector<double>{0.2, 0.7});
  CHECK_THROWS_AS(parse_grid("0.5,x"), Error);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), Error);
  CHECK_THROWS_AS(parse_grid("0:1"), Error);
  CHECK_THROWS_AS(parse_grid("0,1.5"), Error);
  CHECK_THROWS_AS(parse_grid(""), Error);
}

TEST_CASE("grid search finds the step") {
  // y wins exactly when alpha >= 0.5.
  auto table = make_table({{"x", "y"}});
  TokenMeanLm lm({{"x", -3.0}, {"y", -1.0}}, 0.0);
  TermTable wf({{"x", -1.0}, {"y", -3.0}}, 0.0);
  std::vector<ParallelPair> dev{{"x", "y"}, {"X", "Y"}};
  auto grid = default_alpha_grid();
  auto res = grid_search_alpha(dev, table, lm, wf, grid);
  CHECK(res.best_alpha == 0.5);
  REQUIRE(res.curve.size() == grid.size());
  double low = res.curve.front().second, high = res.curve.back().second;
  CHECK(high > low);
  for (const auto &[a, s] : res.curve) CHECK(s == (a >= 0.5 ? high : low));
  CHECK(res.best_sari == high);

  auto par = grid_search_alpha(dev, table, lm, wf, grid, {}, 4);
  CHECK(par.curve == res.curve);

  std::vector<double> one{0.3};
  auto single = grid_search_alpha(dev, table, lm, wf, one);
  CHECK(single.best_alpha == 0.3);
  CHECK(single.curve.size() == 1);

  std::vector<ParallelPair> none;
  CHECK_THROWS_AS(grid_search_alpha(none, table, lm, wf, grid), Error);
}

TEST_CASE("parallel corpus parsing") {
  std::istringstream in("a b\tc\n\nd\te f\n");
  auto pairs = parse_parallel(in);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].reference == "e f");
  std::istringstream bad("no tab here\n");
  CHECK_THROWS_AS(parse_parallel(bad), ParseError);
}

TEST_CASE("report writers") {
  std::map<std::string, EvalCounts> rows{{"human", kHuman}, {"ngram", kNgram}};
  std::ostringstream tsv, table;
  write_report_tsv(tsv, rows);
  CHECK(tsv.str() ==
        "system\tS\tF\tE\tN\tU\tT\tSG\n"
        "human\t1730\t273\t904\t40\t4053\t7000\t0.208143\n"
        "ngram\t1452\t1004\t1732\t110\t2702\t7000\t0.064000\n");
  write_report_table(table, rows);
  CHECK(table.str().find("0.21") != std::string::npos);
  CHECK(table.str().find("0.06") != std::string::npos);
}
