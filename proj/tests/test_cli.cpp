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

// Runs the lexsimp binary end to end and checks exit codes and outputs.

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const std::string kData = LEXSIMP_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = LEXSIMP_SCRATCH;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path &p, const std::string &text) {
  std::ofstream(p, std::ios::binary) << text;
}

Run lexsimp(const std::string &args) {
  static int counter = 0;
  const fs::path out = scratch() / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = scratch() / ("err" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string("\"") + LEXSIMP_CLI + "\" " + args + " >\"" +
                    out.string() + "\" 2>\"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const std::string &rel) { return "\"" + kData + "/" + rel + "\""; }
std::string tmp(const std::string &name) { return "\"" + (scratch() / name).string() + "\""; }

// Shared models built once from the fixture corpus.
struct Models {
  std::string table = tmp("table.tsv");
  std::string lm = tmp("lm.arpa");
  Models() {
    REQUIRE(lexsimp("build-table " + data("ontology/snomed.tsv") + " " +
                    data("ontology/chv.tsv") + " " + data("ontology/hpo.tsv") +
                    " -o " + table)
                .code == 0);
    REQUIRE(lexsimp("train-lm -i " + data("corpus/train.txt") + " --min-count 1 -o " + lm)
                .code == 0);
  }
};

const Models &models() {
  static const Models m;
  return m;
}

}  // namespace

TEST_CASE("help documents file formats") {
  auto r = lexsimp("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("File formats:") != std::string::npos);
  CHECK(r.out.find("Exit codes") != std::string::npos);
  CHECK(lexsimp("").code == 2);
  CHECK(lexsimp("frobnicate").code == 2);
}

TEST_CASE("build-table") {
  auto ont = data("ontology/snomed.tsv") + " " + data("ontology/chv.tsv") + " " +
             data("ontology/hpo.tsv");
  auto a = lexsimp("build-table " + ont);
  auto b = lexsimp("build-table " + data("ontology/hpo.tsv") + " " +
                   data("ontology/snomed.tsv") + " " + data("ontology/chv.tsv"));
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("0\tear pain\n0\tear pains\n0\tearache\n", 0) == 0);
  CHECK(a.out.find("0\totalgia\n") != std::string::npos);
  CHECK(a.out.find("0\tpain in ear\n") != std::string::npos);
  CHECK(a.err.find("6 groups") != std::string::npos);

  auto plain = lexsimp("build-table --no-plurals " + ont);
  CHECK(plain.out.find("earaches") == std::string::npos);
  CHECK(plain.out.find("0\totalgia\n") != std::string::npos);

  CHECK(lexsimp("build-table").code == 2);
  CHECK(lexsimp("build-table " + tmp("missing.tsv")).code == 1);
  write(scratch() / "bad.tsv", "C1\tOtalgia\tsnomed\n");
  auto bad = lexsimp("build-table " + tmp("bad.tsv"));
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 1") != std::string::npos);
}

TEST_CASE("train-lm") {
  const auto &m = models();
  auto arpa = slurp(scratch() / "lm.arpa");
  CHECK(arpa.rfind("\\data\\\nngram 1=", 0) == 0);
  CHECK(arpa.find("\\3-grams:") != std::string::npos);
  CHECK(arpa.find("\\end\\") != std::string::npos);

  auto again = lexsimp("train-lm -i " + data("corpus/train.txt") + " --min-count 1");
  CHECK(again.code == 0);
  CHECK(again.out == arpa);

  auto bigram = lexsimp("train-lm -i " + data("corpus/train.txt") + " --order 2");
  CHECK(bigram.code == 0);
  CHECK(bigram.out.find("ngram 2=") != std::string::npos);
  CHECK(bigram.out.find("ngram 3=") == std::string::npos);

  write(scratch() / "empty.txt", "");
  CHECK(lexsimp("train-lm -i " + tmp("empty.txt")).code == 1);
  CHECK(lexsimp("train-lm -i " + data("corpus/train.txt") + " --discount 1.5").code != 0);
  CHECK(lexsimp("train-lm").code == 2);
  (void)m;
}

TEST_CASE("simplify reproduces the golden output") {
  const auto &m = models();
  auto r = lexsimp("simplify -i " + data("corpus/input.txt") + " --table-path " + m.table +
                   " --lm-path " + m.lm + " --freq-path " + data("corpus/freq.tsv"));
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(kData + "/golden/simplify.tsv"));
  CHECK(r.err.find("7 sentences, 5 changed") != std::string::npos);

  auto threaded = lexsimp("simplify -i " + data("corpus/input.txt") + " --table-path " +
                          m.table + " --lm-path " + m.lm + " --freq-path " +
                          data("corpus/freq.tsv") + " --threads 4 --trace " +
                          tmp("trace.json"));
  CHECK(threaded.out == r.out);
  auto trace = slurp(scratch() / "trace.json");
  CHECK(trace.find("\"passes\"") != std::string::npos);
  CHECK(trace.find("\"candidates\"") != std::string::npos);
}

TEST_CASE("simplify with published scores") {
  auto base = "simplify -i " + data("ranking/input.txt") + " --table-path " +
              data("ranking/phrase_table.tsv") + " --lm-path " + data("ranking/lm_scores.tsv") +
              " --freq-path " + data("ranking/wf_scores.tsv");
  for (const char *alpha : {"0", "0.6", "0.7", "1"}) {
    auto r = lexsimp(base + " --alpha " + alpha);
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "Patient had multiple myocardial infarctions\t"
          "Patient had multiple heart attacks\t1\n");
  }
  CHECK(lexsimp(base + " --alpha 1.5").code == 2);
}

TEST_CASE("simplify errors and empty input") {
  const auto &m = models();
  write(scratch() / "none.txt", "");
  auto empty = lexsimp("simplify -i " + tmp("none.txt") + " --table-path " + m.table +
                       " --lm-path " + m.lm + " --freq-path " + data("corpus/freq.tsv"));
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
  CHECK(empty.err.find("0 sentences") != std::string::npos);

  auto missing = lexsimp("simplify -i " + data("corpus/input.txt") + " --table-path " +
                         m.table + " --lm-path " + tmp("nope.arpa") + " --freq-path " +
                         data("corpus/freq.tsv"));
  CHECK(missing.code == 1);
  CHECK(lexsimp("simplify -i " + data("corpus/input.txt")).code == 2);
}

TEST_CASE("evaluate") {
  // Rows rebuilt from the published human counts.
  std::ostringstream judg, flags;
  int id = 0;
  auto emit = [&](char c, int n) {
    for (int i = 0; i < n; ++i) judg << "p" << id++ << ",human," << c << "\n";
  };
  emit('S', 1730);
  emit('F', 273);
  emit('E', 904);
  emit('N', 40);
  for (int i = 0; i < 579; ++i) flags << "u" << i << ",human\n";
  write(scratch() / "judgments.csv", "sentence_id,system_id,category\n" + judg.str());
  write(scratch() / "unchanged.csv", flags.str());

  auto r = lexsimp("evaluate --judgments " + tmp("judgments.csv") + " --unchanged " +
                   tmp("unchanged.csv") + " --report-tsv " + tmp("report.tsv"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.21") != std::string::npos);
  CHECK(slurp(scratch() / "report.tsv") ==
        "system\tS\tF\tE\tN\tU\tT\tSG\nhuman\t1730\t273\t904\t40\t4053\t7000\t0.208143\n");

  auto refs = data("corpus/train.txt");
  auto bleu = lexsimp("evaluate -i " + refs + " --references " + refs + " --bleu");
  CHECK(bleu.code == 0);
  CHECK(bleu.out == "BLEU\t100.000000\n");

  auto sari = lexsimp("evaluate -i " + refs + " --references " + refs + " --sources " +
                      refs + " --sari");
  CHECK(sari.code == 0);
  CHECK(sari.out.rfind("SARI\t", 0) == 0);

  CHECK(lexsimp("evaluate -i " + refs + " --sari").code == 2);
  CHECK(lexsimp("evaluate").code == 2);
  write(scratch() / "bad.csv", "a,b,Q\n");
  CHECK(lexsimp("evaluate --judgments " + tmp("bad.csv")).code == 1);
}

TEST_CASE("tune") {
  const auto &m = models();
  write(scratch() / "dev.tsv",
        "Otalgia is common.\tEar pain is common.\nHe has pyrexia.\tHe has fever.\n");
  auto r = lexsimp("tune -i " + tmp("dev.tsv") + " --table-path " + m.table + " --lm-path " +
                   m.lm + " --freq-path " + data("corpus/freq.tsv") + " --grid 0:1:0.25 -o " +
                   tmp("curve.tsv"));
  REQUIRE(r.code == 0);
  auto curve = slurp(scratch() / "curve.tsv");
  CHECK(curve.rfind("alpha\tsari\n0.00\t", 0) == 0);
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 6);
  CHECK(r.out.rfind("best_alpha\t", 0) == 0);

  CHECK(lexsimp("tune -i " + tmp("dev.tsv") + " --grid 0:x").code == 2);
  CHECK(lexsimp("tune").code == 2);
}
