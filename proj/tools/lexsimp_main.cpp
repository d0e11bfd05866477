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

// Command-line front end: build phrase tables, train language models,
// simplify corpora, evaluate systems and tune alpha.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexsimp/error.hpp"
#include "lexsimp/eval.hpp"
#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/ontology.hpp"
#include "lexsimp/scorers.hpp"
#include "lexsimp/simplifier.hpp"
#include "lexsimp/wordfreq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string output;
  double alpha = 0.7;
  int max_iterations = 5;
  std::string lm_path;
  std::string freq_path;
  std::string table_path;
  std::uint64_t seed = 42;
  int replications = lexsimp::kDefaultReplications;

  // train-lm
  int order = 3;
  double discount = 0.75;
  std::uint64_t min_count = 2;
  // build-table
  std::vector<std::string> ontologies;
  bool no_plurals = false;
  // simplify
  std::string trace;
  bool no_original = false;
  unsigned threads = 1;
  // evaluate
  std::string sources;
  std::string references;
  std::string judgments;
  std::string unchanged;
  std::string report_tsv;
  bool want_sari = false;
  bool want_bleu = false;
  int bootstrap_iterations = 10000;
  // tune
  std::string grid = "default";
};

const char *kFormats = R"(File formats:
  ontology TSV     concept_id<TAB>label<TAB>source<TAB>P|A   ('#' lines skipped)
  phrase table     group_id<TAB>label, sorted by group then label
  LM corpus        one sentence per line
  LM model         ARPA (log10), or a '#score-table' file of sentence<TAB>score
  frequency table  word<TAB>probability, or a '#score-table' file of term<TAB>score
  simplify output  original<TAB>simplified<TAB>iterations
  judgments CSV    sentence_id,system_id,category  (S,F,E,N or options 1-4)
  unchanged CSV    sentence_id,system_id
  dev/parallel TSV source<TAB>reference
  tune curve       alpha<TAB>sari
Exit codes: 0 success, 1 data or runtime error, 2 usage error.)";

void require_file(const std::string &path, const std::string &what) {
  if (path.empty()) throw UsageError(what + " is required");
  std::ifstream probe(path);
  if (!probe) throw lexsimp::Error("cannot read " + what + " '" + path + "'");
}

std::ifstream open_in(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw lexsimp::Error("cannot read '" + path + "'");
  return in;
}

std::vector<std::string> read_lines(const std::string &path) {
  auto in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Writes to the path, or to standard output when the path is empty.
void emit(const std::string &path, const std::string &data) {
  if (path.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lexsimp::Error("cannot write '" + path + "'");
  out << data;
  if (!out) throw lexsimp::Error("write failed for '" + path + "'");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
}

int cmd_build_table(const RunConfig &cfg) {
  if (cfg.ontologies.empty()) throw UsageError("no ontology files given");
  for (const auto &p : cfg.ontologies) require_file(p, "ontology file");
  std::vector<lexsimp::ConceptRecord> records;
  for (const auto &p : cfg.ontologies) {
    auto in = open_in(p);
    try {
      auto part = lexsimp::parse_records(in);
      records.insert(records.end(), part.begin(), part.end());
    } catch (const lexsimp::ParseError &e) {
      throw lexsimp::Error(p + ": " + e.what());
    }
  }
  lexsimp::AlignOptions options;
  options.plurals = !cfg.no_plurals;
  auto table = lexsimp::align(records, options);
  std::ostringstream out;
  table.write(out);
  emit(cfg.output, out.str());
  std::cerr << "build-table: " << records.size() << " records, "
            << table.size() << " groups, " << table.label_count()
            << " labels\n";
  return kExitOk;
}

int cmd_train_lm(const RunConfig &cfg) {
  require_file(cfg.input, "--input corpus");
  if (cfg.order < 1) throw UsageError("--order must be at least 1");
  if (!(cfg.discount > 0.0 && cfg.discount < 1.0)) {
    throw UsageError("--discount must lie in (0, 1)");
  }
  auto in = open_in(cfg.input);
  lexsimp::TrainOptions options;
  options.order = cfg.order;
  options.discount = cfg.discount;
  options.min_count = cfg.min_count;
  auto model = lexsimp::NgramModel::train(in, options);
  std::ostringstream out;
  model.save_arpa(out);
  emit(cfg.output, out.str());
  std::cerr << "train-lm: order " << model.order() << ", vocabulary "
            << model.vocab_size() << '\n';
  return kExitOk;
}

struct Models {
  lexsimp::PhraseTable table;
  std::unique_ptr<lexsimp::LmScorer> lm;
  std::unique_ptr<lexsimp::TermScorer> wf;
};

Models load_models(const RunConfig &cfg) {
  require_file(cfg.table_path, "--table-path");
  require_file(cfg.lm_path, "--lm-path");
  require_file(cfg.freq_path, "--freq-path");
  Models m;
  auto in = open_in(cfg.table_path);
  m.table = lexsimp::PhraseTable::read(in);
  m.lm = lexsimp::load_lm_scorer(cfg.lm_path);
  m.wf = lexsimp::load_term_scorer(cfg.freq_path);
  return m;
}

int cmd_simplify(const RunConfig &cfg) {
  check_alpha(cfg.alpha);
  if (cfg.max_iterations < 1) throw UsageError("--max-iterations must be at least 1");
  require_file(cfg.input, "--input");
  Models m = load_models(cfg);
  lexsimp::SimplifierConfig config{cfg.alpha, cfg.max_iterations, !cfg.no_original};
  auto sentences = read_lines(cfg.input);
  auto results = lexsimp::simplify_batch(sentences, m.table, *m.lm, *m.wf,
                                         config, cfg.threads);
  std::ostringstream out;
  for (const auto &r : results) {
    out << r.original << '\t' << r.final << '\t' << r.iterations << '\n';
  }
  emit(cfg.output, out.str());
  if (!cfg.trace.empty()) emit(cfg.trace, lexsimp::trace_to_json(results, config) + "\n");
  auto stats = lexsimp::iteration_stats(results);
  std::cerr << stats.sentences << " sentences, " << stats.changed
            << " changed, iterations mean " << fixed(stats.mean_iterations, 2)
            << " median " << fixed(stats.median_iterations, 1) << " max "
            << stats.max_iterations << '\n';
  return kExitOk;
}

int cmd_evaluate(const RunConfig &cfg) {
  if (cfg.want_sari && (cfg.sources.empty() || cfg.references.empty() || cfg.input.empty())) {
    throw UsageError("--sari needs --input, --sources and --references");
  }
  if (cfg.want_bleu && (cfg.references.empty() || cfg.input.empty())) {
    throw UsageError("--bleu needs --input and --references");
  }
  if (!cfg.unchanged.empty() && cfg.judgments.empty()) {
    throw UsageError("--unchanged needs --judgments");
  }
  const bool can_bleu = !cfg.input.empty() && !cfg.references.empty();
  const bool can_sari = can_bleu && !cfg.sources.empty();
  const bool any_flag = cfg.want_sari || cfg.want_bleu;
  const bool do_bleu = any_flag ? cfg.want_bleu : can_bleu;
  const bool do_sari = any_flag ? cfg.want_sari : can_sari;
  const bool do_sg = !cfg.judgments.empty();
  if (!do_bleu && !do_sari && !do_sg) {
    throw UsageError("nothing to evaluate: give --input with --references, or --judgments");
  }
  for (const auto *p : {&cfg.input, &cfg.sources, &cfg.references, &cfg.judgments, &cfg.unchanged}) {
    if (!p->empty()) require_file(*p, "input file");
  }

  std::ostringstream report;
  if (do_bleu || do_sari) {
    auto outputs = read_lines(cfg.input);
    auto refs = read_lines(cfg.references);
    if (outputs.size() != refs.size()) {
      throw lexsimp::Error("outputs and references differ in length (" +
                           std::to_string(outputs.size()) + " vs " +
                           std::to_string(refs.size()) + ")");
    }
    if (do_bleu) report << "BLEU\t" << fixed(lexsimp::bleu(outputs, refs), 6) << '\n';
    if (do_sari) {
      auto sources = read_lines(cfg.sources);
      if (sources.size() != outputs.size()) {
        throw lexsimp::Error("sources and outputs differ in length");
      }
      // Blank source/output pairs carry no n-grams; leave them out of the mean.
      double total = 0.0;
      std::size_t scored = 0;
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (lexsimp::metric_tokens(sources[i], true).empty() &&
            lexsimp::metric_tokens(outputs[i], true).empty()) {
          continue;
        }
        std::string ref[] = {refs[i]};
        total += lexsimp::sari(sources[i], outputs[i], ref);
        ++scored;
      }
      if (scored < outputs.size()) {
        std::cerr << "evaluate: skipped " << outputs.size() - scored
                  << " blank sentence(s) for SARI\n";
      }
      double mean = scored == 0 ? 0.0 : total / static_cast<double>(scored);
      report << "SARI\t" << fixed(mean, 6) << '\n';
    }
  }
  if (do_sg) {
    auto jin = open_in(cfg.judgments);
    std::vector<lexsimp::JudgmentRecord> records;
    try {
      records = lexsimp::parse_judgments(jin);
    } catch (const lexsimp::ParseError &e) {
      throw lexsimp::Error(cfg.judgments + ": " + e.what());
    }
    std::vector<lexsimp::UnchangedFlag> flags;
    if (!cfg.unchanged.empty()) {
      auto uin = open_in(cfg.unchanged);
      try {
        flags = lexsimp::parse_unchanged(uin);
      } catch (const lexsimp::ParseError &e) {
        throw lexsimp::Error(cfg.unchanged + ": " + e.what());
      }
    }
    if (cfg.replications < 1) throw UsageError("--replications must be at least 1");
    auto counts = lexsimp::aggregate_judgments(records, flags, cfg.replications);
    if (do_bleu || do_sari) report << '\n';
    lexsimp::write_report_table(report, counts);
    if (!cfg.report_tsv.empty()) {
      std::ostringstream tsv;
      lexsimp::write_report_tsv(tsv, counts);
      emit(cfg.report_tsv, tsv.str());
    }
    if (counts.size() >= 2) {
      report << "\nbootstrap p-values (" << cfg.bootstrap_iterations
             << " iterations, seed " << cfg.seed << ")\n";
      for (auto a = counts.begin(); a != counts.end(); ++a) {
        for (auto b = std::next(a); b != counts.end(); ++b) {
          if (a->second.total() == 0 || b->second.total() == 0) continue;
          double p = lexsimp::sg_significance(a->second, b->second,
                                              cfg.bootstrap_iterations, cfg.seed);
          report << a->first << "\t" << b->first << "\t" << fixed(p, 4) << '\n';
        }
      }
    }
  }
  emit(cfg.output, report.str());
  return kExitOk;
}

int cmd_tune(const RunConfig &cfg) {
  std::vector<double> grid;
  try {
    grid = lexsimp::parse_grid(cfg.grid);
  } catch (const lexsimp::Error &e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  if (cfg.max_iterations < 1) throw UsageError("--max-iterations must be at least 1");
  require_file(cfg.input, "--input dev set");
  Models m = load_models(cfg);
  auto in = open_in(cfg.input);
  auto dev = lexsimp::parse_parallel(in);
  if (dev.empty()) throw lexsimp::Error("development set is empty");
  lexsimp::SimplifierConfig base{0.0, cfg.max_iterations, !cfg.no_original};
  auto result = lexsimp::grid_search_alpha(dev, m.table, *m.lm, *m.wf, grid,
                                           base, cfg.threads);
  std::ostringstream curve;
  curve << "alpha\tsari\n";
  for (const auto &[alpha, score] : result.curve) {
    curve << fixed(alpha, 2) << '\t' << fixed(score, 6) << '\n';
  }
  emit(cfg.output, curve.str());
  std::string best = "best_alpha\t" + fixed(result.best_alpha, 2) + "\tsari\t" +
                     fixed(result.best_sari, 6) + "\n";
  if (cfg.output.empty()) {
    std::cerr << best;
  } else {
    std::cout << best;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  RunConfig cfg;
  CLI::App app{"Lexical simplification with ontology phrase tables and n-gram language models"};
  app.footer(kFormats);
  app.require_subcommand(1);

  auto *build = app.add_subcommand("build-table", "Align ontology label dumps into a phrase table");
  build->add_option("ontologies", cfg.ontologies, "Ontology TSV files")->required();
  build->add_option("-o,--output", cfg.output, "Phrase table path (default: stdout)");
  build->add_flag("--no-plurals", cfg.no_plurals, "Do not add naive plural variants");

  auto *train = app.add_subcommand("train-lm", "Train a backoff n-gram model and write ARPA");
  train->add_option("-i,--input", cfg.input, "Corpus, one sentence per line")->required();
  train->add_option("-o,--output", cfg.output, "ARPA path (default: stdout)");
  train->add_option("--order", cfg.order, "n-gram order")->capture_default_str();
  train->add_option("--discount", cfg.discount, "Absolute discount in (0,1)")->capture_default_str();
  train->add_option("--min-count", cfg.min_count, "Words rarer than this become <unk>")->capture_default_str();

  auto *simp = app.add_subcommand("simplify", "Simplify sentences, one per line");
  simp->add_option("-i,--input", cfg.input, "Input sentences")->required();
  simp->add_option("-o,--output", cfg.output, "Output TSV (default: stdout)");
  simp->add_option("--table-path", cfg.table_path, "Phrase table");
  simp->add_option("--lm-path", cfg.lm_path, "ARPA model or LM score table");
  simp->add_option("--freq-path", cfg.freq_path, "Frequency TSV or term score table");
  simp->add_option("--alpha", cfg.alpha, "LM weight in [0,1]")->capture_default_str();
  simp->add_option("--max-iterations", cfg.max_iterations, "Pass cap")->capture_default_str();
  simp->add_flag("--no-original", cfg.no_original, "Never keep the matched term");
  simp->add_option("--trace", cfg.trace, "Write a JSON trace here");
  simp->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

  auto *eval = app.add_subcommand("evaluate", "BLEU, SARI and Simplification Gain");
  eval->add_option("-i,--input", cfg.input, "System outputs, one per line");
  eval->add_option("--sources", cfg.sources, "Source sentences, one per line");
  eval->add_option("--references", cfg.references, "Reference sentences, one per line");
  eval->add_option("--judgments", cfg.judgments, "Judgments CSV");
  eval->add_option("--unchanged", cfg.unchanged, "Unchanged-pair flags CSV");
  eval->add_option("--replications", cfg.replications, "Judgments per unchanged pair")->capture_default_str();
  eval->add_flag("--sari", cfg.want_sari, "Report SARI");
  eval->add_flag("--bleu", cfg.want_bleu, "Report BLEU");
  eval->add_option("--seed", cfg.seed, "Bootstrap seed")->capture_default_str();
  eval->add_option("--bootstrap-iterations", cfg.bootstrap_iterations, "Bootstrap resamples")->capture_default_str();
  eval->add_option("--report-tsv", cfg.report_tsv, "Write the judgment table as TSV");
  eval->add_option("-o,--output", cfg.output, "Report path (default: stdout)");

  auto *tune = app.add_subcommand("tune", "Grid search alpha on a development set");
  tune->add_option("-i,--input", cfg.input, "Dev TSV source<TAB>reference")->required();
  tune->add_option("-o,--output", cfg.output, "Curve TSV (default: stdout)");
  tune->add_option("--table-path", cfg.table_path, "Phrase table");
  tune->add_option("--lm-path", cfg.lm_path, "ARPA model or LM score table");
  tune->add_option("--freq-path", cfg.freq_path, "Frequency TSV or term score table");
  tune->add_option("--grid", cfg.grid, "default | start:stop:step | a,b,c")->capture_default_str();
  tune->add_option("--max-iterations", cfg.max_iterations, "Pass cap")->capture_default_str();
  tune->add_flag("--no-original", cfg.no_original, "Never keep the matched term");
  tune->add_option("--threads", cfg.threads, "Parallel alpha points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*build) return cmd_build_table(cfg);
    if (*train) return cmd_train_lm(cfg);
    if (*simp) return cmd_simplify(cfg);
    if (*eval) return cmd_evaluate(cfg);
    if (*tune) return cmd_tune(cfg);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
