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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "lexsimp/error.hpp"
#include "lexsimp/eval.hpp"
#include "lexsimp/ngram_lm.hpp"
#include "lexsimp/ontology.hpp"
#include "lexsimp/scorers.hpp"
#include "lexsimp/simplifier.hpp"
#include "lexsimp/textproc.hpp"
#include "lexsimp/wordfreq.hpp"

namespace py = pybind11;
using namespace lexsimp;

namespace {

// Lets Python classes act as scorers.
class PyLmScorer : public LmScorer {
 public:
  double score(std::span<const std::string> tokens) const override {
    std::vector<std::string> list(tokens.begin(), tokens.end());
    PYBIND11_OVERRIDE_PURE_NAME(double, LmScorer, "score", score, list);
  }
};

class PyTermScorer : public TermScorer {
 public:
  double score(std::span<const std::string> term) const override {
    std::vector<std::string> list(term.begin(), term.end());
    PYBIND11_OVERRIDE_PURE_NAME(double, TermScorer, "score", score, list);
  }
};

std::ifstream open_in(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  return in;
}

PhraseTable build_table(const std::vector<std::string> &paths, bool plurals) {
  std::vector<ConceptRecord> records;
  for (const auto &p : paths) {
    auto in = open_in(p);
    auto part = parse_records(in);
    records.insert(records.end(), part.begin(), part.end());
  }
  return align(records, AlignOptions{plurals});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ontology-driven lexical simplification";

  auto base_error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());

  py::class_<Token>(m, "Token")
      .def_readonly("text", &Token::text)
      .def_readonly("norm", &Token::norm)
      .def_readonly("offset", &Token::char_offset)
      .def("__repr__", [](const Token &t) { return "Token('" + t.text + "')"; });

  py::class_<Span>(m, "Span")
      .def_readonly("start", &Span::start)
      .def_readonly("end", &Span::end)
      .def_readonly("group_id", &Span::group_id)
      .def_readonly("matched", &Span::matched);

  m.def("tokenize", [](const std::string &s) { return tokenize(s); }, py::arg("sentence"));

  py::class_<PhraseTable>(m, "PhraseTable")
      .def_static("build", &build_table, py::arg("paths"), py::arg("plurals") = true,
                  "Align ontology TSV files into a phrase table.")
      .def_static("load", [](const std::string &path) {
        auto in = open_in(path);
        return PhraseTable::read(in);
      })
      .def_static("from_groups", [](const std::vector<std::vector<std::string>> &groups) {
        std::vector<AlternativeGroup> out;
        for (const auto &labels : groups) {
          AlternativeGroup g;
          for (const auto &l : labels) g.labels.push_back(GroupLabel{normalize_label(l), {}});
          out.push_back(std::move(g));
        }
        return PhraseTable::from_groups(std::move(out));
      })
      .def("save", [](const PhraseTable &t, const std::string &path) {
        std::ofstream out(path);
        if (!out) throw Error("cannot write '" + path + "'");
        t.write(out);
      })
      .def("lookup", [](const PhraseTable &t, const std::string &label) {
        return t.lookup(join(normalize_label(label)));
      })
      .def("labels", [](const PhraseTable &t, GroupId id) {
        std::vector<std::string> out;
        for (const auto &l : t.group(id).labels) out.push_back(l.text());
        return out;
      })
      .def("spans", [](const PhraseTable &t, const std::string &sentence) {
        return extract_spans(tokenize(sentence), t);
      })
      .def("__len__", &PhraseTable::size);

  py::class_<LmScorer, PyLmScorer>(m, "LmScorer")
      .def(py::init<>())
      .def("score", [](const LmScorer &lm, const std::vector<std::string> &tokens) {
        return lm.score(tokens);
      });

  py::class_<TermScorer, PyTermScorer>(m, "TermScorer")
      .def(py::init<>())
      .def("score", [](const TermScorer &wf, const std::vector<std::string> &term) {
        return wf.score(term);
      });

  py::class_<NgramModel, LmScorer>(m, "NgramModel")
      .def_static(
          "train",
          [](const std::vector<std::vector<std::string>> &sentences, int order,
             double discount, std::uint64_t min_count) {
            return NgramModel::train(sentences, TrainOptions{order, discount, min_count});
          },
          py::arg("sentences"), py::arg("order") = 3, py::arg("discount") = 0.75,
          py::arg("min_count") = 2)
      .def_static("load_arpa", [](const std::string &path) {
        auto in = open_in(path);
        return NgramModel::load_arpa(in);
      })
      .def("to_arpa", [](const NgramModel &lm) {
        std::ostringstream out;
        lm.save_arpa(out);
        return out.str();
      })
      .def_property_readonly("order", &NgramModel::order)
      .def_property_readonly("vocab_size", &NgramModel::vocab_size)
      .def("log_prob", [](const NgramModel &lm, const std::vector<std::string> &context,
                          const std::string &word) { return lm.log_prob(context, word); });

  py::class_<FrequencyTable, TermScorer>(m, "FrequencyTable")
      .def(py::init<double>(), py::arg("epsilon") = kDefaultEpsilon)
      .def_static("load", [](const std::string &path, double epsilon) {
        auto in = open_in(path);
        return FrequencyTable::load(in, epsilon);
      }, py::arg("path"), py::arg("epsilon") = kDefaultEpsilon)
      .def("set", &FrequencyTable::set)
      .def("probability", &FrequencyTable::probability)
      .def("__len__", &FrequencyTable::size);

  py::class_<SimplifierConfig>(m, "SimplifierConfig")
      .def(py::init([](double alpha, int max_iterations, bool include_original) {
             return SimplifierConfig{alpha, max_iterations, include_original};
           }),
           py::arg("alpha") = 0.7, py::arg("max_iterations") = 5,
           py::arg("include_original") = true)
      .def_readwrite("alpha", &SimplifierConfig::alpha)
      .def_readwrite("max_iterations", &SimplifierConfig::max_iterations)
      .def_readwrite("include_original", &SimplifierConfig::include_original);

  py::class_<SimplificationResult>(m, "SimplificationResult")
      .def_readonly("original", &SimplificationResult::original)
      .def_readonly("final", &SimplificationResult::final)
      .def_readonly("iterations", &SimplificationResult::iterations)
      .def_readonly("changed", &SimplificationResult::changed)
      .def_readonly("converged", &SimplificationResult::converged)
      .def_readonly("cycled", &SimplificationResult::cycled);

  m.def("simplify", &simplify, py::arg("sentence"), py::arg("table"), py::arg("lm"),
        py::arg("wf"), py::arg("config") = SimplifierConfig{});

  m.def(
      "simplify_batch",
      [](const std::vector<std::string> &sentences, const PhraseTable &table,
         const LmScorer &lm, const TermScorer &wf, const SimplifierConfig &config,
         unsigned threads) {
        return simplify_batch(sentences, table, lm, wf, config, threads);
      },
      py::arg("sentences"), py::arg("table"), py::arg("lm"), py::arg("wf"),
      py::arg("config") = SimplifierConfig{}, py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "trace_json",
      [](const std::vector<SimplificationResult> &results, const SimplifierConfig &config) {
        return trace_to_json(results, config);
      });

  m.def("sari", [](const std::string &source, const std::string &output,
                   const std::vector<std::string> &refs) { return sari(source, output, refs); });
  m.def("bleu", [](const std::vector<std::string> &outputs,
                   const std::vector<std::string> &refs) { return bleu(outputs, refs); });

  py::class_<EvalCounts>(m, "EvalCounts")
      .def(py::init([](std::uint64_t s, std::uint64_t f, std::uint64_t e, std::uint64_t n,
                       std::uint64_t u) { return EvalCounts{s, f, e, n, u}; }),
           py::arg("S") = 0, py::arg("F") = 0, py::arg("E") = 0, py::arg("N") = 0,
           py::arg("U") = 0)
      .def_property_readonly("total", &EvalCounts::total);

  m.def("simplification_gain", &simplification_gain);
  m.def("sg_significance", &sg_significance, py::arg("a"), py::arg("b"),
        py::arg("iterations") = 10000, py::arg("seed") = 42);
  m.def("default_alpha_grid", &default_alpha_grid);
}
