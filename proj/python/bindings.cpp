#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nerlab/cli.hpp"
#include "nerlab/core.hpp"
#include "nerlab/error.hpp"
#include "nerlab/evaluate.hpp"
#include "nerlab/formats.hpp"
#include "nerlab/normalize.hpp"
#include "nerlab/report.hpp"
#include "nerlab/stats.hpp"
#include "nerlab/version.hpp"

namespace py = pybind11;
using namespace nerlab;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string json_of(const report::Json& j) { return j.dump(); }

eval::AgreementConfig agreement_config(const std::string& span, const std::string& tag) {
  eval::AgreementConfig cfg;
  if (span == "intersection")
    cfg.span = eval::SpanStrictness::Intersection;
  else if (span != "strict")
    throw ConfigError("span must be strict or intersection");
  if (tag == "ignored")
    cfg.tag = eval::TagStrictness::Ignored;
  else if (tag != "strict")
    throw ConfigError("tag must be strict or ignored");
  return cfg;
}

std::vector<std::string> tag_strings(const TagSequence& seq) {
  std::vector<std::string> out;
  for (Bio b : seq.tags) out.push_back(b == Bio::O ? "O" : std::string(b == Bio::B ? "B-" : "I-") + seq.layer);
  return out;
}

}  // namespace

PYBIND11_MODULE(_nerlab, m) {
  m.doc() = "Native core of ner_lab";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UndefinedInputError>(m, "UndefinedInputError", PyExc_ValueError);

  m.def("ratcliff_similarity", &norm::ratcliff_similarity, py::arg("a"), py::arg("b"));

  m.def(
      "group_mentions",
      [](const std::vector<std::string>& surfaces, double threshold) {
        return json_of(report::to_json(norm::group_mentions(surfaces, norm::GroupingOptions{threshold})));
      },
      py::arg("surfaces"), py::arg("threshold") = 0.8);

  m.def(
      "chunk_prf",
      [](const std::vector<std::vector<std::string>>& gold, const std::vector<std::vector<std::string>>& pred) {
        return json_of(report::to_json(eval::chunk_prf(gold, pred)));
      },
      py::arg("gold"), py::arg("pred"));

  m.def(
      "extract_chunks",
      [](const std::vector<std::string>& tags) {
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
        for (const auto& c : eval::extract_chunks(tags)) out.emplace_back(c.type, c.begin, c.end);
        return out;
      },
      py::arg("tags"));

  m.def(
      "agreement",
      [](const std::vector<std::string>& corpora, const std::vector<std::string>& names, const std::string& span,
         const std::string& tag) {
        if (corpora.size() != names.size()) throw ConfigError("one name per corpus required");
        eval::Annotations ann;
        for (std::size_t i = 0; i < corpora.size(); ++i) {
          auto& docs = ann[names[i]];
          for (const auto& d : parse_corpus(corpora[i]).documents) docs[d.id] = d.mentions;
        }
        return json_of(report::to_json(eval::agreement_average(ann, agreement_config(span, tag))));
      },
      py::arg("corpora"), py::arg("names"), py::arg("span") = "strict", py::arg("tag") = "strict");

  m.def(
      "coref",
      [](const std::string& gold, const std::string& pred) {
        const auto g = parse_corpus(gold), p = parse_corpus(pred);
        std::map<std::string, const Document*> by_id;
        for (const auto& d : p.documents) by_id[d.id] = &d;
        std::vector<eval::ChainSet> gs, ps;
        for (const auto& d : g.documents) {
          gs.push_back(eval::chain_set(d.chains));
          auto it = by_id.find(d.id);
          ps.push_back(it == by_id.end() ? eval::ChainSet{} : eval::chain_set(it->second->chains));
        }
        return json_of(report::to_json(eval::coref_report(gs, ps)));
      },
      py::arg("gold"), py::arg("pred"));

  m.def(
      "canonical_corpus", [](const std::string& text) { return dump_corpus(parse_corpus(text)); }, py::arg("text"),
      "Validates a corpus JSON text and returns its canonical serialization.");

  m.def(
      "encode_bio",
      [](const std::string& corpus, const std::string& layer) {
        std::vector<std::vector<std::string>> out;
        for (const auto& d : parse_corpus(corpus).documents)
          for (const auto& s : d.sentences) out.push_back(tag_strings(encode_bio(s, d.mentions, layer)));
        return out;
      },
      py::arg("corpus"), py::arg("layer"), "Tag strings for every sentence of every document, in order.");

  m.def(
      "stats",
      [](const std::string& corpus) { return json_of(report::to_json(stats::compute_stats(parse_corpus(corpus)))); },
      py::arg("corpus"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, py::bytes(out.str()), py::bytes(err.str()));
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr) as bytes.");
}
