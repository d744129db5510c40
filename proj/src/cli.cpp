#include "nerlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "nerlab/error.hpp"
#include "nerlab/evaluate.hpp"
#include "nerlab/formats.hpp"
#include "nerlab/linker.hpp"
#include "nerlab/normalize.hpp"
#include "nerlab/parallel.hpp"
#include "nerlab/report.hpp"
#include "nerlab/stats.hpp"
#include "nerlab/tagger.hpp"
#include "nerlab/version.hpp"

namespace nerlab::cli {

namespace {

using report::Json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
  std::size_t threads = 1;
};

void log(const Io& io, const std::string& msg) { io.err << "ner_lab: " << msg << "\n"; }

void log_warnings(const Io& io, const std::string& source, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) log(io, source + ": " + w);
}

// CLI11 type names ("FLOAT in [0 - 1]" once a range check is attached) tell
// numbers from text.
Json typed_value(const CLI::Option* opt, const std::string& v) {
  const std::string type = opt->get_type_name();
  try {
    if (type.starts_with("INT")) return std::stoll(v);
    if (type.starts_with("UINT")) return std::stoull(v);
    if (type.starts_with("FLOAT")) return std::stod(v);
  } catch (const std::exception&) {
  }
  return v;
}

// Effective configuration of a subcommand: every option, given or defaulted.
Json effective_config(const CLI::App* sub) {
  Json cfg = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->get_type_size_max() == 0 || opt->get_expected_max() == 0) {
      cfg[name] = opt->count() > 0;
      continue;
    }
    const bool many = opt->get_expected_max() > 1;
    if (opt->count() > 0) {
      Json values = Json::array();
      for (const auto& r : opt->results()) values.push_back(typed_value(opt, r));
      cfg[name] = many ? values : values.back();
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = typed_value(opt, opt->get_default_str());
    } else {
      cfg[name] = many ? Json::array() : Json(nullptr);
    }
  }
  return cfg;
}

Json envelope(const CLI::App* sub, Json result) {
  return Json{{"tool_version", kToolVersion},
              {"command", sub->get_name()},
              {"config", effective_config(sub)},
              {"result", std::move(result)}};
}

void write_output(const Io& io, const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    io.out << data;
    io.out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << data;
  if (!f) throw Error("write failed: " + path);
}

std::string json_text(const Json& j) { return j.dump(2, ' ', false, Json::error_handler_t::strict) + "\n"; }

CLI::Option* add_format(CLI::App* sub, std::string& format, std::vector<std::string> allowed) {
  return sub->add_option("--format", format, "Report format")
      ->check(CLI::IsMember(std::move(allowed)))
      ->capture_default_str();
}

CLI::Option* add_out(CLI::App* sub, std::string& out) {
  return sub->add_option("--out,-o", out, "Output path (default: standard output)");
}

const CLI::Validator kUnitInterval = CLI::Range(0.0, 1.0);

// ---------------------------------------------------------------------------

struct ValidateCmd {
  std::string corpus;
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Corpus JSON file")->required()->check(CLI::ExistingFile);
    add_format(sub, format, {"text", "json"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    CorpusFile c;
    try {
      c = load_corpus(corpus);
    } catch (const ParseError& e) {
      log(io, std::string("invalid: ") + e.what());
      if (format == "json")
        write_output(io, out, json_text(envelope(sub, Json{{"valid", false}, {"error", e.what()}})));
      return kExitFailure;
    } catch (const ValidationError& e) {
      log(io, std::string("invalid: ") + e.what());
      if (format == "json")
        write_output(io, out, json_text(envelope(sub, Json{{"valid", false}, {"error", e.what()}})));
      return kExitFailure;
    }
    std::size_t sentences = 0, tokens = 0, mentions = 0, chains = 0;
    for (const auto& d : c.documents) {
      sentences += d.sentences.size();
      tokens += d.token_count();
      mentions += d.mentions.size();
      chains += d.chains.size();
    }
    if (format == "json") {
      write_output(io, out,
                   json_text(envelope(sub, Json{{"valid", true},
                                                {"documents", c.documents.size()},
                                                {"sentences", sentences},
                                                {"tokens", tokens},
                                                {"mentions", mentions},
                                                {"chains", chains}})));
    } else {
      std::ostringstream o;
      o << corpus << ": valid, " << c.documents.size() << " documents, " << sentences << " sentences, " << tokens
        << " tokens, " << mentions << " mentions, " << chains << " chains\n";
      write_output(io, out, o.str());
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

// Layers that carry at least one mention, in canonical order.
std::vector<std::string> populated_layers(const CorpusFile& c) {
  std::vector<std::string> out;
  for (const auto& layer : all_layers()) {
    bool any = false;
    for (const auto& d : c.documents)
      for (const auto& m : d.mentions) any = any || m.in_layer(layer);
    if (any) out.push_back(layer);
  }
  return out;
}

std::vector<Sentence> all_sentences(const CorpusFile& c) {
  std::vector<Sentence> out;
  for (const auto& d : c.documents) out.insert(out.end(), d.sentences.begin(), d.sentences.end());
  return out;
}

std::vector<TagSequence> encode_layer(const CorpusFile& c, const std::string& layer, const Io& io) {
  std::vector<TagSequence> out;
  for (const auto& d : c.documents) {
    EncodeReport rep;
    for (const auto& s : d.sentences) out.push_back(encode_bio(s, d.mentions, layer, &rep));
    log_warnings(io, d.id, rep.warnings);
  }
  return out;
}

void check_layer(const std::string& layer) {
  const auto& all = all_layers();
  if (std::find(all.begin(), all.end(), layer) == all.end()) throw UsageError("unknown layer '" + layer + "'");
}

CorpusFile corpus_from_conllu(const fs::path& path) {
  CorpusFile c;
  std::size_t n = 0;
  for (auto& [id, sents] : read_conllu_documents(path)) {
    Document d;
    d.id = id.empty() ? "doc-" + std::to_string(++n) : id;
    d.text = reconstruct_text(sents);
    d.sentences = std::move(sents);
    validate_document(d);
    c.documents.push_back(std::move(d));
  }
  return c;
}

void attach_parse(CorpusFile& c, const fs::path& conllu) {
  for (auto& [id, sents] : read_conllu_documents(conllu)) {
    Document* target = nullptr;
    if (id.empty() && c.documents.size() == 1) {
      target = &c.documents.front();
    } else {
      for (auto& d : c.documents)
        if (d.id == id) target = &d;
    }
    if (!target)
      throw ValidationError("parse for document '" + id + "' matches no corpus document");
    target->sentences = std::move(sents);
    if (target->text.empty()) target->text = reconstruct_text(target->sentences);
    validate_document(*target);
  }
}

struct ConvertCmd {
  std::string input;
  std::string conllu;
  std::string to = "json";
  std::string pred;
  std::vector<std::string> layers;
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("input", input, "Corpus JSON or CoNLL-U file")->required()->check(CLI::ExistingFile);
    sub->add_option("--conllu", conllu, "CoNLL-U parse to attach as the token grid")->check(CLI::ExistingFile);
    sub->add_option("--to", to, "Target format")->check(CLI::IsMember({"json", "tags"}))->capture_default_str();
    sub->add_option("--pred", pred, "Corpus supplying the predicted column of a tag file")
        ->check(CLI::ExistingFile);
    sub->add_option("--layer", layers, "Layers to export as tag files (default: every populated layer)");
    sub->add_option("--out,-o", out, "Output path; tag files get a -<layer> suffix")->required();
  }

  int run(const CLI::App*, const Io& io) const {
    if (to == "json" && (!pred.empty() || !layers.empty()))
      throw UsageError("--pred and --layer apply only to --to tags");
    for (const auto& l : layers) check_layer(l);
    const bool from_conllu = fs::path(input).extension() == ".conllu";
    CorpusFile c = from_conllu ? corpus_from_conllu(input) : load_corpus(input);
    if (!conllu.empty()) attach_parse(c, conllu);
    if (to == "json") {
      save_corpus(c, out);
      log(io, "wrote " + out);
      return kExitOk;
    }
    CorpusFile p = pred.empty() ? c : load_corpus(pred);
    if (p.documents.size() != c.documents.size())
      throw AlignmentError("prediction corpus has a different number of documents");
    for (std::size_t i = 0; i < c.documents.size(); ++i) {
      if (p.documents[i].id != c.documents[i].id || p.documents[i].sentences != c.documents[i].sentences)
        throw AlignmentError("document '" + c.documents[i].id + "' differs in id or tokens between corpora");
    }
    const auto wanted = layers.empty() ? populated_layers(c) : layers;
    if (wanted.empty()) throw ValidationError("the corpus has no mentions to export");
    std::map<std::string, std::vector<TagSequence>> gold, predicted;
    for (const auto& layer : wanted) {
      gold[layer] = encode_layer(c, layer, io);
      predicted[layer] = encode_layer(p, layer, io);
    }
    write_tag_files(all_sentences(c), gold, predicted, out);
    for (const auto& layer : wanted) log(io, "wrote " + out + "-" + layer);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

stats::GroupMap load_group_map(const std::string& path, const Io& io) {
  if (path.empty()) return {};
  Lexicon lex = load_lexicon(path);
  log_warnings(io, path, lex.warnings);
  return {lex.entries.begin(), lex.entries.end()};
}

struct StatsCmd {
  std::string corpus;
  std::string row_map, col_map;
  std::string row_layer = "Drugname", col_layer = "SourceInfodrug";
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Corpus JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--row-map", row_map, "TSV surface -> drug group")->check(CLI::ExistingFile);
    sub->add_option("--col-map", col_map, "TSV surface -> source group")->check(CLI::ExistingFile);
    sub->add_option("--row-layer", row_layer, "Layer of co-occurrence rows")->capture_default_str();
    sub->add_option("--col-layer", col_layer, "Layer of co-occurrence columns and tonality sources")
        ->capture_default_str();
    add_format(sub, format, {"text", "json", "csv"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    check_layer(row_layer);
    check_layer(col_layer);
    const bool have_maps = !row_map.empty() && !col_map.empty();
    if (format == "csv" && !have_maps) throw UsageError("--format csv reports the co-occurrence matrix and needs --row-map and --col-map");
    const CorpusFile c = load_corpus(corpus);
    stats::CooccurrenceSpec spec;
    spec.row_layer = row_layer;
    spec.col_layer = col_layer;
    spec.row_map = load_group_map(row_map, io);
    spec.col_map = load_group_map(col_map, io);
    std::optional<stats::CooccurrenceMatrix> matrix;
    if (have_maps) matrix = stats::cooccurrence(c, spec);
    if (format == "csv") {
      write_output(io, out, report::to_csv(*matrix));
      return kExitOk;
    }
    const auto st = stats::compute_stats(c);
    const auto tone = stats::tonality(c, spec.col_map, col_layer);
    if (format == "json") {
      Json r = report::to_json(st);
      r["cooccurrence"] = matrix ? report::to_json(*matrix) : Json(nullptr);
      r["tonality"] = report::to_json(tone);
      write_output(io, out, json_text(envelope(sub, r)));
      return kExitOk;
    }
    std::string text = report::to_text(st);
    if (matrix) text += "\n" + report::to_text(*matrix);
    text += "\n" + report::to_text(tone);
    write_output(io, out, text);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct AgreementCmd {
  std::string a, b;
  std::vector<std::string> more;
  std::string span = "strict", tag = "strict";
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("--a", a, "First annotator's corpus")->check(CLI::ExistingFile);
    sub->add_option("--b", b, "Second annotator's corpus")->check(CLI::ExistingFile);
    sub->add_option("--ann", more, "Further annotators' corpora")->check(CLI::ExistingFile);
    sub->add_option("--span", span, "Span matching (alpha)")
        ->check(CLI::IsMember({"strict", "intersection"}))
        ->capture_default_str();
    sub->add_option("--tag", tag, "Label matching (beta)")
        ->check(CLI::IsMember({"strict", "ignored"}))
        ->capture_default_str();
    add_format(sub, format, {"text", "json"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    std::vector<std::string> files;
    if (!a.empty()) files.push_back(a);
    if (!b.empty()) files.push_back(b);
    files.insert(files.end(), more.begin(), more.end());
    if (files.size() < 2) throw UsageError("agreement needs at least two annotators (--a/--b or --ann)");

    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const auto& f : files) seen.insert(fs::path(f).stem().string());
    for (std::size_t i = 0; i < files.size(); ++i)
      names.push_back(seen.size() == files.size() ? fs::path(files[i]).stem().string()
                                                   : "annotator" + std::to_string(i + 1));

    eval::Annotations ann;
    for (std::size_t i = 0; i < files.size(); ++i) {
      const CorpusFile c = load_corpus(files[i]);
      auto& docs = ann[names[i]];
      for (const auto& d : c.documents) docs[d.id] = d.mentions;
    }
    eval::AgreementConfig cfg;
    cfg.span = span == "strict" ? eval::SpanStrictness::Strict : eval::SpanStrictness::Intersection;
    cfg.tag = tag == "strict" ? eval::TagStrictness::Strict : eval::TagStrictness::Ignored;
    const auto summary = eval::agreement_average(ann, cfg);
    if (format == "json") {
      write_output(io, out, json_text(envelope(sub, report::to_json(summary))));
    } else {
      std::string text;
      for (const auto& [pair, v] : summary.pairs) text += pair + "\t" + report::fixed(v) + "\n";
      text += "agreement (span=" + span + ", tag=" + tag + ")\t" + report::fixed(summary.average) + "\n";
      write_output(io, out, text);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct EvalNerCmd {
  std::string gold, pred, tags;
  bool partial = false;
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    auto* g = sub->add_option("--gold", gold, "Gold tag file (last column)")->check(CLI::ExistingFile);
    auto* p = sub->add_option("--pred", pred, "Predicted tag file (last column)")->check(CLI::ExistingFile);
    auto* t = sub->add_option("--tags", tags, "Tag file with gold and predicted columns")->check(CLI::ExistingFile);
    t->excludes(g)->excludes(p);
    g->needs(p);
    p->needs(g);
    sub->add_flag("--partial", partial, "Also report the experimental token-overlap F1 (mean over sentences)");
    add_format(sub, format, {"text", "json", "csv"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    if (tags.empty() && gold.empty()) throw UsageError("give either --tags or --gold with --pred");
    std::vector<std::vector<std::string>> g, p;
    if (!tags.empty()) {
      for (const auto& sent : read_tag_file(tags)) {
        auto& gs = g.emplace_back();
        auto& ps = p.emplace_back();
        for (const auto& line : sent) {
          gs.push_back(line.gold);
          ps.push_back(line.pred);
        }
      }
    } else {
      const auto gf = read_tag_file(gold);
      const auto pf = read_tag_file(pred);
      if (gf.size() != pf.size())
        throw AlignmentError("gold has " + std::to_string(gf.size()) + " sentences, prediction " +
                             std::to_string(pf.size()));
      for (std::size_t s = 0; s < gf.size(); ++s) {
        if (gf[s].size() != pf[s].size())
          throw AlignmentError("sentence " + std::to_string(s + 1) + " differs in length");
        auto& gs = g.emplace_back();
        auto& ps = p.emplace_back();
        for (std::size_t i = 0; i < gf[s].size(); ++i) {
          if (gf[s][i].token != pf[s][i].token)
            throw AlignmentError("sentence " + std::to_string(s + 1) + ", token " + std::to_string(i + 1) +
                                 ": '" + gf[s][i].token + "' vs '" + pf[s][i].token + "'");
          gs.push_back(gf[s][i].pred);
          ps.push_back(pf[s][i].pred);
        }
      }
    }
    const auto r = eval::chunk_prf(g, p);
    std::optional<double> part;
    if (partial) part = eval::partial_f1(g, p);
    if (format == "json") {
      Json result = report::to_json(r);
      if (partial) result["partial_f1"] = part ? Json(eval::round_half_up(*part, 1)) : Json(nullptr);
      write_output(io, out, json_text(envelope(sub, std::move(result))));
    } else if (format == "csv") {
      if (partial) log(io, "--partial is not part of the csv report");
      write_output(io, out, report::to_csv(r));
    } else {
      std::string text = report::to_text(r);
      if (partial) text += "partial          F1 " + (part ? report::fixed(*part) : std::string("-")) + "\n";
      write_output(io, out, text);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct EvalCorefCmd {
  std::string gold, pred;
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("--gold", gold, "Gold corpus with chains")->required()->check(CLI::ExistingFile);
    sub->add_option("--pred", pred, "Predicted corpus with chains")->required()->check(CLI::ExistingFile);
    add_format(sub, format, {"text", "json", "csv"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    const CorpusFile g = load_corpus(gold);
    const CorpusFile p = load_corpus(pred);
    std::map<std::string, const Document*> by_id;
    for (const auto& d : p.documents) by_id[d.id] = &d;
    std::vector<eval::ChainSet> gs, ps;
    for (const auto& d : g.documents) {
      gs.push_back(eval::chain_set(d.chains));
      auto it = by_id.find(d.id);
      if (it == by_id.end()) {
        log(io, "document '" + d.id + "' has no prediction; scored as empty");
        ps.emplace_back();
      } else {
        ps.push_back(eval::chain_set(it->second->chains));
        by_id.erase(it);
      }
    }
    for (const auto& [id, _] : by_id) log(io, "prediction for unknown document '" + id + "' ignored");
    const auto r = eval::coref_report(gs, ps);
    if (format == "json")
      write_output(io, out, json_text(envelope(sub, report::to_json(r))));
    else if (format == "csv")
      write_output(io, out, report::to_csv(r));
    else
      write_output(io, out, report::to_text(r));
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct GroupCmd {
  std::string corpus;
  std::string layer = "Drugname";
  double threshold = 0.8;
  std::string mapping;
  bool use_lemmas = false;
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Corpus JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--layer", layer, "Layer whose mention surfaces are grouped")->capture_default_str();
    sub->add_flag("--use-lemmas", use_lemmas, "Compare the lemmas of covered tokens instead of surfaces");
    sub->add_option("--threshold", threshold, "Mean similarity a surface must exceed to join a group")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--mapping", mapping, "TSV name -> scheme -> code")->check(CLI::ExistingFile);
    add_format(sub, format, {"text", "json"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    check_layer(layer);
    if (threshold <= 0) throw UsageError("--threshold must be in (0, 1]");
    const CorpusFile c = load_corpus(corpus);
    std::vector<std::string> surfaces, keys;
    for (const auto& d : c.documents)
      for (const auto& m : d.mentions) {
        if (!m.in_layer(layer)) continue;
        surfaces.push_back(mention_text(d, m));
        if (!use_lemmas) continue;
        std::string key;
        for (const auto& ref : covered_tokens(d, m)) {
          const Token& t = d.sentences[ref.sentence].tokens[ref.token];
          if (!t.lemma) throw ValidationError("document '" + d.id + "': token '" + t.text + "' has no lemma");
          key += (key.empty() ? "" : " ") + *t.lemma;
        }
        keys.push_back(key);
      }
    auto groups = use_lemmas ? norm::group_mentions_by_key(surfaces, keys, norm::GroupingOptions{threshold})
                             : norm::group_mentions(surfaces, norm::GroupingOptions{threshold});
    if (!mapping.empty()) {
      const auto map = load_code_mapping(mapping);
      log_warnings(io, mapping, map.warnings);
      groups = norm::assign_codes(std::move(groups), map);
    }
    if (format == "json")
      write_output(io, out, json_text(envelope(sub, report::to_json(groups))));
    else
      write_output(io, out, report::groups_tsv(groups));
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct LinkFlags {
  std::string concepts;
  std::string concepts_conllu;
  std::string vectors;
  double cosine_threshold = link::kCosineThreshold;
  double syntactic_threshold = link::kSyntacticThreshold;
  std::size_t min_length = 2;

  void setup(CLI::App* sub) {
    sub->add_option("--concepts", concepts, "Concept inventory TSV (text, code)")->check(CLI::ExistingFile);
    sub->add_option("--concepts-conllu", concepts_conllu, "Parses of the inventory rows")
        ->check(CLI::ExistingFile);
    sub->add_option("--vectors", vectors, "word2vec text vectors")->check(CLI::ExistingFile);
    sub->add_option("--cosine-threshold", cosine_threshold, "Link when cosine >= this")
        ->check(kUnitInterval)
        ->capture_default_str();
    sub->add_option("--syntactic-threshold", syntactic_threshold, "Link when context similarity > this")
        ->check(kUnitInterval)
        ->capture_default_str();
    sub->add_option("--min-length", min_length, "Shortest word kept, in characters")->capture_default_str();
  }

  link::PreprocessOptions preprocess() const {
    link::PreprocessOptions p;
    p.min_length = min_length;
    return p;
  }
};

struct LinkCmd {
  std::string corpus;
  LinkFlags flags;
  std::string method = "auto";
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Parsed corpus JSON file")->required()->check(CLI::ExistingFile);
    flags.setup(sub);
    sub->get_option("--concepts")->required();
    sub->add_option("--method", method, "auto = syntactic, plus cosine when --vectors is given")
        ->check(CLI::IsMember({"auto", "cosine", "syntactic", "both"}))
        ->capture_default_str();
    add_format(sub, format, {"text", "json"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    link::LinkOptions opts;
    opts.preprocess = flags.preprocess();
    opts.cosine_threshold = flags.cosine_threshold;
    opts.syntactic_threshold = flags.syntactic_threshold;
    opts.use_cosine = method == "cosine" || method == "both" || (method == "auto" && !flags.vectors.empty());
    opts.use_syntactic = method != "cosine";
    if (opts.use_cosine && flags.vectors.empty()) throw UsageError("cosine linking needs --vectors");

    std::optional<VectorTable> vt;
    if (!flags.vectors.empty()) {
      vt = load_vectors(flags.vectors);
      log_warnings(io, flags.vectors, vt->warnings);
    }
    std::optional<fs::path> parse;
    if (!flags.concepts_conllu.empty()) parse = flags.concepts_conllu;
    const auto concepts = link::load_concepts(flags.concepts, parse, opts.preprocess, vt ? &*vt : nullptr);
    const CorpusFile c = load_corpus(corpus);

    struct Job {
      const Document* doc;
      std::size_t sentence;
    };
    std::vector<Job> jobs;
    for (const auto& d : c.documents)
      for (std::size_t s = 0; s < d.sentences.size(); ++s) jobs.push_back({&d, s});
    std::vector<std::vector<link::WordLink>> results(jobs.size());
    parallel_for(jobs.size(), io.threads, [&](std::size_t i) {
      results[i] = link::link_sentence(jobs[i].doc->sentences[jobs[i].sentence], jobs[i].sentence, concepts,
                                       vt ? &*vt : nullptr, opts);
    });

    if (format == "json") {
      Json arr = Json::array();
      for (std::size_t i = 0; i < jobs.size(); ++i)
        for (const auto& l : results[i])
          arr.push_back(Json{{"document", jobs[i].doc->id},
                             {"sentence", l.sentence},
                             {"token", l.token},
                             {"word", l.word},
                             {"code", l.link.code},
                             {"concept", concepts[l.link.concept_index].text},
                             {"score", l.link.score},
                             {"method", link::to_string(l.method)}});
      write_output(io, out, json_text(envelope(sub, arr)));
    } else {
      std::vector<link::WordLink> flat;
      for (auto& r : results) flat.insert(flat.end(), r.begin(), r.end());
      write_output(io, out, report::links_tsv(flat));
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct ResourceFlags {
  std::vector<std::string> emotion;
  std::string categories;
  std::string liwc;
  LinkFlags link;

  void setup(CLI::App* sub) {
    sub->add_option("--emotion", emotion, "Emotion lexicon TSV (repeatable)")->check(CLI::ExistingFile);
    sub->add_option("--categories", categories, "Category lexicon TSV")->check(CLI::ExistingFile);
    sub->add_option("--liwc", liwc, "LIWC-style category lexicon TSV")->check(CLI::ExistingFile);
    link.setup(sub);
  }

  tagger::Resources load(const Io& io) const {
    tagger::Resources r;
    for (const auto& e : emotion) {
      r.emotion.push_back(load_lexicon(e));
      log_warnings(io, e, r.emotion.back().warnings);
    }
    if (!categories.empty()) {
      r.categories = load_lexicon(categories);
      log_warnings(io, categories, r.categories->warnings);
    }
    if (!liwc.empty()) {
      r.liwc = load_lexicon(liwc);
      log_warnings(io, liwc, r.liwc->warnings);
    }
    if (!link.vectors.empty()) {
      r.vectors = load_vectors(link.vectors);
      log_warnings(io, link.vectors, r.vectors->warnings);
    }
    r.link_options.preprocess = link.preprocess();
    r.link_options.cosine_threshold = link.cosine_threshold;
    r.link_options.syntactic_threshold = link.syntactic_threshold;
    if (!link.concepts.empty()) {
      std::optional<fs::path> parse;
      if (!link.concepts_conllu.empty()) parse = link.concepts_conllu;
      r.concepts = link::load_concepts(link.concepts, parse, r.link_options.preprocess,
                                       r.vectors ? &*r.vectors : nullptr);
    } else if (!link.concepts_conllu.empty()) {
      throw UsageError("--concepts-conllu needs --concepts");
    }
    return r;
  }
};

fs::path layer_path(const std::string& base, const std::string& layer, std::size_t layers) {
  return layers == 1 ? fs::path(base) : fs::path(base + "-" + layer);
}

struct TrainCmd {
  std::string corpus;
  std::vector<std::string> layers{"ADR"};
  std::size_t epochs = 10;
  std::uint64_t seed = 42;
  int window = 2;
  std::string model;
  std::string log_path;
  ResourceFlags resources;
  std::string format = "text";
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Training corpus JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--layer", layers, "Layer(s) to train, one model each")->capture_default_str();
    sub->add_option("--epochs", epochs, "Training passes")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", seed, "Shuffling seed")->capture_default_str();
    sub->add_option("--window", window, "Context window radius")->check(CLI::Range(0, 5))->capture_default_str();
    sub->add_option("--model", model, "Model path; with several layers each gets a -<layer> suffix")->required();
    sub->add_option("--log", log_path, "Training log CSV");
    resources.setup(sub);
    add_format(sub, format, {"text", "json"});
    add_out(sub, out);
  }

  int run(const CLI::App* sub, const Io& io) const {
    for (const auto& l : layers) check_layer(l);
    const CorpusFile c = load_corpus(corpus);
    const auto res = resources.load(io);
    std::vector<tagger::TaggerModel> models(layers.size());
    parallel_for(layers.size(), io.threads, [&](std::size_t i) {
      tagger::TrainOptions opts;
      opts.layer = layers[i];
      opts.epochs = epochs;
      opts.seed = seed;
      opts.features.window = window;
      models[i] = tagger::train(c, opts, res);
    });
    std::string log_csv;
    Json summary = Json::array();
    std::string text;
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto path = layer_path(model, layers[i], layers.size());
      tagger::save_model(models[i], path);
      log(io, "wrote " + path.string());
      const std::string csv = tagger::training_log_csv(models[i]);
      log_csv += i == 0 ? csv : csv.substr(csv.find('\n') + 1);
      const auto& last = models[i].trace.back();
      summary.push_back(Json{{"layer", layers[i]},
                             {"model", path.string()},
                             {"features", models[i].weights.size()},
                             {"train_f1", eval::round_half_up(last.f1, 1)}});
      text += layers[i] + "\t" + path.string() + "\t" + std::to_string(models[i].weights.size()) +
              " features\ttrain F1 " + report::fixed(last.f1) + "\n";
    }
    if (!log_path.empty()) write_output(io, log_path, log_csv);
    write_output(io, out, format == "json" ? json_text(envelope(sub, summary)) : text);
    return kExitOk;
  }
};

struct TagCmd {
  std::string corpus;
  std::vector<std::string> models;
  std::string to = "tags";
  ResourceFlags resources;
  std::string out;

  void setup(CLI::App* sub) {
    sub->add_option("corpus", corpus, "Corpus JSON file to tag")->required()->check(CLI::ExistingFile);
    sub->add_option("--model", models, "Model file (repeatable, one per layer)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--to", to, "tags: tag file with gold and predicted columns; json: corpus with predictions")
        ->check(CLI::IsMember({"tags", "json"}))
        ->capture_default_str();
    resources.setup(sub);
    add_out(sub, out);
  }

  int run(const CLI::App*, const Io& io) const {
    std::vector<tagger::TaggerModel> ms;
    std::set<std::string> seen;
    for (const auto& m : models) {
      ms.push_back(tagger::load_model(m));
      if (!seen.insert(ms.back().layer).second) throw UsageError("two models for layer " + ms.back().layer);
    }
    if (to == "tags" && ms.size() > 1 && (out.empty() || out == "-"))
      throw UsageError("tagging several layers to tag files needs --out");
    CorpusFile c = load_corpus(corpus);
    const auto res = resources.load(io);

    // pred[model][document] -> per-sentence tags
    std::vector<std::vector<std::vector<TagSequence>>> pred(ms.size(),
                                                            std::vector<std::vector<TagSequence>>(c.documents.size()));
    parallel_for(ms.size() * c.documents.size(), io.threads, [&](std::size_t k) {
      const std::size_t m = k / c.documents.size(), d = k % c.documents.size();
      pred[m][d] = tagger::tag(ms[m], c.documents[d], res);
    });

    if (to == "tags") {
      std::map<std::string, std::vector<TagSequence>> gold_map, pred_map;
      for (std::size_t m = 0; m < ms.size(); ++m) {
        gold_map[ms[m].layer] = encode_layer(c, ms[m].layer, io);
        auto& flat = pred_map[ms[m].layer];
        for (auto& doc : pred[m]) flat.insert(flat.end(), doc.begin(), doc.end());
      }
      const auto sents = all_sentences(c);
      if (ms.size() == 1) {
        std::ostringstream o;
        write_tag_file(o, sents, gold_map.begin()->second, pred_map.begin()->second);
        write_output(io, out, o.str());
      } else {
        write_tag_files(sents, gold_map, pred_map, out);
      }
      return kExitOk;
    }

    for (std::size_t d = 0; d < c.documents.size(); ++d) {
      Document& doc = c.documents[d];
      for (std::size_t m = 0; m < ms.size(); ++m) {
        const std::string& layer = ms[m].layer;
        std::erase_if(doc.mentions, [&](const Mention& x) { return x.in_layer(layer); });
        std::size_t n = 0;
        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
          for (auto mention : decode_bio(pred[m][d][s], doc.sentences[s])) {
            mention.id = "pred-" + layer + "-" + std::to_string(++n);
            doc.mentions.push_back(std::move(mention));
          }
        }
      }
      validate_document(doc);
    }
    write_output(io, out, dump_corpus(c));
    return kExitOk;
  }
};

std::size_t resolve_threads(long long flag) {
  if (flag > 0) return static_cast<std::size_t>(flag);
  if (flag < 0) throw UsageError("--threads must be positive");
  return default_thread_count();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annotation, evaluation and tagging toolkit for medical review corpora", "ner_lab"};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "TOML config file; explicit flags take precedence");
  app.require_subcommand(1);
  long long threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: available cores)")->envname("NER_LAB_THREADS");

  ValidateCmd validate;
  ConvertCmd convert;
  StatsCmd stats_cmd;
  AgreementCmd agreement;
  EvalNerCmd eval_ner;
  EvalCorefCmd eval_coref;
  GroupCmd group;
  LinkCmd link_cmd;
  TrainCmd train;
  TagCmd tag;

  auto* s_validate = app.add_subcommand("validate", "Check a corpus file against the schema and invariants");
  auto* s_convert = app.add_subcommand("convert", "Convert between corpus JSON, CoNLL-U and tag files");
  auto* s_stats = app.add_subcommand("stats", "Corpus statistics");
  auto* s_agreement = app.add_subcommand("agreement", "Inter-annotator agreement");
  auto* s_eval_ner = app.add_subcommand("eval-ner", "Chunk precision/recall/F1 over tag files");
  auto* s_eval_coref = app.add_subcommand("eval-coref", "MUC, B3 and CEAFe over coreference chains");
  auto* s_group = app.add_subcommand("group", "Group mention surfaces by string similarity");
  auto* s_link = app.add_subcommand("link", "Link corpus words to thesaurus concepts");
  auto* s_train = app.add_subcommand("train", "Train a tagger model per layer");
  auto* s_tag = app.add_subcommand("tag", "Tag a corpus with trained models");

  validate.setup(s_validate);
  convert.setup(s_convert);
  stats_cmd.setup(s_stats);
  agreement.setup(s_agreement);
  eval_ner.setup(s_eval_ner);
  eval_coref.setup(s_eval_coref);
  group.setup(s_group);
  link_cmd.setup(s_link);
  train.setup(s_train);
  tag.setup(s_tag);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    Io io{out, err, resolve_threads(threads)};
    if (sub == s_validate) return validate.run(sub, io);
    if (sub == s_convert) return convert.run(sub, io);
    if (sub == s_stats) return stats_cmd.run(sub, io);
    if (sub == s_agreement) return agreement.run(sub, io);
    if (sub == s_eval_ner) return eval_ner.run(sub, io);
    if (sub == s_eval_coref) return eval_coref.run(sub, io);
    if (sub == s_group) return group.run(sub, io);
    if (sub == s_link) return link_cmd.run(sub, io);
    if (sub == s_train) return train.run(sub, io);
    if (sub == s_tag) return tag.run(sub, io);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nerlab::cli
