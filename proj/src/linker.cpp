#include "nerlab/linker.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab::link {

namespace {

double set_f1(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  if (common == 0) return 0;
  const double p = static_cast<double>(common) / static_cast<double>(a.size());
  const double r = static_cast<double>(common) / static_cast<double>(b.size());
  return 2 * p * r / (p + r);
}

std::vector<Token> whitespace_tokens(const std::string& s) {
  std::vector<Token> out;
  std::u32string cps = text::decode(s);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && text::is_space(cps[i])) ++i;
    std::size_t start = i;
    while (i < cps.size() && !text::is_space(cps[i])) ++i;
    if (i == start) break;
    Token t;
    t.text = text::encode(cps.substr(start, i - start));
    t.span = {start, i};
    t.lemma = text::to_lower(t.text);
    t.pos = text::is_punctuation_token(t.text) ? "PUNCT" : "X";
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::vector<double>> concept_vector(const ConceptEntry& c, const VectorTable& vectors) {
  if (const auto* v = vectors.find(text::to_lower(c.text))) return *v;
  std::vector<double> sum(vectors.dimension, 0.0);
  std::size_t found = 0;
  for (const auto& w : c.words) {
    const auto* v = vectors.find(w.text);
    if (!v) v = vectors.find(text::to_lower(c.tokens[w.token].text));
    if (!v) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++found;
  }
  if (found == 0) return std::nullopt;
  for (auto& x : sum) x /= static_cast<double>(found);
  return sum;
}

}  // namespace

bool is_function_pos(std::string_view pos) {
  static constexpr std::array<std::string_view, 7> kFunction{"ADP", "PART", "PUNCT", "CCONJ", "SCONJ", "DET", "AUX"};
  return std::find(kFunction.begin(), kFunction.end(), pos) != kFunction.end();
}

std::vector<Word> preprocess(const std::vector<Token>& tokens, const PreprocessOptions& opts) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (!t.lemma || !t.pos)
      throw ValidationError("token " + std::to_string(i) + " '" + t.text + "' lacks " + (t.lemma ? "PoS" : "lemma"));
    if (is_function_pos(*t.pos)) continue;
    std::string lemma = text::to_lower(*t.lemma);
    if (text::length(lemma) < opts.min_length) continue;
    if (opts.frequency) {
      auto it = opts.frequency->document_frequency.find(lemma);
      if (it != opts.frequency->document_frequency.end() && it->second > opts.frequency->max_document_frequency)
        continue;
    }
    out.push_back({std::move(lemma), i, t.head});
  }
  return out;
}

std::vector<ContextSets> context_sets(const std::vector<Word>& words) {
  std::vector<ContextSets> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto& cs = out[i];
    cs.lexical.insert(words[i].text);
    if (i > 0) cs.lexical.insert(words[i - 1].text);
    if (i + 1 < words.size()) cs.lexical.insert(words[i + 1].text);
    cs.syntactic.insert(words[i].text);
    if (words[i].head && *words[i].head > 0) {
      const std::size_t parent_token = *words[i].head - 1;
      auto it = std::find_if(words.begin(), words.end(), [&](const Word& w) { return w.token == parent_token; });
      if (it != words.end()) {
        cs.parent = it->text;
        cs.syntactic.insert(it->text);
      }
    }
  }
  return out;
}

double lexical_involvement(const ContextSets& w, const ContextSets& c) { return set_f1(w.lexical, c.lexical); }

double cohesiveness(const ContextSets& w, const ContextSets& c) { return set_f1(w.syntactic, c.syntactic); }

int centrality(const ContextSets& w, const ContextSets& c) {
  return w.parent && c.syntactic.count(*w.parent) ? 1 : 0;
}

double context_similarity(const ContextSets& w, const ContextSets& c) {
  return (lexical_involvement(w, c) + cohesiveness(w, c) + centrality(w, c)) / 3.0;
}

ConceptEntry make_concept(std::string text, std::string code, std::optional<std::vector<Token>> tokens,
                          const PreprocessOptions& opts, const VectorTable* vectors) {
  ConceptEntry c;
  c.text = std::move(text);
  c.code = std::move(code);
  c.tokens = tokens ? std::move(*tokens) : whitespace_tokens(c.text);
  c.words = preprocess(c.tokens, opts);
  c.contexts = context_sets(c.words);
  if (vectors) c.vector = concept_vector(c, *vectors);
  return c;
}

std::vector<ConceptEntry> load_concepts(const std::filesystem::path& inventory,
                                        const std::optional<std::filesystem::path>& conllu,
                                        const PreprocessOptions& opts, const VectorTable* vectors) {
  std::ifstream in(inventory, std::ios::binary);
  if (!in) throw Error("cannot open " + inventory.string());
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("expected concept_text<TAB>code", inventory.string() + ":line " + std::to_string(line_no));
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  std::vector<Sentence> parses;
  if (conllu) {
    parses = read_conllu(*conllu);
    if (parses.size() != rows.size())
      throw ConfigError("concept parse has " + std::to_string(parses.size()) + " sentences for " +
                        std::to_string(rows.size()) + " concepts");
  }
  std::vector<ConceptEntry> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::optional<std::vector<Token>> toks;
    if (conllu) toks = parses[i].tokens;
    out.push_back(make_concept(rows[i].first, rows[i].second, std::move(toks), opts, vectors));
  }
  return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ConfigError("vector dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::optional<Link> link_cosine(std::span<const double> word_vector, const std::vector<ConceptEntry>& concepts,
                                double threshold) {
  std::optional<Link> best;
  for (std::size_t j = 0; j < concepts.size(); ++j) {
    if (!concepts[j].vector) continue;
    const double s = cosine(word_vector, *concepts[j].vector);
    if (!best || s > best->score) best = Link{concepts[j].code, j, s};
  }
  if (best && best->score >= threshold) return best;
  return std::nullopt;
}

std::optional<Link> link_cosine(const std::string& word, const std::vector<ConceptEntry>& concepts,
                                const VectorTable& vectors, double threshold) {
  const auto* v = vectors.find(word);
  if (!v) return std::nullopt;
  return link_cosine(std::span<const double>(*v), concepts, threshold);
}

std::optional<Link> link_syntactic(const ContextSets& word, const std::vector<ConceptEntry>& concepts,
                                   double threshold) {
  std::optional<Link> best;
  for (std::size_t j = 0; j < concepts.size(); ++j) {
    for (const auto& cw : concepts[j].contexts) {
      const double s = context_similarity(word, cw);
      if (!best || s > best->score) best = Link{concepts[j].code, j, s};
    }
  }
  if (best && best->score > threshold) return best;
  return std::nullopt;
}

std::string_view to_string(Method m) { return m == Method::Cosine ? "cosine" : "syntactic"; }

std::vector<WordLink> link_sentence(const Sentence& sent, std::size_t sentence_index,
                                    const std::vector<ConceptEntry>& concepts, const VectorTable* vectors,
                                    const LinkOptions& opts) {
  if (opts.use_syntactic) {
    for (const auto& t : sent.tokens)
      if (!t.head)
        throw ValidationError("sentence " + std::to_string(sentence_index) + " is not parsed (token '" + t.text +
                              "' has no head)");
  }
  if (opts.use_cosine && !vectors) throw ConfigError("cosine linking needs a vector table");
  const auto words = preprocess(sent.tokens, opts.preprocess);
  std::vector<ContextSets> ctx;
  if (opts.use_syntactic) ctx = context_sets(words);
  std::vector<WordLink> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (opts.use_cosine) {
      const auto* v = vectors->find(words[i].text);
      if (!v) v = vectors->find(text::to_lower(sent.tokens[words[i].token].text));
      if (v) {
        if (auto l = link_cosine(std::span<const double>(*v), concepts, opts.cosine_threshold))
          out.push_back({sentence_index, words[i].token, words[i].text, *l, Method::Cosine});
      }
    }
    if (opts.use_syntactic) {
      if (auto l = link_syntactic(ctx[i], concepts, opts.syntactic_threshold))
        out.push_back({sentence_index, words[i].token, words[i].text, *l, Method::Syntactic});
    }
  }
  return out;
}

}  // namespace nerlab::link
