#include "nerlab/stats.hpp"

#include <algorithm>
#include <set>

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab::stats {

namespace {

const std::vector<std::string>& or_all(const std::vector<std::string>& layers) {
  return layers.empty() ? all_layers() : layers;
}

double pct(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

bool has_attribute(const Document& doc, Attribute a) {
  return std::any_of(doc.mentions.begin(), doc.mentions.end(),
                     [&](const Mention& m) { return m.attribute == a; });
}

std::vector<std::string> labels_of(const GroupMap& map) {
  std::set<std::string> s;
  for (const auto& [_, v] : map) s.insert(v);
  return {s.begin(), s.end()};
}

// Distinct group labels of a document's mentions in `layer`.
std::set<std::string> doc_groups(const Document& doc, const std::string& layer, const GroupMap& map,
                                 bool fallback_to_key) {
  std::set<std::string> out;
  for (const auto& m : doc.mentions) {
    if (!m.in_layer(layer)) continue;
    const std::string key = mention_key(doc, m);
    if (auto it = map.find(key); it != map.end())
      out.insert(it->second);
    else if (fallback_to_key)
      out.insert(key);
  }
  return out;
}

}  // namespace

bool is_punctuation(const Token& t) {
  if (t.pos) return *t.pos == "PUNCT";
  return text::is_punctuation_token(t.text);
}

std::size_t word_count(const Document& doc) {
  std::size_t n = 0;
  for (const auto& s : doc.sentences)
    for (const auto& t : s.tokens) n += is_punctuation(t) ? 0 : 1;
  return n;
}

std::size_t word_count(const CorpusFile& corpus) {
  std::size_t n = 0;
  for (const auto& d : corpus.documents) n += word_count(d);
  return n;
}

std::size_t mention_count(const CorpusFile& corpus, const std::string& layer) {
  std::size_t n = 0;
  for (const auto& d : corpus.documents)
    for (const auto& m : d.mentions) n += m.in_layer(layer) ? 1 : 0;
  return n;
}

double saturation_value(std::size_t mentions, std::size_t words) {
  if (words == 0) throw UndefinedInputError("saturation is undefined for a corpus without words");
  return 1000.0 * static_cast<double>(mentions) / static_cast<double>(words);
}

double saturation(const CorpusFile& corpus, const std::string& layer) {
  return saturation_value(mention_count(corpus, layer), word_count(corpus));
}

double ttr(const Document& doc) {
  std::set<std::string> lemmas;
  std::size_t tokens = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      if (!t.lemma) throw ValidationError("document '" + doc.id + "': token '" + t.text + "' has no lemma");
      lemmas.insert(text::to_lower(*t.lemma));
      ++tokens;
    }
  }
  if (tokens == 0) throw UndefinedInputError("document '" + doc.id + "' has no tokens");
  return static_cast<double>(lemmas.size()) / static_cast<double>(tokens);
}

std::vector<ComplexityRow> complexity_table(const CorpusFile& corpus, std::vector<std::string> layers) {
  const auto& wanted = or_all(layers);
  struct Tally {
    std::size_t total = 0, multi = 0, cells[2][2] = {{0, 0}, {0, 0}};  // [discontinuous][overlapping]
  };
  std::map<std::string, Tally> tallies;
  for (const auto& doc : corpus.documents) {
    for (const auto& m : doc.mentions) {
      const auto cls = classify_mention(m, doc.mentions, doc);
      const int disc = cls.continuity == ComplexityClass::Continuity::Discontinuous ? 1 : 0;
      const int over = cls.overlap == ComplexityClass::Overlap::Overlapping ? 1 : 0;
      for (const auto& layer : wanted) {
        if (!m.in_layer(layer)) continue;
        auto& t = tallies[layer];
        ++t.total;
        t.multi += cls.word_arity == ComplexityClass::Arity::Multiword ? 1 : 0;
        ++t.cells[disc][over];
      }
    }
  }
  std::vector<ComplexityRow> out;
  for (const auto& layer : wanted) {
    ComplexityRow r;
    r.layer = layer;
    auto it = tallies.find(layer);
    if (it != tallies.end() && it->second.total > 0) {
      const auto& t = it->second;
      r.total = t.total;
      r.empty = false;
      r.multiword = pct(t.multi, t.total);
      r.singleword = pct(t.total - t.multi, t.total);
      r.discontinuous_non_overlapping = pct(t.cells[1][0], t.total);
      r.continuous_non_overlapping = pct(t.cells[0][0], t.total);
      r.discontinuous_overlapping = pct(t.cells[1][1], t.total);
      r.continuous_overlapping = pct(t.cells[0][1], t.total);
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CoverageRow> coverage(const CorpusFile& corpus, std::vector<std::string> layers) {
  const auto& wanted = or_all(layers);
  std::vector<CoverageRow> out;
  for (const auto& layer : wanted) {
    CoverageRow r;
    r.layer = layer;
    for (const auto& doc : corpus.documents) {
      std::set<TokenRef> covered;
      std::size_t here = 0;
      for (const auto& m : doc.mentions) {
        if (!m.in_layer(layer)) continue;
        ++here;
        for (const auto& ref : covered_tokens(doc, m)) covered.insert(ref);
      }
      r.mentions += here;
      r.words_in_mentions += covered.size();
      r.reviews += here > 0 ? 1 : 0;
    }
    out.push_back(r);
  }
  return out;
}

std::string mention_key(const Document& doc, const Mention& m) {
  if (m.normalized_term) return text::to_lower(*m.normalized_term);
  return text::to_lower(mention_text(doc, m));
}

CooccurrenceMatrix cooccurrence(const CorpusFile& corpus, const CooccurrenceSpec& spec) {
  CooccurrenceMatrix out;
  const auto known_rows = labels_of(spec.row_map);
  const auto known_cols = labels_of(spec.col_map);
  out.rows = spec.rows.empty() ? known_rows : spec.rows;
  out.cols = spec.cols.empty() ? known_cols : spec.cols;
  for (const auto& r : out.rows)
    if (!std::binary_search(known_rows.begin(), known_rows.end(), r))
      throw ConfigError("unknown row group '" + r + "'");
  for (const auto& c : out.cols)
    if (!std::binary_search(known_cols.begin(), known_cols.end(), c))
      throw ConfigError("unknown column group '" + c + "'");
  out.cols.emplace_back(kMixedSource);

  std::vector<std::vector<std::size_t>> counts(out.rows.size(), std::vector<std::size_t>(out.cols.size(), 0));
  out.row_totals.assign(out.rows.size(), 0);
  for (const auto& doc : corpus.documents) {
    const auto drugs = doc_groups(doc, spec.row_layer, spec.row_map, false);
    const auto sources = doc_groups(doc, spec.col_layer, spec.col_map, false);
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (!drugs.count(out.rows[r])) continue;
      ++out.row_totals[r];
      if (sources.size() >= 2) {
        ++counts[r].back();
      } else if (sources.size() == 1) {
        auto it = std::find(out.cols.begin(), out.cols.end() - 1, *sources.begin());
        if (it != out.cols.end() - 1) ++counts[r][static_cast<std::size_t>(it - out.cols.begin())];
      }
    }
  }
  out.percent.assign(out.rows.size(), std::vector<double>(out.cols.size(), 0));
  for (std::size_t r = 0; r < out.rows.size(); ++r)
    for (std::size_t c = 0; c < out.cols.size(); ++c) out.percent[r][c] = pct(counts[r][c], out.row_totals[r]);
  return out;
}

Tonality document_tonality(const Document& doc) {
  const bool positive = has_attribute(doc, Attribute::BNEPos);
  const bool negative = has_attribute(doc, Attribute::Worse) || has_attribute(doc, Attribute::ADENeg) ||
                        has_attribute(doc, Attribute::NegatedADE);
  if (positive && !negative) return Tonality::Positive;
  if (negative && !positive) return Tonality::Negative;
  return Tonality::Excluded;
}

std::map<std::string, TonalityCounts> tonality(const CorpusFile& corpus, const GroupMap& source_map,
                                               const std::string& source_layer) {
  std::map<std::string, TonalityCounts> out;
  for (const auto& doc : corpus.documents) {
    const auto sources = doc_groups(doc, source_layer, source_map, source_map.empty());
    std::string key = sources.empty() ? kNoSource : sources.size() == 1 ? *sources.begin() : kMixedSource;
    auto& c = out[key];
    switch (document_tonality(doc)) {
      case Tonality::Positive:
        ++c.positive;
        break;
      case Tonality::Negative:
        ++c.negative;
        break;
      case Tonality::Excluded:
        ++c.neutral_or_mixed;
        break;
    }
  }
  return out;
}

CorpusStats compute_stats(const CorpusFile& corpus) {
  CorpusStats s;
  s.documents = corpus.documents.size();
  s.words = word_count(corpus);
  std::size_t sentences = 0, tokens = 0, lemma_docs = 0;
  double lemmas = 0, ttr_sum = 0;
  for (const auto& doc : corpus.documents) {
    sentences += doc.sentences.size();
    tokens += doc.token_count();
    bool all_lemmas = doc.token_count() > 0;
    std::set<std::string> uniq;
    for (const auto& sent : doc.sentences)
      for (const auto& t : sent.tokens) {
        if (!t.lemma) all_lemmas = false;
        else uniq.insert(text::to_lower(*t.lemma));
      }
    if (all_lemmas) {
      ++lemma_docs;
      lemmas += static_cast<double>(uniq.size());
      ttr_sum += ttr(doc);
    }
    s.total_entities += doc.mentions.size();
  }
  if (s.documents > 0) {
    s.avg_sentences = static_cast<double>(sentences) / static_cast<double>(s.documents);
    s.avg_tokens = static_cast<double>(tokens) / static_cast<double>(s.documents);
  }
  if (lemma_docs > 0) {
    s.avg_lemmas = lemmas / static_cast<double>(lemma_docs);
    s.avg_ttr = ttr_sum / static_cast<double>(lemma_docs);
  }
  s.coverage = coverage(corpus);
  s.complexity = complexity_table(corpus);
  if (s.words > 0)
    for (const auto& layer : all_layers()) s.saturation[layer] = saturation(corpus, layer);
  const std::size_t adr = mention_count(corpus, "ADR");
  const std::size_t indication = mention_count(corpus, "Indication");
  if (s.total_entities > 0) s.adr_to_entities = static_cast<double>(adr) / static_cast<double>(s.total_entities);
  if (indication > 0) s.adr_to_indication = static_cast<double>(adr) / static_cast<double>(indication);
  return s;
}

}  // namespace nerlab::stats
