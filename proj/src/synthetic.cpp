#include "nerlab/synthetic.hpp"

#include <array>
#include <random>
#include <set>

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab::synthetic {

namespace {

constexpr std::u32string_view kConsonants = U"бвгдзклмнпрстфхц";
constexpr std::u32string_view kVowels = U"аеиоуя";
constexpr std::array<const char*, 4> kFillerPos{"NOUN", "VERB", "ADJ", "ADV"};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

std::string make_word(std::mt19937_64& rng, std::size_t syllables) {
  std::u32string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w += kConsonants[draw(rng, kConsonants.size())];
    w += kVowels[draw(rng, kVowels.size())];
  }
  return text::encode(w);
}

// Distinct words of a given syllable count range, excluding `taken`.
std::vector<std::string> make_words(std::mt19937_64& rng, std::size_t n, std::size_t min_syl, std::size_t max_syl,
                                    std::set<std::string>& taken) {
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w = make_word(rng, min_syl + draw(rng, max_syl - min_syl + 1));
    if (taken.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

SyntheticCorpus make_corpus(const Options& opts) {
  auto entity = parse_entity(opts.entity);
  if (!entity) throw ConfigError("synthetic corpus entity must be an entity label, got '" + opts.entity + "'");
  if (opts.sentences_per_document == 0) throw ConfigError("sentences_per_document must be positive");
  std::mt19937_64 rng(opts.seed);
  std::set<std::string> taken;
  const auto filler = make_words(rng, opts.filler_words, 1, 3, taken);
  // Entity words are longer than any filler word, so the two vocabularies never collide.
  const auto entity_words = make_words(rng, opts.lexicon_terms * 2, 4, 5, taken);

  SyntheticCorpus out;
  out.lexicon.name = "synthetic";
  std::vector<std::vector<std::string>> terms;
  for (std::size_t i = 0; i < opts.lexicon_terms; ++i) {
    std::vector<std::string> term{entity_words[2 * i]};
    if (i % 3 == 2) term.push_back(entity_words[2 * i + 1]);  // every third term is a phrase
    std::string key;
    for (const auto& w : term) key += (key.empty() ? "" : " ") + w;
    out.lexicon.entries[key] = opts.entity;
    terms.push_back(std::move(term));
  }

  std::size_t produced = 0;
  while (produced < opts.sentences) {
    Document doc;
    doc.id = "syn-" + std::to_string(out.corpus.documents.size());
    std::u32string body;
    for (std::size_t s = 0; s < opts.sentences_per_document && produced < opts.sentences; ++s, ++produced) {
      struct Piece {
        std::vector<std::string> words;
        bool entity;
      };
      std::vector<Piece> pieces;
      const std::size_t n_filler = 4 + draw(rng, 8);
      for (std::size_t k = 0; k < n_filler; ++k) pieces.push_back({{filler[draw(rng, filler.size())]}, false});
      const std::size_t n_entities = draw(rng, 3);
      for (std::size_t k = 0; k < n_entities; ++k) {
        auto pos = pieces.begin() + static_cast<std::ptrdiff_t>(draw(rng, pieces.size() + 1));
        pieces.insert(pos, Piece{terms[draw(rng, terms.size())], true});
      }
      Sentence sent;
      for (const auto& p : pieces) {
        const std::size_t mention_start = body.size();
        for (const auto& w : p.words) {
          if (!body.empty()) body += U' ';
          const std::u32string cps = text::decode(w);
          Token t;
          t.text = w;
          t.span = {body.size(), body.size() + cps.size()};
          t.lemma = w;
          t.pos = p.entity ? "NOUN" : kFillerPos[draw(rng, kFillerPos.size())];
          body += cps;
          sent.tokens.push_back(std::move(t));
        }
        if (p.entity) {
          Mention m;
          m.id = doc.id + "-m" + std::to_string(doc.mentions.size());
          m.entity = *entity;
          const std::size_t first = mention_start + (mention_start == 0 ? 0 : 1);
          m.spans = {{first, body.size()}};
          doc.mentions.push_back(std::move(m));
        }
      }
      Token dot;
      dot.text = ".";
      dot.span = {body.size(), body.size() + 1};
      dot.lemma = ".";
      dot.pos = "PUNCT";
      body += U'.';
      sent.tokens.push_back(std::move(dot));
      for (std::size_t i = 0; i < sent.tokens.size(); ++i) sent.tokens[i].head = i == 0 ? 0 : 1;
      doc.sentences.push_back(std::move(sent));
    }
    doc.text = text::encode(body);
    out.corpus.documents.push_back(std::move(doc));
  }
  return out;
}

std::pair<CorpusFile, CorpusFile> split(const CorpusFile& corpus, double fraction) {
  std::pair<CorpusFile, CorpusFile> out;
  const auto cut = static_cast<std::size_t>(fraction * static_cast<double>(corpus.documents.size()));
  for (std::size_t i = 0; i < corpus.documents.size(); ++i)
    (i < cut ? out.first : out.second).documents.push_back(corpus.documents[i]);
  return out;
}

}  // namespace nerlab::synthetic
