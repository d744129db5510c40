#pragma once

// Deterministic synthetic corpus whose entity mentions are exactly the
// occurrences of lexicon terms. Used for tagger sanity checks and demos.

#include <cstdint>
#include <string>

#include "nerlab/formats.hpp"

namespace nerlab::synthetic {

struct Options {
  std::size_t sentences = 2000;
  std::size_t sentences_per_document = 10;
  std::uint64_t seed = 42;
  std::string entity = "ADR";
  std::size_t filler_words = 400;
  std::size_t lexicon_terms = 80;
};

struct SyntheticCorpus {
  CorpusFile corpus;
  /// term -> entity label; every term is a mention wherever it occurs.
  Lexicon lexicon;
};

SyntheticCorpus make_corpus(const Options& opts = {});

/// First `fraction` of documents (rounded down) and the rest.
std::pair<CorpusFile, CorpusFile> split(const CorpusFile& corpus, double fraction);

}  // namespace nerlab::synthetic
