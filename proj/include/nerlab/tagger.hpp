#pragma once

// Baseline sequence tagger: hand-crafted token features (orthography,
// emotion dictionaries, category dictionaries, thesaurus codes, bucketized
// document markers) feeding an averaged structured perceptron with Viterbi
// decoding over B/I/O. One model per annotation layer.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerlab/evaluate.hpp"
#include "nerlab/formats.hpp"
#include "nerlab/linker.hpp"

namespace nerlab::tagger {

/// Answers, in order: all letters capital; all letters lowercase; first
/// character is a capital letter; contains a digit; more than half digits;
/// only digits; all letters Latin. Letter questions are false without letters.
std::array<bool, 7> common_features(std::string_view token);

/// Bit i set iff the lowercased lemma (or surface form) is in dictionary i.
std::vector<bool> emotion_features(const Token& token, const std::vector<Lexicon>& dictionaries,
                                   bool use_lemma = true);

/// Document-level psycholinguistic markers.
struct PsychoMarkers {
  static constexpr std::size_t kCount = 6;
  static constexpr std::array<const char*, kCount> kNames{"verb_adj", "verb_noun", "verb_forms_share",
                                                          "questions", "exclamations", "mean_sentence_len"};
  /// verbs/adjectives, verbs/nouns, (verbs + participles + converbs)/words,
  /// '?' count, '!' count, mean sentence length in tokens.
  std::array<double, kCount> values{};
  /// Set where a ratio had a zero denominator (its value is then 0).
  std::array<bool, kCount> degenerate{};
};

PsychoMarkers psycholing_markers(const Document& doc);

/// One bit per lexicon category (sorted); set when the token's lowercased
/// form or lemma is an entry of that category.
std::vector<bool> dict_features(const Token& token, const Lexicon& lexicon);

/// Phrase-aware dictionary matching over a sentence: longest entries first,
/// yielding per token "category" plus its B/I position in the matched phrase.
struct DictMatch {
  std::string category;
  bool begins = false;
};
std::vector<std::optional<DictMatch>> match_dictionary(const Sentence& sent, const Lexicon& lexicon);

/// External resources for feature extraction; all optional.
struct Resources {
  std::vector<Lexicon> emotion;
  std::optional<Lexicon> categories;
  std::optional<Lexicon> liwc;
  std::vector<link::ConceptEntry> concepts;
  std::optional<VectorTable> vectors;
  link::LinkOptions link_options;
};

struct FeatureOptions {
  int window = 2;
  std::size_t max_codes = 500;

  bool operator==(const FeatureOptions&) const = default;
};

struct EpochStats {
  std::size_t epoch = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool operator==(const EpochStats&) const = default;
};

struct TaggerModel {
  static constexpr int kFormatVersion = 1;

  std::string layer;
  std::size_t epochs = 0;
  std::uint64_t seed = 0;
  FeatureOptions options;
  /// Document marker name -> quintile cut points (4 values).
  std::map<std::string, std::vector<double>> quantiles;
  /// Thesaurus codes admitted as features.
  std::vector<std::string> code_vocabulary;
  /// Averaged weights, indexed by Bio (B, I, O).
  std::map<std::string, std::array<double, 3>> weights;
  std::array<std::array<double, 3>, 3> transitions{};
  std::array<double, 3> start{};
  std::vector<EpochStats> trace;

  bool operator==(const TaggerModel&) const = default;
};

/// Token feature names for every sentence of `doc`. Depends only on the
/// tokens, the sentence, document markers and resources, never on labels.
std::vector<std::vector<std::vector<std::string>>> extract_features(const Document& doc, const Resources& res,
                                                                    const TaggerModel& model);

struct TrainOptions {
  std::string layer = "ADR";
  std::size_t epochs = 10;
  std::uint64_t seed = 42;
  FeatureOptions features;
};

/// Averaged perceptron over Viterbi paths; sentence order is reshuffled each
/// epoch from `seed`. Throws UndefinedInputError without training sentences.
TaggerModel train(const CorpusFile& corpus, const TrainOptions& opts, const Resources& res = {});

/// Viterbi decoding; O->I and start->I are never produced.
std::vector<TagSequence> tag(const TaggerModel& model, const Document& doc, const Resources& res = {});

/// Highest-scoring path for precomputed feature names.
std::vector<Bio> decode(const TaggerModel& model, const std::vector<std::vector<std::string>>& features);

/// Gold and predicted tag strings for every sentence of the corpus.
struct Tagged {
  std::vector<std::vector<std::string>> gold;
  std::vector<std::vector<std::string>> pred;
};
Tagged tag_corpus(const TaggerModel& model, const CorpusFile& corpus, const Resources& res = {});

std::string dump_model(const TaggerModel& model);
TaggerModel parse_model(const std::string& json_text);
void save_model(const TaggerModel& model, const std::filesystem::path& path);
TaggerModel load_model(const std::filesystem::path& path);

/// "epoch,layer,precision,recall,f1" rows.
std::string training_log_csv(const TaggerModel& model);

}  // namespace nerlab::tagger
