#pragma once

// Descriptive corpus statistics: saturation, type/token ratio, mention
// complexity breakdown, coverage, drug/source co-occurrence and tonality.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerlab/formats.hpp"

namespace nerlab::stats {

/// Non-punctuation tokens. A token is punctuation when its PoS is PUNCT or,
/// lacking a PoS, when it consists only of punctuation/symbol characters.
std::size_t word_count(const Document& doc);
std::size_t word_count(const CorpusFile& corpus);
bool is_punctuation(const Token& t);

std::size_t mention_count(const CorpusFile& corpus, const std::string& layer);

/// 1000 * mentions / words. Throws UndefinedInputError when words == 0.
double saturation_value(std::size_t mentions, std::size_t words);
double saturation(const CorpusFile& corpus, const std::string& layer);

/// Unique (lowercased) lemmas / tokens. Throws UndefinedInputError without
/// tokens, ValidationError when a lemma is missing.
double ttr(const Document& doc);

struct ComplexityRow {
  std::string layer;
  std::size_t total = 0;
  bool empty = true;
  double multiword = 0;
  double singleword = 0;
  double discontinuous_non_overlapping = 0;
  double continuous_non_overlapping = 0;
  double discontinuous_overlapping = 0;
  double continuous_overlapping = 0;
};

/// Percentages per layer; `layers` defaults to every entity and attribute label.
std::vector<ComplexityRow> complexity_table(const CorpusFile& corpus, std::vector<std::string> layers = {});

struct CoverageRow {
  std::string layer;
  std::size_t mentions = 0;
  std::size_t words_in_mentions = 0;  ///< distinct covered tokens
  std::size_t reviews = 0;
};

std::vector<CoverageRow> coverage(const CorpusFile& corpus, std::vector<std::string> layers = {});

/// Maps a mention key (normalized term, else lowercased surface) to a group label.
using GroupMap = std::map<std::string, std::string>;

/// Key used to look a mention up in a GroupMap.
std::string mention_key(const Document& doc, const Mention& m);

struct CooccurrenceSpec {
  std::string row_layer = "Drugname";
  std::string col_layer = "SourceInfodrug";
  GroupMap row_map;
  GroupMap col_map;
  /// Reported rows/columns; empty = every label of the map, sorted.
  std::vector<std::string> rows;
  std::vector<std::string> cols;
};

inline constexpr const char* kMixedSource = "mixed";

struct CooccurrenceMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;  ///< source groups followed by "mixed"
  std::vector<std::vector<double>> percent;
  std::vector<std::size_t> row_totals;  ///< documents mentioning each row group
};

/// cell = 100 * docs(row, exactly that source) / docs(row); documents citing
/// two or more source groups land in "mixed". Unmapped mentions are ignored.
CooccurrenceMatrix cooccurrence(const CorpusFile& corpus, const CooccurrenceSpec& spec);

enum class Tonality { Positive, Negative, Excluded };

/// Positive: BNE-Pos without any of Worse/ADE-Neg/NegatedADE; negative: the
/// reverse; everything else is excluded.
Tonality document_tonality(const Document& doc);

struct TonalityCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t neutral_or_mixed = 0;
};

inline constexpr const char* kNoSource = "none";

/// Per source group (via `source_map`, or the lowercased surface when the map
/// is empty); multi-source documents count under "mixed", documents without
/// a source under "none".
std::map<std::string, TonalityCounts> tonality(const CorpusFile& corpus, const GroupMap& source_map = {},
                                               const std::string& source_layer = "SourceInfodrug");

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t words = 0;
  double avg_sentences = 0;
  double avg_tokens = 0;
  double avg_lemmas = 0;  ///< distinct lemmas per review
  double avg_ttr = 0;
  std::vector<CoverageRow> coverage;
  std::vector<ComplexityRow> complexity;
  std::map<std::string, double> saturation;
  std::size_t total_entities = 0;
  std::optional<double> adr_to_entities;
  std::optional<double> adr_to_indication;
};

/// Everything above in one pass. TTR/lemma averages skip documents without
/// lemmas; when no document has them they stay 0.
CorpusStats compute_stats(const CorpusFile& corpus);

}  // namespace nerlab::stats
