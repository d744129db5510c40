#pragma once

// Scoring: CoNLL-2000 chunk precision/recall/F1, inter-annotator agreement,
// and coreference metrics (MUC, B-cubed, entity CEAF).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nerlab/core.hpp"

namespace nerlab::eval {

/// Counts and percentages for one type (or the micro aggregate).
struct Score {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t gold_count = 0;
  std::size_t pred_count = 0;
  std::size_t correct_count = 0;

  static Score from_counts(std::size_t gold, std::size_t pred, std::size_t correct);
};

struct MetricReport {
  std::map<std::string, Score> per_type;
  Score micro;
};

/// Harmonic mean, 0 when both inputs are 0.
double f1(double precision, double recall);

/// Half-up rounding to `decimals` places (tolerant of binary representation error).
double round_half_up(double value, int decimals);

/// A typed token range [begin, end) extracted from a tag sequence.
struct Chunk {
  std::string type;
  std::size_t begin = 0;
  std::size_t end = 0;

  auto operator<=>(const Chunk&) const = default;
};

/// conlleval chunk extraction over "O"/"B-X"/"I-X" tags. An I-X that does not
/// continue an X chunk opens a new one.
std::vector<Chunk> extract_chunks(const std::vector<std::string>& tags);

/// Corpus-level chunk scoring; one inner vector per sentence.
MetricReport chunk_prf(const std::vector<std::vector<std::string>>& gold,
                       const std::vector<std::vector<std::string>>& pred);

/// Experimental token-overlap score: per sentence with gold mentions, F1 of
/// the (position, type) pairs tagged non-O, then the mean over those
/// sentences, in percent. Empty when no sentence has a gold mention.
std::optional<double> partial_f1(const std::vector<std::vector<std::string>>& gold,
                                 const std::vector<std::vector<std::string>>& pred);

enum class SpanStrictness { Strict, Intersection };
enum class TagStrictness { Strict, Ignored };

struct AgreementConfig {
  SpanStrictness span = SpanStrictness::Strict;
  TagStrictness tag = TagStrictness::Strict;
};

std::string_view to_string(SpanStrictness s);
std::string_view to_string(TagStrictness t);

bool admissible(const Mention& a, const Mention& b, const AgreementConfig& cfg);

/// Size of a maximum one-to-one matching between admissible pairs.
std::size_t match_mentions(const std::vector<Mention>& a, const std::vector<Mention>& b, const AgreementConfig& cfg);

/// 100 * matches / max(|a|, |b|); 100 when both are empty.
double agreement_pair(const std::vector<Mention>& a, const std::vector<Mention>& b, const AgreementConfig& cfg);

/// annotator -> document id -> mentions.
using Annotations = std::map<std::string, std::map<std::string, std::vector<Mention>>>;

struct AgreementSummary {
  double average = 0;
  /// "a|b" -> mean over shared documents.
  std::map<std::string, double> pairs;
};

/// Per-document scores averaged per annotator pair, then over pairs.
/// Throws UndefinedInputError for fewer than two annotators or a pair without
/// shared documents.
AgreementSummary agreement_average(const Annotations& annotations, const AgreementConfig& cfg);

/// Chains whose elements are identified by their span lists.
struct ChainSet {
  std::vector<std::vector<std::vector<Span>>> chains;

  /// Rejects chains with fewer than two elements and elements shared by chains.
  void validate() const;
};

ChainSet chain_set(const std::vector<CorefChain>& chains);

/// Numerators and denominators behind a coreference score, so documents can
/// be pooled before dividing.
struct CorefCounts {
  double recall_num = 0;
  double recall_den = 0;
  double precision_num = 0;
  double precision_den = 0;

  CorefCounts& operator+=(const CorefCounts& o);
  Score score() const;
};

CorefCounts muc_counts(const ChainSet& gold, const ChainSet& pred);
CorefCounts b3_counts(const ChainSet& gold, const ChainSet& pred);
CorefCounts ceafe_counts(const ChainSet& gold, const ChainSet& pred);

Score muc_prf(const ChainSet& gold, const ChainSet& pred);
Score b3_prf(const ChainSet& gold, const ChainSet& pred);
Score ceafe_prf(const ChainSet& gold, const ChainSet& pred);

double conll_avg(double muc_f1, double b3_f1, double ceafe_f1);

/// Entity similarity phi4 = 2|K and R| / (|K| + |R|).
double phi4(const std::vector<std::vector<Span>>& key, const std::vector<std::vector<Span>>& response);

/// Maximum-weight assignment on a rectangular matrix (Hungarian algorithm).
/// Returns, for each row, the assigned column or -1.
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weights);

struct CorefReport {
  Score muc;
  Score b3;
  Score ceafe;
  double avg_f1 = 0;
};

/// Pools per-document counts for each metric; documents paired by index.
CorefReport coref_report(const std::vector<ChainSet>& gold, const std::vector<ChainSet>& pred);

}  // namespace nerlab::eval
