#pragma once

// Thesaurus concept linking. Two routes: cosine similarity of embedding
// vectors, and overlap of lexical/syntactic context sets between a corpus
// word and each word of a concept.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nerlab/core.hpp"
#include "nerlab/formats.hpp"

namespace nerlab::link {

inline constexpr double kCosineThreshold = 0.55;
inline constexpr double kSyntacticThreshold = 0.6;

struct FrequencyFilter {
  std::unordered_map<std::string, std::size_t> document_frequency;
  /// Words seen in more documents than this are dropped.
  std::size_t max_document_frequency = 0;
};

struct PreprocessOptions {
  /// Minimum word length in code points.
  std::size_t min_length = 2;
  std::optional<FrequencyFilter> frequency;
};

/// A token that survived preprocessing.
struct Word {
  std::string text;  ///< lowercased lemma
  std::size_t token = 0;
  std::optional<std::size_t> head;  ///< 1-based head copied from the token
};

/// True for ADP, PART, PUNCT, CCONJ, SCONJ, DET, AUX.
bool is_function_pos(std::string_view pos);

/// Lowercases lemmas and drops short words, function parts of speech and
/// (optionally) overly frequent words. Throws ValidationError naming a token
/// without lemma or PoS.
std::vector<Word> preprocess(const std::vector<Token>& tokens, const PreprocessOptions& opts = {});

struct ContextSets {
  std::set<std::string> lexical;    ///< word and its filtered neighbours
  std::set<std::string> syntactic;  ///< word and its parent
  std::optional<std::string> parent;
};

/// One ContextSets per filtered word. The parent is used only when the head
/// token itself survived preprocessing.
std::vector<ContextSets> context_sets(const std::vector<Word>& words);

double lexical_involvement(const ContextSets& w, const ContextSets& c);
double cohesiveness(const ContextSets& w, const ContextSets& c);
int centrality(const ContextSets& w, const ContextSets& c);
/// Mean of the three measures above.
double context_similarity(const ContextSets& w, const ContextSets& c);

struct ConceptEntry {
  std::string text;
  std::string code;
  std::vector<Token> tokens;
  std::vector<Word> words;
  std::vector<ContextSets> contexts;
  std::optional<std::vector<double>> vector;
};

/// Builds a concept. Without parsed tokens the text is split on whitespace,
/// lemmas are the lowercased words and no dependency heads are known.
ConceptEntry make_concept(std::string text, std::string code, std::optional<std::vector<Token>> tokens,
                          const PreprocessOptions& opts = {}, const VectorTable* vectors = nullptr);

/// Inventory TSV "concept_text<TAB>code"; the optional CoNLL-U holds one
/// sentence per inventory row, in order.
std::vector<ConceptEntry> load_concepts(const std::filesystem::path& inventory,
                                        const std::optional<std::filesystem::path>& conllu,
                                        const PreprocessOptions& opts = {}, const VectorTable* vectors = nullptr);

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

struct Link {
  std::string code;
  std::size_t concept_index = 0;
  double score = 0;
};

/// Best concept by cosine; linked iff the best score >= threshold.
std::optional<Link> link_cosine(std::span<const double> word_vector, const std::vector<ConceptEntry>& concepts,
                                double threshold = kCosineThreshold);
/// Looks `word` up in `vectors`; out-of-vocabulary words are never linked.
std::optional<Link> link_cosine(const std::string& word, const std::vector<ConceptEntry>& concepts,
                                const VectorTable& vectors, double threshold = kCosineThreshold);

/// Concept score = max over its words of context_similarity; linked iff the
/// best concept score > threshold.
std::optional<Link> link_syntactic(const ContextSets& word, const std::vector<ConceptEntry>& concepts,
                                   double threshold = kSyntacticThreshold);

enum class Method { Cosine, Syntactic };
std::string_view to_string(Method m);

struct WordLink {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string word;
  Link link;
  Method method = Method::Cosine;
};

struct LinkOptions {
  PreprocessOptions preprocess;
  bool use_cosine = true;
  bool use_syntactic = true;
  double cosine_threshold = kCosineThreshold;
  double syntactic_threshold = kSyntacticThreshold;
};

/// Links every filtered word of a parsed sentence. Throws ValidationError
/// when the sentence carries no dependency heads and syntactic linking is on.
std::vector<WordLink> link_sentence(const Sentence& sent, std::size_t sentence_index,
                                    const std::vector<ConceptEntry>& concepts, const VectorTable* vectors,
                                    const LinkOptions& opts);

}  // namespace nerlab::link
