#pragma once

// Readers and writers: corpus JSON, CoNLL-U, conlleval tag files, lexicon
// TSV, code mapping TSV and word2vec text vectors. Byte layouts are in
// docs/formats.md.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nerlab/core.hpp"

namespace nerlab {

inline constexpr const char* kCorpusFormatVersion = "1.0";

struct CorpusFile {
  std::string version = kCorpusFormatVersion;
  std::vector<Document> documents;

  bool operator==(const CorpusFile&) const = default;
};

/// Parses and validates a corpus. Schema problems raise ParseError carrying a
/// JSON pointer; invariant violations raise ValidationError.
CorpusFile parse_corpus(const std::string& json_text);
CorpusFile load_corpus(const std::filesystem::path& path);

/// Canonical serialization: fixed key order, two-space indent, raw UTF-8,
/// trailing newline.
std::string dump_corpus(const CorpusFile& corpus);
void save_corpus(const CorpusFile& corpus, const std::filesystem::path& path);

/// Sentences of a CoNLL-U stream. Token offsets come from TokenRange=s:e in
/// MISC when present, otherwise tokens are laid out space-separated
/// (no space after SpaceAfter=No).
std::vector<Sentence> parse_conllu(std::istream& in);
std::vector<Sentence> read_conllu(const std::filesystem::path& path);

/// CoNLL-U split by "# newdoc id = X" markers; offsets restart per document.
std::vector<std::pair<std::string, std::vector<Sentence>>> read_conllu_documents(const std::filesystem::path& path);

/// Rebuilds a text whose offsets match the token spans (gaps become spaces).
std::string reconstruct_text(const std::vector<Sentence>& sentences);

/// One token line of a tag file.
struct TagLine {
  std::string token;
  std::string gold;
  std::string pred;
};
using TagFileSentence = std::vector<TagLine>;

/// "token gold pred" lines, blank line after each sentence.
void write_tag_file(std::ostream& out, const std::vector<Sentence>& sentences, const std::vector<TagSequence>& gold,
                    const std::vector<TagSequence>& pred);
void write_tag_file(const std::vector<Sentence>& sentences, const std::vector<TagSequence>& gold,
                    const std::vector<TagSequence>& pred, const std::filesystem::path& path);

/// One file per layer at "<path>-<layer>". Maps are keyed by layer.
void write_tag_files(const std::vector<Sentence>& sentences,
                     const std::map<std::string, std::vector<TagSequence>>& gold,
                     const std::map<std::string, std::vector<TagSequence>>& pred, const std::filesystem::path& path);

/// Reads conlleval-style lines: the last column is the predicted tag, the one
/// before it the gold tag. Lines with two columns yield gold == pred.
std::vector<TagFileSentence> parse_tag_file(std::istream& in);
std::vector<TagFileSentence> read_tag_file(const std::filesystem::path& path);

struct Lexicon {
  std::string name;
  /// lowercased term -> category
  std::map<std::string, std::string> entries;
  std::vector<std::string> warnings;

  std::vector<std::string> categories() const;
};

/// TSV "term<TAB>category". Duplicate terms: last wins, a warning is kept.
Lexicon parse_lexicon(std::istream& in, std::string name);
Lexicon load_lexicon(const std::filesystem::path& path);

/// TSV "name<TAB>scheme<TAB>code"; one name may carry codes in several schemes.
struct CodeMapping {
  std::map<std::string, std::vector<Code>> codes;
  std::vector<std::string> warnings;
};
CodeMapping parse_code_mapping(std::istream& in);
CodeMapping load_code_mapping(const std::filesystem::path& path);

struct VectorTable {
  std::size_t dimension = 0;
  std::unordered_map<std::string, std::vector<double>> entries;
  std::vector<std::string> warnings;

  const std::vector<double>* find(const std::string& token) const;
};

/// word2vec text format: header "count dim", then "token v1 ... vdim".
VectorTable parse_vectors(std::istream& in);
VectorTable load_vectors(const std::filesystem::path& path);

}  // namespace nerlab
