#pragma once

// In-memory data model: spans, mentions, parsed sentences, documents,
// coreference chains and per-layer BIO tag sequences.

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nerlab {

/// Half-open range of code-point offsets into a document text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool intersects(const Span& o) const { return start < o.end && o.start < end; }

  auto operator<=>(const Span&) const = default;
};

enum class Entity { Medication, Disease, ADR, Note };

enum class Attribute {
  Drugname,
  DrugBrand,
  Drugform,
  Drugclass,
  MedMaker,
  MedFrom,
  Frequency,
  Dosage,
  Duration,
  Route,
  SourceInfodrug,
  Diseasename,
  Indication,
  BNEPos,
  ADENeg,
  NegatedADE,
  Worse,
};

inline constexpr std::array kAllEntities{Entity::Medication, Entity::Disease, Entity::ADR, Entity::Note};
inline constexpr std::array kAllAttributes{
    Attribute::Drugname,   Attribute::DrugBrand,  Attribute::Drugform,       Attribute::Drugclass,
    Attribute::MedMaker,   Attribute::MedFrom,    Attribute::Frequency,      Attribute::Dosage,
    Attribute::Duration,   Attribute::Route,      Attribute::SourceInfodrug, Attribute::Diseasename,
    Attribute::Indication, Attribute::BNEPos,     Attribute::ADENeg,         Attribute::NegatedADE,
    Attribute::Worse,
};

std::string_view to_string(Entity e);
std::string_view to_string(Attribute a);
std::optional<Entity> parse_entity(std::string_view s);
std::optional<Attribute> parse_attribute(std::string_view s);

/// The entity an attribute belongs to (Medication or Disease).
Entity owner_of(Attribute a);

/// Every layer label: entities first, then attributes, in declaration order.
const std::vector<std::string>& all_layers();

enum class CodeScheme { ICD10, ATC, MedDRA, SRD };
std::string_view to_string(CodeScheme s);
std::optional<CodeScheme> parse_code_scheme(std::string_view s);

struct Code {
  CodeScheme scheme = CodeScheme::ICD10;
  std::string code;

  auto operator<=>(const Code&) const = default;
};

struct Mention {
  std::string id;
  Entity entity = Entity::ADR;
  std::optional<Attribute> attribute;
  std::vector<Span> spans;
  std::optional<std::string> normalized_term;
  std::vector<Code> codes;
  /// Free-form extras, e.g. {"other": "true"} for analogue drugs.
  std::map<std::string, std::string> meta;

  bool in_layer(std::string_view layer) const;
  /// "Entity" or "Entity/Attribute".
  std::string label() const;
  std::size_t start() const { return spans.front().start; }
  std::size_t total_length() const;

  bool operator==(const Mention&) const = default;
};

struct Token {
  std::string text;
  Span span;
  std::optional<std::string> lemma;
  std::optional<std::string> pos;
  /// 1-based index of the syntactic head within the sentence; 0 marks the root.
  std::optional<std::size_t> head;
  std::optional<std::string> deprel;
  std::optional<std::string> feats;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;

  Span extent() const { return {tokens.front().span.start, tokens.back().span.end}; }
  bool operator==(const Sentence&) const = default;
};

struct CorefChain {
  std::string id;
  std::vector<std::vector<Span>> elements;

  bool operator==(const CorefChain&) const = default;
};

struct Document {
  std::string id;
  std::string text;
  std::map<std::string, std::string> meta;
  std::vector<Sentence> sentences;
  std::vector<Mention> mentions;
  std::vector<CorefChain> chains;

  std::size_t token_count() const;
  bool operator==(const Document&) const = default;
};

enum class Bio : unsigned char { B, I, O };
char to_char(Bio b);

struct TagSequence {
  std::string layer;
  std::vector<Bio> tags;

  /// "O", "B-<layer>" or "I-<layer>" for position i.
  std::string tag_string(std::size_t i) const;
  bool operator==(const TagSequence&) const = default;
};

struct ComplexityClass {
  enum class Arity { Singleword, Multiword } word_arity = Arity::Singleword;
  enum class Continuity { Continuous, Discontinuous } continuity = Continuity::Continuous;
  enum class Overlap { NonOverlapping, Overlapping } overlap = Overlap::NonOverlapping;

  bool operator==(const ComplexityClass&) const = default;
};

/// Throws ValidationError when the mention breaks a structural invariant
/// (empty/unsorted/overlapping spans, attribute foreign to its entity,
/// span past `text_length`).
void validate_mention(const Mention& m, std::size_t text_length);

/// Full document check: mention spans, id uniqueness, token grid, chains.
void validate_document(const Document& doc);

/// Mention surface text; fragments of a discontinuous mention are joined by a space.
std::string mention_text(const Document& doc, const Mention& m);

/// Position of a token in a document.
struct TokenRef {
  std::size_t sentence = 0;
  std::size_t token = 0;

  auto operator<=>(const TokenRef&) const = default;
};

/// Tokens whose span intersects any mention span. Throws AlignmentError when
/// a span touches no token.
std::vector<TokenRef> covered_tokens(const Document& doc, const Mention& m);

/// Same, restricted to one sentence; spans outside the sentence are ignored.
/// Throws AlignmentError for a span inside the sentence extent that touches no token.
std::vector<std::size_t> covered_tokens(const Sentence& sent, const Mention& m);

ComplexityClass classify_mention(const Mention& m, const std::vector<Mention>& others, const Document& doc);

/// Diagnostics collected while flattening mentions into BIO tags.
struct EncodeReport {
  std::size_t conflicts = 0;      ///< tokens claimed by more than one same-layer mention
  std::size_t discontinuous = 0;  ///< mentions whose fragments are not adjacent on the token grid
  std::vector<std::string> warnings;
};

/// Flattens the mentions of `layer` into B/I/O tags over `sent`. Mentions of
/// other layers are ignored. Earlier-starting (then longer) mentions win
/// contested tokens.
TagSequence encode_bio(const Sentence& sent, const std::vector<Mention>& mentions, std::string_view layer,
                       EncodeReport* report = nullptr);

/// Maximal B I* runs become single-span mentions; an I with no open run starts one.
/// The layer must be a known entity or attribute label.
std::vector<Mention> decode_bio(const TagSequence& tags, const Sentence& sent);

}  // namespace nerlab
