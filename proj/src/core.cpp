#include "nerlab/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab {

namespace {

constexpr std::array<std::string_view, 4> kEntityNames{"Medication", "Disease", "ADR", "Note"};
constexpr std::array<std::string_view, 17> kAttributeNames{
    "Drugname", "DrugBrand",   "Drugform", "Drugclass",  "MedMaker", "MedFrom",
    "Frequency", "Dosage",     "Duration", "Route",      "SourceInfodrug", "Diseasename",
    "Indication", "BNE-Pos",   "ADE-Neg",  "NegatedADE", "Worse",
};
constexpr std::array<std::string_view, 4> kSchemeNames{"ICD-10", "ATC", "MedDRA", "SRD"};

std::string offset_msg(std::size_t off) { return "offset " + std::to_string(off); }

}  // namespace

std::string_view to_string(Entity e) { return kEntityNames[static_cast<std::size_t>(e)]; }
std::string_view to_string(Attribute a) { return kAttributeNames[static_cast<std::size_t>(a)]; }
std::string_view to_string(CodeScheme s) { return kSchemeNames[static_cast<std::size_t>(s)]; }

std::optional<Entity> parse_entity(std::string_view s) {
  for (std::size_t i = 0; i < kEntityNames.size(); ++i)
    if (kEntityNames[i] == s) return static_cast<Entity>(i);
  return std::nullopt;
}

std::optional<Attribute> parse_attribute(std::string_view s) {
  for (std::size_t i = 0; i < kAttributeNames.size(); ++i)
    if (kAttributeNames[i] == s) return static_cast<Attribute>(i);
  return std::nullopt;
}

std::optional<CodeScheme> parse_code_scheme(std::string_view s) {
  for (std::size_t i = 0; i < kSchemeNames.size(); ++i)
    if (kSchemeNames[i] == s) return static_cast<CodeScheme>(i);
  return std::nullopt;
}

Entity owner_of(Attribute a) {
  return static_cast<int>(a) <= static_cast<int>(Attribute::SourceInfodrug) ? Entity::Medication
                                                                            : Entity::Disease;
}

const std::vector<std::string>& all_layers() {
  static const std::vector<std::string> layers = [] {
    std::vector<std::string> v;
    for (auto n : kEntityNames) v.emplace_back(n);
    for (auto n : kAttributeNames) v.emplace_back(n);
    return v;
  }();
  return layers;
}

bool Mention::in_layer(std::string_view layer) const {
  return to_string(entity) == layer || (attribute && to_string(*attribute) == layer);
}

std::string Mention::label() const {
  std::string s(to_string(entity));
  if (attribute) {
    s += '/';
    s += to_string(*attribute);
  }
  return s;
}

std::size_t Mention::total_length() const {
  return std::accumulate(spans.begin(), spans.end(), std::size_t{0},
                         [](std::size_t acc, const Span& s) { return acc + s.length(); });
}

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

char to_char(Bio b) {
  switch (b) {
    case Bio::B:
      return 'B';
    case Bio::I:
      return 'I';
    case Bio::O:
      break;
  }
  return 'O';
}

std::string TagSequence::tag_string(std::size_t i) const {
  Bio b = tags.at(i);
  if (b == Bio::O) return "O";
  return std::string(1, to_char(b)) + "-" + layer;
}

void validate_mention(const Mention& m, std::size_t text_length) {
  const std::string who = "mention '" + m.id + "'";
  if (m.id.empty()) throw ValidationError("mention with empty id");
  if (m.spans.empty()) throw ValidationError(who + " has no spans");
  for (std::size_t i = 0; i < m.spans.size(); ++i) {
    const Span& s = m.spans[i];
    if (s.start >= s.end)
      throw ValidationError(who + ": empty or inverted span at " + offset_msg(s.start));
    if (s.end > text_length)
      throw ValidationError(who + ": span end " + std::to_string(s.end) + " exceeds text length " +
                            std::to_string(text_length));
    if (i > 0 && m.spans[i - 1].end > s.start)
      throw ValidationError(who + ": spans unsorted or overlapping at " + offset_msg(s.start));
  }
  if (m.attribute) {
    if (m.entity != Entity::Medication && m.entity != Entity::Disease)
      throw ValidationError(who + ": entity " + std::string(to_string(m.entity)) + " carries no attributes");
    if (owner_of(*m.attribute) != m.entity)
      throw ValidationError(who + ": attribute " + std::string(to_string(*m.attribute)) +
                            " is not valid for " + std::string(to_string(m.entity)));
  }
}

void validate_document(const Document& doc) {
  const std::size_t len = text::length(doc.text);
  const std::string where = "document '" + doc.id + "'";
  std::set<std::string> ids;
  for (const auto& m : doc.mentions) {
    try {
      validate_mention(m, len);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (!ids.insert(m.id).second) throw ValidationError(where + ": duplicate mention id '" + m.id + "'");
  }
  std::size_t prev_end = 0;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& sent = doc.sentences[si];
    if (sent.tokens.empty()) throw ValidationError(where + ": sentence " + std::to_string(si) + " is empty");
    for (const auto& tok : sent.tokens) {
      if (tok.span.start >= tok.span.end || tok.span.end > len)
        throw ValidationError(where + ": token '" + tok.text + "' has invalid span at " +
                              offset_msg(tok.span.start));
      if (tok.span.start < prev_end)
        throw ValidationError(where + ": tokens unsorted or overlapping at " + offset_msg(tok.span.start));
      prev_end = tok.span.end;
      if (tok.head && *tok.head > sent.tokens.size())
        throw ValidationError(where + ": token '" + tok.text + "' head out of range");
    }
  }
  std::set<std::vector<Span>> seen;
  for (const auto& chain : doc.chains) {
    if (chain.elements.size() < 2)
      throw ValidationError(where + ": chain '" + chain.id + "' has fewer than 2 elements");
    for (const auto& el : chain.elements) {
      if (el.empty()) throw ValidationError(where + ": chain '" + chain.id + "' has an empty element");
      for (const auto& s : el) {
        if (s.start >= s.end || s.end > len)
          throw ValidationError(where + ": chain '" + chain.id + "' element out of range at " +
                                offset_msg(s.start));
      }
      if (!seen.insert(el).second)
        throw ValidationError(where + ": chain element at " + offset_msg(el.front().start) +
                              " appears more than once");
    }
  }
}

std::string mention_text(const Document& doc, const Mention& m) {
  std::string out;
  for (const auto& s : m.spans) {
    if (!out.empty()) out += ' ';
    out += text::substr(doc.text, s.start, s.end);
  }
  return out;
}

std::vector<std::size_t> covered_tokens(const Sentence& sent, const Mention& m) {
  std::vector<std::size_t> out;
  if (sent.tokens.empty()) return out;
  const Span ext = sent.extent();
  for (const auto& s : m.spans) {
    if (!s.intersects(ext)) continue;
    bool hit = false;
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      if (sent.tokens[i].span.intersects(s)) {
        out.push_back(i);
        hit = true;
      }
    }
    if (!hit)
      throw AlignmentError("mention '" + m.id + "': span at " + offset_msg(s.start) + " touches no token");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<TokenRef> covered_tokens(const Document& doc, const Mention& m) {
  std::vector<TokenRef> out;
  for (const auto& s : m.spans) {
    bool hit = false;
    for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
      const auto& toks = doc.sentences[si].tokens;
      for (std::size_t ti = 0; ti < toks.size(); ++ti) {
        if (toks[ti].span.intersects(s)) {
          out.push_back({si, ti});
          hit = true;
        }
      }
    }
    if (!hit)
      throw AlignmentError("mention '" + m.id + "': span at " + offset_msg(s.start) + " touches no token");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ComplexityClass classify_mention(const Mention& m, const std::vector<Mention>& others, const Document& doc) {
  ComplexityClass c;
  const auto mine = covered_tokens(doc, m);
  if (mine.size() >= 2) c.word_arity = ComplexityClass::Arity::Multiword;
  if (m.spans.size() >= 2) c.continuity = ComplexityClass::Continuity::Discontinuous;
  for (const auto& o : others) {
    if (&o == &m || (o.id == m.id && o.spans == m.spans)) continue;
    const auto theirs = covered_tokens(doc, o);
    std::vector<TokenRef> common;
    std::set_intersection(mine.begin(), mine.end(), theirs.begin(), theirs.end(), std::back_inserter(common));
    if (!common.empty()) {
      c.overlap = ComplexityClass::Overlap::Overlapping;
      break;
    }
  }
  return c;
}

TagSequence encode_bio(const Sentence& sent, const std::vector<Mention>& mentions, std::string_view layer,
                       EncodeReport* report) {
  TagSequence out{std::string(layer), std::vector<Bio>(sent.tokens.size(), Bio::O)};

  struct Candidate {
    const Mention* mention;
    std::vector<std::size_t> tokens;
  };
  std::vector<Candidate> cands;
  for (const auto& m : mentions) {
    if (!m.in_layer(layer)) continue;
    auto toks = covered_tokens(sent, m);
    if (!toks.empty()) cands.push_back({&m, std::move(toks)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.mention->start() != b.mention->start()) return a.mention->start() < b.mention->start();
    return a.mention->total_length() > b.mention->total_length();
  });

  std::vector<bool> claimed(sent.tokens.size(), false);
  for (const auto& c : cands) {
    bool lost = false;
    for (std::size_t k = 0; k < c.tokens.size(); ++k) {
      std::size_t t = c.tokens[k];
      if (claimed[t]) {
        lost = true;
        continue;
      }
      claimed[t] = true;
      out.tags[t] = k == 0 ? Bio::B : Bio::I;
    }
    bool gap = false;
    for (std::size_t k = 1; k < c.tokens.size(); ++k) gap |= c.tokens[k] != c.tokens[k - 1] + 1;
    if (report) {
      if (lost) {
        ++report->conflicts;
        report->warnings.push_back("mention '" + c.mention->id + "' lost tokens to an overlapping " +
                                   std::string(layer) + " mention");
      }
      if (gap) {
        ++report->discontinuous;
        report->warnings.push_back("mention '" + c.mention->id + "' is discontinuous; BIO encoding splits it");
      }
    }
  }
  return out;
}

std::vector<Mention> decode_bio(const TagSequence& tags, const Sentence& sent) {
  if (tags.tags.size() != sent.tokens.size())
    throw AlignmentError("tag sequence length " + std::to_string(tags.tags.size()) + " differs from token count " +
                         std::to_string(sent.tokens.size()));
  Mention proto;
  if (auto e = parse_entity(tags.layer)) {
    proto.entity = *e;
  } else if (auto a = parse_attribute(tags.layer)) {
    proto.entity = owner_of(*a);
    proto.attribute = *a;
  } else {
    throw ValidationError("unknown layer label '" + tags.layer + "'");
  }

  std::vector<Mention> out;
  std::optional<std::size_t> open;
  auto close = [&](std::size_t end_token) {
    Mention m = proto;
    m.id = tags.layer + "-" + std::to_string(out.size());
    m.spans = {{sent.tokens[*open].span.start, sent.tokens[end_token].span.end}};
    out.push_back(std::move(m));
    open.reset();
  };
  for (std::size_t i = 0; i < tags.tags.size(); ++i) {
    switch (tags.tags[i]) {
      case Bio::B:
        if (open) close(i - 1);
        open = i;
        break;
      case Bio::I:
        if (!open) open = i;
        break;
      case Bio::O:
        if (open) close(i - 1);
        break;
    }
  }
  if (open) close(tags.tags.size() - 1);
  return out;
}

}  // namespace nerlab
