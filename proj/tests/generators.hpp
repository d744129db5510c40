#pragma once

// Random inputs for property tests. Every generator takes the engine by
// reference so a fixed seed reproduces a whole suite.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nerlab/core.hpp"
#include "nerlab/formats.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

inline const std::vector<std::string>& words() {
  static const std::vector<std::string> w{"боль", "голова", "Нурофен", "тошнота", "и", "не", "помог", "сыпь",
                                          "pill", "ADR", "42", "мг", "врач", "слабость", "очень", "сильно"};
  return w;
}

/// A document with one sentence of `n` space-separated tokens.
inline nerlab::Document sentence_document(Rng& rng, std::size_t n, const std::string& id = "doc") {
  nerlab::Document d;
  d.id = id;
  nerlab::Sentence s;
  std::size_t offset = 0;
  std::u32string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      d.text += ' ';
      ++offset;
    }
    const std::string& w = pick(rng, words());
    nerlab::Token t;
    t.text = w;
    std::size_t len = 0;
    for (unsigned char c : w) len += (c & 0xC0) != 0x80;
    t.span = {offset, offset + len};
    offset += len;
    d.text += w;
    s.tokens.push_back(t);
  }
  d.sentences.push_back(std::move(s));
  return d;
}

/// Continuous, token-aligned, non-overlapping mentions of `layer` (an entity
/// name) over the first sentence.
inline std::vector<nerlab::Mention> random_mentions(Rng& rng, const nerlab::Document& d, nerlab::Entity entity,
                                                    const std::string& prefix) {
  std::vector<nerlab::Mention> out;
  const auto& toks = d.sentences.front().tokens;
  std::size_t i = 0, k = 0;
  while (i < toks.size()) {
    if (coin(rng, 0.35)) {
      const std::size_t len = uniform(rng, 1, std::min<std::size_t>(3, toks.size() - i));
      nerlab::Mention m;
      m.id = prefix + std::to_string(++k);
      m.entity = entity;
      m.spans = {{toks[i].span.start, toks[i + len - 1].span.end}};
      out.push_back(m);
      i += len + 1;
    } else {
      ++i;
    }
  }
  return out;
}

/// Mentions with arbitrary (possibly overlapping, possibly multi-span) spans
/// over a text of `length` code points, labelled from a small label set.
inline std::vector<nerlab::Mention> random_annotation(Rng& rng, std::size_t length, std::size_t max_mentions) {
  static const std::vector<std::pair<nerlab::Entity, std::optional<nerlab::Attribute>>> labels{
      {nerlab::Entity::ADR, std::nullopt},
      {nerlab::Entity::Disease, std::nullopt},
      {nerlab::Entity::Medication, nerlab::Attribute::Drugname},
      {nerlab::Entity::Disease, nerlab::Attribute::Indication}};
  std::vector<nerlab::Mention> out;
  const std::size_t n = uniform(rng, 0, max_mentions);
  for (std::size_t i = 0; i < n; ++i) {
    nerlab::Mention m;
    m.id = "M" + std::to_string(i);
    const auto& [e, a] = pick(rng, labels);
    m.entity = e;
    m.attribute = a;
    const std::size_t s = uniform(rng, 0, length - 2);
    const std::size_t e1 = uniform(rng, s + 1, std::min(length, s + 6));
    m.spans.push_back({s, e1});
    if (coin(rng, 0.2) && e1 + 2 < length) {
      const std::size_t s2 = uniform(rng, e1 + 1, length - 1);
      m.spans.push_back({s2, uniform(rng, s2 + 1, std::min(length, s2 + 4))});
    }
    out.push_back(m);
  }
  return out;
}

/// Token-aligned mentions that may overlap and may be discontinuous.
inline std::vector<nerlab::Mention> random_token_mentions(Rng& rng, const nerlab::Document& d,
                                                          std::size_t max_mentions) {
  static const std::vector<nerlab::Entity> entities{nerlab::Entity::ADR, nerlab::Entity::Disease,
                                                    nerlab::Entity::Medication};
  const auto& toks = d.sentences.front().tokens;
  std::vector<nerlab::Mention> out;
  const std::size_t n = uniform(rng, 0, max_mentions);
  for (std::size_t i = 0; i < n; ++i) {
    nerlab::Mention m;
    m.id = "M" + std::to_string(i);
    m.entity = pick(rng, entities);
    const std::size_t a = uniform(rng, 0, toks.size() - 1);
    const std::size_t b = uniform(rng, a, std::min(toks.size() - 1, a + 2));
    m.spans.push_back({toks[a].span.start, toks[b].span.end});
    if (coin(rng, 0.25) && b + 2 < toks.size()) {
      const std::size_t c = uniform(rng, b + 2, toks.size() - 1);
      m.spans.push_back({toks[c].span.start, toks[c].span.end});
    }
    out.push_back(m);
  }
  return out;
}

/// Random tag sequence over `types` including ill-formed I- tags.
inline std::vector<std::string> random_tags(Rng& rng, std::size_t n, const std::vector<std::string>& types) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uniform(rng, 0, 2);
    if (r == 0)
      out.push_back("O");
    else
      out.push_back((r == 1 ? "B-" : "I-") + pick(rng, types));
  }
  return out;
}

/// Disjoint chains over mention ids [0, universe), each of size >= 2.
inline std::vector<std::vector<int>> random_chains(Rng& rng, int universe, std::size_t max_chains) {
  std::vector<int> ids(static_cast<std::size_t>(universe));
  for (int i = 0; i < universe; ++i) ids[static_cast<std::size_t>(i)] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<std::vector<int>> out;
  std::size_t pos = 0;
  const std::size_t n = uniform(rng, 0, max_chains);
  for (std::size_t c = 0; c < n && pos + 2 <= ids.size(); ++c) {
    const std::size_t size = uniform(rng, 2, std::min<std::size_t>(4, ids.size() - pos));
    out.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(pos),
                     ids.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return out;
}

/// Mention id k occupies code points [2k, 2k+1).
inline std::vector<nerlab::CorefChain> as_corpus_chains(const std::vector<std::vector<int>>& chains) {
  std::vector<nerlab::CorefChain> out;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    nerlab::CorefChain c;
    c.id = "chain-" + std::to_string(i);
    for (int id : chains[i]) {
      const auto s = static_cast<std::size_t>(2 * id);
      c.elements.push_back({{s, s + 1}});
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace gen
