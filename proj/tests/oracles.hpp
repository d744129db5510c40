#pragma once

// Independent brute-force reference implementations used by the unit and
// acceptance tests. They favour obviousness over speed and share no code
// with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "nerlab/core.hpp"

namespace oracle {

// ---- Ratcliff/Obershelp ---------------------------------------------------

// Longest common block by trying every (i, j, len); the first one found at
// the greatest length with the smallest i, then smallest j, wins.
inline std::size_t matched(const std::u32string& a, const std::u32string& b) {
  std::size_t best = 0, bi = 0, bj = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t len = 0;
      while (i + len < a.size() && j + len < b.size() && a[i + len] == b[j + len]) ++len;
      if (len > best) {
        best = len;
        bi = i;
        bj = j;
      }
    }
  if (best == 0) return 0;
  return best + matched(a.substr(0, bi), b.substr(0, bj)) + matched(a.substr(bi + best), b.substr(bj + best));
}

// Lowercase ASCII/Cyrillic only; enough for the test alphabets.
inline std::u32string lower(std::u32string s) {
  for (auto& c : s) {
    if (c >= U'A' && c <= U'Z') c += 32;
    else if (c >= U'А' && c <= U'Я') c += 32;
    else if (c == U'Ё') c = U'ё';
  }
  return s;
}

inline double ratcliff(std::u32string a, std::u32string b) {
  a = lower(a);
  b = lower(b);
  if (a.empty() && b.empty()) return 1.0;
  if (b < a) std::swap(a, b);
  return 2.0 * static_cast<double>(matched(a, b)) / static_cast<double>(a.size() + b.size());
}

// ---- chunks ---------------------------------------------------------------

using ChunkSet = std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::string>>;  // sent, begin, end, type

inline std::string tag_type(const std::string& t) { return t == "O" ? "" : t.substr(2); }

// A chunk starts at i when the tag is B-X, or I-X not preceded by a tag of
// type X; it extends over the following I-X tags.
inline ChunkSet chunks(const std::vector<std::vector<std::string>>& sents) {
  ChunkSet out;
  for (std::size_t s = 0; s < sents.size(); ++s) {
    const auto& tags = sents[s];
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i] == "O") continue;
      const std::string type = tag_type(tags[i]);
      const bool starts = tags[i][0] == 'B' || i == 0 || tag_type(tags[i - 1]) != type;
      if (!starts) continue;
      std::size_t e = i + 1;
      while (e < tags.size() && tags[e] == "I-" + type) ++e;
      out.insert({s, i, e, type});
    }
  }
  return out;
}

struct Prf {
  double p = 0, r = 0, f = 0;
};

inline Prf prf(std::size_t gold, std::size_t pred, std::size_t correct) {
  Prf x;
  x.p = pred ? 100.0 * static_cast<double>(correct) / static_cast<double>(pred) : 0.0;
  x.r = gold ? 100.0 * static_cast<double>(correct) / static_cast<double>(gold) : 0.0;
  x.f = x.p + x.r > 0 ? 2 * x.p * x.r / (x.p + x.r) : 0.0;
  return x;
}

inline Prf chunk_prf(const std::vector<std::vector<std::string>>& gold,
                     const std::vector<std::vector<std::string>>& pred) {
  const auto g = chunks(gold), p = chunks(pred);
  std::size_t correct = 0;
  for (const auto& c : p) correct += g.count(c);
  return prf(g.size(), p.size(), correct);
}

// ---- agreement ------------------------------------------------------------

inline bool compatible(const nerlab::Mention& a, const nerlab::Mention& b, bool intersection, bool ignore_tag) {
  if (!ignore_tag && (a.entity != b.entity || a.attribute != b.attribute)) return false;
  if (!intersection) return a.spans == b.spans;
  for (const auto& x : a.spans)
    for (const auto& y : b.spans)
      if (x.start < y.end && y.start < x.end) return true;
  return false;
}

// Largest matching by trying every assignment of a's mentions.
inline std::size_t best_matching(const std::vector<nerlab::Mention>& a, const std::vector<nerlab::Mention>& b,
                                 bool intersection, bool ignore_tag, std::size_t i = 0,
                                 std::vector<bool>* used = nullptr) {
  std::vector<bool> local(b.size(), false);
  if (!used) used = &local;
  if (i == a.size()) return 0;
  std::size_t best = best_matching(a, b, intersection, ignore_tag, i + 1, used);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if ((*used)[j] || !compatible(a[i], b[j], intersection, ignore_tag)) continue;
    (*used)[j] = true;
    best = std::max(best, 1 + best_matching(a, b, intersection, ignore_tag, i + 1, used));
    (*used)[j] = false;
  }
  return best;
}

inline double agreement(const std::vector<nerlab::Mention>& a, const std::vector<nerlab::Mention>& b,
                        bool intersection, bool ignore_tag) {
  const std::size_t denom = std::max(a.size(), b.size());
  if (denom == 0) return 100.0;
  return 100.0 * static_cast<double>(best_matching(a, b, intersection, ignore_tag)) / static_cast<double>(denom);
}

// ---- coreference ----------------------------------------------------------

using Entity = std::set<int>;

inline double phi4(const Entity& k, const Entity& r) {
  std::size_t common = 0;
  for (int x : k) common += r.count(x);
  return 2.0 * static_cast<double>(common) / static_cast<double>(k.size() + r.size());
}

// Best total phi4 over every injective pairing of the smaller side.
inline double ceafe_optimum(const std::vector<Entity>& key, const std::vector<Entity>& resp) {
  const bool flip = key.size() > resp.size();
  const auto& small = flip ? resp : key;
  const auto& large = flip ? key : resp;
  std::vector<std::size_t> idx(large.size());
  std::iota(idx.begin(), idx.end(), 0);
  double best = 0;
  do {
    double total = 0;
    for (std::size_t i = 0; i < small.size(); ++i)
      total += flip ? phi4(large[idx[i]], small[i]) : phi4(small[i], large[idx[i]]);
    best = std::max(best, total);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

// MUC recall: sum over key chains of (|K| - partitions of K by the response) / (|K| - 1).
inline std::pair<double, double> muc_recall_counts(const std::vector<Entity>& key, const std::vector<Entity>& resp) {
  double num = 0, den = 0;
  for (const auto& k : key) {
    std::set<int> parts;
    int singles = 0;
    for (int m : k) {
      bool found = false;
      for (std::size_t r = 0; r < resp.size(); ++r)
        if (resp[r].count(m)) {
          parts.insert(static_cast<int>(r));
          found = true;
        }
      if (!found) ++singles;
    }
    num += static_cast<double>(k.size()) - static_cast<double>(parts.size() + static_cast<std::size_t>(singles));
    den += static_cast<double>(k.size()) - 1;
  }
  return {num, den};
}

// ---- linker ---------------------------------------------------------------

struct LinkWord {
  std::string lemma;
  std::size_t token;
  std::size_t head;  // 1-based, 0 = root
};

inline bool function_pos(const std::string& p) {
  return p == "ADP" || p == "PART" || p == "PUNCT" || p == "CCONJ" || p == "SCONJ" || p == "DET" || p == "AUX";
}

inline std::size_t cp_length(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

// Lemmas here are expected lowercase already.
inline std::vector<LinkWord> filter(const std::vector<nerlab::Token>& toks, std::size_t min_len = 2) {
  std::vector<LinkWord> out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (function_pos(*toks[i].pos) || cp_length(*toks[i].lemma) < min_len) continue;
    out.push_back({*toks[i].lemma, i, toks[i].head.value_or(0)});
  }
  return out;
}

struct Ctx {
  std::set<std::string> lex, syn;
  std::string parent;  // empty when none
};

inline Ctx context(const std::vector<LinkWord>& ws, std::size_t i) {
  Ctx c;
  for (std::size_t k = (i == 0 ? 0 : i - 1); k <= i + 1 && k < ws.size(); ++k) c.lex.insert(ws[k].lemma);
  c.syn.insert(ws[i].lemma);
  for (const auto& w : ws)
    if (ws[i].head != 0 && w.token + 1 == ws[i].head) {
      c.parent = w.lemma;
      c.syn.insert(w.lemma);
    }
  return c;
}

inline double set_f1(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  if (common == 0) return 0;
  const double p = static_cast<double>(common) / static_cast<double>(a.size());
  const double r = static_cast<double>(common) / static_cast<double>(b.size());
  return 2 * p * r / (p + r);
}

inline double similarity(const Ctx& w, const Ctx& c) {
  const double central = !w.parent.empty() && c.syn.count(w.parent) ? 1.0 : 0.0;
  return (set_f1(w.lex, c.lex) + set_f1(w.syn, c.syn) + central) / 3.0;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return na == 0 || nb == 0 ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace oracle
