#include "nerlab/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nerlab/error.hpp"

namespace nerlab::eval {

double f1(double precision, double recall) {
  if (precision + recall <= 0) return 0;
  return 2 * precision * recall / (precision + recall);
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  // Nudge values that sit a few ulps below a .5 boundary.
  return std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, std::abs(scaled))) / scale;
}

Score Score::from_counts(std::size_t gold, std::size_t pred, std::size_t correct) {
  Score s;
  s.gold_count = gold;
  s.pred_count = pred;
  s.correct_count = correct;
  s.precision = pred == 0 ? 0 : 100.0 * static_cast<double>(correct) / static_cast<double>(pred);
  s.recall = gold == 0 ? 0 : 100.0 * static_cast<double>(correct) / static_cast<double>(gold);
  s.f1 = eval::f1(s.precision, s.recall);
  return s;
}

std::vector<Chunk> extract_chunks(const std::vector<std::string>& tags) {
  std::vector<Chunk> out;
  bool open = false;
  Chunk cur;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string& t = tags[i];
    char prefix = 'O';
    std::string type;
    if (t != "O") {
      if (t.size() < 3 || (t[0] != 'B' && t[0] != 'I') || t[1] != '-')
        throw ValidationError("malformed tag '" + t + "' at position " + std::to_string(i));
      prefix = t[0];
      type = t.substr(2);
    }
    const bool continues = open && prefix == 'I' && type == cur.type;
    if (open && !continues) {
      cur.end = i;
      out.push_back(cur);
      open = false;
    }
    if (prefix != 'O' && !continues) {
      cur = {type, i, i};
      open = true;
    }
  }
  if (open) {
    cur.end = tags.size();
    out.push_back(cur);
  }
  return out;
}

MetricReport chunk_prf(const std::vector<std::vector<std::string>>& gold,
                       const std::vector<std::vector<std::string>>& pred) {
  if (gold.size() != pred.size())
    throw AlignmentError("gold has " + std::to_string(gold.size()) + " sentences, prediction " +
                         std::to_string(pred.size()));
  struct Counts {
    std::size_t gold = 0, pred = 0, correct = 0;
  };
  std::map<std::string, Counts> per;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size())
      throw AlignmentError("sentence " + std::to_string(s) + ": gold has " + std::to_string(gold[s].size()) +
                           " tags, prediction " + std::to_string(pred[s].size()));
    auto g = extract_chunks(gold[s]);
    auto p = extract_chunks(pred[s]);
    for (const auto& c : g) ++per[c.type].gold;
    for (const auto& c : p) ++per[c.type].pred;
    std::vector<Chunk> common;
    std::sort(g.begin(), g.end());
    std::sort(p.begin(), p.end());
    std::set_intersection(g.begin(), g.end(), p.begin(), p.end(), std::back_inserter(common));
    for (const auto& c : common) ++per[c.type].correct;
  }
  MetricReport r;
  Counts total;
  for (const auto& [type, c] : per) {
    r.per_type[type] = Score::from_counts(c.gold, c.pred, c.correct);
    total.gold += c.gold;
    total.pred += c.pred;
    total.correct += c.correct;
  }
  r.micro = Score::from_counts(total.gold, total.pred, total.correct);
  return r;
}

std::optional<double> partial_f1(const std::vector<std::vector<std::string>>& gold,
                                 const std::vector<std::vector<std::string>>& pred) {
  if (gold.size() != pred.size())
    throw AlignmentError("gold has " + std::to_string(gold.size()) + " sentences, prediction " +
                         std::to_string(pred.size()));
  double sum = 0;
  std::size_t sentences = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size())
      throw AlignmentError("sentence " + std::to_string(s) + ": gold has " + std::to_string(gold[s].size()) +
                           " tags, prediction " + std::to_string(pred[s].size()));
    std::size_t g = 0, p = 0, common = 0;
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      const bool in_g = gold[s][i] != "O", in_p = pred[s][i] != "O";
      g += in_g;
      p += in_p;
      common += in_g && in_p && gold[s][i].substr(2) == pred[s][i].substr(2);
    }
    if (g == 0) continue;
    ++sentences;
    sum += Score::from_counts(g, p, common).f1;
  }
  if (sentences == 0) return std::nullopt;
  return sum / static_cast<double>(sentences);
}

std::string_view to_string(SpanStrictness s) { return s == SpanStrictness::Strict ? "strict" : "intersection"; }
std::string_view to_string(TagStrictness t) { return t == TagStrictness::Strict ? "strict" : "ignored"; }

bool admissible(const Mention& a, const Mention& b, const AgreementConfig& cfg) {
  if (cfg.tag == TagStrictness::Strict && (a.entity != b.entity || a.attribute != b.attribute)) return false;
  if (cfg.span == SpanStrictness::Strict) return a.spans == b.spans;
  for (const auto& x : a.spans)
    for (const auto& y : b.spans)
      if (x.intersects(y)) return true;
  return false;
}

std::size_t match_mentions(const std::vector<Mention>& a, const std::vector<Mention>& b, const AgreementConfig& cfg) {
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (admissible(a[i], b[j], cfg)) adj[i].push_back(j);

  // Kuhn's augmenting paths; instances are per-document and small.
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(b.size(), kFree);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t u) -> bool {
    for (std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (owner[v] == kFree || self(self, owner[v])) {
        owner[v] = u;
        return true;
      }
    }
    return false;
  };
  std::size_t matched = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    seen.assign(b.size(), 0);
    if (augment(augment, u)) ++matched;
  }
  return matched;
}

double agreement_pair(const std::vector<Mention>& a, const std::vector<Mention>& b, const AgreementConfig& cfg) {
  const std::size_t denom = std::max(a.size(), b.size());
  if (denom == 0) return 100.0;
  return 100.0 * static_cast<double>(match_mentions(a, b, cfg)) / static_cast<double>(denom);
}

AgreementSummary agreement_average(const Annotations& annotations, const AgreementConfig& cfg) {
  if (annotations.size() < 2) throw UndefinedInputError("agreement needs at least two annotators");
  AgreementSummary out;
  double total = 0;
  for (auto i = annotations.begin(); i != annotations.end(); ++i) {
    for (auto j = std::next(i); j != annotations.end(); ++j) {
      double sum = 0;
      std::size_t docs = 0;
      for (const auto& [doc, mentions] : i->second) {
        auto other = j->second.find(doc);
        if (other == j->second.end()) continue;
        sum += agreement_pair(mentions, other->second, cfg);
        ++docs;
      }
      if (docs == 0)
        throw UndefinedInputError("annotators '" + i->first + "' and '" + j->first + "' share no documents");
      const double mean = sum / static_cast<double>(docs);
      out.pairs[i->first + "|" + j->first] = mean;
      total += mean;
    }
  }
  out.average = total / static_cast<double>(out.pairs.size());
  return out;
}

void ChainSet::validate() const {
  std::set<std::vector<Span>> seen;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    if (chains[c].size() < 2)
      throw ValidationError("coreference chain " + std::to_string(c) + " has fewer than 2 elements");
    for (const auto& el : chains[c]) {
      if (!seen.insert(el).second)
        throw ValidationError("coreference element at offset " +
                              std::to_string(el.empty() ? 0 : el.front().start) + " appears in more than one place");
    }
  }
}

ChainSet chain_set(const std::vector<CorefChain>& chains) {
  ChainSet s;
  for (const auto& c : chains) s.chains.push_back(c.elements);
  s.validate();
  return s;
}

CorefCounts& CorefCounts::operator+=(const CorefCounts& o) {
  recall_num += o.recall_num;
  recall_den += o.recall_den;
  precision_num += o.precision_num;
  precision_den += o.precision_den;
  return *this;
}

Score CorefCounts::score() const {
  Score s;
  s.recall = recall_den > 0 ? 100.0 * recall_num / recall_den : 0;
  s.precision = precision_den > 0 ? 100.0 * precision_num / precision_den : 0;
  s.f1 = f1(s.precision, s.recall);
  return s;
}

namespace {

using Element = std::vector<Span>;
using Chain = std::vector<Element>;

// element -> index of its chain
std::map<Element, std::size_t> chain_index(const ChainSet& s) {
  std::map<Element, std::size_t> idx;
  for (std::size_t c = 0; c < s.chains.size(); ++c)
    for (const auto& e : s.chains[c]) idx[e] = c;
  return idx;
}

// Sum over key chains of (|K| - partitions(K, response)) and of (|K| - 1).
std::pair<double, double> muc_side(const ChainSet& key, const ChainSet& response) {
  const auto idx = chain_index(response);
  double num = 0;
  double den = 0;
  for (const auto& k : key.chains) {
    std::set<std::size_t> parts;
    std::size_t unaligned = 0;
    for (const auto& e : k) {
      auto it = idx.find(e);
      if (it == idx.end())
        ++unaligned;
      else
        parts.insert(it->second);
    }
    const double partitions = static_cast<double>(parts.size() + unaligned);
    num += static_cast<double>(k.size()) - partitions;
    den += static_cast<double>(k.size()) - 1;
  }
  return {num, den};
}

std::size_t overlap(const Chain& a, const Chain& b) {
  std::set<Element> sa(a.begin(), a.end());
  std::size_t n = 0;
  for (const auto& e : b) n += sa.count(e);
  return n;
}

std::pair<double, double> b3_side(const ChainSet& key, const ChainSet& response) {
  const auto idx = chain_index(response);
  double num = 0;
  double den = 0;
  for (const auto& k : key.chains) {
    for (const auto& e : k) {
      auto it = idx.find(e);
      if (it != idx.end())
        num += static_cast<double>(overlap(k, response.chains[it->second])) / static_cast<double>(k.size());
      den += 1;
    }
  }
  return {num, den};
}

}  // namespace

CorefCounts muc_counts(const ChainSet& gold, const ChainSet& pred) {
  gold.validate();
  pred.validate();
  CorefCounts c;
  std::tie(c.recall_num, c.recall_den) = muc_side(gold, pred);
  std::tie(c.precision_num, c.precision_den) = muc_side(pred, gold);
  return c;
}

CorefCounts b3_counts(const ChainSet& gold, const ChainSet& pred) {
  gold.validate();
  pred.validate();
  CorefCounts c;
  std::tie(c.recall_num, c.recall_den) = b3_side(gold, pred);
  std::tie(c.precision_num, c.precision_den) = b3_side(pred, gold);
  return c;
}

double phi4(const Chain& key, const Chain& response) {
  if (key.empty() && response.empty()) return 0;
  return 2.0 * static_cast<double>(overlap(key, response)) / static_cast<double>(key.size() + response.size());
}

std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weights) {
  const std::size_t rows = weights.size();
  const std::size_t cols = rows == 0 ? 0 : weights[0].size();
  std::vector<int> result(rows, -1);
  if (rows == 0 || cols == 0) return result;

  // Square cost matrix (maximisation turned into minimisation), 1-based
  // potentials as in the classic O(n^3) formulation.
  const std::size_t n = std::max(rows, cols);
  double max_w = 0;
  for (const auto& r : weights) {
    if (r.size() != cols) throw ConfigError("ragged weight matrix");
    for (double w : r) max_w = std::max(max_w, w);
  }
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? max_w - weights[i][j] : max_w;
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = p[j];
    if (i >= 1 && i <= rows && j <= cols) result[i - 1] = static_cast<int>(j - 1);
  }
  return result;
}

CorefCounts ceafe_counts(const ChainSet& gold, const ChainSet& pred) {
  gold.validate();
  pred.validate();
  std::vector<std::vector<double>> sim(gold.chains.size(), std::vector<double>(pred.chains.size()));
  for (std::size_t i = 0; i < gold.chains.size(); ++i)
    for (std::size_t j = 0; j < pred.chains.size(); ++j) sim[i][j] = phi4(gold.chains[i], pred.chains[j]);
  const auto assign = max_weight_assignment(sim);
  double total = 0;
  for (std::size_t i = 0; i < assign.size(); ++i)
    if (assign[i] >= 0) total += sim[i][static_cast<std::size_t>(assign[i])];
  CorefCounts c;
  c.recall_num = c.precision_num = total;
  c.recall_den = static_cast<double>(gold.chains.size());
  c.precision_den = static_cast<double>(pred.chains.size());
  return c;
}

Score muc_prf(const ChainSet& gold, const ChainSet& pred) { return muc_counts(gold, pred).score(); }
Score b3_prf(const ChainSet& gold, const ChainSet& pred) { return b3_counts(gold, pred).score(); }
Score ceafe_prf(const ChainSet& gold, const ChainSet& pred) { return ceafe_counts(gold, pred).score(); }

double conll_avg(double muc_f1, double b3_f1, double ceafe_f1) { return (muc_f1 + b3_f1 + ceafe_f1) / 3.0; }

CorefReport coref_report(const std::vector<ChainSet>& gold, const std::vector<ChainSet>& pred) {
  if (gold.size() != pred.size())
    throw AlignmentError("gold has " + std::to_string(gold.size()) + " documents, prediction " +
                         std::to_string(pred.size()));
  CorefCounts muc, b3, ceafe;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    muc += muc_counts(gold[i], pred[i]);
    b3 += b3_counts(gold[i], pred[i]);
    ceafe += ceafe_counts(gold[i], pred[i]);
  }
  CorefReport r{muc.score(), b3.score(), ceafe.score(), 0};
  r.avg_f1 = conll_avg(r.muc.f1, r.b3.f1, r.ceafe.f1);
  return r;
}

}  // namespace nerlab::eval
