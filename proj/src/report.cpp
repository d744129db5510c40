#include "nerlab/report.hpp"

#include <cstdio>
#include <sstream>

namespace nerlab::report {

namespace {

double r1(double v) { return eval::round_half_up(v, 1); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string score_line(const std::string& name, const eval::Score& s) {
  return pad(name, 16) + " precision " + fixed(s.precision) + "  recall " + fixed(s.recall) + "  F1 " +
         fixed(s.f1) + "\n";
}

std::string codes_text(const std::vector<Code>& codes) {
  std::string out;
  for (const auto& c : codes) {
    if (!out.empty()) out += ';';
    out += std::string(to_string(c.scheme)) + ":" + c.code;
  }
  return out;
}

}  // namespace

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, eval::round_half_up(value, decimals));
  std::string s = buf;
  if (s == "-0.0" || s == "-0.00") s.erase(0, 1);
  return s;
}

Json to_json(const eval::Score& s) {
  return Json{{"precision", r1(s.precision)}, {"recall", r1(s.recall)},         {"f1", r1(s.f1)},
              {"gold", s.gold_count},         {"predicted", s.pred_count},      {"correct", s.correct_count}};
}

Json to_json(const eval::MetricReport& r) {
  Json types = Json::object();
  for (const auto& [type, s] : r.per_type) types[type] = to_json(s);
  return Json{{"micro", to_json(r.micro)}, {"per_type", types}};
}

Json to_json(const eval::AgreementSummary& s) {
  Json pairs = Json::object();
  for (const auto& [k, v] : s.pairs) pairs[k] = r1(v);
  return Json{{"agreement", r1(s.average)}, {"pairs", pairs}};
}

Json to_json(const eval::CorefReport& r) {
  auto one = [](const eval::Score& s) {
    return Json{{"precision", r1(s.precision)}, {"recall", r1(s.recall)}, {"f1", r1(s.f1)}};
  };
  return Json{{"muc", one(r.muc)}, {"b3", one(r.b3)}, {"ceafe", one(r.ceafe)}, {"avg_f1", r1(r.avg_f1)}};
}

Json to_json(const std::vector<norm::MentionGroup>& groups) {
  Json arr = Json::array();
  for (const auto& g : groups) {
    Json codes = Json::array();
    for (const auto& c : g.codes) codes.push_back(Json{{"scheme", to_string(c.scheme)}, {"code", c.code}});
    arr.push_back(Json{{"name", g.name},
                       {"size", g.members.size()},
                       {"members", g.members},
                       {"codes", codes},
                       {"concept_less", g.concept_less}});
  }
  return arr;
}

Json to_json(const stats::CorpusStats& s) {
  auto r2 = [](double v) { return eval::round_half_up(v, 2); };
  Json cov = Json::array();
  for (const auto& c : s.coverage)
    cov.push_back(Json{{"layer", c.layer},
                       {"mentions", c.mentions},
                       {"words_in_mentions", c.words_in_mentions},
                       {"reviews", c.reviews}});
  Json cx = Json::array();
  for (const auto& c : s.complexity) {
    if (c.empty) {
      cx.push_back(Json{{"layer", c.layer}, {"total", 0}, {"empty", true}});
      continue;
    }
    cx.push_back(Json{{"layer", c.layer},
                      {"total", c.total},
                      {"multiword", r2(c.multiword)},
                      {"singleword", r2(c.singleword)},
                      {"discontinuous_non_overlapping", r2(c.discontinuous_non_overlapping)},
                      {"continuous_non_overlapping", r2(c.continuous_non_overlapping)},
                      {"discontinuous_overlapping", r2(c.discontinuous_overlapping)},
                      {"continuous_overlapping", r2(c.continuous_overlapping)}});
  }
  Json sat = Json::object();
  for (const auto& [layer, v] : s.saturation) sat[layer] = r2(v);
  Json out{{"documents", s.documents},
           {"words", s.words},
           {"avg_sentences", r2(s.avg_sentences)},
           {"avg_tokens", r2(s.avg_tokens)},
           {"avg_lemmas", r2(s.avg_lemmas)},
           {"avg_ttr", eval::round_half_up(s.avg_ttr, 4)},
           {"total_entities", s.total_entities},
           {"saturation", sat},
           {"coverage", cov},
           {"complexity", cx}};
  out["adr_to_entities"] = s.adr_to_entities ? Json(eval::round_half_up(*s.adr_to_entities, 4)) : Json(nullptr);
  out["adr_to_indication"] =
      s.adr_to_indication ? Json(eval::round_half_up(*s.adr_to_indication, 4)) : Json(nullptr);
  return out;
}

Json to_json(const stats::CooccurrenceMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    Json cells = Json::object();
    for (std::size_t c = 0; c < m.cols.size(); ++c) cells[m.cols[c]] = r1(m.percent[r][c]);
    rows.push_back(Json{{"group", m.rows[r]}, {"documents", m.row_totals[r]}, {"percent", cells}});
  }
  return Json{{"columns", m.cols}, {"rows", rows}};
}

Json to_json(const std::map<std::string, stats::TonalityCounts>& t) {
  Json out = Json::object();
  for (const auto& [source, c] : t)
    out[source] = Json{{"positive", c.positive}, {"negative", c.negative}, {"neutral_or_mixed", c.neutral_or_mixed}};
  return out;
}

std::string to_text(const eval::MetricReport& r) {
  std::string out;
  for (const auto& [type, s] : r.per_type) out += score_line(type, s);
  out += score_line("overall", r.micro);
  return out;
}

std::string to_text(const eval::CorefReport& r) {
  std::string out = score_line("MUC", r.muc) + score_line("B3", r.b3) + score_line("CEAFe", r.ceafe);
  out += pad("avg", 16) + " F1 " + fixed(r.avg_f1) + "\n";
  return out;
}

std::string to_text(const stats::CorpusStats& s) {
  std::ostringstream o;
  o << "documents " << s.documents << "\n"
    << "words " << s.words << "\n"
    << "avg sentences " << fixed(s.avg_sentences, 2) << "\n"
    << "avg tokens " << fixed(s.avg_tokens, 2) << "\n"
    << "avg lemmas " << fixed(s.avg_lemmas, 2) << "\n"
    << "avg TTR " << fixed(s.avg_ttr, 4) << "\n"
    << "entities " << s.total_entities << "\n";
  if (s.adr_to_entities) o << "ADR/entities " << fixed(*s.adr_to_entities, 4) << "\n";
  if (s.adr_to_indication) o << "ADR/Indication " << fixed(*s.adr_to_indication, 4) << "\n";
  o << "\nlayer\tmentions\twords\treviews\tsaturation\n";
  for (const auto& c : s.coverage) {
    auto it = s.saturation.find(c.layer);
    o << c.layer << '\t' << c.mentions << '\t' << c.words_in_mentions << '\t' << c.reviews << '\t'
      << (it == s.saturation.end() ? std::string("-") : fixed(it->second, 2)) << "\n";
  }
  o << "\nlayer\ttotal\tmulti\tsingle\tdisc+nonovl\tcont+nonovl\tdisc+ovl\tcont+ovl\n";
  for (const auto& c : s.complexity) {
    if (c.empty) {
      o << c.layer << "\t0\t-\t-\t-\t-\t-\t-\n";
      continue;
    }
    o << c.layer << '\t' << c.total << '\t' << fixed(c.multiword, 2) << '\t' << fixed(c.singleword, 2) << '\t'
      << fixed(c.discontinuous_non_overlapping, 2) << '\t' << fixed(c.continuous_non_overlapping, 2) << '\t'
      << fixed(c.discontinuous_overlapping, 2) << '\t' << fixed(c.continuous_overlapping, 2) << "\n";
  }
  return o.str();
}

std::string to_text(const stats::CooccurrenceMatrix& m) {
  std::string out = "group\tdocuments";
  for (const auto& c : m.cols) out += "\t" + c;
  out += "\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out += m.rows[r] + "\t" + std::to_string(m.row_totals[r]);
    for (double v : m.percent[r]) out += "\t" + fixed(v);
    out += "\n";
  }
  return out;
}

std::string to_text(const std::map<std::string, stats::TonalityCounts>& t) {
  std::string out = "source\tpositive\tnegative\tneutral_or_mixed\n";
  for (const auto& [source, c] : t)
    out += source + "\t" + std::to_string(c.positive) + "\t" + std::to_string(c.negative) + "\t" +
           std::to_string(c.neutral_or_mixed) + "\n";
  return out;
}

std::string to_csv(const eval::MetricReport& r) {
  std::string out = "type,precision,recall,f1,gold,predicted,correct\n";
  auto row = [&](const std::string& name, const eval::Score& s) {
    out += name + "," + fixed(s.precision) + "," + fixed(s.recall) + "," + fixed(s.f1) + "," +
           std::to_string(s.gold_count) + "," + std::to_string(s.pred_count) + "," +
           std::to_string(s.correct_count) + "\n";
  };
  for (const auto& [type, s] : r.per_type) row(type, s);
  row("overall", r.micro);
  return out;
}

std::string to_csv(const eval::CorefReport& r) {
  std::string out = "metric,precision,recall,f1\n";
  auto row = [&](const char* name, const eval::Score& s) {
    out += std::string(name) + "," + fixed(s.precision) + "," + fixed(s.recall) + "," + fixed(s.f1) + "\n";
  };
  row("muc", r.muc);
  row("b3", r.b3);
  row("ceafe", r.ceafe);
  out += "avg,,," + fixed(r.avg_f1) + "\n";
  return out;
}

std::string to_csv(const stats::CooccurrenceMatrix& m) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::string out = "group,documents";
  for (const auto& c : m.cols) out += "," + quote(c);
  out += "\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out += quote(m.rows[r]) + "," + std::to_string(m.row_totals[r]);
    for (double v : m.percent[r]) out += "," + fixed(v);
    out += "\n";
  }
  return out;
}

std::string groups_tsv(const std::vector<norm::MentionGroup>& groups) {
  std::string out;
  for (const auto& g : groups) {
    std::string members;
    for (const auto& m : g.members) members += (members.empty() ? "" : "|") + m;
    out += g.name + "\t" + std::to_string(g.members.size()) + "\t" + members + "\t" +
           (g.concept_less ? std::string("concept_less") : codes_text(g.codes)) + "\n";
  }
  return out;
}

std::string links_tsv(const std::vector<link::WordLink>& links) {
  std::string out;
  char buf[64];
  for (const auto& l : links) {
    std::snprintf(buf, sizeof buf, "%.6f", l.link.score);
    out += l.word + "\t" + l.link.code + "\t" + buf + "\t" + std::string(link::to_string(l.method)) + "\n";
  }
  return out;
}

}  // namespace nerlab::report
