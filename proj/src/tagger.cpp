#include "nerlab/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "nerlab/error.hpp"
#include "nerlab/stats.hpp"
#include "nerlab/text.hpp"

namespace nerlab::tagger {

namespace {

using Weights3 = std::array<double, 3>;
using Transitions = std::array<std::array<double, 3>, 3>;

constexpr std::size_t kI = static_cast<std::size_t>(Bio::I);
constexpr std::size_t kO = static_cast<std::size_t>(Bio::O);
constexpr double kForbidden = -std::numeric_limits<double>::infinity();

bool has_feat(const Token& t, std::string_view kv) {
  if (!t.feats) return false;
  const std::string& f = *t.feats;
  std::size_t pos = 0;
  while (pos <= f.size()) {
    auto bar = f.find('|', pos);
    std::string_view item(f.data() + pos, (bar == std::string::npos ? f.size() : bar) - pos);
    if (item == kv) return true;
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return false;
}

double ratio(double num, double den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0;
  }
  return num / den;
}

std::string lower_form(const Token& t) { return text::to_lower(t.text); }

// Document markers fed to the tagger, bucketized later.
std::map<std::string, double> document_markers(const Document& doc, const Resources& res) {
  std::map<std::string, double> out;
  const auto pm = psycholing_markers(doc);
  for (std::size_t i = 0; i < PsychoMarkers::kCount; ++i) out[PsychoMarkers::kNames[i]] = pm.values[i];
  if (res.liwc) {
    std::map<std::string, std::size_t> hits;
    for (const auto& c : res.liwc->categories()) hits[c] = 0;
    std::size_t words = 0;
    for (const auto& s : doc.sentences)
      for (const auto& t : s.tokens) {
        if (stats::is_punctuation(t)) continue;
        ++words;
        auto it = res.liwc->entries.find(t.lemma ? text::to_lower(*t.lemma) : lower_form(t));
        if (it == res.liwc->entries.end()) it = res.liwc->entries.find(lower_form(t));
        if (it != res.liwc->entries.end()) ++hits[it->second];
      }
    for (const auto& [cat, n] : hits)
      out["liwc:" + cat] = words == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(words);
  }
  return out;
}

std::vector<std::optional<std::string>> sentence_codes(const Sentence& sent, std::size_t index, const Resources& res) {
  std::vector<std::optional<std::string>> out(sent.tokens.size());
  if (res.concepts.empty()) return out;
  link::LinkOptions opts = res.link_options;
  opts.use_cosine = opts.use_cosine && res.vectors.has_value();
  opts.use_syntactic = opts.use_syntactic && std::all_of(sent.tokens.begin(), sent.tokens.end(),
                                                         [](const Token& t) { return t.head.has_value(); });
  if (!opts.use_cosine && !opts.use_syntactic) return out;
  const bool has_lemmas = std::all_of(sent.tokens.begin(), sent.tokens.end(),
                                      [](const Token& t) { return t.lemma && t.pos; });
  if (!has_lemmas) return out;
  auto links = link::link_sentence(sent, index, res.concepts, res.vectors ? &*res.vectors : nullptr, opts);
  // Strongest link per token wins.
  std::vector<double> best(sent.tokens.size(), -1);
  for (const auto& l : links) {
    if (l.link.score > best[l.token]) {
      best[l.token] = l.link.score;
      out[l.token] = l.link.code;
    }
  }
  return out;
}

std::vector<std::string> token_base_features(const Token& t, const Resources& res,
                                             const std::optional<DictMatch>& dict,
                                             const std::optional<std::string>& code,
                                             const std::set<std::string>& code_vocab) {
  std::vector<std::string> f;
  f.push_back("w=" + lower_form(t));
  if (t.lemma) f.push_back("l=" + text::to_lower(*t.lemma));
  if (t.pos) f.push_back("p=" + *t.pos);
  const auto common = common_features(t.text);
  for (std::size_t k = 0; k < common.size(); ++k)
    if (common[k]) f.push_back("c" + std::to_string(k));
  if (!res.emotion.empty()) {
    const auto emo = emotion_features(t, res.emotion);
    for (std::size_t k = 0; k < emo.size(); ++k)
      if (emo[k]) f.push_back("e=" + res.emotion[k].name);
  }
  if (dict) f.push_back("d=" + dict->category + (dict->begins ? ":B" : ":I"));
  if (code && code_vocab.count(*code)) f.push_back("code=" + *code);
  return f;
}

std::size_t bucket(double v, const std::vector<double>& cuts) {
  return static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}

// Equal scores resolve to O first, so featureless tokens fall back to O.
constexpr std::array<std::size_t, 3> kTieOrder{kO, static_cast<std::size_t>(Bio::B), kI};

std::vector<Bio> viterbi(const std::vector<Weights3>& emission, const Transitions& trans, const Weights3& start) {
  const std::size_t n = emission.size();
  std::vector<Bio> path(n, Bio::O);
  if (n == 0) return path;
  auto allowed = [](std::size_t from, std::size_t to) { return !(from == kO && to == kI); };
  std::vector<std::array<double, 3>> score(n);
  std::vector<std::array<std::size_t, 3>> back(n);
  for (std::size_t t = 0; t < 3; ++t) score[0][t] = t == kI ? kForbidden : start[t] + emission[0][t];
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 0; t < 3; ++t) {
      double best = kForbidden;
      std::size_t arg = kO;
      for (std::size_t p : kTieOrder) {
        if (!allowed(p, t) || score[i - 1][p] == kForbidden) continue;
        const double s = score[i - 1][p] + trans[p][t];
        if (s > best) {
          best = s;
          arg = p;
        }
      }
      score[i][t] = best == kForbidden ? kForbidden : best + emission[i][t];
      back[i][t] = arg;
    }
  }
  std::size_t last = kO;
  double best = kForbidden;
  for (std::size_t t : kTieOrder)
    if (score[n - 1][t] > best) {
      best = score[n - 1][t];
      last = t;
    }
  for (std::size_t i = n; i-- > 0;) {
    path[i] = static_cast<Bio>(last);
    if (i > 0) last = back[i][last];
  }
  return path;
}

std::vector<std::string> tag_strings(const std::vector<Bio>& tags, const std::string& layer) {
  TagSequence seq{layer, tags};
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) out.push_back(seq.tag_string(i));
  return out;
}

// Lazily averaged weight vector (averaged = w - acc / c).
struct AveragedTable {
  std::vector<Weights3> w;
  std::vector<Weights3> acc;

  void resize(std::size_t n) {
    w.resize(n, Weights3{});
    acc.resize(n, Weights3{});
  }
  void add(std::size_t f, std::size_t tag, double d, double c) {
    w[f][tag] += d;
    acc[f][tag] += c * d;
  }
  Weights3 averaged(std::size_t f, double c) const {
    Weights3 out{};
    for (std::size_t t = 0; t < 3; ++t) out[t] = w[f][t] - acc[f][t] / c;
    return out;
  }
};

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace

std::array<bool, 7> common_features(std::string_view token) {
  std::array<bool, 7> out{};
  const std::u32string cps = text::decode(token);
  if (cps.empty()) return out;
  std::size_t letters = 0, upper = 0, lower = 0, digits = 0, latin = 0;
  for (char32_t c : cps) {
    if (text::is_digit(c)) ++digits;
    if (!text::is_letter(c)) continue;
    ++letters;
    upper += text::is_upper(c) ? 1 : 0;
    lower += text::is_lower(c) ? 1 : 0;
    latin += text::is_latin(c) ? 1 : 0;
  }
  out[0] = letters > 0 && upper == letters;
  out[1] = letters > 0 && lower == letters;
  out[2] = text::is_letter(cps[0]) && text::is_upper(cps[0]);
  out[3] = digits > 0;
  out[4] = 2 * digits > cps.size();
  out[5] = digits == cps.size();
  out[6] = letters > 0 && latin == letters;
  return out;
}

std::vector<bool> emotion_features(const Token& token, const std::vector<Lexicon>& dictionaries, bool use_lemma) {
  const std::string key = use_lemma && token.lemma ? text::to_lower(*token.lemma) : lower_form(token);
  std::vector<bool> out(dictionaries.size(), false);
  for (std::size_t i = 0; i < dictionaries.size(); ++i) out[i] = dictionaries[i].entries.count(key) > 0;
  return out;
}

PsychoMarkers psycholing_markers(const Document& doc) {
  PsychoMarkers m;
  double verbs = 0, adjectives = 0, nouns = 0, forms = 0, words = 0, tokens = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s.tokens) {
      ++tokens;
      if (stats::is_punctuation(t)) continue;
      ++words;
      const std::string pos = t.pos.value_or("");
      const bool participle = has_feat(t, "VerbForm=Part");
      const bool converb = has_feat(t, "VerbForm=Conv");
      if (participle || converb) {
        ++forms;
      } else if (pos == "VERB") {
        ++verbs;
      } else if (pos == "ADJ") {
        ++adjectives;
      } else if (pos == "NOUN") {
        ++nouns;
      }
    }
  }
  m.values[0] = ratio(verbs, adjectives, m.degenerate[0]);
  m.values[1] = ratio(verbs, nouns, m.degenerate[1]);
  m.values[2] = ratio(verbs + forms, words, m.degenerate[2]);
  for (char32_t c : text::decode(doc.text)) {
    if (c == U'?') m.values[3] += 1;
    if (c == U'!') m.values[4] += 1;
  }
  m.values[5] = ratio(tokens, static_cast<double>(doc.sentences.size()), m.degenerate[5]);
  return m;
}

std::vector<bool> dict_features(const Token& token, const Lexicon& lexicon) {
  const auto cats = lexicon.categories();
  std::vector<bool> out(cats.size(), false);
  auto mark = [&](const std::string& key) {
    auto it = lexicon.entries.find(key);
    if (it == lexicon.entries.end()) return;
    auto pos = std::lower_bound(cats.begin(), cats.end(), it->second);
    out[static_cast<std::size_t>(pos - cats.begin())] = true;
  };
  mark(lower_form(token));
  if (token.lemma) mark(text::to_lower(*token.lemma));
  return out;
}

std::vector<std::optional<DictMatch>> match_dictionary(const Sentence& sent, const Lexicon& lexicon) {
  const std::size_t n = sent.tokens.size();
  std::vector<std::optional<DictMatch>> out(n);
  std::size_t max_words = 1;
  for (const auto& [term, _] : lexicon.entries)
    max_words = std::max<std::size_t>(max_words, 1 + static_cast<std::size_t>(std::count(term.begin(), term.end(), ' ')));
  std::vector<std::string> forms(n), lemmas(n);
  for (std::size_t i = 0; i < n; ++i) {
    forms[i] = lower_form(sent.tokens[i]);
    lemmas[i] = sent.tokens[i].lemma ? text::to_lower(*sent.tokens[i].lemma) : forms[i];
  }
  std::size_t i = 0;
  while (i < n) {
    bool matched = false;
    for (std::size_t len = std::min(max_words, n - i); len >= 1 && !matched; --len) {
      for (const auto* seq : {&forms, &lemmas}) {
        std::string key;
        for (std::size_t k = i; k < i + len; ++k) {
          if (k > i) key += ' ';
          key += (*seq)[k];
        }
        auto it = lexicon.entries.find(key);
        if (it == lexicon.entries.end()) continue;
        for (std::size_t k = i; k < i + len; ++k) out[k] = DictMatch{it->second, k == i};
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

std::vector<std::vector<std::vector<std::string>>> extract_features(const Document& doc, const Resources& res,
                                                                    const TaggerModel& model) {
  std::vector<std::string> doc_feats;
  if (!model.quantiles.empty()) {
    for (const auto& [name, value] : document_markers(doc, res)) {
      auto it = model.quantiles.find(name);
      if (it == model.quantiles.end()) continue;
      doc_feats.push_back("doc:" + name + "=q" + std::to_string(bucket(value, it->second)));
    }
  }
  const std::set<std::string> code_vocab(model.code_vocabulary.begin(), model.code_vocabulary.end());
  const int window = model.options.window;

  std::vector<std::vector<std::vector<std::string>>> out;
  out.reserve(doc.sentences.size());
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const Sentence& sent = doc.sentences[si];
    const std::size_t n = sent.tokens.size();
    std::vector<std::optional<DictMatch>> dict(n);
    if (res.categories) dict = match_dictionary(sent, *res.categories);
    const auto codes = code_vocab.empty() ? std::vector<std::optional<std::string>>(n) : sentence_codes(sent, si, res);
    std::vector<std::vector<std::string>> base(n);
    for (std::size_t i = 0; i < n; ++i) base[i] = token_base_features(sent.tokens[i], res, dict[i], codes[i], code_vocab);

    std::vector<std::vector<std::string>> feats(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& f = feats[i];
      f.emplace_back("bias");
      f.insert(f.end(), doc_feats.begin(), doc_feats.end());
      const std::u32string cps = text::decode(lower_form(sent.tokens[i]));
      f.push_back("s3=" + text::encode(cps.substr(cps.size() > 3 ? cps.size() - 3 : 0)));
      f.push_back("p3=" + text::encode(cps.substr(0, 3)));
      for (int o = -window; o <= window; ++o) {
        const auto j = static_cast<long long>(i) + o;
        const std::string tag = std::to_string(o) + ":";
        if (j < 0) {
          f.push_back(tag + "BOS");
        } else if (j >= static_cast<long long>(n)) {
          f.push_back(tag + "EOS");
        } else {
          for (const auto& b : base[static_cast<std::size_t>(j)]) f.push_back(tag + b);
        }
      }
    }
    out.push_back(std::move(feats));
  }
  return out;
}

std::vector<Bio> decode(const TaggerModel& model, const std::vector<std::vector<std::string>>& features) {
  std::vector<Weights3> emission(features.size(), Weights3{});
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (const auto& name : features[i]) {
      auto it = model.weights.find(name);
      if (it == model.weights.end()) continue;
      for (std::size_t t = 0; t < 3; ++t) emission[i][t] += it->second[t];
    }
  }
  return viterbi(emission, model.transitions, model.start);
}

std::vector<TagSequence> tag(const TaggerModel& model, const Document& doc, const Resources& res) {
  std::vector<TagSequence> out;
  for (const auto& feats : extract_features(doc, res, model)) out.push_back({model.layer, decode(model, feats)});
  return out;
}

Tagged tag_corpus(const TaggerModel& model, const CorpusFile& corpus, const Resources& res) {
  Tagged out;
  for (const auto& doc : corpus.documents) {
    const auto pred = tag(model, doc, res);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const auto gold = encode_bio(doc.sentences[s], doc.mentions, model.layer);
      out.gold.push_back(tag_strings(gold.tags, model.layer));
      out.pred.push_back(tag_strings(pred[s].tags, model.layer));
    }
  }
  return out;
}

TaggerModel train(const CorpusFile& corpus, const TrainOptions& opts, const Resources& res) {
  if (opts.epochs == 0) throw ConfigError("epochs must be at least 1");
  TaggerModel model;
  model.layer = opts.layer;
  model.epochs = opts.epochs;
  model.seed = opts.seed;
  model.options = opts.features;

  // Quintile cut points of document markers over the training documents.
  std::map<std::string, std::vector<double>> marker_values;
  for (const auto& doc : corpus.documents) {
    if (doc.sentences.empty()) continue;
    for (const auto& [name, v] : document_markers(doc, res)) marker_values[name].push_back(v);
  }
  for (auto& [name, values] : marker_values) {
    std::sort(values.begin(), values.end());
    std::vector<double> cuts;
    for (std::size_t k = 1; k < 5; ++k) cuts.push_back(values[k * values.size() / 5]);
    model.quantiles[name] = cuts;
  }

  // Code vocabulary: most frequent linked codes, ties by code.
  if (!res.concepts.empty()) {
    std::map<std::string, std::size_t> freq;
    for (const auto& doc : corpus.documents)
      for (std::size_t si = 0; si < doc.sentences.size(); ++si)
        for (const auto& c : sentence_codes(doc.sentences[si], si, res))
          if (c) ++freq[*c];
    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < ranked.size() && i < opts.features.max_codes; ++i)
      model.code_vocabulary.push_back(ranked[i].first);
    std::sort(model.code_vocabulary.begin(), model.code_vocabulary.end());
  }

  struct Example {
    std::vector<std::vector<std::size_t>> features;
    std::vector<Bio> gold;
  };
  std::vector<Example> examples;
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::string> names;
  for (const auto& doc : corpus.documents) {
    const auto feats = extract_features(doc, res, model);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      Example ex;
      ex.gold = encode_bio(doc.sentences[s], doc.mentions, opts.layer).tags;
      for (const auto& token_feats : feats[s]) {
        std::vector<std::size_t> fid;
        fid.reserve(token_feats.size());
        for (const auto& name : token_feats) {
          auto [it, fresh] = ids.emplace(name, names.size());
          if (fresh) names.push_back(name);
          fid.push_back(it->second);
        }
        ex.features.push_back(std::move(fid));
      }
      examples.push_back(std::move(ex));
    }
  }
  if (examples.empty()) throw UndefinedInputError("no training sentences");

  AveragedTable table;
  table.resize(names.size());
  AveragedTable trans;  // rows 0..2: from-tag; row 3: start
  trans.resize(4);
  double c = 1;

  auto emissions = [&](const Example& ex, bool averaged) {
    std::vector<Weights3> e(ex.features.size(), Weights3{});
    for (std::size_t i = 0; i < ex.features.size(); ++i)
      for (std::size_t f : ex.features[i]) {
        const Weights3 w = averaged ? table.averaged(f, c) : table.w[f];
        for (std::size_t t = 0; t < 3; ++t) e[i][t] += w[t];
      }
    return e;
  };
  auto transition_params = [&](bool averaged) {
    Transitions tr{};
    Weights3 st{};
    for (std::size_t p = 0; p < 3; ++p) tr[p] = averaged ? trans.averaged(p, c) : trans.w[p];
    st = averaged ? trans.averaged(3, c) : trans.w[3];
    return std::pair{tr, st};
  };
  auto update = [&](const Example& ex, const std::vector<Bio>& path, double sign) {
    std::size_t prev = 3;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto t = static_cast<std::size_t>(path[i]);
      for (std::size_t f : ex.features[i]) table.add(f, t, sign, c);
      trans.add(prev, t, sign, c);
      prev = t;
    }
  };

  std::mt19937_64 rng(opts.seed);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw(rng, i)]);
    for (std::size_t idx : order) {
      const Example& ex = examples[idx];
      auto [tr, st] = transition_params(false);
      const auto pred = viterbi(emissions(ex, false), tr, st);
      if (pred != ex.gold) {
        update(ex, ex.gold, +1);
        update(ex, pred, -1);
      }
      c += 1;
    }
    auto [tr, st] = transition_params(true);
    std::vector<std::vector<std::string>> gold, pred;
    for (const auto& ex : examples) {
      gold.push_back(tag_strings(ex.gold, opts.layer));
      pred.push_back(tag_strings(viterbi(emissions(ex, true), tr, st), opts.layer));
    }
    const auto report = eval::chunk_prf(gold, pred);
    model.trace.push_back({epoch, report.micro.precision, report.micro.recall, report.micro.f1});
  }

  for (std::size_t f = 0; f < names.size(); ++f) {
    const Weights3 w = table.averaged(f, c);
    if (w[0] != 0 || w[1] != 0 || w[2] != 0) model.weights[names[f]] = w;
  }
  std::tie(model.transitions, model.start) = transition_params(true);
  return model;
}

std::string dump_model(const TaggerModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "nerlab-tagger";
  j["version"] = TaggerModel::kFormatVersion;
  j["layer"] = model.layer;
  j["epochs"] = model.epochs;
  j["seed"] = model.seed;
  j["options"] = {{"window", model.options.window}, {"max_codes", model.options.max_codes}};
  nlohmann::ordered_json q = nlohmann::ordered_json::object();
  for (const auto& [k, v] : model.quantiles) q[k] = v;
  j["quantiles"] = q;
  j["code_vocabulary"] = model.code_vocabulary;
  j["start"] = model.start;
  j["transitions"] = model.transitions;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  for (const auto& [k, v] : model.weights) w[k] = v;
  j["weights"] = w;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& e : model.trace)
    trace.push_back({{"epoch", e.epoch}, {"precision", e.precision}, {"recall", e.recall}, {"f1", e.f1}});
  j["trace"] = trace;
  return j.dump(1, ' ', false) + "\n";
}

TaggerModel parse_model(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  try {
    if (j.at("format").get<std::string>() != "nerlab-tagger") throw ParseError("not a tagger model", "/format");
    if (j.at("version").get<int>() != TaggerModel::kFormatVersion)
      throw ParseError("unsupported model version", "/version");
    TaggerModel m;
    m.layer = j.at("layer").get<std::string>();
    m.epochs = j.at("epochs").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.options.window = j.at("options").at("window").get<int>();
    m.options.max_codes = j.at("options").at("max_codes").get<std::size_t>();
    for (const auto& [k, v] : j.at("quantiles").items()) m.quantiles[k] = v.get<std::vector<double>>();
    m.code_vocabulary = j.at("code_vocabulary").get<std::vector<std::string>>();
    m.start = j.at("start").get<std::array<double, 3>>();
    m.transitions = j.at("transitions").get<std::array<std::array<double, 3>, 3>>();
    for (const auto& [k, v] : j.at("weights").items()) m.weights[k] = v.get<std::array<double, 3>>();
    for (const auto& e : j.at("trace"))
      m.trace.push_back({e.at("epoch").get<std::size_t>(), e.at("precision").get<double>(),
                         e.at("recall").get<double>(), e.at("f1").get<double>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), "model");
  }
}

void save_model(const TaggerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_model(model);
}

TaggerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str());
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::string training_log_csv(const TaggerModel& model) {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,layer,precision,recall,f1\n";
  for (const auto& e : model.trace)
    out << e.epoch << ',' << model.layer << ',' << e.precision << ',' << e.recall << ',' << e.f1 << '\n';
  return out.str();
}

}  // namespace nerlab::tagger
