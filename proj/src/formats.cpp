#include "nerlab/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << data;
  if (!out) throw Error("write failed: " + path.string());
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string ptr(const std::string& base, std::size_t idx) { return base + "/" + std::to_string(idx); }

// Typed accessors that report the JSON pointer of the offending node.
const json& member(const json& obj, const std::string& key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing key '" + key + "'", at);
  return *it;
}

void expect(bool ok, const std::string& what, const std::string& at) {
  if (!ok) throw ParseError(what, at);
}

std::string get_string(const json& j, const std::string& at) {
  expect(j.is_string(), "expected string", at);
  return j.get<std::string>();
}

std::size_t get_offset(const json& j, const std::string& at) {
  expect(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0),
         "expected non-negative integer", at);
  return j.get<std::size_t>();
}

const json& get_array(const json& j, const std::string& at) {
  expect(j.is_array(), "expected array", at);
  return j;
}

const json& get_object(const json& j, const std::string& at) {
  expect(j.is_object(), "expected object", at);
  return j;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& at) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!ok) throw ParseError("unknown key '" + it.key() + "'", at);
  }
}

std::optional<std::string> opt_string(const json& obj, const char* key, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return get_string(*it, ptr(at, key));
}

Span parse_span(const json& j, const std::string& at) {
  get_array(j, at);
  expect(j.size() == 2, "span must be [start, end]", at);
  return {get_offset(j[0], ptr(at, 0)), get_offset(j[1], ptr(at, 1))};
}

std::vector<Span> parse_spans(const json& j, const std::string& at) {
  std::vector<Span> out;
  get_array(j, at);
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_span(j[i], ptr(at, i)));
  return out;
}

std::map<std::string, std::string> parse_meta(const json& j, const std::string& at) {
  std::map<std::string, std::string> out;
  get_object(j, at);
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = get_string(it.value(), ptr(at, it.key()));
  return out;
}

Token parse_token(const json& j, const std::string& at) {
  get_object(j, at);
  check_keys(j, {"text", "start", "end", "lemma", "pos", "head", "deprel", "feats"}, at);
  Token t;
  t.text = get_string(member(j, "text", at), ptr(at, "text"));
  t.span = {get_offset(member(j, "start", at), ptr(at, "start")), get_offset(member(j, "end", at), ptr(at, "end"))};
  t.lemma = opt_string(j, "lemma", at);
  t.pos = opt_string(j, "pos", at);
  if (auto it = j.find("head"); it != j.end() && !it->is_null()) t.head = get_offset(*it, ptr(at, "head"));
  t.deprel = opt_string(j, "deprel", at);
  t.feats = opt_string(j, "feats", at);
  return t;
}

Mention parse_mention(const json& j, const std::string& at) {
  get_object(j, at);
  check_keys(j, {"id", "entity", "attribute", "spans", "norm", "codes", "meta"}, at);
  Mention m;
  m.id = get_string(member(j, "id", at), ptr(at, "id"));
  const std::string ent = get_string(member(j, "entity", at), ptr(at, "entity"));
  auto e = parse_entity(ent);
  expect(e.has_value(), "unknown entity '" + ent + "'", ptr(at, "entity"));
  m.entity = *e;
  if (auto a = opt_string(j, "attribute", at)) {
    auto attr = parse_attribute(*a);
    expect(attr.has_value(), "unknown attribute '" + *a + "'", ptr(at, "attribute"));
    m.attribute = *attr;
  }
  m.spans = parse_spans(member(j, "spans", at), ptr(at, "spans"));
  m.normalized_term = opt_string(j, "norm", at);
  if (auto it = j.find("codes"); it != j.end()) {
    const std::string cat = ptr(at, "codes");
    get_array(*it, cat);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string c_at = ptr(cat, i);
      const json& c = get_object((*it)[i], c_at);
      check_keys(c, {"scheme", "code"}, c_at);
      const std::string scheme = get_string(member(c, "scheme", c_at), ptr(c_at, "scheme"));
      auto s = parse_code_scheme(scheme);
      expect(s.has_value(), "unknown code scheme '" + scheme + "'", ptr(c_at, "scheme"));
      m.codes.push_back({*s, get_string(member(c, "code", c_at), ptr(c_at, "code"))});
    }
  }
  if (auto it = j.find("meta"); it != j.end()) m.meta = parse_meta(*it, ptr(at, "meta"));
  return m;
}

Document parse_document(const json& j, const std::string& at) {
  get_object(j, at);
  check_keys(j, {"id", "text", "meta", "sentences", "mentions", "chains"}, at);
  Document d;
  d.id = get_string(member(j, "id", at), ptr(at, "id"));
  d.text = get_string(member(j, "text", at), ptr(at, "text"));
  if (auto it = j.find("meta"); it != j.end()) d.meta = parse_meta(*it, ptr(at, "meta"));
  if (auto it = j.find("sentences"); it != j.end()) {
    const std::string s_at = ptr(at, "sentences");
    get_array(*it, s_at);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string one = ptr(s_at, i);
      const json& s = get_object((*it)[i], one);
      check_keys(s, {"tokens"}, one);
      const json& toks = get_array(member(s, "tokens", one), ptr(one, "tokens"));
      Sentence sent;
      for (std::size_t k = 0; k < toks.size(); ++k) sent.tokens.push_back(parse_token(toks[k], ptr(ptr(one, "tokens"), k)));
      d.sentences.push_back(std::move(sent));
    }
  }
  if (auto it = j.find("mentions"); it != j.end()) {
    const std::string m_at = ptr(at, "mentions");
    get_array(*it, m_at);
    for (std::size_t i = 0; i < it->size(); ++i) d.mentions.push_back(parse_mention((*it)[i], ptr(m_at, i)));
  }
  if (auto it = j.find("chains"); it != j.end()) {
    const std::string c_at = ptr(at, "chains");
    get_array(*it, c_at);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string one = ptr(c_at, i);
      const json& elems = get_array((*it)[i], one);
      CorefChain chain;
      chain.id = "chain-" + std::to_string(i);
      for (std::size_t k = 0; k < elems.size(); ++k) chain.elements.push_back(parse_spans(elems[k], ptr(one, k)));
      d.chains.push_back(std::move(chain));
    }
  }
  return d;
}

ordered_json span_json(const Span& s) { return ordered_json::array({s.start, s.end}); }

ordered_json spans_json(const std::vector<Span>& spans) {
  ordered_json a = ordered_json::array();
  for (const auto& s : spans) a.push_back(span_json(s));
  return a;
}

ordered_json meta_json(const std::map<std::string, std::string>& meta) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : meta) o[k] = v;
  return o;
}

ordered_json document_json(const Document& d) {
  ordered_json o;
  o["id"] = d.id;
  o["text"] = d.text;
  o["meta"] = meta_json(d.meta);
  ordered_json sents = ordered_json::array();
  for (const auto& s : d.sentences) {
    ordered_json toks = ordered_json::array();
    for (const auto& t : s.tokens) {
      ordered_json tj;
      tj["text"] = t.text;
      tj["start"] = t.span.start;
      tj["end"] = t.span.end;
      if (t.lemma) tj["lemma"] = *t.lemma;
      if (t.pos) tj["pos"] = *t.pos;
      if (t.head) tj["head"] = *t.head;
      if (t.deprel) tj["deprel"] = *t.deprel;
      if (t.feats) tj["feats"] = *t.feats;
      toks.push_back(std::move(tj));
    }
    ordered_json sj;
    sj["tokens"] = std::move(toks);
    sents.push_back(std::move(sj));
  }
  o["sentences"] = std::move(sents);
  ordered_json ms = ordered_json::array();
  for (const auto& m : d.mentions) {
    ordered_json mj;
    mj["id"] = m.id;
    mj["entity"] = std::string(to_string(m.entity));
    if (m.attribute) mj["attribute"] = std::string(to_string(*m.attribute));
    mj["spans"] = spans_json(m.spans);
    if (m.normalized_term) mj["norm"] = *m.normalized_term;
    ordered_json codes = ordered_json::array();
    for (const auto& c : m.codes) {
      ordered_json cj;
      cj["scheme"] = std::string(to_string(c.scheme));
      cj["code"] = c.code;
      codes.push_back(std::move(cj));
    }
    mj["codes"] = std::move(codes);
    if (!m.meta.empty()) mj["meta"] = meta_json(m.meta);
    ms.push_back(std::move(mj));
  }
  o["mentions"] = std::move(ms);
  ordered_json chains = ordered_json::array();
  for (const auto& c : d.chains) {
    ordered_json cj = ordered_json::array();
    for (const auto& el : c.elements) cj.push_back(spans_json(el));
    chains.push_back(std::move(cj));
  }
  o["chains"] = std::move(chains);
  return o;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string line_at(std::size_t n) { return "line " + std::to_string(n); }

std::optional<std::string> conllu_field(const std::string& s) {
  if (s == "_") return std::nullopt;
  return s;
}

bool has_misc(const std::string& misc, std::string_view key_value) {
  std::size_t pos = 0;
  while (pos <= misc.size()) {
    auto bar = misc.find('|', pos);
    if (misc.compare(pos, bar == std::string::npos ? std::string::npos : bar - pos, key_value) == 0) return true;
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return false;
}

std::optional<Span> token_range(const std::string& misc, std::size_t line_no) {
  const std::string key = "TokenRange=";
  auto pos = misc.find(key);
  if (pos == std::string::npos || (pos > 0 && misc[pos - 1] != '|')) return std::nullopt;
  auto end = misc.find('|', pos);
  std::string val = misc.substr(pos + key.size(), end == std::string::npos ? std::string::npos : end - pos - key.size());
  auto colon = val.find(':');
  std::size_t s = 0;
  std::size_t e = 0;
  if (colon == std::string::npos ||
      std::from_chars(val.data(), val.data() + colon, s).ec != std::errc{} ||
      std::from_chars(val.data() + colon + 1, val.data() + val.size(), e).ec != std::errc{})
    throw ParseError("malformed TokenRange '" + val + "'", line_at(line_no));
  return Span{s, e};
}

// Shared CoNLL-U reader; `on_newdoc` fires for "# newdoc" comments.
template <typename OnNewdoc>
std::vector<Sentence> read_conllu_stream(std::istream& in, OnNewdoc&& on_newdoc, std::size_t& cursor,
                                         std::vector<Sentence>& out) {
  std::string line;
  std::size_t line_no = 0;
  Sentence cur;
  auto flush = [&] {
    if (!cur.tokens.empty()) out.push_back(std::move(cur));
    cur = Sentence{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      if (line.rfind("# newdoc", 0) == 0) {
        flush();
        std::string id;
        auto eq = line.find('=');
        if (eq != std::string::npos) {
          id = line.substr(eq + 1);
          id.erase(0, id.find_first_not_of(' '));
        }
        on_newdoc(id);
      }
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10)
      throw ParseError("expected 10 tab-separated columns, found " + std::to_string(cols.size()), line_at(line_no));
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;
    Token t;
    t.text = cols[1];
    if (t.text.empty()) throw ParseError("empty FORM", line_at(line_no));
    t.lemma = conllu_field(cols[2]);
    if (cols[2] == "_" && cols[1] == "_") t.lemma = "_";
    t.pos = conllu_field(cols[3]);
    t.feats = conllu_field(cols[5]);
    if (cols[6] != "_") {
      std::size_t h = 0;
      auto r = std::from_chars(cols[6].data(), cols[6].data() + cols[6].size(), h);
      if (r.ec != std::errc{} || r.ptr != cols[6].data() + cols[6].size())
        throw ParseError("malformed HEAD '" + cols[6] + "'", line_at(line_no));
      t.head = h;
    }
    t.deprel = conllu_field(cols[7]);
    const std::size_t len = text::length(t.text);
    if (auto r = token_range(cols[9], line_no)) {
      t.span = *r;
      cursor = r->end;
    } else {
      t.span = {cursor, cursor + len};
      cursor = t.span.end;
    }
    if (!has_misc(cols[9], "SpaceAfter=No")) cursor += 1;
    cur.tokens.push_back(std::move(t));
  }
  flush();
  return out;
}

}  // namespace

CorpusFile parse_corpus(const std::string& json_text) {
  if (!text::is_valid_utf8(json_text)) throw ParseError("input is not valid UTF-8", "");
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  get_object(root, "");
  check_keys(root, {"version", "documents"}, "");
  CorpusFile c;
  c.version = get_string(member(root, "version", ""), "/version");
  expect(c.version == kCorpusFormatVersion, "unsupported version '" + c.version + "'", "/version");
  const json& docs = get_array(member(root, "documents", ""), "/documents");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    Document d = parse_document(docs[i], ptr("/documents", i));
    if (!ids.insert(d.id).second) throw ValidationError("duplicate document id '" + d.id + "'");
    validate_document(d);
    c.documents.push_back(std::move(d));
  }
  return c;
}

CorpusFile load_corpus(const std::filesystem::path& path) {
  try {
    return parse_corpus(read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::string dump_corpus(const CorpusFile& corpus) {
  ordered_json root;
  root["version"] = corpus.version;
  ordered_json docs = ordered_json::array();
  for (const auto& d : corpus.documents) docs.push_back(document_json(d));
  root["documents"] = std::move(docs);
  return root.dump(2, ' ', false) + "\n";
}

void save_corpus(const CorpusFile& corpus, const std::filesystem::path& path) { write_file(path, dump_corpus(corpus)); }

std::vector<Sentence> parse_conllu(std::istream& in) {
  std::vector<Sentence> out;
  std::size_t cursor = 0;
  read_conllu_stream(in, [](const std::string&) {}, cursor, out);
  return out;
}

std::vector<Sentence> read_conllu(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_conllu(in);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::vector<std::pair<std::string, std::vector<Sentence>>> read_conllu_documents(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::pair<std::string, std::vector<Sentence>>> docs;
  std::vector<Sentence> sents;
  std::size_t cursor = 0;
  std::string current_id;
  bool started = false;
  auto on_newdoc = [&](const std::string& id) {
    if (started || !sents.empty()) docs.emplace_back(current_id, std::move(sents));
    sents.clear();
    current_id = id;
    cursor = 0;
    started = true;
  };
  read_conllu_stream(in, on_newdoc, cursor, sents);
  if (started || !sents.empty()) docs.emplace_back(current_id, std::move(sents));
  return docs;
}

std::string reconstruct_text(const std::vector<Sentence>& sentences) {
  std::u32string out;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      if (out.size() < t.span.start) out.append(t.span.start - out.size(), U' ');
      std::u32string cps = text::decode(t.text);
      if (out.size() > t.span.start || cps.size() != t.span.length())
        throw AlignmentError("token '" + t.text + "' does not fit its span");
      out += cps;
    }
  }
  return text::encode(out);
}

void write_tag_file(std::ostream& out, const std::vector<Sentence>& sentences, const std::vector<TagSequence>& gold,
                    const std::vector<TagSequence>& pred) {
  if (gold.size() != sentences.size() || pred.size() != sentences.size())
    throw AlignmentError("tag sequences do not match sentence count " + std::to_string(sentences.size()));
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& toks = sentences[i].tokens;
    if (gold[i].tags.size() != toks.size() || pred[i].tags.size() != toks.size())
      throw AlignmentError("sentence " + std::to_string(i) + ": tag count differs from token count " +
                           std::to_string(toks.size()));
    for (std::size_t k = 0; k < toks.size(); ++k) {
      std::string tok = toks[k].text;
      std::replace_if(tok.begin(), tok.end(), [](char c) { return c == ' ' || c == '\t'; }, '_');
      out << tok << ' ' << gold[i].tag_string(k) << ' ' << pred[i].tag_string(k) << '\n';
    }
    out << '\n';
  }
}

void write_tag_file(const std::vector<Sentence>& sentences, const std::vector<TagSequence>& gold,
                    const std::vector<TagSequence>& pred, const std::filesystem::path& path) {
  std::ostringstream ss;
  write_tag_file(ss, sentences, gold, pred);
  write_file(path, ss.str());
}

void write_tag_files(const std::vector<Sentence>& sentences,
                     const std::map<std::string, std::vector<TagSequence>>& gold,
                     const std::map<std::string, std::vector<TagSequence>>& pred, const std::filesystem::path& path) {
  for (const auto& [layer, g] : gold) {
    auto it = pred.find(layer);
    if (it == pred.end()) throw AlignmentError("no predicted tags for layer " + layer);
    write_tag_file(sentences, g, it->second, path.string() + "-" + layer);
  }
}

namespace {

bool well_formed_tag(const std::string& t) {
  return t == "O" || (t.size() > 2 && (t[0] == 'B' || t[0] == 'I') && t[1] == '-');
}

}  // namespace

std::vector<TagFileSentence> parse_tag_file(std::istream& in) {
  std::vector<TagFileSentence> out;
  TagFileSentence cur;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    auto cols = split_ws(line);
    if (cols.empty() || cols[0] == "-DOCSTART-") {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (cols.size() < 2) throw ParseError("expected at least 2 columns", line_at(line_no));
    TagLine tl;
    tl.token = cols[0];
    tl.pred = cols.back();
    tl.gold = cols.size() >= 3 ? cols[cols.size() - 2] : cols.back();
    for (const auto* tag : {&tl.gold, &tl.pred})
      if (!well_formed_tag(*tag)) throw ParseError("malformed tag '" + *tag + "'", line_at(line_no));
    cur.push_back(std::move(tl));
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<TagFileSentence> read_tag_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_tag_file(in);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::vector<std::string> Lexicon::categories() const {
  std::set<std::string> cats;
  for (const auto& [_, c] : entries) cats.insert(c);
  return {cats.begin(), cats.end()};
}

Lexicon parse_lexicon(std::istream& in, std::string name) {
  Lexicon lex;
  lex.name = std::move(name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) throw ParseError("expected term<TAB>category", line_at(line_no));
    if (cols[0].empty()) throw ParseError("empty term", line_at(line_no));
    std::string key = text::to_lower(cols[0]);
    auto [it, fresh] = lex.entries.insert_or_assign(key, cols[1]);
    if (!fresh) lex.warnings.push_back(line_at(line_no) + ": duplicate term '" + key + "', last entry wins");
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_lexicon(in, path.stem().string());
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

CodeMapping parse_code_mapping(std::istream& in) {
  CodeMapping map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) throw ParseError("expected name<TAB>scheme<TAB>code", line_at(line_no));
    auto scheme = parse_code_scheme(cols[1]);
    if (!scheme) throw ParseError("unknown code scheme '" + cols[1] + "'", line_at(line_no));
    auto& codes = map.codes[text::to_lower(cols[0])];
    auto same = std::find_if(codes.begin(), codes.end(), [&](const Code& c) { return c.scheme == *scheme; });
    if (same != codes.end()) {
      map.warnings.push_back(line_at(line_no) + ": duplicate " + cols[1] + " code for '" + cols[0] +
                             "', last entry wins");
      same->code = cols[2];
    } else {
      codes.push_back({*scheme, cols[2]});
    }
  }
  return map;
}

CodeMapping load_code_mapping(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_code_mapping(in);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

const std::vector<double>* VectorTable::find(const std::string& token) const {
  auto it = entries.find(token);
  return it == entries.end() ? nullptr : &it->second;
}

VectorTable parse_vectors(std::istream& in) {
  VectorTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    auto cols = split_ws(line);
    if (line_no == 1) {
      if (cols.size() != 2) throw ParseError("header must be 'count dim'", line_at(1));
      auto parse_n = [&](const std::string& s) {
        std::size_t v = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw ParseError("bad header value '" + s + "'", line_at(1));
        return v;
      };
      expected = parse_n(cols[0]);
      table.dimension = parse_n(cols[1]);
      if (table.dimension == 0) throw ParseError("dimension must be positive", line_at(1));
      continue;
    }
    if (cols.empty()) continue;
    if (cols.size() != table.dimension + 1)
      throw ParseError("expected " + std::to_string(table.dimension) + " values, found " +
                           std::to_string(cols.size() - 1),
                       line_at(line_no));
    std::vector<double> v(table.dimension);
    for (std::size_t i = 0; i < table.dimension; ++i) {
      const std::string& s = cols[i + 1];
      char* end = nullptr;
      v[i] = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size() || !std::isfinite(v[i]))
        throw ParseError("bad number '" + s + "'", line_at(line_no));
    }
    if (!table.entries.insert_or_assign(cols[0], std::move(v)).second)
      table.warnings.push_back(line_at(line_no) + ": duplicate token '" + cols[0] + "', last entry wins");
    ++rows;
  }
  if (line_no == 0) throw ParseError("empty vector file", line_at(1));
  if (rows != expected)
    throw ParseError("header announces " + std::to_string(expected) + " rows, found " + std::to_string(rows),
                     line_at(line_no));
  return table;
}

VectorTable load_vectors(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return parse_vectors(in);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

}  // namespace nerlab
