#include <set>
#include <sstream>

#include "doctest.h"
#include "nerlab/error.hpp"
#include "nerlab/synthetic.hpp"
#include "nerlab/tagger.hpp"

using namespace nerlab;
using namespace nerlab::tagger;

namespace {

Lexicon lexicon(const std::string& tsv, const std::string& name) {
  std::istringstream in(tsv);
  return parse_lexicon(in, name);
}

Token tok(std::string text, std::string pos = "NOUN") {
  Token t;
  t.text = text;
  t.lemma = text;
  t.pos = std::move(pos);
  return t;
}

const synthetic::SyntheticCorpus& separable_corpus() {
  static const auto sc = synthetic::make_corpus();
  return sc;
}

}  // namespace

TEST_CASE("common features") {
  using A = std::array<bool, 7>;
  CHECK(common_features("АСПИРИН") == A{1, 0, 1, 0, 0, 0, 0});
  CHECK(common_features("ibuprofen") == A{0, 1, 0, 0, 0, 0, 1});
  CHECK(common_features("15000") == A{0, 0, 0, 1, 1, 1, 0});
  CHECK(common_features("Нурофен") == A{0, 0, 1, 0, 0, 0, 0});
  CHECK(common_features("B12") == A{1, 0, 1, 1, 1, 0, 1});
  CHECK(common_features("") == A{});
}

TEST_CASE("emotion dictionaries") {
  const std::vector<Lexicon> dicts{lexicon("радость\tjoy\n", "d0"), lexicon("страх\tfear\n", "d1"),
                                   lexicon("страх\tfear\nболь\tpain\n", "d2")};
  CHECK(emotion_features(tok("страх"), dicts) == std::vector<bool>{false, true, true});
  CHECK(emotion_features(tok("стол"), dicts) == std::vector<bool>{false, false, false});
  CHECK(emotion_features(tok("Радость"), dicts) == std::vector<bool>{true, false, false});
}

TEST_CASE("category dictionaries") {
  const Lexicon lex = lexicon("головная боль\tadverse\nаспирин\tdrug\n", "cat");
  CHECK(dict_features(tok("аспирин"), lex) == std::vector<bool>{false, true});
  CHECK(dict_features(tok("стол"), lex) == std::vector<bool>{false, false});
  Sentence s;
  for (const char* w : {"сильная", "головная", "боль"}) s.tokens.push_back(tok(w));
  const auto m = match_dictionary(s, lex);
  CHECK_FALSE(m[0].has_value());
  REQUIRE(m[1].has_value());
  CHECK(m[1]->category == "adverse");
  CHECK(m[1]->begins);
  REQUIRE(m[2].has_value());
  CHECK_FALSE(m[2]->begins);
}

TEST_CASE("psycholinguistic markers") {
  Document d;
  d.text = "болит ноет сильная !";
  Sentence s;
  for (auto [w, p] : std::vector<std::pair<const char*, const char*>>{
           {"болит", "VERB"}, {"ноет", "VERB"}, {"сильная", "ADJ"}, {"!", "PUNCT"}})
    s.tokens.push_back(tok(w, p));
  d.sentences.push_back(s);
  const auto p = psycholing_markers(d);
  CHECK(p.values[0] == doctest::Approx(2.0));
  CHECK(p.degenerate[1]);
  CHECK(p.values[1] == 0.0);
  CHECK(p.values[4] == 1.0);
  CHECK(p.values[5] == doctest::Approx(4.0));
}

TEST_CASE("training on separable data") {
  const auto sc = separable_corpus();
  TrainOptions o;
  o.epochs = 5;
  const auto model = train(sc.corpus, o);
  REQUIRE(model.trace.size() == 5);
  CHECK(model.trace.back().f1 == doctest::Approx(100.0));
  const auto tagged = tag_corpus(model, sc.corpus);
  CHECK(tagged.pred == tagged.gold);
  for (const auto& seq : tagged.pred)
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i].starts_with("I-")) CHECK((i > 0 && seq[i - 1] != "O"));
}

TEST_CASE("same seed gives identical models") {
  const auto sc = separable_corpus();
  TrainOptions o;
  o.epochs = 2;
  CHECK(dump_model(train(sc.corpus, o)) == dump_model(train(sc.corpus, o)));
}

TEST_CASE("one document, one epoch touches only observed features") {
  CorpusFile c;
  c.documents.push_back(separable_corpus().corpus.documents.front());
  TrainOptions o;
  o.epochs = 1;
  const auto model = train(c, o);
  std::set<std::string> seen;
  for (const auto& sent : extract_features(c.documents[0], {}, model))
    for (const auto& tokfeats : sent) seen.insert(tokfeats.begin(), tokfeats.end());
  for (const auto& [name, w] : model.weights)
    if (w != std::array<double, 3>{}) CHECK(seen.count(name));
}

TEST_CASE("model JSON round-trip") {
  TrainOptions o;
  o.epochs = 1;
  const auto model = train(separable_corpus().corpus, o);
  const std::string text = dump_model(model);
  const auto back = parse_model(text);
  CHECK(back == model);
  CHECK(dump_model(back) == text);
  CHECK_THROWS_AS(parse_model("{}"), ParseError);
  CHECK(training_log_csv(model).rfind("epoch,layer,precision,recall,f1\n", 0) == 0);
}

TEST_CASE("decoding never starts a chunk with I") {
  TaggerModel m;
  m.layer = "ADR";
  m.weights["w"] = {0, 10, 0};  // I strongly preferred everywhere
  const auto path = decode(m, {{"w"}, {"w"}, {"w"}});
  CHECK(path.front() != Bio::I);
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i] == Bio::I) CHECK(path[i - 1] != Bio::O);
  CHECK(decode(m, {{}}) == std::vector<Bio>{Bio::O});
}

TEST_CASE("empty training set") {
  CHECK_THROWS_AS(train(CorpusFile{}, {}), UndefinedInputError);
}
