#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "nerlab/error.hpp"
#include "nerlab/formats.hpp"

using namespace nerlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::filesystem::path kFixtures{NERLAB_FIXTURES};

}  // namespace

TEST_CASE("fixture corpora dump byte-identically") {
  for (const auto& name : {"corpus_small.json", "corpus_empty.json", "ann_a.json", "ann_b.json", "coref_gold.json",
                           "coref_pred.json", "tonality.json"}) {
    CAPTURE(name);
    const std::string raw = slurp(kFixtures / name);
    CHECK(dump_corpus(parse_corpus(raw)) == raw);
  }
}

TEST_CASE("corpus parse errors carry a JSON pointer") {
  try {
    parse_corpus(R"({"version":"1.0","documents":[{"id":"d","text":"ab","sentences":[],"mentions":[{"id":"T1","entity":"Nope","spans":[[0,1]]}],"chains":[]}]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where().find("/documents/0/mentions/0") == 0);
  }
  CHECK_THROWS_AS(parse_corpus("{not json"), ParseError);
  CHECK_THROWS_AS(parse_corpus(R"({"version":"1.0","documents":[{"id":"d","text":"ab","sentences":[],"mentions":[{"id":"T1","entity":"ADR","spans":[[0,9]]}],"chains":[]}]})"),
                  ValidationError);
}

TEST_CASE("property: random corpora round-trip") {
  gen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    CorpusFile c;
    for (int k = 0; k < 3; ++k) {
      Document d = gen::sentence_document(rng, gen::uniform(rng, 1, 10), "d" + std::to_string(k));
      d.mentions = gen::random_token_mentions(rng, d, 4);
      c.documents.push_back(d);
    }
    const std::string once = dump_corpus(c);
    const CorpusFile back = parse_corpus(once);
    CHECK(back == c);
    CHECK(dump_corpus(back) == once);
  }
}

TEST_CASE("CoNLL-U") {
  std::istringstream in(
      "# sent_id = 1\n"
      "1-2\tвот\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tГолова\tголова\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
      "2\tболит\tболеть\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
      "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
      "\n"
      "1\tДа\tда\tPART\t_\t_\t0\troot\t_\t_\n"
      "\n");
  const auto sents = parse_conllu(in);
  REQUIRE(sents.size() == 2);
  REQUIRE(sents[0].tokens.size() == 3);
  CHECK(sents[0].tokens[0].head == 2u);
  CHECK(sents[0].tokens[1].head == 0u);
  CHECK(sents[0].tokens[2].head == 2u);
  CHECK(sents[0].tokens[0].lemma == "голова");
  CHECK(sents[0].tokens[1].deprel == "root");
  CHECK(sents[0].tokens[2].span.start == sents[0].tokens[1].span.end);
  CHECK(reconstruct_text(sents) == "Голова болит. Да");

  std::istringstream bad("1\tx\tx\tNOUN\t_\t_\t0\n\n");
  CHECK_THROWS_AS(parse_conllu(bad), ParseError);
}

TEST_CASE("tag files") {
  Sentence s;
  for (const char* w : {"Голова", "болит"}) s.tokens.push_back(Token{w});
  std::ostringstream out;
  write_tag_file(out, {s}, {{"ADR", {Bio::B, Bio::I}}}, {{"ADR", {Bio::B, Bio::O}}});
  CHECK(out.str() == "Голова B-ADR B-ADR\nболит I-ADR O\n\n");

  std::istringstream in(out.str() + "x O\n");
  const auto parsed = parse_tag_file(in);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0][1].gold == "I-ADR");
  CHECK(parsed[0][1].pred == "O");
  CHECK(parsed[1][0].gold == "O");
  CHECK(parsed[1][0].pred == "O");

  std::istringstream bad("x B-ADR Q-ADR\n");
  CHECK_THROWS_AS(parse_tag_file(bad), ParseError);
}

TEST_CASE("lexicon keeps the last duplicate") {
  std::istringstream in("Боль\tpain\nболь\tache\nсыпь\tskin\n");
  const Lexicon lex = parse_lexicon(in, "emo");
  CHECK(lex.entries.size() == 2);
  CHECK(lex.entries.at("боль") == "ache");
  CHECK(lex.warnings.size() == 1);
  CHECK(lex.categories() == std::vector<std::string>{"ache", "skin"});
}

TEST_CASE("code mapping allows several schemes") {
  std::istringstream in("головная боль\tMedDRA\t10019211\nголовная боль\tICD-10\tR51\n");
  const CodeMapping m = parse_code_mapping(in);
  REQUIRE(m.codes.count("головная боль"));
  CHECK(m.codes.at("головная боль").size() == 2);
}

TEST_CASE("vectors") {
  std::istringstream ok("2 3\nболь 1 0 0\nсыпь 0 1 0.5\n");
  const VectorTable v = parse_vectors(ok);
  CHECK(v.dimension == 3);
  REQUIRE(v.find("сыпь"));
  CHECK((*v.find("сыпь"))[2] == doctest::Approx(0.5));
  CHECK(v.find("нет") == nullptr);

  std::istringstream bad("2 3\nболь 1 0 0\nсыпь 0 1\n");
  try {
    parse_vectors(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "line 3");
  }
}
