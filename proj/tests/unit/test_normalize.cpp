#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "nerlab/normalize.hpp"
#include "nerlab/text.hpp"
#include "oracles.hpp"

using namespace nerlab;
using namespace nerlab::norm;

TEST_CASE("ratcliff similarity") {
  CHECK(ratcliff_similarity("боль", "боль") == 1.0);
  CHECK(ratcliff_similarity("", "") == 1.0);
  CHECK(ratcliff_similarity("abc", "abd") == doctest::Approx(4.0 / 6));
  CHECK(ratcliff_similarity("abc", "xyz") == 0.0);
  CHECK(ratcliff_similarity("Боль", "БОЛЬ") == 1.0);
  CHECK(ratcliff_similarity("головная боль", "головные боли") == doctest::Approx(20.0 / 26));
}

TEST_CASE("property: similarity matches the brute-force oracle and is symmetric") {
  gen::Rng rng(21);
  const std::u32string alphabet = U"абвгaбab ";
  for (int i = 0; i < 2000; ++i) {
    std::u32string a, b;
    for (std::size_t k = gen::uniform(rng, 0, 9); k > 0; --k) a += alphabet[gen::uniform(rng, 0, alphabet.size() - 1)];
    for (std::size_t k = gen::uniform(rng, 0, 9); k > 0; --k) b += alphabet[gen::uniform(rng, 0, alphabet.size() - 1)];
    const double s = ratcliff_similarity(text::encode(a), text::encode(b));
    CHECK(s == doctest::Approx(oracle::ratcliff(a, b)).epsilon(1e-15));
    CHECK(s == ratcliff_similarity(text::encode(b), text::encode(a)));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("grouping") {
  SUBCASE("singleton") {
    const auto g = group_mentions({"сыпь"});
    REQUIRE(g.size() == 1);
    CHECK(g[0].members == std::vector<std::string>{"сыпь"});
    CHECK(g[0].name == "сыпь");
  }
  SUBCASE("threshold 1 keeps distinct strings apart") {
    const auto g = group_mentions({"головная боль", "головные боли", "тошнота"}, {1.0});
    CHECK(g.size() == 3);
  }
  SUBCASE("threshold 1 still separates case variants") {
    CHECK(group_mentions({"Боль", "боль"}, {1.0}).size() == 2);
  }
  SUBCASE("duplicates join below 1") {
    const auto g = group_mentions({"Боль", "тошнота", "боль"}, {0.8});
    REQUIRE(g.size() == 2);
    CHECK(g[0].members == std::vector<std::string>{"Боль", "боль"});
  }
  SUBCASE("lemma keys pull inflected forms together") {
    const auto g = group_mentions_by_key({"головная боль", "головные боли", "тошнота"},
                                         {"головной боль", "головной боль", "тошнота"}, {0.8});
    REQUIRE(g.size() == 2);
    CHECK(g[0].members.size() == 2);
  }
  SUBCASE("highest mean wins, oldest on ties") {
    const auto g = group_mentions({"abcd", "wxyz", "abce"}, {0.5});
    REQUIRE(g.size() == 2);
    CHECK(g[0].members == std::vector<std::string>{"abcd", "abce"});
  }
}

TEST_CASE("property: group sizes sum to the input size") {
  gen::Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> in;
    for (std::size_t k = gen::uniform(rng, 0, 12); k > 0; --k) in.push_back(gen::pick(rng, gen::words()));
    const double th = 0.3 + 0.1 * static_cast<double>(gen::uniform(rng, 0, 7));
    const auto g = group_mentions(in, {th});
    std::size_t total = 0;
    for (const auto& x : g) {
      total += x.members.size();
      CHECK_FALSE(x.members.empty());
    }
    CHECK(total == in.size());
  }
}

TEST_CASE("group names") {
  CHECK(group_name({"b", "a", "b"}) == "b");
  CHECK(group_name({"b", "a"}) == "a");
}

TEST_CASE("assign_codes") {
  std::istringstream in("головная боль\tMedDRA\t10019211\nголовная боль\tICD-10\tR51\n");
  const CodeMapping mapping = parse_code_mapping(in);
  auto groups = group_mentions({"Головная боль", "головная боль", "сыпь"});
  groups = assign_codes(groups, mapping);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].codes.size() == 2);
  CHECK_FALSE(groups[0].concept_less);
  CHECK(groups[1].codes.empty());
  CHECK(groups[1].concept_less);
}
