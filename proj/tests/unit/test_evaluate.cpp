#include <algorithm>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "nerlab/error.hpp"
#include "nerlab/evaluate.hpp"
#include "oracles.hpp"

using namespace nerlab;
using namespace nerlab::eval;

namespace {

Mention m(std::string id, Entity e, std::vector<Span> spans) {
  Mention x;
  x.id = std::move(id);
  x.entity = e;
  x.spans = std::move(spans);
  return x;
}

// Chain element k occupies [k, k+1).
ChainSet chains(const std::vector<std::vector<int>>& cs) {
  ChainSet out;
  for (const auto& c : cs) {
    std::vector<std::vector<Span>> elems;
    for (int k : c) elems.push_back({{static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 1}});
    out.chains.push_back(elems);
  }
  return out;
}

std::vector<oracle::Entity> entities(const std::vector<std::vector<int>>& cs) {
  std::vector<oracle::Entity> out;
  for (const auto& c : cs) out.emplace_back(c.begin(), c.end());
  return out;
}

}  // namespace

TEST_CASE("f1 and rounding") {
  CHECK(f1(0, 0) == 0);
  CHECK(f1(50, 100) == doctest::Approx(66.6666666667));
  CHECK(round_half_up(66.65, 1) == doctest::Approx(66.7));
  CHECK(round_half_up(0.125, 2) == doctest::Approx(0.13));
  const Score s = Score::from_counts(0, 0, 0);
  CHECK(s.precision == 0);
  CHECK(s.recall == 0);
}

TEST_CASE("chunk extraction and repair") {
  CHECK(extract_chunks({"O", "I-ADR", "I-ADR"}) == std::vector<Chunk>{{"ADR", 1, 3}});
  CHECK(extract_chunks({"B-ADR", "B-ADR", "I-ADR"}) == std::vector<Chunk>{{"ADR", 0, 1}, {"ADR", 1, 3}});
  CHECK(extract_chunks({"B-ADR", "I-Drugname"}) == std::vector<Chunk>{{"ADR", 0, 1}, {"Drugname", 1, 2}});
  CHECK(chunk_prf({{"O", "B-ADR", "I-ADR"}}, {{"O", "I-ADR", "I-ADR"}}).micro.f1 == 100.0);
}

TEST_CASE("chunk_prf") {
  SUBCASE("a truncated chunk scores zero") {
    const auto r = chunk_prf({{"B-ADR", "I-ADR", "O"}}, {{"B-ADR", "O", "O"}});
    CHECK(r.micro.f1 == 0.0);
    CHECK(r.micro.gold_count == 1);
    CHECK(r.micro.pred_count == 1);
  }
  SUBCASE("empty sides") {
    const auto r = chunk_prf({{"O", "O"}}, {{"O", "O"}});
    CHECK(r.micro.f1 == 0.0);
    CHECK(r.per_type.empty());
  }
  SUBCASE("length mismatch") { CHECK_THROWS_AS(chunk_prf({{"O"}}, {{"O", "O"}}), AlignmentError); }
}

TEST_CASE("property: chunk_prf matches the oracle and swaps P and R") {
  gen::Rng rng(11);
  const std::vector<std::string> types{"ADR", "Drugname", "Disease"};
  for (int i = 0; i < 500; ++i) {
    std::vector<std::vector<std::string>> g, p;
    const std::size_t n = gen::uniform(rng, 1, 4);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t len = gen::uniform(rng, 1, 10);
      g.push_back(gen::random_tags(rng, len, types));
      p.push_back(gen::random_tags(rng, len, types));
    }
    const auto r = chunk_prf(g, p);
    const auto o = oracle::chunk_prf(g, p);
    CHECK(r.micro.precision == doctest::Approx(o.p).epsilon(1e-12));
    CHECK(r.micro.recall == doctest::Approx(o.r).epsilon(1e-12));
    CHECK(r.micro.f1 == doctest::Approx(o.f).epsilon(1e-12));
    const auto swapped = chunk_prf(p, g);
    CHECK(swapped.micro.precision == r.micro.recall);
    CHECK(swapped.micro.recall == r.micro.precision);
    std::size_t gold_total = 0;
    for (const auto& [_, sc] : r.per_type) gold_total += sc.gold_count;
    CHECK(gold_total == r.micro.gold_count);
    CHECK(chunk_prf(g, g).micro.f1 == (r.micro.gold_count ? 100.0 : 0.0));
  }
}

TEST_CASE("admissibility") {
  const Mention a = m("a", Entity::ADR, {{0, 5}});
  const Mention b = m("b", Entity::Disease, {{3, 8}});
  CHECK_FALSE(admissible(a, b, {SpanStrictness::Strict, TagStrictness::Strict}));
  CHECK_FALSE(admissible(a, b, {SpanStrictness::Intersection, TagStrictness::Strict}));
  CHECK(admissible(a, b, {SpanStrictness::Intersection, TagStrictness::Ignored}));
  CHECK_FALSE(admissible(a, m("c", Entity::ADR, {{5, 8}}), {SpanStrictness::Intersection, TagStrictness::Strict}));
  CHECK(admissible(a, m("d", Entity::ADR, {{0, 5}}), {}));
}

TEST_CASE("maximum matching beats greedy") {
  // a1 overlaps both b's, a2 only b1: greedy a1->b1 would leave a2 unmatched.
  const std::vector<Mention> a{m("a1", Entity::ADR, {{0, 10}}), m("a2", Entity::ADR, {{0, 2}})};
  const std::vector<Mention> b{m("b1", Entity::ADR, {{0, 3}}), m("b2", Entity::ADR, {{8, 12}})};
  const AgreementConfig cfg{SpanStrictness::Intersection, TagStrictness::Strict};
  CHECK(match_mentions(a, b, cfg) == 2);
  CHECK(agreement_pair(a, b, cfg) == 100.0);
  CHECK(agreement_pair({}, {}, cfg) == 100.0);
  CHECK(agreement_pair(a, {}, cfg) == 0.0);
}

TEST_CASE("property: agreement matches the exhaustive oracle") {
  gen::Rng rng(12);
  for (int i = 0; i < 400; ++i) {
    const auto a = gen::random_annotation(rng, 30, 6);
    const auto b = gen::random_annotation(rng, 30, 6);
    for (auto span : {SpanStrictness::Strict, SpanStrictness::Intersection})
      for (auto tag : {TagStrictness::Strict, TagStrictness::Ignored}) {
        const AgreementConfig cfg{span, tag};
        const bool inter = span == SpanStrictness::Intersection, ign = tag == TagStrictness::Ignored;
        CHECK(agreement_pair(a, b, cfg) == doctest::Approx(oracle::agreement(a, b, inter, ign)));
        CHECK(agreement_pair(a, b, cfg) == agreement_pair(b, a, cfg));
      }
    const AgreementConfig strict{}, loose{SpanStrictness::Intersection, TagStrictness::Ignored};
    CHECK(agreement_pair(a, b, strict) <= agreement_pair(a, b, loose));
  }
}

TEST_CASE("agreement averages") {
  const Mention x = m("x", Entity::ADR, {{0, 1}});
  const Mention y = m("y", Entity::ADR, {{2, 3}});
  const Mention z = m("z", Entity::ADR, {{4, 5}});
  SUBCASE("two documents averaged") {
    // Document 1: 3 of 5 agree -> 60. Document 2: 4 of 5 -> 80.
    auto five = [](std::size_t base) {
      std::vector<Mention> v;
      for (std::size_t k = 0; k < 5; ++k) v.push_back(m("m" + std::to_string(k), Entity::ADR, {{base + 2 * k, base + 2 * k + 1}}));
      return v;
    };
    auto a1 = five(0), b1 = five(0), a2 = five(0), b2 = five(0);
    b1[3].spans = {{100, 101}};
    b1[4].spans = {{102, 103}};
    b2[4].spans = {{100, 101}};
    const Annotations ann{{"a", {{"d1", a1}, {"d2", a2}}}, {"b", {{"d1", b1}, {"d2", b2}}}};
    const auto s = agreement_average(ann, {});
    CHECK(s.pairs.at("a|b") == doctest::Approx(70.0));
    CHECK(s.average == doctest::Approx(70.0));
  }
  SUBCASE("three annotators average over pairs") {
    const Annotations ann{{"a", {{"d", {x, y}}}}, {"b", {{"d", {x, y}}}}, {"c", {{"d", {x, z}}}}};
    const auto s = agreement_average(ann, {});
    CHECK(s.pairs.size() == 3);
    CHECK(s.pairs.at("a|b") == 100.0);
    CHECK(s.pairs.at("a|c") == 50.0);
    CHECK(s.average == doctest::Approx(200.0 / 3));
  }
  SUBCASE("undefined inputs") {
    CHECK_THROWS_AS(agreement_average({{"a", {{"d", {x}}}}}, {}), UndefinedInputError);
    CHECK_THROWS_AS(agreement_average({{"a", {{"d1", {x}}}}, {"b", {{"d2", {x}}}}}, {}), UndefinedInputError);
  }
}

TEST_CASE("MUC") {
  const auto merged = muc_prf(chains({{0, 1}, {2, 3}}), chains({{0, 1, 2, 3}}));
  CHECK(merged.recall == doctest::Approx(100.0));
  CHECK(merged.precision == doctest::Approx(200.0 / 3));
  CHECK(muc_prf(chains({{0, 1}}), chains({{5, 6}})).f1 == 0.0);
}

TEST_CASE("B-cubed") {
  const auto s = b3_prf(chains({{0, 1}, {2, 3}}), chains({{0, 1, 2, 3}}));
  CHECK(s.recall == doctest::Approx(100.0));
  CHECK(s.precision == doctest::Approx(50.0));
  CHECK(b3_prf(chains({{0, 1}}), chains({{5, 6}})).f1 == 0.0);
}

TEST_CASE("CEAFe and assignment") {
  CHECK(phi4({{{0, 1}}, {{1, 2}}}, {{{0, 1}}}) == doctest::Approx(2.0 / 3));
  const auto a = max_weight_assignment({{1, 0, 0}, {0.9, 0.8, 0}});
  CHECK(a == std::vector<int>{0, 1});
  CHECK(max_weight_assignment({{0.5}, {0.9}}) == std::vector<int>{-1, 0});
  const auto s = ceafe_prf(chains({{0, 1, 2, 3}}), chains({{0, 1}, {2, 3}}));
  CHECK(s.recall == doctest::Approx(200.0 / 3));
  CHECK(s.precision == doctest::Approx(100.0 / 3));
  CHECK(conll_avg(60, 70, 80) == doctest::Approx(70));
}

TEST_CASE("property: coreference metrics match the oracles") {
  gen::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const int universe = static_cast<int>(gen::uniform(rng, 4, 12));
    const auto g = gen::random_chains(rng, universe, 4);
    const auto p = gen::random_chains(rng, universe, 4);
    const auto gs = chains(g), ps = chains(p);
    const auto cc = ceafe_counts(gs, ps);
    CHECK(cc.recall_num == doctest::Approx(oracle::ceafe_optimum(entities(g), entities(p))).epsilon(1e-12));
    const auto [num, den] = oracle::muc_recall_counts(entities(g), entities(p));
    const auto mc = muc_counts(gs, ps);
    CHECK(mc.recall_num == doctest::Approx(num));
    CHECK(mc.recall_den == doctest::Approx(den));
    // Swapping key and response swaps precision and recall.
    for (auto fn : {&muc_prf, &b3_prf, &ceafe_prf}) {
      const Score a = fn(gs, ps), b = fn(ps, gs);
      CHECK(a.precision == doctest::Approx(b.recall));
      CHECK(a.recall == doctest::Approx(b.precision));
      if (!g.empty()) CHECK(fn(gs, gs).f1 == doctest::Approx(100.0));
    }
  }
}

TEST_CASE("pooled report over documents") {
  const auto r = coref_report({chains({{0, 1}}), chains({{0, 1, 2}})}, {chains({{0, 1}}), chains({{0, 1}})});
  CHECK(r.muc.recall == doctest::Approx(100.0 * 2 / 3));
  CHECK(r.muc.precision == doctest::Approx(100.0));
  CHECK(r.avg_f1 == doctest::Approx(conll_avg(r.muc.f1, r.b3.f1, r.ceafe.f1)));
  CHECK_THROWS_AS(chains({{0}}).validate(), ValidationError);
  CHECK_THROWS_AS(chains({{0, 1}, {1, 2}}).validate(), ValidationError);
}

TEST_CASE("experimental partial F1") {
  const auto v = partial_f1({{"B-ADR", "I-ADR", "O"}, {"O"}}, {{"B-ADR", "O", "O"}, {"B-ADR"}});
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(200.0 / 3));
  CHECK(partial_f1({{"B-ADR", "I-ADR"}, {"B-ADR"}}, {{"B-ADR", "I-ADR"}, {"O"}}) == doctest::Approx(50.0));
  CHECK(partial_f1({{"B-ADR"}}, {{"B-Disease"}}) == doctest::Approx(0.0));
  CHECK_FALSE(partial_f1({{"O"}}, {{"B-ADR"}}).has_value());
}
