#include <doctest.h>

#include <set>
#include <sstream>

#include "ldim/error.hpp"
#include "ldim/layers.hpp"
#include "ldim/poset.hpp"
#include "test_support.hpp"

using namespace ldim;

namespace {

std::vector<Relation> rel(std::initializer_list<Relation> r) { return r; }

void check_axioms(const Poset& p) {
  const auto n = static_cast<ElementId>(p.size());
  for (ElementId a = 1; a <= n; ++a) {
    CHECK_FALSE(p.less(a, a));
    for (ElementId b = 1; b <= n; ++b) {
      if (p.less(a, b)) CHECK_FALSE(p.less(b, a));
      for (ElementId c = 1; c <= n; ++c)
        if (p.less(a, b) && p.less(b, c)) CHECK(p.less(a, c));
    }
  }
}

}  // namespace

TEST_CASE("make_poset closes chains") {
  auto p = make_poset(3, rel({{1, 2}, {2, 3}}));
  CHECK(p.less(1, 3));
  CHECK(p.relation_count() == 3);
  CHECK(p.is_chain());
}

TEST_CASE("make_poset without relations is an antichain") {
  auto p = make_poset(2, {});
  CHECK(p.relation_count() == 0);
  CHECK(p == Poset::antichain(2));
}

TEST_CASE("make_poset rejects cycles and bad ids") {
  CHECK_THROWS_AS(make_poset(2, rel({{1, 2}, {2, 1}})), CycleError);
  CHECK_THROWS_AS(make_poset(3, rel({{1, 2}, {2, 3}, {3, 1}})), CycleError);
  CHECK_THROWS_AS(make_poset(2, rel({{1, 3}})), RangeError);
  CHECK_THROWS_AS(make_poset(2, rel({{0, 1}})), RangeError);
  CHECK_THROWS_AS(make_poset(2, rel({{1, 1}})), CycleError);
  CHECK_THROWS_AS(make_poset(0, {}), ParameterError);
}

TEST_CASE("boolean_layer_poset S_3") {
  auto q = boolean_layer_poset(3, 1, 2);
  CHECK(q.size() == 6);
  CHECK(q.relation_count() == 6);
  // Brute-force containment count on the dense copy.
  auto p = q.to_poset();
  std::size_t count = 0;
  for (ElementId a = 1; a <= 6; ++a)
    for (ElementId b = 1; b <= 6; ++b)
      if (p.less(a, b)) {
        ++count;
        CHECK(std::popcount(q.mask(a)) == 1);
        CHECK((q.mask(a) & ~q.mask(b)) == 0);
      }
  CHECK(count == 6);
  for (ElementId a = 1; a <= 3; ++a) CHECK(p.up_set(a).count() == 2);
}

TEST_CASE("boolean_layer_poset (4,1,3)") {
  auto q = boolean_layer_poset(4, 1, 3);
  CHECK(q.lower_count() == 4);
  CHECK(q.upper_count() == 4);
  auto p = q.to_poset();
  for (ElementId a = 1; a <= 4; ++a) CHECK(p.up_set(a).count() == 3);
}

TEST_CASE("boolean_layer_poset bottom and top") {
  auto q = boolean_layer_poset(2, 0, 2);
  CHECK(q.size() == 2);
  CHECK(q.mask(1) == 0);
  CHECK(q.mask(2) == 0b11);
  CHECK(q.relation_count() == 1);
  CHECK(q.less(1, 2));
}

TEST_CASE("boolean_layer_poset rejects bad layers") {
  CHECK_THROWS_AS(boolean_layer_poset(3, 2, 2), ParameterError);
  CHECK_THROWS_AS(boolean_layer_poset(3, 2, 1), ParameterError);
  CHECK_THROWS_AS(boolean_layer_poset(3, 1, 4), ParameterError);
}

TEST_CASE("layer poset canonical order and lookups") {
  auto q = boolean_layer_poset(5, 2, 3);
  for (ElementId id = 1; id + 1 <= q.lower_count(); ++id) CHECK(q.mask(id) < q.mask(id + 1));
  for (ElementId id = 1; id <= q.size(); ++id) {
    const auto m = q.mask(id);
    CHECK((q.in_lower(id) ? q.lower_id(m) : q.upper_id(m)) == id);
  }
  CHECK(q.label(1) == "{1,2}");
  CHECK(format_subset(0) == "{}");
}

TEST_CASE("layer relation count matches C(n-l,k-l) C(n,l)") {
  for (unsigned n = 1; n <= 7; ++n)
    for (unsigned l = 0; l < n; ++l)
      for (unsigned k = l + 1; k <= n; ++k) {
        auto q = boolean_layer_poset(n, l, k);
        CHECK(q.size() == binomial(n, l) + binomial(n, k));
        auto p = q.to_poset();
        CHECK(p.relation_count() == binomial(n - l, k - l) * binomial(n, l));
        // Only containments, and for_each_below agrees with the dense copy.
        for (ElementId b = 1; b <= q.size(); ++b) {
          std::size_t seen = 0;
          q.for_each_below(b, [&](ElementId a) {
            CHECK(p.less(a, b));
            ++seen;
          });
          CHECK(seen == p.down_count(b));
          CHECK(seen == q.down_count(b));
        }
      }
}

TEST_CASE("binomial and layer masks") {
  CHECK(binomial(16, 8) == 12870);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(62, 31) == 465428353255261088ULL);
  CHECK_THROWS_AS(binomial(200, 100), RangeError);
  auto m = layer_masks(4, 2);
  CHECK(m == std::vector<SubsetMask>{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100});
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(colex_rank(m[i]) == i);
  std::vector<SubsetMask> subs;
  LayerPoset::for_each_subset(0b1011, 2, [&](SubsetMask s) { subs.push_back(s); });
  CHECK(subs == std::vector<SubsetMask>{0b0011, 0b1001, 0b1010});
}

TEST_CASE("divisibility_poset") {
  auto p4 = divisibility_poset(4);
  CHECK(p4.relations() == std::vector<Relation>{{1, 2}, {1, 3}, {1, 4}, {2, 4}});
  CHECK(divisibility_poset(1).relation_count() == 0);
  auto p6 = divisibility_poset(6);
  CHECK_FALSE(p6.comparable(2, 3));
  CHECK(p6.less(2, 6));
  CHECK(p6.less(3, 6));
  check_axioms(divisibility_poset(30));
}

TEST_CASE("lex_sum examples") {
  SUBCASE("antichain index") {
    std::vector<Poset> q{Poset::chain(2), Poset::chain(1)};
    auto s = lex_sum(Poset::antichain(2), q);
    CHECK(s.poset.size() == 3);
    CHECK(s.poset.less(s.id(1, 1), s.id(1, 2)));
    CHECK_FALSE(s.poset.comparable(s.id(2, 1), s.id(1, 1)));
    CHECK_FALSE(s.poset.comparable(s.id(2, 1), s.id(1, 2)));
    CHECK(s.origin[2] == Relation{2, 1});
    CHECK(s.poset.label(s.id(1, 2)) == "(1,2)");
  }
  SUBCASE("chain of singletons") {
    std::vector<Poset> q{Poset::chain(1), Poset::chain(1)};
    CHECK(lex_sum(Poset::chain(2), q).poset == Poset::chain(2));
  }
  SUBCASE("chain of antichains") {
    std::vector<Poset> q{Poset::antichain(2), Poset::antichain(2)};
    auto s = lex_sum(Poset::chain(2), q);
    CHECK(s.poset.size() == 4);
    for (ElementId a = 1; a <= 2; ++a)
      for (ElementId b = 1; b <= 2; ++b) CHECK(s.poset.less(s.id(1, a), s.id(2, b)));
    CHECK(s.poset.relation_count() == 4);
  }
  SUBCASE("errors") {
    std::vector<Poset> one{Poset::chain(1)};
    CHECK_THROWS_AS(lex_sum(Poset::chain(2), one), ParameterError);
  }
}

TEST_CASE("lex_sum matches the definition on random instances") {
  Xorshift64Star rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto index = testing::random_poset(1 + rng.below(4), rng);
    std::vector<Poset> q;
    std::size_t total = 0;
    for (std::size_t x = 0; x < index.size(); ++x) {
      q.push_back(testing::random_poset(1 + rng.below(3), rng));
      total += q.back().size();
    }
    auto s = lex_sum(index, q);
    CHECK(s.poset.size() == total);
    check_axioms(s.poset);
    for (ElementId a = 1; a <= total; ++a)
      for (ElementId b = 1; b <= total; ++b) {
        auto [x, y] = s.origin[a - 1];
        auto [z, w] = s.origin[b - 1];
        const bool expect = index.less(x, z) || (x == z && q[x - 1].less(y, w));
        CHECK(s.poset.less(a, b) == expect);
      }
  }
}

TEST_CASE("dual") {
  auto d = dual(Poset::chain(2));
  CHECK(d.less(2, 1));
  CHECK_FALSE(d.less(1, 2));
  CHECK(dual(Poset::antichain(3)) == Poset::antichain(3));
  Xorshift64Star rng(3);
  for (int t = 0; t < 50; ++t) {
    auto p = testing::random_poset(1 + rng.below(5), rng);
    CHECK(dual(dual(p)) == p);
    std::set<Relation> flipped;
    for (auto [x, y] : requirements(p)) flipped.emplace(y, x);
    auto rd = requirements(dual(p));
    CHECK(std::set<Relation>(rd.begin(), rd.end()) == flipped);
  }
}

TEST_CASE("requirements") {
  CHECK(requirements(Poset::antichain(2)) == std::vector<Relation>{{1, 2}, {2, 1}});
  CHECK(requirements(Poset::chain(2)) == std::vector<Relation>{{1, 2}});
  auto s3 = boolean_layer_poset(3, 1, 2).to_poset();
  auto req = requirements(s3);
  CHECK(req.size() == 24);
  std::size_t comparable = 0;
  for (auto [x, y] : req) comparable += s3.less(x, y);
  CHECK(comparable == 6);
  CHECK(req.size() - comparable == 18);
}

TEST_CASE("is_partial_linear_extension") {
  auto c = Poset::chain(2);
  CHECK(is_partial_linear_extension(c, std::vector<ElementId>{1, 2}));
  CHECK_FALSE(is_partial_linear_extension(c, std::vector<ElementId>{2, 1}));
  auto a = Poset::antichain(3);
  std::vector<ElementId> perm{1, 2, 3};
  do CHECK(is_partial_linear_extension(a, perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  CHECK_THROWS_AS(is_partial_linear_extension(c, std::vector<ElementId>{1, 1}), DuplicateElementError);
  CHECK_THROWS_AS(is_partial_linear_extension(c, std::vector<ElementId>{3}), RangeError);
}

TEST_CASE("order axioms hold for generated posets") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& p : testing::all_posets(n)) check_axioms(p);
  Xorshift64Star rng(5);
  for (int t = 0; t < 30; ++t) check_axioms(testing::random_poset(2 + rng.below(9), rng, 0.2));
}

TEST_CASE("labelled poset counts") {
  // Number of labelled posets on n points: 1, 3, 19, 219.
  CHECK(testing::all_posets(1).size() == 1);
  CHECK(testing::all_posets(2).size() == 3);
  CHECK(testing::all_posets(3).size() == 19);
  CHECK(testing::all_posets(4).size() == 219);
}

TEST_CASE("topological order and induced suborder") {
  auto p = make_poset(4, rel({{3, 1}, {1, 2}, {4, 2}}));
  auto order = p.topological_order();
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) CHECK_FALSE(p.less(order[j], order[i]));
  std::vector<ElementId> ids{2, 3};
  auto q = p.induced(ids);
  CHECK(q.size() == 2);
  CHECK(q.less(2, 1));
}

TEST_CASE("poset text format") {
  auto p = make_poset(3, rel({{1, 2}, {2, 3}}));
  auto text = format_poset(p);
  CHECK(parse_poset(text) == p);
  CHECK(parse_poset("# comment\nposet 3\n\n< 1 2  # trailing\n< 2 3\n") == p);
  CHECK(parse_poset("poset 2\n").relation_count() == 0);

  auto line_of = [](const std::string& s) {
    try {
      parse_poset(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("posit 3\n") == 1);
  CHECK(line_of("poset 3\n< 1 2\n< 1 x\n") == 3);
  CHECK(line_of("poset 3\n< 1 2 3\n") == 2);
  CHECK(line_of("poset 3\n> 1 2\n") == 2);
  CHECK_THROWS_AS(parse_poset(""), ParseError);
  CHECK_THROWS_AS(parse_poset("poset 2\n< 1 3\n"), ParseError);
  CHECK(line_of("poset 2\n< 1 2\n< 2 1\n") == 3);
}
