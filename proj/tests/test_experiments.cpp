#include <doctest.h>

#include <cmath>
#include <bit>
#include <map>
#include <set>
#include <vector>

#include "ldim/error.hpp"
#include "ldim/experiments.hpp"

using namespace ldim;

namespace {

// Upper 0.001 quantiles of the chi-square distribution.
constexpr double kChi2Crit5 = 20.515;
constexpr double kChi2Crit15 = 37.697;

double chi_square(const std::map<std::uint64_t, std::size_t>& counts, std::size_t outcomes,
                  std::size_t total) {
  const double expected = static_cast<double>(total) / static_cast<double>(outcomes);
  double stat = 0;
  for (auto [key, c] : counts) stat += (c - expected) * (c - expected) / expected;
  stat += static_cast<double>(outcomes - counts.size()) * expected;
  return stat;
}

double log2_choose(double n, double k) {
  double v = 0;
  for (double i = 1; i <= k; ++i) v += std::log2((n - k + i) / i);
  return v;
}

}  // namespace

TEST_CASE("entropy") {
  std::vector<double> u4(4, 0.25);
  CHECK(entropy(u4) == doctest::Approx(2.0));
  CHECK(entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(entropy(std::vector<double>{0.5, 0.25, 0.25}) == doctest::Approx(1.5));
  for (int k = 0; k <= 20; ++k) {
    std::vector<double> u(std::size_t{1} << k, std::ldexp(1.0, -k));
    CHECK(entropy(u) == doctest::Approx(k).epsilon(1e-12));
  }
  CHECK_THROWS_AS(entropy(std::vector<double>{0.5, 0.4}), NotADistributionError);
  CHECK_THROWS_AS(entropy(std::vector<double>{1.5, -0.5}), NotADistributionError);
  std::vector<double> skew{0.7, 0.1, 0.1, 0.05, 0.05};
  CHECK(entropy(skew) <= std::log2(5.0));
}

TEST_CASE("xorshift64* reference values") {
  // Independent recomputation of the generator from its definition.
  std::uint64_t s = splitmix64(7);
  Xorshift64Star rng(7);
  for (int i = 0; i < 5; ++i) {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    CHECK(rng.next() == s * 0x2545F4914F6CDD1Dull);
  }
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
  CHECK_THROWS_AS(rng.below(0), ParameterError);
}

TEST_CASE("two-layer sampler") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p2 = sample_two_layer(2, seed);
    CHECK(p2.size() == 2);
    CHECK_FALSE(p2.less(2, 1));
    CHECK(sample_two_layer(6, seed) == sample_two_layer(6, seed));
  }
  CHECK(two_layer_entropy(4) == 4.0);
  CHECK(two_layer_entropy(5) == 6.0);
  auto odd = sample_two_layer(5, 3);
  for (auto [a, b] : odd.relations()) {
    CHECK(a <= 2);
    CHECK(b >= 3);
  }
}

TEST_CASE("two-layer sampler is uniform over the 16 outcomes at n=4") {
  std::map<std::uint64_t, std::size_t> counts;
  const std::size_t total = 16000;
  for (std::size_t i = 0; i < total; ++i) {
    auto p = sample_two_layer(4, derive_seed(99, i));
    std::uint64_t key = 0;
    for (ElementId a = 1; a <= 2; ++a)
      for (ElementId b = 3; b <= 4; ++b) key = key * 2 + p.less(a, b);
    ++counts[key];
  }
  CHECK(counts.size() == 16);
  CHECK(chi_square(counts, 16, total) < kChi2Crit15);
}

TEST_CASE("layer model sampler") {
  auto s = sample_layer_model(4, 1, 2, 3, 17);
  CHECK(s.poset.size() == 7);
  CHECK(s.a_count == 4);
  CHECK(s.top_sets.size() == 3);
  for (ElementId b = 5; b <= 7; ++b) {
    CHECK(s.poset.down_count(b) == 2);
    CHECK(std::popcount(s.top_sets[b - 5]) == 2);
  }
  CHECK(layer_model_entropy(4, 2, 3) == doctest::Approx(3 * std::log2(6.0)));
  CHECK_THROWS_AS(sample_layer_model(4, 2, 2, 3, 1), ParameterError);
  CHECK_THROWS_AS(sample_layer_model(4, 1, 2, 0, 1), ParameterError);

  std::map<std::uint64_t, std::size_t> counts;
  const std::size_t total = 6000;
  for (std::size_t i = 0; i < total; ++i) ++counts[sample_layer_model(4, 1, 2, 1, derive_seed(5, i)).top_sets[0]];
  CHECK(counts.size() == 6);
  CHECK(chi_square(counts, 6, total) < kChi2Crit5);
}

TEST_CASE("random subsets are uniform") {
  Xorshift64Star rng(8);
  std::map<std::uint64_t, std::size_t> counts;
  const std::size_t total = 12000;
  for (std::size_t i = 0; i < total; ++i) {
    auto s = random_subset(6, 3, rng);
    CHECK(std::popcount(s) == 3);
    ++counts[s];
  }
  CHECK(counts.size() == 20);
  CHECK(chi_square(counts, 20, total) < 45.315);  // 19 degrees of freedom
  CHECK_THROWS_AS(random_subset(3, 4, rng), ParameterError);
}

TEST_CASE("default_m") {
  CHECK(default_m(4, 1) == 4);
  CHECK(default_m(5, 1) == 6);
  CHECK_THROWS_AS(default_m(2, 1), ParameterError);
}

TEST_CASE("dedup_neighbourhoods") {
  SUBCASE("identical neighbourhoods collapse") {
    std::vector<Relation> rel{{1, 3}, {2, 3}, {1, 4}, {2, 4}};
    Poset p(4, rel);
    std::vector<ElementId> b{3, 4};
    auto d = dedup_neighbourhoods(p, b);
    CHECK(d.kept == std::vector<ElementId>{1, 2, 3});
    CHECK(d.poset.size() == 3);
  }
  SUBCASE("distinct neighbourhoods are kept") {
    std::vector<Relation> rel{{1, 3}, {2, 4}};
    Poset p(4, rel);
    std::vector<ElementId> b{3, 4};
    auto d = dedup_neighbourhoods(p, b);
    CHECK(d.poset == p);
  }
  SUBCASE("sampled model") {
    auto s = sample_layer_model(4, 1, 2, 20, 3);
    std::vector<ElementId> b;
    for (ElementId x = 5; x <= 24; ++x) b.push_back(x);
    auto d = dedup_neighbourhoods(s.poset, b);
    std::set<SubsetMask> distinct(s.top_sets.begin(), s.top_sets.end());
    CHECK(d.poset.size() == 4 + distinct.size());
  }
  SUBCASE("not two-level") {
    Poset chain = Poset::chain(3);
    std::vector<ElementId> b{3};
    CHECK_THROWS_AS(dedup_neighbourhoods(chain, b), NotTwoLevelError);
  }
}

TEST_CASE("bound table examples") {
  CHECK(kostochka_bound(4) == 4);
  CHECK(kostochka_bound(5) == 6);
  CHECK(sperner_twodim(6) == 4);
  CHECK(sperner_twodim(7) == 5);
  CHECK(sperner_twodim(1) == 0);
  auto b = bound_table(6, 1, 5);
  CHECK(b.at("avg_ldim_lower").value == doctest::Approx(6 / (4 * std::log2(18.0))));
  CHECK(b.at("avg_ldim_lower").value == doctest::Approx(0.36).epsilon(0.01));
  CHECK(b.at("far_layers").value == 3.0);
  CHECK(b.at("sperner_twodim").value == 4.0);
  CHECK(bound_table(4, 1, 2).at("kostochka").value == 4.0);
  CHECK_FALSE(bound_table(6, 1, 3).at("kostochka").applicable);
  CHECK(b.at("alpha_leading").asymptotic);
  CHECK(b.at("lewis_souza_upper").asymptotic);
  CHECK(b.at("loglog_leading").asymptotic);
  CHECK_FALSE(b.at("far_layers").asymptotic);
  CHECK_THROWS_AS(b.at("nonsense"), ParameterError);
  CHECK_THROWS_AS(bound_table(1, 0, 1), ParameterError);
}

TEST_CASE("bound formulas against direct evaluation") {
  for (unsigned n : {16u, 64u, 1024u})
    for (unsigned k : {2u, n / 2, n - 1}) {
      auto b = bound_table(n, 1, k);
      const double top = log2_choose(n, k), bottom = std::log2(double(n));
      const double lower = top / bottom - top / (bottom * bottom) * (std::log2(bottom) + std::log2(12.0));
      CHECK(b.at("lower_lk").value == doctest::Approx(lower).epsilon(1e-9));
      const double c_proof = std::log2(6.0) + 1.0 / n;
      const double lower_proof =
          top / bottom - top / (bottom * bottom) * (std::log2(bottom) + c_proof);
      CHECK(b.at("lower_lk_proof").value == doctest::Approx(lower_proof).epsilon(1e-9));
      const double l = std::log2(double(n));
      CHECK(b.at("upper_lk").value ==
            doctest::Approx(n / l + 2 * n * std::log2(l) / (l * l) + 3).epsilon(1e-12));
      const double g = k - 1;
      CHECK(b.at("brightwell").value == doctest::Approx((4 * g * g + 18 * g) * std::ceil(std::log(n))));
      CHECK(b.at("tdim_expected_lower").value == doctest::Approx(n / 4.0 - std::ceil(l) / n));
    }
  CHECK(bound_table(9, 1, 2).at("brightwell_k1").value == 12.0);
  CHECK(bound_table(10, 1, 2).at("brightwell_k1").value == 18.0);
  CHECK(bound_table(16, 1, 9).at("dushnik_dim").value == 12.0);
}

TEST_CASE("bound table lower < upper at large n") {
  for (int e = 10; e <= 20; ++e) {
    const unsigned n = 1u << e;
    auto b = bound_table(n, 1, n / 2);
    CHECK(b.at("lower_lk").value > 0);
    CHECK(b.at("lower_lk").value < b.at("upper_lk").value);
  }
}

TEST_CASE("avg_ldim experiment") {
  ExperimentParams params;
  params.n = 4;
  params.samples = 40;
  params.seed = 2;
  auto rep = run_experiment("avg-ldim", params);
  CHECK_FALSE(rep.exceeded);
  CHECK(rep.metric("samples") == 40);
  CHECK(rep.metric("bound") == doctest::Approx(4 / (4 * std::log2(12.0))));
  CHECK(rep.metric("mean_ldim") >= rep.metric("bound"));
  CHECK(rep.metric("min_ldim") >= 1);
  auto again = run_avg_ldim(params);
  CHECK(again.metric("mean_ldim") == rep.metric("mean_ldim"));
}

TEST_CASE("shannon_length experiment") {
  ExperimentParams params;
  params.n = 4;
  params.samples = 100;
  params.seed = 4;
  auto rep = run_experiment("shannon_length", params);
  CHECK(rep.metric("entropy_bits") == 4.0);
  CHECK(rep.metric("mean_bit_cost") >= 4.0);
  CHECK(rep.metric("length_bound_violations") == 0);
}

TEST_CASE("unimodal experiment") {
  ExperimentParams params;
  params.n = 1024;
  auto rep = run_experiment("unimodal", params);
  CHECK(rep.table.size() == 1022);
  CHECK(rep.metric("upper_lk_at_half") > rep.metric("far_layers_top_gap_1"));
  CHECK_THROWS_AS(run_experiment("nope", params), ParameterError);
  params.n = 2;
  CHECK_THROWS_AS(run_unimodal(params), ParameterError);
}
