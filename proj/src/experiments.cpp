#include "ldim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ldim/codec.hpp"
#include "ldim/error.hpp"

namespace ldim {

namespace {

double log2_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  const long double v = std::lgammal(static_cast<long double>(n) + 1) -
                        std::lgammal(static_cast<long double>(k) + 1) -
                        std::lgammal(static_cast<long double>(n - k) + 1);
  return static_cast<double>(v / std::log(2.0L));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool unimodal(const std::vector<double>& v) {
  std::size_t i = 1;
  while (i < v.size() && v[i] >= v[i - 1]) ++i;
  while (i < v.size() && v[i] <= v[i - 1]) ++i;
  return i >= v.size();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x5851F42D4C957F2Dull));
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("below(0)");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double entropy(std::span<const double> p) {
  double sum = 0, h = 0;
  for (double v : p) {
    if (!(v >= 0)) throw NotADistributionError("negative or NaN probability");
    sum += v;
    if (v > 0) h -= v * std::log2(v);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw NotADistributionError("probabilities sum to " + fmt(sum));
  return h;
}

Poset sample_two_layer(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("n must be positive");
  Xorshift64Star rng(seed);
  const auto bottoms = static_cast<ElementId>(n / 2);
  std::vector<Relation> rel;
  for (ElementId a = 1; a <= bottoms; ++a)
    for (ElementId b = bottoms + 1; b <= n; ++b)
      if (rng.coin()) rel.emplace_back(a, b);
  return Poset(n, rel);
}

double two_layer_entropy(std::size_t n) {
  return static_cast<double>((n / 2) * (n - n / 2));
}

SubsetMask random_subset(unsigned n, unsigned k, Xorshift64Star& rng) {
  if (k > n || n > 63) throw ParameterError("random subset needs k <= n <= 63");
  std::vector<unsigned> items(n);
  std::iota(items.begin(), items.end(), 0u);
  SubsetMask s = 0;
  for (unsigned i = 0; i < k; ++i) {
    const auto j = i + static_cast<unsigned>(rng.below(n - i));
    std::swap(items[i], items[j]);
    s |= SubsetMask{1} << items[i];
  }
  return s;
}

LayerModelSample sample_layer_model(unsigned n, unsigned lower, unsigned upper, std::size_t m,
                                    std::uint64_t seed) {
  if (lower >= upper || upper > n || m < 1)
    throw ParameterError("layer model needs lower < upper <= n and m >= 1");
  const auto a_masks = layer_masks(n, lower);
  const std::size_t a = a_masks.size();
  Xorshift64Star rng(seed);
  LayerModelSample out{Poset::antichain(1), a, {}};
  std::vector<Relation> rel;
  for (std::size_t b = 0; b < m; ++b) {
    const SubsetMask x = random_subset(n, upper, rng);
    out.top_sets.push_back(x);
    for (std::size_t i = 0; i < a; ++i)
      if ((a_masks[i] & ~x) == 0)
        rel.emplace_back(static_cast<ElementId>(i + 1), static_cast<ElementId>(a + b + 1));
  }
  out.poset = Poset(a + m, rel);
  return out;
}

double layer_model_entropy(unsigned n, unsigned upper, std::size_t m) {
  return static_cast<double>(m) * log2_binomial(n, upper);
}

std::size_t default_m(unsigned n, unsigned lower) {
  const double c = static_cast<double>(binomial(n, lower));
  const double m = std::floor(c * (std::log2(c) - 1.0));
  if (!(m >= 1)) throw ParameterError("C(n, lower) too small for a positive m");
  return static_cast<std::size_t>(m);
}

DedupResult dedup_neighbourhoods(const Poset& p, std::span<const ElementId> b_side) {
  Bitset in_b(p.size());
  for (ElementId b : b_side) {
    if (b < 1 || b > p.size()) throw RangeError("B-side id out of range");
    in_b.set(b - 1);
  }
  for (auto [a, b] : p.relations())
    if (in_b.test(a - 1) || !in_b.test(b - 1))
      throw NotTwoLevelError("relation " + std::to_string(a) + " < " + std::to_string(b) +
                             " does not go from A up to B");
  std::map<Bitset, ElementId> first_with;
  DedupResult out{Poset::antichain(1), {}};
  for (ElementId x = 1; x <= p.size(); ++x) {
    if (in_b.test(x - 1) && !first_with.emplace(p.down_set(x), x).second) continue;
    out.kept.push_back(x);
  }
  out.poset = p.induced(out.kept);
  return out;
}

double layer_lower_bound(unsigned n, unsigned lower, unsigned upper, double c) {
  const double top = log2_binomial(n, upper);
  const double bottom = log2_binomial(n, lower);
  return top / bottom - top / (bottom * bottom) * (std::log2(bottom) + c);
}

double layer_upper_bound(double n, double lower) {
  const double l = std::log2(n);
  return n / l + 2 * n / (l * l) * (std::log2(l) + std::log2(lower)) + 3;
}

unsigned sperner_twodim(std::size_t n) {
  unsigned m = 0;
  while (binomial(m, m / 2) < n) ++m;
  return m;
}

unsigned kostochka_bound(std::size_t n) {
  unsigned k = 0;
  double f = 1;  // k!
  while (2 * f < static_cast<double>(n)) f *= ++k;
  return 2 * k;
}

const BoundEntry& BoundReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw ParameterError("no bound named " + name);
}

BoundReport bound_table(unsigned n, unsigned lower, unsigned upper) {
  if (n < 2) throw ParameterError("bound table needs n >= 2");
  BoundReport r{n, lower, upper, {}};
  const double nd = n;
  const double logn = std::log2(nd);
  const bool layered = lower < upper && upper <= n;
  const unsigned gap = layered ? upper - lower : 0;
  auto add = [&](std::string name, double v, bool ok, bool asym = false) {
    r.entries.push_back({std::move(name), ok ? v : NAN, ok, asym});
  };

  const double c_bottom = layered ? log2_binomial(n, lower) : 0;
  const bool lower_ok = layered && upper < n && c_bottom > 0;
  add("lower_lk", lower_ok ? layer_lower_bound(n, lower, upper, std::log2(12.0)) : 0, lower_ok);
  add("lower_lk_proof",
      lower_ok ? layer_lower_bound(n, lower, upper,
                                   std::log2(6.0) + std::exp2(-c_bottom))
               : 0,
      lower_ok);
  const bool upper_ok = layered && lower >= 1 && lower < nd / logn;
  add("upper_lk", upper_ok ? layer_upper_bound(nd, lower) : 0, upper_ok);
  add("far_layers", 2.0 + std::max<double>(lower, n - upper), layered);
  add("brightwell", (4.0 * gap * gap + 18.0 * gap) * std::ceil(std::log(nd)), layered);
  add("brightwell_k1", 6.0 * std::ceil(std::log(nd) / std::log(3.0) - 1e-12), layered && gap == 1);
  add("kostochka", kostochka_bound(n), layered && gap == 1);
  add("dushnik_dim", nd - std::sqrt(nd), layered && lower == 1 && upper >= 2 * std::sqrt(nd));
  add("sperner_twodim", sperner_twodim(n), true);
  add("avg_ldim_lower", nd / (4.0 * std::log2(3.0 * nd)), true);
  add("tdim_expected_lower", nd / 4.0 - std::ceil(logn - 1e-12) / nd, true);
  const bool alpha_ok = layered && lower == 1 && upper >= 1;
  const double alpha = alpha_ok ? std::log(static_cast<double>(upper)) / std::log(nd) : 0;
  add("alpha_leading", (1 - alpha) * std::pow(nd, alpha), alpha_ok, true);
  add("lewis_souza_upper", 4 * std::log(2.0) * logn * logn / std::log2(logn), n >= 3, true);
  add("loglog_leading", std::log2(logn), n >= 3, true);
  return r;
}

double ExperimentReport::metric(const std::string& name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m.value;
  throw ParameterError("no metric named " + name);
}

ExperimentReport run_avg_ldim(const ExperimentParams& params) {
  ExperimentReport rep;
  rep.kind = "avg_ldim";
  double sum = 0;
  int lo = 1 << 30, hi = 0;
  std::size_t done = 0;
  std::map<int, std::size_t> histogram;
  for (std::size_t i = 0; i < params.samples; ++i) {
    const auto p = sample_two_layer(params.n, derive_seed(params.seed, i));
    const auto res = exact_ldim(p, params.budget);
    if (res.exceeded) {
      rep.exceeded = true;
      break;
    }
    sum += res.value;
    lo = std::min(lo, res.value);
    hi = std::max(hi, res.value);
    ++histogram[res.value];
    ++done;
  }
  const double nd = static_cast<double>(params.n);
  const double bound = nd / (4.0 * std::log2(3.0 * nd));
  const double mean = done ? sum / static_cast<double>(done) : NAN;
  rep.metrics = {{"n", nd},
                 {"samples", static_cast<double>(done)},
                 {"mean_ldim", mean},
                 {"min_ldim", done ? static_cast<double>(lo) : NAN},
                 {"max_ldim", done ? static_cast<double>(hi) : NAN},
                 {"bound", bound},
                 {"mean_minus_bound", mean - bound}};
  rep.columns = {"ldim", "count"};
  for (auto [v, c] : histogram) rep.table.push_back({std::to_string(v), std::to_string(c)});
  return rep;
}

ExperimentReport run_shannon_length(const ExperimentParams& params) {
  ExperimentReport rep;
  rep.kind = "shannon_length";
  double bits = 0, symbols = 0;
  std::size_t done = 0, over_length = 0;
  for (std::size_t i = 0; i < params.samples; ++i) {
    const auto p = sample_two_layer(params.n, derive_seed(params.seed, i));
    const auto res = exact_ldim(p, params.budget);
    if (res.exceeded) {
      rep.exceeded = true;
      break;
    }
    const auto r = drop_trivial_lists(res.witness);
    std::size_t len = 0;
    if (!r.lists.empty()) len = crespelle_encode(r).symbols.size();
    if (len > static_cast<std::size_t>(res.value) * params.n) ++over_length;
    symbols += static_cast<double>(len);
    bits += codeword_bit_cost(len, params.n);
    ++done;
  }
  const double h = two_layer_entropy(params.n);
  const double mean_bits = done ? bits / static_cast<double>(done) : NAN;
  rep.metrics = {{"n", static_cast<double>(params.n)},
                 {"samples", static_cast<double>(done)},
                 {"entropy_bits", h},
                 {"mean_symbols", done ? symbols / static_cast<double>(done) : NAN},
                 {"mean_bit_cost", mean_bits},
                 {"bits_per_entropy", mean_bits / h},
                 {"length_bound_violations", static_cast<double>(over_length)}};
  return rep;
}

ExperimentReport run_unimodal(const ExperimentParams& params) {
  ExperimentReport rep;
  rep.kind = "unimodal";
  const auto n = static_cast<unsigned>(params.n);
  if (n < 3) throw ParameterError("unimodal scan needs n >= 3");
  rep.columns = {"k", "lower_lk", "upper_lk", "far_layers", "best_upper"};
  std::vector<double> lows, ups;
  std::size_t peak = 0;
  for (unsigned k = 2; k < n; ++k) {
    const auto b = bound_table(n, 1, k);
    const double lo = b.at("lower_lk").value;
    double best = b.at("far_layers").value;
    for (const char* name : {"upper_lk", "brightwell", "brightwell_k1", "kostochka"}) {
      const auto& e = b.at(name);
      if (e.applicable) best = std::min(best, e.value);
    }
    lows.push_back(lo);
    ups.push_back(best);
    if (lo > lows[peak]) peak = lows.size() - 1;
    rep.table.push_back({std::to_string(k), fmt(lo), fmt(b.at("upper_lk").value),
                         fmt(b.at("far_layers").value), fmt(best)});
  }
  const auto half = bound_table(n, 1, n / 2);
  rep.metrics = {{"n", static_cast<double>(n)},
                 {"lower_unimodal", unimodal(lows) ? 1.0 : 0.0},
                 {"upper_unimodal", unimodal(ups) ? 1.0 : 0.0},
                 {"lower_peak_k", static_cast<double>(peak + 2)},
                 {"upper_lk_at_half", half.at("upper_lk").value},
                 {"far_layers_top_gap_1", 3.0}};
  return rep;
}

ExperimentReport run_experiment(const std::string& kind, const ExperimentParams& params) {
  std::string k = kind;
  std::replace(k.begin(), k.end(), '-', '_');
  if (k == "avg_ldim") return run_avg_ldim(params);
  if (k == "shannon_length") return run_shannon_length(params);
  if (k == "unimodal") return run_unimodal(params);
  throw ParameterError("unknown experiment " + kind);
}

}  // namespace ldim
