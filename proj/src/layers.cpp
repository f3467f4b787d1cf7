#include "ldim/layers.hpp"

#include <bit>

#include "ldim/error.hpp"

namespace ldim {

namespace {
// Keeps layer posets well inside memory for the dense coverage tables.
constexpr std::uint64_t kMaxLayerElements = std::uint64_t{1} << 24;
}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~std::uint64_t{0}) throw RangeError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<SubsetMask> layer_masks(unsigned n, unsigned k) {
  if (n > 63) throw RangeError("layer masks support n <= 63");
  std::vector<SubsetMask> out;
  if (k > n) return out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack walks same-popcount masks in ascending order.
  const SubsetMask limit = SubsetMask{1} << n;
  for (SubsetMask s = (SubsetMask{1} << k) - 1; s < limit;) {
    out.push_back(s);
    const SubsetMask c = s & (~s + 1);
    const SubsetMask r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

std::uint64_t colex_rank(SubsetMask mask) {
  std::uint64_t rank = 0;
  unsigned i = 1;
  for (SubsetMask t = mask; t; t &= t - 1, ++i)
    rank += binomial(static_cast<unsigned>(std::countr_zero(t)), i);
  return rank;
}

std::string format_subset(SubsetMask mask) {
  std::string s = "{";
  bool first = true;
  for (SubsetMask t = mask; t; t &= t - 1) {
    if (!first) s += ',';
    s += std::to_string(std::countr_zero(t) + 1);
    first = false;
  }
  return s + "}";
}

LayerPoset::LayerPoset(unsigned n, unsigned lower, unsigned upper)
    : n_(n), lower_(lower), upper_(upper) {
  if (lower >= upper) throw ParameterError("layer poset needs lower < upper");
  if (upper > n) throw ParameterError("layer poset needs upper <= n");
  if (n > 63) throw ParameterError("layer poset needs n <= 63");
  if (binomial(n, lower) + binomial(n, upper) > kMaxLayerElements)
    throw ParameterError("layer poset too large");
  masks_ = layer_masks(n, lower);
  lower_count_ = masks_.size();
  auto up = layer_masks(n, upper);
  masks_.insert(masks_.end(), up.begin(), up.end());
}

Poset LayerPoset::to_poset(unsigned cap) const {
  if (n_ > cap)
    throw ParameterError("refusing to materialise layer poset with n=" + std::to_string(n_) +
                         " above cap " + std::to_string(cap));
  std::vector<Relation> rel;
  for (ElementId b = static_cast<ElementId>(lower_count_ + 1); b <= size(); ++b)
    for_each_below(b, [&](ElementId a) { rel.emplace_back(a, b); });
  Poset p(size(), rel);
  std::vector<std::string> labels;
  for (ElementId a = 1; a <= size(); ++a) labels.push_back(label(a));
  p.set_labels(std::move(labels));
  return p;
}

LayerPoset boolean_layer_poset(unsigned n, unsigned lower, unsigned upper) {
  return LayerPoset(n, lower, upper);
}

}  // namespace ldim
