#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ldim/poset.hpp"

namespace ldim {

using SubsetMask = std::uint64_t;

/// C(n, k) as an exact 64-bit value; 0 when k > n. Throws RangeError on overflow.
std::uint64_t binomial(unsigned n, unsigned k);

/// All k-subsets of {1..n} as bitmasks (bit i-1 <-> element i), ascending.
std::vector<SubsetMask> layer_masks(unsigned n, unsigned k);

/// Position of `mask` among the popcount(mask)-subsets in ascending order.
std::uint64_t colex_rank(SubsetMask mask);

/// "{1,3,4}"
std::string format_subset(SubsetMask mask);

/// The two-layer suborder of the Boolean lattice on {1..n} formed by the
/// lower-sets and upper-sets of sizes `lower` < `upper`. Element ids
/// 1..C(n,lower) are the lower layer in ascending bitmask order, followed by
/// the upper layer in ascending bitmask order. The relation is computed from
/// the masks, so nothing quadratic is stored.
class LayerPoset {
 public:
  /// Largest ground set for which `to_poset` will materialise a dense matrix.
  static constexpr unsigned kDefaultDenseCap = 14;

  LayerPoset(unsigned n, unsigned lower, unsigned upper);

  unsigned n() const noexcept { return n_; }
  unsigned lower() const noexcept { return lower_; }
  unsigned upper() const noexcept { return upper_; }

  std::size_t size() const noexcept { return masks_.size(); }
  std::size_t lower_count() const noexcept { return lower_count_; }
  std::size_t upper_count() const noexcept { return masks_.size() - lower_count_; }

  SubsetMask mask(ElementId id) const { return masks_[id - 1]; }
  bool in_lower(ElementId id) const { return id <= lower_count_; }

  ElementId lower_id(SubsetMask m) const {
    return static_cast<ElementId>(colex_rank(m) + 1);
  }
  ElementId upper_id(SubsetMask m) const {
    return static_cast<ElementId>(lower_count_ + colex_rank(m) + 1);
  }

  bool less(ElementId a, ElementId b) const {
    return in_lower(a) && !in_lower(b) && (masks_[a - 1] & ~masks_[b - 1]) == 0;
  }

  /// Calls f(id) for every lower-layer subset of an upper-layer element.
  template <class F>
  void for_each_below(ElementId a, F&& f) const {
    if (in_lower(a)) return;
    for_each_subset(masks_[a - 1], lower_, [&](SubsetMask s) { f(lower_id(s)); });
  }

  std::size_t down_count(ElementId a) const {
    return in_lower(a) ? 0 : static_cast<std::size_t>(binomial(upper_, lower_));
  }

  std::size_t relation_count() const {
    return static_cast<std::size_t>(binomial(n_, lower_) * binomial(n_ - lower_, upper_ - lower_));
  }

  std::string label(ElementId a) const { return format_subset(masks_[a - 1]); }

  /// Dense copy; throws ParameterError when n exceeds `cap`.
  Poset to_poset(unsigned cap = kDefaultDenseCap) const;

  /// Calls f(sub) for every size-`size` subset of `mask`, ascending.
  template <class F>
  static void for_each_subset(SubsetMask mask, unsigned size, F&& f);

 private:
  unsigned n_;
  unsigned lower_;
  unsigned upper_;
  std::size_t lower_count_;
  std::vector<SubsetMask> masks_;
};

LayerPoset boolean_layer_poset(unsigned n, unsigned lower, unsigned upper);

template <class F>
void LayerPoset::for_each_subset(SubsetMask mask, unsigned size, F&& f) {
  unsigned bits[64];
  unsigned m = 0;
  for (SubsetMask t = mask; t; t &= t - 1) bits[m++] = static_cast<unsigned>(__builtin_ctzll(t));
  if (size > m) return;
  // Index combinations in colex order so the produced masks ascend.
  unsigned idx[64];
  for (unsigned i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    SubsetMask s = 0;
    for (unsigned i = 0; i < size; ++i) s |= SubsetMask{1} << bits[idx[i]];
    f(s);
    unsigned i = 0;
    while (i < size && (i + 1 == size ? idx[i] + 1 >= m : idx[i] + 1 >= idx[i + 1])) ++i;
    if (i == size) return;
    ++idx[i];
    for (unsigned j = 0; j < i; ++j) idx[j] = j;
  }
}

}  // namespace ldim
