#pragma once

// Generators and brute-force oracles shared by the test binaries. The
// oracles here deliberately avoid the library's search code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "ldim/experiments.hpp"
#include "ldim/poset.hpp"
#include "ldim/realiser.hpp"

namespace ldim::testing {

/// Every strict partial order on 1..n (labelled), by filtering all relation
/// subsets for transitivity. Fine for n <= 4 (4096 candidates).
inline std::vector<Poset> all_posets(std::size_t n) {
  std::vector<Relation> slots;
  for (ElementId a = 1; a <= n; ++a)
    for (ElementId b = 1; b <= n; ++b)
      if (a != b) slots.emplace_back(a, b);
  std::vector<Poset> out;
  for (std::uint32_t m = 0; m < (1u << slots.size()); ++m) {
    auto has = [&](ElementId a, ElementId b) {
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i] == Relation{a, b}) return ((m >> i) & 1u) != 0;
      return false;
    };
    bool ok = true;
    for (ElementId a = 1; a <= n && ok; ++a)
      for (ElementId b = 1; b <= n && ok; ++b) {
        if (a == b) continue;
        if (has(a, b) && has(b, a)) ok = false;
        for (ElementId c = 1; c <= n && ok; ++c)
          if (c != a && c != b && has(a, b) && has(b, c) && !has(a, c)) ok = false;
      }
    if (!ok) continue;
    std::vector<Relation> rel;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((m >> i) & 1u) rel.push_back(slots[i]);
    out.emplace_back(n, rel);
  }
  return out;
}

/// Random order: relate i < j (in a random labelling) with probability ~density.
inline Poset random_poset(std::size_t n, Xorshift64Star& rng, double density = 0.35) {
  std::vector<ElementId> label(n);
  std::iota(label.begin(), label.end(), ElementId{1});
  for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
  const auto threshold = static_cast<std::uint64_t>(density * 1024);
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.below(1024) < threshold) rel.emplace_back(label[i], label[j]);
  return Poset(n, rel);
}

/// Uniformly random minimal element order restricted to `subset`, with the
/// extra constraint first-before-second when both are given.
inline List random_extension(const Poset& p, std::vector<ElementId> subset, Xorshift64Star& rng,
                             ElementId first = 0, ElementId second = 0) {
  List out;
  while (!subset.empty()) {
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      bool ok = true;
      for (ElementId w : subset)
        if (p.less(w, subset[i]) || (subset[i] == second && w == first)) ok = false;
      if (ok) minimal.push_back(i);
    }
    const auto pick = minimal[rng.below(minimal.size())];
    out.push_back(subset[pick]);
    subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

/// A valid local realiser built from random lists of length >= 2.
inline LocalRealiser random_realiser(const Poset& p, Xorshift64Star& rng) {
  LocalRealiser r{p.size(), {}};
  const auto req = requirements(p);
  std::vector<Bitset> after(p.size(), Bitset(p.size()));
  for (auto [x, y] : req) {
    if (after[x - 1].test(y - 1)) continue;
    std::vector<ElementId> subset{x, y};
    for (ElementId z = 1; z <= p.size(); ++z)
      if (z != x && z != y && rng.coin()) subset.push_back(z);
    auto list = random_extension(p, subset, rng, x, y);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) after[list[i] - 1].set(list[j] - 1);
    r.lists.push_back(std::move(list));
  }
  for (std::size_t i = r.lists.size(); i > 1; --i) std::swap(r.lists[i - 1], r.lists[rng.below(i)]);
  return r;
}

/// Covers-check written from the definition: for every (x, y) with x not >= y,
/// some list has x strictly before y.
inline bool covers_by_definition(const Poset& p, const std::vector<List>& lists) {
  for (ElementId x = 1; x <= p.size(); ++x)
    for (ElementId y = 1; y <= p.size(); ++y) {
      if (x == y || p.less(y, x)) continue;
      bool found = false;
      for (const auto& l : lists) {
        auto ix = std::find(l.begin(), l.end(), x);
        if (ix != l.end() && std::find(ix, l.end(), y) != l.end()) found = true;
      }
      if (!found) return false;
    }
  return true;
}

/// All partial linear extensions with at least two elements.
inline std::vector<List> all_partial_extensions(const Poset& p) {
  std::vector<List> out;
  const auto n = p.size();
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) < 2) continue;
    List items;
    for (ElementId z = 1; z <= n; ++z)
      if ((s >> (z - 1)) & 1u) items.push_back(z);
    std::sort(items.begin(), items.end());
    do {
      if (is_partial_linear_extension(p, items)) out.push_back(items);
    } while (std::next_permutation(items.begin(), items.end()));
  }
  return out;
}

/// Smallest d such that some set of partial extensions with every
/// multiplicity <= d covers all requirements. Exhaustive over subsets of
/// distinct lists; only for n <= 4.
inline int brute_ldim(const Poset& p) {
  if (p.is_chain()) return 1;
  const auto lists = all_partial_extensions(p);
  const auto n = p.size();
  for (int d = 1;; ++d) {
    const std::size_t max_lists = d * n / 2;
    std::vector<List> chosen;
    std::vector<int> mult(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
      if (covers_by_definition(p, chosen)) return true;
      if (chosen.size() == max_lists) return false;
      for (std::size_t i = start; i < lists.size(); ++i) {
        bool fits = true;
        for (ElementId z : lists[i]) fits = fits && mult[z - 1] < d;
        if (!fits) continue;
        for (ElementId z : lists[i]) ++mult[z - 1];
        chosen.push_back(lists[i]);
        if (rec(i + 1)) return true;
        chosen.pop_back();
        for (ElementId z : lists[i]) --mult[z - 1];
      }
      return false;
    };
    if (rec(0)) return d;
  }
}

/// Smallest number of linear extensions (by next_permutation) realising p.
inline int brute_dim(const Poset& p) {
  std::vector<List> ext;
  List perm(p.size());
  std::iota(perm.begin(), perm.end(), ElementId{1});
  do {
    if (is_partial_linear_extension(p, perm)) ext.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (std::size_t t = 1;; ++t) {
    std::vector<List> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
      if (chosen.size() == t) return covers_by_definition(p, chosen);
      for (std::size_t i = start; i < ext.size(); ++i) {
        chosen.push_back(ext[i]);
        if (rec(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (t >= ext.size() || rec(0)) return static_cast<int>(std::min(t, ext.size()));
  }
}

/// Smallest d with an injective x <= y <=> f(x) subset f(y) map into 2^[d],
/// trying all maps. Only for n <= 4.
inline int brute_twodim(const Poset& p) {
  const auto n = p.size();
  for (int d = 0;; ++d) {
    const std::uint32_t cube = 1u << d;
    std::vector<std::uint32_t> f(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (i == n) {
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            if (f[a] == f[b]) return false;
            const bool sub = (f[a] & ~f[b]) == 0;
            if (sub != p.less(static_cast<ElementId>(a + 1), static_cast<ElementId>(b + 1))) return false;
          }
        return true;
      }
      for (std::uint32_t s = 0; s < cube; ++s) {
        f[i] = s;
        if (rec(i + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return d;
  }
}

}  // namespace ldim::testing
