#include "ldim/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "ldim/error.hpp"

namespace ldim {

namespace {

void append_range(List& out, ElementId first, ElementId last) {
  for (ElementId a = first; a <= last; ++a) out.push_back(a);
}

void append_reversed(List& out, ElementId first, ElementId last) {
  for (ElementId a = last; a >= first; --a) out.push_back(a);
}

// pi_0 and pi_1: both layers ascending, then both layers reversed. Lower
// layer first in both.
void add_global_lists(const LayerPoset& host, LocalRealiser& r) {
  const auto lo_end = static_cast<ElementId>(host.lower_count());
  const auto end = static_cast<ElementId>(host.size());
  List pi0, pi1;
  append_range(pi0, 1, end);
  append_reversed(pi1, 1, lo_end);
  append_reversed(pi1, lo_end + 1, end);
  r.lists.push_back(std::move(pi0));
  r.lists.push_back(std::move(pi1));
}

LayerConstruction finish(LayerPoset host, LocalRealiser r) {
  r = drop_trivial_lists(std::move(r));
  auto report = verify_local_realiser(host, r);
  if (!report.valid) throw std::logic_error("construction produced an invalid local realiser");
  auto layers = layer_multiplicity(host, report);
  return {std::move(host), std::move(r), std::move(report), layers};
}

void check_full_extension(const Poset& q, const List& list, std::size_t x) {
  if (list.size() != q.size() || !is_partial_linear_extension(q, list))
    throw NotARealiserError("summand " + std::to_string(x + 1) +
                            ": list is not a linear extension");
}

List block(const LexSum& sum, ElementId x, const List& inner) {
  List out;
  out.reserve(inner.size());
  for (ElementId y : inner) out.push_back(sum.id(x, y));
  return out;
}

void check_index_realiser(const Poset& index, const LocalRealiser& r) {
  if (!verify_local_realiser(index, r).valid)
    throw NotARealiserError("index family is not a local realiser");
}

LexConstruction finish_lex(LexSum sum, LocalRealiser r) {
  auto report = verify_local_realiser(sum.poset, r);
  if (!report.valid) throw std::logic_error("lexicographic composition is not a local realiser");
  return {std::move(sum), std::move(r), std::move(report)};
}

}  // namespace

std::size_t BipartiteGraph::max_a_degree() const {
  std::vector<std::size_t> deg(a_count + 1, 0);
  for (auto [a, b] : edges)
    if (a >= 1 && a <= a_count) ++deg[a];
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void BipartiteGraph::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto e : edges) {
    if (e.first < 1 || e.first > a_count || e.second < 1 || e.second > b_count)
      throw DegreeError("edge endpoint out of range");
    if (!seen.insert(e).second) throw DegreeError("duplicate edge");
  }
  if (max_a_degree() > b_count) throw DegreeError("A-vertex degree exceeds |B|");
}

LayerConstruction far_layers_realiser(unsigned n, unsigned lower, unsigned top) {
  if (lower >= top) throw ParameterError("far layers need lower < top");
  if (top > n) throw ParameterError("far layers need top <= n");
  LayerPoset host(n, lower, top);
  LocalRealiser r{host.size(), {}};
  add_global_lists(host, r);
  for (unsigned i = 0; i < n; ++i) {
    const SubsetMask bit = SubsetMask{1} << i;
    List l;
    for (ElementId a = static_cast<ElementId>(host.lower_count() + 1); a <= host.size(); ++a)
      if (!(host.mask(a) & bit)) l.push_back(a);
    for (ElementId a = 1; a <= host.lower_count(); ++a)
      if (host.mask(a) & bit) l.push_back(a);
    r.lists.push_back(std::move(l));
  }
  return finish(std::move(host), std::move(r));
}

LayerConstruction bipartite_realiser(const BipartiteGraph& g, unsigned lower, unsigned upper) {
  g.validate();
  const auto n = static_cast<unsigned>(g.edge_count());
  if (lower < 1 || lower >= upper || upper > n)
    throw ParameterError("bipartite realiser needs 1 <= lower < upper <= |E|");
  LayerPoset host(n, lower, upper);
  LocalRealiser r{host.size(), {}};
  add_global_lists(host, r);

  const auto lo_end = static_cast<ElementId>(host.lower_count());
  const auto end = static_cast<ElementId>(host.size());
  for (std::size_t v = 1; v <= g.a_count; ++v) {
    SubsetMask star = 0;  // edges at v
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].first == v) star |= SubsetMask{1} << e;

    // Upper sets grouped by which of v's edges they use.
    std::unordered_map<SubsetMask, List> by_trace;
    for (ElementId a = lo_end + 1; a <= end; ++a) by_trace[host.mask(a) & star].push_back(a);

    // Submasks of `star` in ascending order; each one is an X of Gamma(v).
    for (SubsetMask x = 0;; x = (x - star) & star) {
      List l;
      if (auto it = by_trace.find(x); it != by_trace.end()) l = it->second;
      const SubsetMask missing = star & ~x;
      for (ElementId a = 1; a <= lo_end; ++a)
        if (host.mask(a) & missing) l.push_back(a);
      r.lists.push_back(std::move(l));
      if (x == star) break;
    }
  }
  return finish(std::move(host), std::move(r));
}

BipartiteGraph default_bipartite_graph(std::size_t n, unsigned lower) {
  if (n < 2 || lower < 1) throw ParameterError("default graph needs n >= 2 and lower >= 1");
  const double logn = std::log2(static_cast<double>(n));
  const double x = logn - std::log2(logn) - std::log2(static_cast<double>(lower));
  if (!(x > 1e-12)) throw ParameterError("log n - log log n - log lower must be positive");
  // Formula values that are integers up to rounding must not round up.
  constexpr double eps = 1e-9;
  BipartiteGraph g;
  g.b_count = static_cast<std::size_t>(std::ceil(x - eps));
  g.a_count = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / x - eps));
  if (g.a_count * g.b_count < n) throw ParameterError("graph parts too small for n edges");
  for (std::size_t a = 1; a <= g.a_count && g.edges.size() < n; ++a)
    for (std::size_t b = 1; b <= g.b_count && g.edges.size() < n; ++b) g.edges.emplace_back(a, b);
  return g;
}

BipartiteGraph hypercube_graph_union(unsigned m, unsigned copies) {
  if (m < 1 || copies < 1) throw ParameterError("hypercube union needs m >= 1 and copies >= 1");
  if (m > 20) throw ParameterError("hypercube dimension above 20 would overflow");
  const std::size_t verts = std::size_t{1} << m;
  const std::size_t half = verts / 2;
  // Rank of a vertex within its parity class.
  std::vector<std::size_t> rank(verts);
  std::size_t even = 0, odd = 0;
  for (std::size_t v = 0; v < verts; ++v)
    rank[v] = (std::popcount(v) % 2 == 0) ? ++even : ++odd;

  BipartiteGraph g;
  g.a_count = half * copies;
  g.b_count = half * copies;
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t v = 0; v < verts; ++v) {
      if (std::popcount(v) % 2) continue;
      for (unsigned j = 0; j < m; ++j)
        g.edges.emplace_back(c * half + rank[v], c * half + rank[v ^ (std::size_t{1} << j)]);
    }
  return g;
}

LexConstruction lex_realiser_subst(const Poset& index, const LocalRealiser& index_realiser,
                                   std::span<const Poset> summands,
                                   std::span<const LocalRealiser> realisers) {
  if (realisers.size() != index.size())
    throw ParameterError("need one summand realiser per index element");
  for (std::size_t x = 0; x < realisers.size(); ++x) {
    if (realisers[x].lists.empty() || realisers[x].n != summands[x].size())
      throw NotARealiserError("summand " + std::to_string(x + 1) + ": not a realiser");
    for (const auto& l : realisers[x].lists) check_full_extension(summands[x], l, x);
    if (!verify_local_realiser(summands[x], realisers[x]).valid)
      throw NotARealiserError("summand " + std::to_string(x + 1) + ": lists do not realise it");
  }
  check_index_realiser(index, index_realiser);
  auto sum = lex_sum(index, summands);
  const auto mu = multiplicities(index_realiser);

  // Occurrence j of x gets M_x[j mod |M_x|]; when |M_x| > mu(x) the
  // occurrences take distinct lists and the unused ones are appended.
  std::vector<std::size_t> used(index.size(), 0);
  LocalRealiser out{sum.poset.size(), {}};
  for (const auto& list : index_realiser.lists) {
    List l;
    for (ElementId x : list) {
      const auto& family = realisers[x - 1].lists;
      const auto& inner = family[used[x - 1]++ % family.size()];
      auto b = block(sum, x, inner);
      l.insert(l.end(), b.begin(), b.end());
    }
    out.lists.push_back(std::move(l));
  }
  for (ElementId x = 1; x <= index.size(); ++x) {
    const auto& family = realisers[x - 1].lists;
    for (std::size_t j = mu[x - 1]; j < family.size(); ++j)
      out.lists.push_back(block(sum, x, family[j]));
  }
  return finish_lex(std::move(sum), std::move(out));
}

LexConstruction lex_realiser_add(const Poset& index, const LocalRealiser& index_realiser,
                                 std::span<const Poset> summands,
                                 std::span<const LocalRealiser> local_realisers,
                                 std::span<const List> extensions) {
  if (local_realisers.size() != index.size() || extensions.size() != index.size())
    throw ParameterError("need one summand realiser and extension per index element");
  for (std::size_t x = 0; x < index.size(); ++x) {
    check_full_extension(summands[x], extensions[x], x);
    if (local_realisers[x].n != summands[x].size() ||
        !verify_local_realiser(summands[x], local_realisers[x]).valid)
      throw NotARealiserError("summand " + std::to_string(x + 1) + ": not a local realiser");
  }
  check_index_realiser(index, index_realiser);
  auto sum = lex_sum(index, summands);

  LocalRealiser out{sum.poset.size(), {}};
  for (const auto& list : index_realiser.lists) {
    List l;
    for (ElementId x : list) {
      auto b = block(sum, x, extensions[x - 1]);
      l.insert(l.end(), b.begin(), b.end());
    }
    out.lists.push_back(std::move(l));
  }
  for (ElementId x = 1; x <= index.size(); ++x)
    for (const auto& inner : local_realisers[x - 1].lists) out.lists.push_back(block(sum, x, inner));
  return finish_lex(std::move(sum), std::move(out));
}

bool verify_embedding(const Poset& source, const Poset& target, std::span<const ElementId> image) {
  if (image.size() != source.size()) return false;
  Bitset hit(target.size());
  for (ElementId f : image) {
    if (f < 1 || f > target.size() || hit.test(f - 1)) return false;
    hit.set(f - 1);
  }
  for (ElementId x = 1; x <= source.size(); ++x)
    for (ElementId y = 1; y <= source.size(); ++y)
      if (x != y && source.less(x, y) != target.less(image[x - 1], image[y - 1])) return false;
  return true;
}

Embedding shift_embedding_12(unsigned n, unsigned k) {
  if (k < 1 || n + 1 < k + 2) throw ParameterError("shift embedding needs k >= 1 and n-k+1 >= 2");
  const unsigned m = n - k + 1;
  LayerPoset src(m, 1, 2);
  LayerPoset dst(n, k, k + 1);
  SubsetMask fresh = 0;
  for (unsigned i = m; i < n; ++i) fresh |= SubsetMask{1} << i;
  std::vector<ElementId> image;
  for (ElementId a = 1; a <= src.size(); ++a) {
    const SubsetMask s = src.mask(a) | fresh;
    image.push_back(src.in_lower(a) ? dst.lower_id(s) : dst.upper_id(s));
  }
  return {src.to_poset(), dst.to_poset(), std::move(image)};
}

Embedding shift_embedding_up(unsigned n, unsigned lower, unsigned upper) {
  if (lower < 1 || lower >= upper || upper > n)
    throw ParameterError("upward shift needs 1 <= lower < upper <= n");
  LayerPoset src(n, lower, upper);
  LayerPoset dst(n + 1, lower, upper + 1);
  const SubsetMask top = SubsetMask{1} << n;
  std::vector<ElementId> image;
  for (ElementId a = 1; a <= src.size(); ++a)
    image.push_back(src.in_lower(a) ? dst.lower_id(src.mask(a)) : dst.upper_id(src.mask(a) | top));
  return {src.to_poset(), dst.to_poset(), std::move(image)};
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

Embedding divisibility_embedding(unsigned k, std::size_t n) {
  const auto r = static_cast<unsigned>(std::sqrt(static_cast<double>(k)));
  if (r < 2) throw ParameterError("need floor(sqrt k) >= 2 for two distinct layers");
  const auto primes = first_primes(k);
  unsigned __int128 largest = 1;
  for (unsigned i = 0; i < r; ++i) largest *= primes[k - 1 - i];
  if (largest > n)
    throw RangeError("product of the " + std::to_string(r) + " largest of the first " +
                     std::to_string(k) + " primes exceeds " + std::to_string(n));
  LayerPoset src(k, 1, r);
  std::vector<ElementId> image;
  for (ElementId a = 1; a <= src.size(); ++a) {
    std::uint64_t prod = 1;
    for (SubsetMask t = src.mask(a); t; t &= t - 1) prod *= primes[std::countr_zero(t)];
    image.push_back(static_cast<ElementId>(prod));
  }
  return {src.to_poset(63), divisibility_poset(n), std::move(image)};
}

}  // namespace ldim
