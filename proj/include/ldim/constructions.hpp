#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ldim/layers.hpp"
#include "ldim/poset.hpp"
#include "ldim/realiser.hpp"

namespace ldim {

/// Bipartite graph with parts A = {1..a_count}, B = {1..b_count}. Edge i
/// (0-based position in `edges`) is element i+1 of the ground set the
/// layer poset is built on.
struct BipartiteGraph {
  std::size_t a_count = 0;
  std::size_t b_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t max_a_degree() const;
  /// Throws DegreeError if an endpoint is out of range, an edge repeats, or
  /// an A-vertex has more than b_count neighbours.
  void validate() const;
};

/// A layer-poset realiser together with its verification.
struct LayerConstruction {
  LayerPoset host;
  LocalRealiser realiser;
  VerificationReport report;
  LayerMultiplicity layers;
};

/// pi_0, pi_1 and one list per ground element i: top sets missing i, then
/// bottom sets containing i. Top sets have size `top`. Requires lower < top <= n.
LayerConstruction far_layers_realiser(unsigned n, unsigned lower, unsigned top);

/// The graph construction over the edge set of `g`. Requires
/// 1 <= lower < upper <= |E(g)|.
LayerConstruction bipartite_realiser(const BipartiteGraph& g, unsigned lower, unsigned upper);

/// Parts sized from x = log n - log log n - log lower: |A| = ceil(n/x),
/// |B| = ceil(x); edges laid out row-major. ParameterError when x <= 0.
BipartiteGraph default_bipartite_graph(std::size_t n, unsigned lower);

/// `copies` disjoint copies of the m-cube graph, even-weight vertices in A.
BipartiteGraph hypercube_graph_union(unsigned m, unsigned copies);

/// A lexicographic sum with a local realiser built for it.
struct LexConstruction {
  LexSum sum;
  LocalRealiser realiser;
  VerificationReport report;
};

/// Substitution rule with realisers (full linear extensions) for the
/// summands: each element (x, y) ends up with multiplicity
/// max{mu(x), |realisers[x]|}. Throws NotARealiserError if a summand family
/// is not a realiser made of linear extensions.
LexConstruction lex_realiser_subst(const Poset& index, const LocalRealiser& index_realiser,
                                   std::span<const Poset> summands,
                                   std::span<const LocalRealiser> realisers);

/// Additive rule: x is replaced by x * K_x in the index realiser and every
/// summand list M is appended as x * M, giving multiplicity
/// mu(x) + mu_x(y). `extensions[x]` must be a linear extension of summand x.
LexConstruction lex_realiser_add(const Poset& index, const LocalRealiser& index_realiser,
                                 std::span<const Poset> summands,
                                 std::span<const LocalRealiser> local_realisers,
                                 std::span<const List> extensions);

/// An order map between two posets; image[id-1] is the target id.
struct Embedding {
  Poset source;
  Poset target;
  std::vector<ElementId> image;
};

/// Injective and x <= y  <=>  f(x) <= f(y).
bool verify_embedding(const Poset& source, const Poset& target, std::span<const ElementId> image);
inline bool verify_embedding(const Embedding& e) {
  return verify_embedding(e.source, e.target, e.image);
}

/// Q_{n-k+1}^(1,2) into Q_n^(k,k+1) by adding the k-1 elements n-k+2..n.
Embedding shift_embedding_12(unsigned n, unsigned k);

/// Q_n^(l,k) into Q_{n+1}^(l,k+1): lower sets fixed, upper sets gain n+1.
Embedding shift_embedding_up(unsigned n, unsigned lower, unsigned upper);

/// Q_k^(1, floor(sqrt k)) into ([n], |) by S -> product of the i-th primes.
/// RangeError when the largest product exceeds n.
Embedding divisibility_embedding(unsigned k, std::size_t n);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

}  // namespace ldim
