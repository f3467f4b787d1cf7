#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ldim/poset.hpp"
#include "ldim/realiser.hpp"

namespace ldim {

/// Limits for the exhaustive searches. A search that hits a limit reports
/// `exceeded` together with the lower bound proven so far; it never returns
/// a wrong value.
struct SearchBudget {
  int d_max = 32;
  std::uint64_t node_limit = 200'000'000;
  double time_limit = 600.0;  // seconds
};

struct ExactResult {
  bool exceeded = false;
  /// The exact value; meaningful only when !exceeded.
  int value = 0;
  /// Largest d proven infeasible plus one (equals `value` when solved).
  int lower_bound = 0;
  std::uint64_t nodes = 0;
  /// ldim: an optimal local realiser. dim: an optimal realiser.
  LocalRealiser witness;
  /// twodim: images of elements 1..n in the value-cube (bit j <-> coordinate j+1).
  std::vector<std::uint64_t> images;
};

/// Largest poset the local-dimension and dimension searches accept.
inline constexpr std::size_t kExactMaxSize = 8;
/// Largest poset the 2-dimension search accepts.
inline constexpr std::size_t kTwodimMaxSize = 16;

/// Minimum over local realisers of the maximum multiplicity (at least 1).
/// Iterative deepening on d; ParameterError above kExactMaxSize elements.
ExactResult exact_ldim(const Poset& p, const SearchBudget& budget = {});

/// Minimum number of linear extensions realising p (at least 1).
ExactResult exact_dim(const Poset& p, const SearchBudget& budget = {});

/// Smallest d such that p embeds into the subset lattice of {1..d}.
ExactResult exact_twodim(const Poset& p, const SearchBudget& budget = {});

/// Every linear extension of p in lexicographic order of sequences.
/// ParameterError above kExactMaxSize elements.
std::vector<List> linear_extensions(const Poset& p);

}  // namespace ldim
