#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldim/exact.hpp"
#include "ldim/layers.hpp"
#include "ldim/poset.hpp"

namespace ldim {

/// xorshift64*: fixed so every platform reproduces the same samples.
class Xorshift64Star {
 public:
  /// The seed is scrambled with splitmix64 so that 0 and nearby seeds are fine.
  explicit Xorshift64Star(std::uint64_t seed);

  std::uint64_t next();
  bool coin() { return (next() >> 63) != 0; }
  /// Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sample `index` in a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Shannon entropy in bits; zero entries are skipped.
/// NotADistributionError on negative entries or a sum off by more than 1e-9.
double entropy(std::span<const double> p);

/// Two-level order with minima 1..floor(n/2) and maxima floor(n/2)+1..n,
/// each (minimum, maximum) pair related by an independent fair coin.
Poset sample_two_layer(std::size_t n, std::uint64_t seed);
/// floor(n/2) * ceil(n/2) bits.
double two_layer_entropy(std::size_t n);

struct LayerModelSample {
  Poset poset;
  /// Elements 1..a_count are the lower-size subsets in ascending bitmask order.
  std::size_t a_count = 0;
  /// Random upper-size subset attached to each of the m top elements.
  std::vector<SubsetMask> top_sets;
};

/// A = all `lower`-subsets of {1..n}; m new elements b, each above the
/// members of A contained in a uniformly random `upper`-subset X_b.
LayerModelSample sample_layer_model(unsigned n, unsigned lower, unsigned upper, std::size_t m,
                                    std::uint64_t seed);
/// m * log2 C(n, upper) bits.
double layer_model_entropy(unsigned n, unsigned upper, std::size_t m);

/// Uniform k-subset of {1..n} by partial Fisher-Yates.
SubsetMask random_subset(unsigned n, unsigned k, Xorshift64Star& rng);

/// floor(C(n,l) * (log2 C(n,l) - 1)); ParameterError when not positive.
std::size_t default_m(unsigned n, unsigned lower);

struct DedupResult {
  Poset poset;
  /// kept[i] = original id of new element i+1.
  std::vector<ElementId> kept;
};

/// Among the `b_side` elements with identical down-sets keeps the one with the
/// least id. NotTwoLevelError unless every relation goes from a non-B element
/// up to a B element.
DedupResult dedup_neighbourhoods(const Poset& p, std::span<const ElementId> b_side);

struct BoundEntry {
  std::string name;
  double value = 0;
  bool applicable = false;
  /// Leading term of an asymptotic statement; never compared with data.
  bool asymptotic = false;
};

struct BoundReport {
  unsigned n = 0, lower = 0, upper = 0;
  std::vector<BoundEntry> entries;

  const BoundEntry& at(const std::string& name) const;
};

/// Every closed-form bound at (n, lower, upper), logs base 2 except where
/// the bound is stated with ln.
BoundReport bound_table(unsigned n, unsigned lower, unsigned upper);

/// Lower bound for two layers with the constant c (log 12 in the statement).
double layer_lower_bound(unsigned n, unsigned lower, unsigned upper, double c);
/// n/log n + 2n(log log n + log lower)/(log n)^2 + 3.
double layer_upper_bound(double n, double lower);
/// min{m : C(m, floor(m/2)) >= n}.
unsigned sperner_twodim(std::size_t n);
/// 2 min{k : 2 k! >= n}.
unsigned kostochka_bound(std::size_t n);

struct Metric {
  std::string name;
  double value = 0;
};

struct ExperimentReport {
  std::string kind;
  std::vector<Metric> metrics;
  /// Aligned table body (one row per line), possibly empty.
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> columns;
  bool exceeded = false;

  double metric(const std::string& name) const;
};

struct ExperimentParams {
  std::size_t n = 4;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  SearchBudget budget{};
};

/// Mean exact local dimension over the two-layer ensemble versus n/(4 log 3n).
ExperimentReport run_avg_ldim(const ExperimentParams& params);
/// Mean Crespelle bit cost (from optimal local realisers) versus the
/// ensemble entropy.
ExperimentReport run_shannon_length(const ExperimentParams& params);
/// Bounds on ldim of Q_n^(1,k) for k = 1..n-1 with unimodality flags.
ExperimentReport run_unimodal(const ExperimentParams& params);

/// "avg_ldim" | "shannon_length" | "unimodal" (dashes accepted).
ExperimentReport run_experiment(const std::string& kind, const ExperimentParams& params);

}  // namespace ldim
