#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ldim/layers.hpp"
#include "ldim/poset.hpp"

namespace ldim {

/// One partial linear extension, listed bottom to top.
using List = std::vector<ElementId>;

/// A multiset of partial linear extensions of a host poset on 1..n.
/// The host itself is passed separately wherever it is needed.
struct LocalRealiser {
  std::size_t n = 0;
  std::vector<List> lists;

  friend bool operator==(const LocalRealiser&, const LocalRealiser&) = default;
};

struct VerificationReport {
  bool valid = false;
  /// Required pairs (x, y) with no list placing x before y, sorted.
  std::vector<Relation> uncovered;
  /// multiplicity[id-1] = number of lists containing id.
  std::vector<std::size_t> multiplicity;
  std::size_t max_multiplicity = 0;
  std::size_t list_count = 0;
};

/// Number of lists containing each element (index id-1). Validates ids.
std::vector<std::size_t> multiplicities(const LocalRealiser& r);

/// Checks that every list is a partial linear extension (InvalidListError
/// otherwise) and reports uncovered requirements and multiplicities.
/// Throws RangeError / DuplicateElementError on malformed lists.
VerificationReport verify_local_realiser(const Poset& p, const LocalRealiser& r);
VerificationReport verify_local_realiser(const LayerPoset& p, const LocalRealiser& r);

/// Max multiplicity over the lower and upper layers separately.
struct LayerMultiplicity {
  std::size_t lower = 0;
  std::size_t upper = 0;
};
LayerMultiplicity layer_multiplicity(const LayerPoset& p, const VerificationReport& report);

/// Removes lists with fewer than two elements; they never cover anything.
LocalRealiser drop_trivial_lists(LocalRealiser r);

// Text format: `realiser <n> <L>` then L lines of space-separated ids.
// Lines starting with `#` are comments and may appear anywhere.
LocalRealiser read_realiser(std::istream& in);
LocalRealiser parse_realiser(const std::string& text);
void write_realiser(std::ostream& out, const LocalRealiser& r);
std::string format_realiser(const LocalRealiser& r);

}  // namespace ldim
