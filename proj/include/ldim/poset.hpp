#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ldim {

/// Elements of every ground set are numbered 1..n.
using ElementId = std::uint32_t;
using Relation = std::pair<ElementId, ElementId>;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// A finite strict partial order on 1..n, stored transitively closed as a
/// pair of dense bit matrices (up-sets and down-sets).
class Poset {
 public:
  /// Builds the transitive closure of `relations` ("a strictly below b").
  /// Throws RangeError for ids outside 1..n and CycleError if the closure
  /// is not antisymmetric.
  Poset(std::size_t n, std::span<const Relation> relations);

  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);

  std::size_t size() const noexcept { return up_.size(); }

  bool less(ElementId a, ElementId b) const { return up_[a - 1].test(b - 1); }
  bool less_equal(ElementId a, ElementId b) const { return a == b || less(a, b); }
  bool comparable(ElementId a, ElementId b) const {
    return a == b || less(a, b) || less(b, a);
  }

  /// Bits are indexed by id-1.
  const Bitset& up_set(ElementId a) const { return up_[a - 1]; }
  const Bitset& down_set(ElementId a) const { return down_[a - 1]; }

  template <class F>
  void for_each_below(ElementId a, F&& f) const {
    const Bitset& row = down_[a - 1];
    for (auto i = row.find_first(); i != Bitset::npos; i = row.find_next(i))
      f(static_cast<ElementId>(i + 1));
  }

  std::size_t down_count(ElementId a) const { return down_[a - 1].count(); }

  /// All strict relations (a, b), sorted.
  std::vector<Relation> relations() const;
  std::size_t relation_count() const;

  bool is_chain() const;

  /// Ids in an order compatible with the poset (ties broken by ascending id).
  std::vector<ElementId> topological_order() const;

  void set_labels(std::vector<std::string> labels);
  /// Display label; defaults to the decimal id.
  std::string label(ElementId a) const;

  /// Restriction to `ids`, renumbered 1..|ids| in the given order.
  Poset induced(std::span<const ElementId> ids) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.up_ == b.up_;
  }

 private:
  Poset() = default;
  void finish_closure();

  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::vector<std::string> labels_;
};

/// Checked constructor; same as `Poset(n, relations)`.
Poset make_poset(std::size_t n, std::span<const Relation> relations);

/// Elements 1..n with a < b iff a divides b and a != b.
Poset divisibility_poset(std::size_t n);

/// Reversed order on the same ids.
Poset dual(const Poset& p);

/// Every ordered pair (x, y), x != y, with y not below x: the pairs a local
/// realiser has to cover. Sorted lexicographically.
std::vector<Relation> requirements(const Poset& p);

/// True iff `items` never lists a larger element before a smaller one.
/// Throws DuplicateElementError / RangeError on malformed input.
bool is_partial_linear_extension(const Poset& p, std::span<const ElementId> items);

/// Lexicographic sum of `summands` (indexed by the elements of `index`).
struct LexSum {
  Poset poset;
  /// origin[id-1] = (x, y): element y of summand x.
  std::vector<Relation> origin;
  /// first_id[x-1] is the new id of (x, 1); block ids are consecutive.
  std::vector<ElementId> first_id;

  ElementId id(ElementId x, ElementId y) const { return first_id[x - 1] + y - 1; }
};

/// (x,y) < (z,w) iff x < z in `index`, or x == z and y < w in summand x.
/// Throws EmptySummandError / ParameterError on arity mismatch.
LexSum lex_sum(const Poset& index, std::span<const Poset> summands);

// Text format: `poset <n>` followed by lines `< a b`. `#` starts a comment.
Poset read_poset(std::istream& in);
Poset parse_poset(const std::string& text);
void write_poset(std::ostream& out, const Poset& p);
std::string format_poset(const Poset& p);

}  // namespace ldim
