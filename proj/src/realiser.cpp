#include "ldim/realiser.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ldim/error.hpp"
#include "text_io.hpp"

namespace ldim {

namespace {

// covered[x] holds a square bit matrix, so keep it below ~128 MiB.
constexpr std::size_t kMaxVerifySize = 32768;

void check_list(const List& list, std::size_t n, std::size_t index, Bitset& seen) {
  seen.reset();
  for (ElementId z : list) {
    if (z < 1 || z > n)
      throw RangeError("list " + std::to_string(index + 1) + ": element " + std::to_string(z) +
                       " out of range 1.." + std::to_string(n));
    if (seen.test(z - 1))
      throw DuplicateElementError("list " + std::to_string(index + 1) + ": element " +
                                  std::to_string(z) + " repeated");
    seen.set(z - 1);
  }
}

template <class Order>
[[noreturn]] void report_inversion(const Order& order, const LocalRealiser& r, ElementId hi,
                                   ElementId lo) {
  // Locate a list placing `hi` before `lo` although lo < hi.
  for (std::size_t i = 0; i < r.lists.size(); ++i) {
    const auto& l = r.lists[i];
    auto h = std::find(l.begin(), l.end(), hi);
    if (h != l.end() && std::find(h, l.end(), lo) != l.end())
      throw InvalidListError("list " + std::to_string(i + 1) + " places " + order.label(hi) +
                             " before " + order.label(lo));
  }
  throw InvalidListError("inverted pair " + order.label(hi) + " / " + order.label(lo));
}

// A family is valid iff for every x, the set of y placed after x in some list
// is exactly the complement of down(x) + {x}. The first half (no y in down(x)
// is placed after x) is list validity, the second half is coverage.
template <class Order>
VerificationReport verify_impl(const Order& order, const LocalRealiser& r) {
  const std::size_t n = order.size();
  if (r.n != n)
    throw ParameterError("realiser is over " + std::to_string(r.n) + " elements, poset has " +
                         std::to_string(n));
  if (n > kMaxVerifySize) throw ParameterError("poset too large to verify");

  VerificationReport rep;
  rep.list_count = r.lists.size();
  rep.multiplicity.assign(n, 0);

  std::vector<Bitset> covered(n, Bitset(n));
  Bitset suffix(n);
  for (std::size_t i = 0; i < r.lists.size(); ++i) {
    const auto& list = r.lists[i];
    check_list(list, n, i, suffix);
    suffix.reset();
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
      covered[*it - 1] |= suffix;
      suffix.set(*it - 1);
      ++rep.multiplicity[*it - 1];
    }
  }

  for (ElementId x = 1; x <= n; ++x) {
    const Bitset& row = covered[x - 1];
    order.for_each_below(x, [&](ElementId y) {
      if (row.test(y - 1)) report_inversion(order, r, x, y);
    });
    const std::size_t expected = n - 1 - order.down_count(x);
    if (row.count() == expected) continue;
    Bitset missing = ~row;
    for (auto j = missing.find_first(); j != Bitset::npos; j = missing.find_next(j)) {
      const auto y = static_cast<ElementId>(j + 1);
      if (y != x && !order.less(y, x)) rep.uncovered.emplace_back(x, y);
    }
  }

  rep.valid = rep.uncovered.empty();
  rep.max_multiplicity =
      rep.multiplicity.empty() ? 0 : *std::max_element(rep.multiplicity.begin(), rep.multiplicity.end());
  return rep;
}

}  // namespace

std::vector<std::size_t> multiplicities(const LocalRealiser& r) {
  std::vector<std::size_t> m(r.n, 0);
  Bitset seen(r.n);
  for (std::size_t i = 0; i < r.lists.size(); ++i) {
    check_list(r.lists[i], r.n, i, seen);
    for (ElementId z : r.lists[i]) ++m[z - 1];
  }
  return m;
}

VerificationReport verify_local_realiser(const Poset& p, const LocalRealiser& r) {
  return verify_impl(p, r);
}

VerificationReport verify_local_realiser(const LayerPoset& p, const LocalRealiser& r) {
  return verify_impl(p, r);
}

LayerMultiplicity layer_multiplicity(const LayerPoset& p, const VerificationReport& report) {
  LayerMultiplicity out;
  for (ElementId a = 1; a <= report.multiplicity.size(); ++a) {
    auto& slot = p.in_lower(a) ? out.lower : out.upper;
    slot = std::max(slot, report.multiplicity[a - 1]);
  }
  return out;
}

LocalRealiser drop_trivial_lists(LocalRealiser r) {
  std::erase_if(r.lists, [](const List& l) { return l.size() < 2; });
  return r;
}

LocalRealiser read_realiser(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next();
  if (!header) throw ParseError(0, "empty input, expected `realiser <n> <L>`");
  if (header->size() != 3 || (*header)[0] != "realiser")
    throw ParseError(reader.line(), "expected `realiser <n> <L>`");
  LocalRealiser r;
  r.n = detail::parse_count(reader.line(), (*header)[1]);
  if (r.n == 0) throw ParseError(reader.line(), "realiser must be over at least one element");
  const auto count = detail::parse_count(reader.line(), (*header)[2]);
  Bitset seen(r.n);
  for (std::size_t i = 0; i < count; ++i) {
    auto tokens = reader.next_keep_blank();
    if (!tokens)
      throw ParseError(reader.line(), "expected " + std::to_string(count) + " lists, got " +
                                          std::to_string(i));
    List list;
    seen.reset();
    for (const auto& t : *tokens) {
      const auto z = detail::parse_id(reader.line(), t, r.n);
      if (seen.test(z - 1)) throw ParseError(reader.line(), "element " + t + " repeated in list");
      seen.set(z - 1);
      list.push_back(z);
    }
    r.lists.push_back(std::move(list));
  }
  if (auto extra = reader.next()) throw ParseError(reader.line(), "unexpected content after last list");
  return r;
}

LocalRealiser parse_realiser(const std::string& text) {
  std::istringstream in(text);
  return read_realiser(in);
}

void write_realiser(std::ostream& out, const LocalRealiser& r) {
  out << "realiser " << r.n << ' ' << r.lists.size() << '\n';
  for (const auto& l : r.lists) {
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
}

std::string format_realiser(const LocalRealiser& r) {
  std::ostringstream out;
  write_realiser(out, r);
  return out.str();
}

}  // namespace ldim
