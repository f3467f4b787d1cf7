#include "ldim/poset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "ldim/error.hpp"
#include "text_io.hpp"

namespace ldim {

Poset::Poset(std::size_t n, std::span<const Relation> relations) {
  if (n == 0) throw ParameterError("poset must have at least one element");
  up_.assign(n, Bitset(n));
  for (auto [a, b] : relations) {
    if (a < 1 || a > n || b < 1 || b > n)
      throw RangeError("relation (" + std::to_string(a) + "," + std::to_string(b) +
                       ") out of range 1.." + std::to_string(n));
    if (a == b) throw CycleError("element " + std::to_string(a) + " below itself");
    up_[a - 1].set(b - 1);
  }
  finish_closure();
}

void Poset::finish_closure() {
  const std::size_t n = up_.size();
  // Warshall over rows: if i reaches k, i reaches everything k reaches.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up_[i].test(k)) up_[i] |= up_[k];
  for (std::size_t i = 0; i < n; ++i)
    if (up_[i].test(i))
      throw CycleError("element " + std::to_string(i + 1) + " reaches itself");
  down_.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up_[i].find_first(); j != Bitset::npos; j = up_[i].find_next(j))
      down_[j].set(i);
}

Poset Poset::chain(std::size_t n) {
  std::vector<Relation> rel;
  for (ElementId a = 1; a < n; ++a) rel.emplace_back(a, a + 1);
  return Poset(n, rel);
}

Poset Poset::antichain(std::size_t n) { return Poset(n, {}); }

std::vector<Relation> Poset::relations() const {
  std::vector<Relation> out;
  for (std::size_t i = 0; i < up_.size(); ++i)
    for (auto j = up_[i].find_first(); j != Bitset::npos; j = up_[i].find_next(j))
      out.emplace_back(static_cast<ElementId>(i + 1), static_cast<ElementId>(j + 1));
  return out;
}

std::size_t Poset::relation_count() const {
  std::size_t c = 0;
  for (const auto& row : up_) c += row.count();
  return c;
}

bool Poset::is_chain() const {
  const std::size_t n = size();
  return relation_count() == n * (n - 1) / 2;
}

std::vector<ElementId> Poset::topological_order() const {
  // Sorting by down-set size is a linear extension: a < b implies
  // down(a) is a proper subset of down(b).
  std::vector<ElementId> ids(size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ElementId>(i + 1);
  std::stable_sort(ids.begin(), ids.end(), [&](ElementId a, ElementId b) {
    return down_[a - 1].count() < down_[b - 1].count();
  });
  return ids;
}

void Poset::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != size())
    throw ParameterError("label count does not match poset size");
  labels_ = std::move(labels);
}

std::string Poset::label(ElementId a) const {
  if (labels_.empty()) return std::to_string(a);
  return labels_[a - 1];
}

Poset Poset::induced(std::span<const ElementId> ids) const {
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j)
      if (less(ids[i], ids[j]))
        rel.emplace_back(static_cast<ElementId>(i + 1), static_cast<ElementId>(j + 1));
  return Poset(ids.size(), rel);
}

Poset make_poset(std::size_t n, std::span<const Relation> relations) {
  return Poset(n, relations);
}

Poset divisibility_poset(std::size_t n) {
  if (n == 0) throw ParameterError("divisibility poset needs n >= 1");
  std::vector<Relation> rel;
  for (ElementId a = 1; a <= n; ++a)
    for (ElementId b = 2 * a; b <= n; b += a) rel.emplace_back(a, b);
  return Poset(n, rel);
}

Poset dual(const Poset& p) {
  auto rel = p.relations();
  for (auto& [a, b] : rel) std::swap(a, b);
  return Poset(p.size(), rel);
}

std::vector<Relation> requirements(const Poset& p) {
  std::vector<Relation> out;
  const auto n = static_cast<ElementId>(p.size());
  for (ElementId x = 1; x <= n; ++x)
    for (ElementId y = 1; y <= n; ++y)
      if (x != y && !p.less(y, x)) out.emplace_back(x, y);
  return out;
}

bool is_partial_linear_extension(const Poset& p, std::span<const ElementId> items) {
  Bitset seen(p.size());
  for (ElementId z : items) {
    if (z < 1 || z > p.size()) throw RangeError("element " + std::to_string(z) + " out of range");
    if (seen.test(z - 1)) throw DuplicateElementError("element " + std::to_string(z) + " repeated");
    // Something already listed lies above z: inversion.
    if (p.up_set(z).intersects(seen)) return false;
    seen.set(z - 1);
  }
  return true;
}

LexSum lex_sum(const Poset& index, std::span<const Poset> summands) {
  if (summands.size() != index.size())
    throw ParameterError("need one summand per element of the index poset");
  std::vector<Relation> origin;
  std::vector<ElementId> first_id(index.size());
  ElementId next = 1;
  for (std::size_t x = 0; x < summands.size(); ++x) {
    if (summands[x].size() == 0) throw EmptySummandError("summand " + std::to_string(x + 1) + " is empty");
    first_id[x] = next;
    for (ElementId y = 1; y <= summands[x].size(); ++y)
      origin.emplace_back(static_cast<ElementId>(x + 1), y);
    next += static_cast<ElementId>(summands[x].size());
  }
  auto id = [&](ElementId x, ElementId y) { return first_id[x - 1] + y - 1; };
  std::vector<Relation> rel;
  for (ElementId x = 1; x <= index.size(); ++x) {
    for (auto [y, w] : summands[x - 1].relations()) rel.emplace_back(id(x, y), id(x, w));
    for (ElementId z = 1; z <= index.size(); ++z) {
      if (!index.less(x, z)) continue;
      for (ElementId y = 1; y <= summands[x - 1].size(); ++y)
        for (ElementId w = 1; w <= summands[z - 1].size(); ++w)
          rel.emplace_back(id(x, y), id(z, w));
    }
  }
  LexSum out{Poset(next - 1, rel), std::move(origin), std::move(first_id)};
  std::vector<std::string> labels;
  for (auto [x, y] : out.origin)
    labels.push_back("(" + index.label(x) + "," + summands[x - 1].label(y) + ")");
  out.poset.set_labels(std::move(labels));
  return out;
}

Poset read_poset(std::istream& in) {
  detail::LineReader reader(in);
  auto header = reader.next();
  if (!header) throw ParseError(0, "empty input, expected `poset <n>`");
  if (header->size() != 2 || (*header)[0] != "poset")
    throw ParseError(reader.line(), "expected `poset <n>`");
  const auto n = detail::parse_count(reader.line(), (*header)[1]);
  if (n == 0) throw ParseError(reader.line(), "poset must have at least one element");
  std::vector<Relation> rel;
  while (auto tokens = reader.next()) {
    if (tokens->size() != 3 || (*tokens)[0] != "<")
      throw ParseError(reader.line(), "expected `< a b`");
    const auto a = detail::parse_id(reader.line(), (*tokens)[1], n);
    const auto b = detail::parse_id(reader.line(), (*tokens)[2], n);
    if (a == b) throw ParseError(reader.line(), "element below itself");
    rel.emplace_back(a, b);
  }
  try {
    return Poset(n, rel);
  } catch (const CycleError& e) {
    throw ParseError(reader.line(), e.what());
  }
}

Poset parse_poset(const std::string& text) {
  std::istringstream in(text);
  return read_poset(in);
}

void write_poset(std::ostream& out, const Poset& p) {
  out << "poset " << p.size() << '\n';
  for (auto [a, b] : p.relations()) out << "< " << a << ' ' << b << '\n';
}

std::string format_poset(const Poset& p) {
  std::ostringstream out;
  write_poset(out, p);
  return out.str();
}

}  // namespace ldim
