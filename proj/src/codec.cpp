#include "ldim/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "ldim/error.hpp"

namespace ldim {

Codeword crespelle_encode(const LocalRealiser& r, std::span<const std::size_t> order) {
  if (r.lists.empty()) throw EmptyRealiserError("no lists to encode");
  if (order.size() != r.lists.size()) throw ParameterError("list order must be a permutation");
  std::vector<bool> used(r.lists.size(), false);
  for (auto i : order) {
    if (i >= r.lists.size() || used[i]) throw ParameterError("list order must be a permutation");
    used[i] = true;
  }
  multiplicities(r);  // range and duplicate checks

  Codeword w{r.n, {}};
  for (auto i : order) {
    const auto& l = r.lists[i];
    if (l.size() < 2)
      throw TrivialListError("list " + std::to_string(i + 1) + " has fewer than two elements");
    w.symbols.push_back({l.front(), Tag::Init});
    for (std::size_t j = 1; j < l.size(); ++j) w.symbols.push_back({l[j], Tag::Mid});
  }
  w.symbols.back().tag = Tag::Fin;
  return w;
}

Codeword crespelle_encode(const LocalRealiser& r) {
  std::vector<std::size_t> order(r.lists.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return crespelle_encode(r, order);
}

DecodedCodeword crespelle_decode(const Codeword& w) {
  const auto& s = w.symbols;
  if (s.empty()) throw GrammarError("empty codeword");
  if (s.front().tag != Tag::Init) throw GrammarError("codeword must start with an Init symbol");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i].tag == Tag::Fin) throw GrammarError("Fin symbol before the end at position " + std::to_string(i + 1));
  if (s.back().tag != Tag::Fin) throw GrammarError("codeword does not end with a Fin symbol");

  LocalRealiser r{w.n, {}};
  for (const auto& sym : s) {
    if (sym.id < 1 || sym.id > w.n)
      throw GrammarError("symbol id " + std::to_string(sym.id) + " outside 1.." + std::to_string(w.n));
    if (sym.tag == Tag::Init) {
      if (!r.lists.empty() && r.lists.back().size() < 2) throw GrammarError("list of length one");
      r.lists.emplace_back();
    }
    r.lists.back().push_back(sym.id);
  }
  if (r.lists.back().size() < 2) throw GrammarError("list of length one");

  // Inferred order over n x n: forward[a][b] = some list has a before b.
  std::vector<Bitset> forward(w.n, Bitset(w.n));
  Bitset seen(w.n);
  for (const auto& l : r.lists) {
    seen.reset();
    for (ElementId z : l) {
      if (seen.test(z - 1)) throw GrammarError("element " + std::to_string(z) + " repeated in a list");
      for (auto j = seen.find_first(); j != Bitset::npos; j = seen.find_next(j)) forward[j].set(z - 1);
      seen.set(z - 1);
    }
  }
  std::vector<Relation> rel;
  for (std::size_t a = 0; a < w.n; ++a)
    for (auto b = forward[a].find_first(); b != Bitset::npos; b = forward[a].find_next(b))
      if (!forward[b].test(a)) rel.emplace_back(static_cast<ElementId>(a + 1), static_cast<ElementId>(b + 1));
  return {std::move(r), Poset(w.n, rel)};
}

double codeword_bit_cost(std::size_t symbol_count, std::size_t n) {
  if (n == 0) throw ParameterError("alphabet needs n >= 1");
  return static_cast<double>(symbol_count) * std::log2(3.0 * static_cast<double>(n));
}

std::string format_codeword(const Codeword& w) {
  std::string out;
  for (const auto& sym : w.symbols) {
    if (!out.empty()) out += ' ';
    out += std::to_string(sym.id);
    out += sym.tag == Tag::Init ? 'i' : sym.tag == Tag::Mid ? 'm' : 'f';
  }
  return out;
}

Codeword parse_codeword(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  Codeword w;
  std::size_t max_id = 0;
  for (std::string tok; in >> tok;) {
    if (tok.size() < 2) throw GrammarError("bad token `" + tok + "`");
    Tag tag;
    switch (tok.back()) {
      case 'i': tag = Tag::Init; break;
      case 'm': tag = Tag::Mid; break;
      case 'f': tag = Tag::Fin; break;
      default: throw GrammarError("bad tag in token `" + tok + "`");
    }
    const auto digits = tok.substr(0, tok.size() - 1);
    if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw GrammarError("bad element id in token `" + tok + "`");
    const auto id = static_cast<ElementId>(std::stoul(digits));
    if (id == 0) throw GrammarError("element ids start at 1");
    max_id = std::max<std::size_t>(max_id, id);
    w.symbols.push_back({id, tag});
  }
  if (n && max_id > n)
    throw GrammarError("element id " + std::to_string(max_id) + " outside 1.." + std::to_string(n));
  w.n = n ? n : max_id;
  return w;
}

unsigned twodim_header_bits(std::size_t n) {
  if (n == 0) throw ParameterError("need n >= 1");
  return n == 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

BitString twodim_binary_encode(const Poset& p, unsigned d, std::span<const std::uint64_t> images) {
  const std::size_t n = p.size();
  const unsigned h = twodim_header_bits(n);
  if (h < 64 && d >= (std::uint64_t{1} << h))
    throw HeaderRangeError("d=" + std::to_string(d) + " does not fit in " + std::to_string(h) + " header bits");
  if (d > 64) throw RangeError("d above 64 unsupported");
  if (images.size() != n) throw ParameterError("need one image per element");
  const std::uint64_t universe = d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1;
  for (auto s : images)
    if (s & ~universe) throw RangeError("image leaves {1.." + std::to_string(d) + "}");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const bool sub = (images[a] & ~images[b]) == 0 && images[a] != images[b];
      if (sub != p.less(static_cast<ElementId>(a + 1), static_cast<ElementId>(b + 1)) ||
          images[a] == images[b])
        throw ParameterError("images are not an order embedding");
    }

  BitString bits;
  for (unsigned i = h; i-- > 0;) bits += ((d >> i) & 1u) ? '1' : '0';
  for (auto s : images)
    for (unsigned j = 0; j < d; ++j) bits += ((s >> j) & 1u) ? '1' : '0';
  return bits;
}

TwodimDecoded twodim_binary_decode(const BitString& bits, std::size_t n) {
  const unsigned h = twodim_header_bits(n);
  if (bits.find_first_not_of("01") != std::string::npos) throw GrammarError("bit string must be 0/1");
  if (bits.size() < h) throw GrammarError("bit string shorter than header");
  TwodimDecoded out;
  for (unsigned i = 0; i < h; ++i) out.d = (out.d << 1) | (bits[i] == '1');
  if (bits.size() != h + static_cast<std::size_t>(out.d) * n)
    throw GrammarError("expected " + std::to_string(h + out.d * n) + " bits, got " + std::to_string(bits.size()));
  if (out.d > 64) throw RangeError("d above 64 unsupported");
  std::size_t pos = h;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = 0;
    for (unsigned j = 0; j < out.d; ++j)
      if (bits[pos++] == '1') s |= std::uint64_t{1} << j;
    out.images.push_back(s);
  }
  return out;
}

}  // namespace ldim
