#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldim/poset.hpp"
#include "ldim/realiser.hpp"

namespace ldim {

// Crespelle code: a local realiser written as one word over the 3n-symbol
// alphabet {x_i, x_m, x_f}. Each list starts with an Init symbol, the rest
// are Mid, and the very last symbol of the word is turned into Fin.

enum class Tag : std::uint8_t { Init, Mid, Fin };

struct Symbol {
  ElementId id;
  Tag tag;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Codeword {
  std::size_t n = 0;
  std::vector<Symbol> symbols;
  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Lists are concatenated in `order` (a permutation of list indices).
/// TrivialListError for lists shorter than two, EmptyRealiserError when
/// there is nothing to encode.
Codeword crespelle_encode(const LocalRealiser& r, std::span<const std::size_t> order);
/// Lists in file order.
Codeword crespelle_encode(const LocalRealiser& r);

struct DecodedCodeword {
  LocalRealiser realiser;
  /// a < b iff some list has a before b and none has b before a.
  Poset poset;
};

/// Strict: GrammarError on any deviation from (Init Mid*)* Init Mid* Fin
/// with every block of length >= 2. CycleError if the inferred relation is
/// cyclic.
DecodedCodeword crespelle_decode(const Codeword& w);

/// symbols * log2(3n).
double codeword_bit_cost(std::size_t symbol_count, std::size_t n);
inline double codeword_bit_cost(const Codeword& w) {
  return codeword_bit_cost(w.symbols.size(), w.n);
}

/// `1i 2m 2i 1f`
std::string format_codeword(const Codeword& w);
/// n = 0 means "largest id seen".
Codeword parse_codeword(const std::string& text, std::size_t n = 0);

// Binary 2-dimension code: ceil(log2 n) header bits holding d (big-endian),
// then n blocks of d bits, block i being the characteristic vector of the
// image of element i (first bit = coordinate 1).

using BitString = std::string;  // characters '0' / '1'

/// Number of header bits, ceil(log2 n).
unsigned twodim_header_bits(std::size_t n);

/// `images[i]` is the subset of {1..d} (bit j-1 <-> j) assigned to element
/// i+1. Throws HeaderRangeError if d does not fit in the header,
/// RangeError if an image leaves {1..d}, ParameterError if the images are
/// not an order embedding of `p`.
BitString twodim_binary_encode(const Poset& p, unsigned d, std::span<const std::uint64_t> images);

struct TwodimDecoded {
  unsigned d = 0;
  std::vector<std::uint64_t> images;
};
/// GrammarError on malformed or wrong-length input.
TwodimDecoded twodim_binary_decode(const BitString& bits, std::size_t n);

}  // namespace ldim
