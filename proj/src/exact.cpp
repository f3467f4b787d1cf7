#include "ldim/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "ldim/error.hpp"

namespace ldim {

namespace {

using Mask = std::uint64_t;

struct LimitHit {};

class Limits {
 public:
  explicit Limits(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++nodes_;
    if (nodes_ > budget_.node_limit) throw LimitHit{};
    if ((nodes_ & 0xfff) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.time_limit) throw LimitHit{};
    }
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

struct PairKey {
  Mask a;
  std::uint64_t b;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    std::uint64_t h = k.a * 0x9E3779B97F4A7C15ull;
    h ^= (k.b + 0x632BE59BD9B4E019ull) + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Small posets as 0-based bit masks.
struct SmallOrder {
  int n = 0;
  std::array<std::uint32_t, kTwodimMaxSize> up{};    // elements strictly above
  std::array<std::uint32_t, kTwodimMaxSize> down{};  // elements strictly below

  explicit SmallOrder(const Poset& p) : n(static_cast<int>(p.size())) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (p.less(static_cast<ElementId>(a + 1), static_cast<ElementId>(b + 1))) {
          up[a] |= 1u << b;
          down[b] |= 1u << a;
        }
  }

  bool less(int a, int b) const { return (up[a] >> b) & 1u; }
  bool incomparable(int a, int b) const { return a != b && !less(a, b) && !less(b, a); }
};

void require_size(const Poset& p, std::size_t cap, const char* what) {
  if (p.size() > cap)
    throw ParameterError(std::string(what) + " supports at most " + std::to_string(cap) +
                         " elements, got " + std::to_string(p.size()));
}

int ceil_log2(std::size_t n) { return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1)); }

// ---------------------------------------------------------------------------
// Local dimension.
//
// A node is (uncovered requirements, remaining budget per element). The
// lexicographically least uncovered pair (x, y) must be covered by some list
// of any completion, so we branch over every partial linear extension that
// places x before y. Two reductions keep this exact:
//  * a list containing an element that covers no uncovered pair is beaten by
//    the same list without it, so such lists are skipped;
//  * prefixes with the same element set and the same newly covered pairs
//    extend identically, so only one is expanded.
// Failed nodes are memoised; feasibility of a node does not depend on d.
// ---------------------------------------------------------------------------

class LdimSearch {
 public:
  LdimSearch(const Poset& p, const SearchBudget& b) : order_(p), budget_(b), limits_(b) {
    const int n = order_.n;
    index_.fill({});
    for (auto& row : index_) row.fill(-1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y && !order_.less(y, x)) {
          index_[x][y] = static_cast<int>(pairs_.size());
          pairs_.emplace_back(x, y);
        }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (index_[x][y] >= 0) {
          touching_[x] |= bit(x, y);
          touching_[y] |= bit(x, y);
        }
        if (order_.incomparable(x, y)) both_ways_[x].push_back(bit(x, y) | bit(y, x));
      }
  }

  ExactResult run() {
    ExactResult res;
    const int n = order_.n;
    Mask all = pairs_.size() == 64 ? ~Mask{0} : (Mask{1} << pairs_.size()) - 1;
    int d = 1;
    try {
      for (; d <= budget_.d_max; ++d) {
        std::array<std::uint8_t, kExactMaxSize> budgets{};
        for (int x = 0; x < n; ++x) budgets[x] = static_cast<std::uint8_t>(d);
        path_.clear();
        if (solve(all, budgets)) {
          res.value = res.lower_bound = d;
          res.witness.n = static_cast<std::size_t>(n);
          res.witness.lists = path_;
          // No requirements at all (one element): the trivial chain list.
          if (res.witness.lists.empty()) res.witness.lists.push_back(List{1});
          res.nodes = limits_.nodes();
          return res;
        }
      }
    } catch (const LimitHit&) {
    }
    res.exceeded = true;
    res.lower_bound = d;
    res.nodes = limits_.nodes();
    return res;
  }

 private:
  using Budgets = std::array<std::uint8_t, kExactMaxSize>;

  struct Candidate {
    std::uint32_t set;
    Mask gain;
    List seq;
  };

  Mask bit(int x, int y) const { return Mask{1} << index_[x][y]; }

  int need(int x, Mask u) const {
    if (!(touching_[x] & u)) return 0;
    for (Mask m : both_ways_[x])
      if ((u & m) == m) return 2;
    return 1;
  }

  std::uint64_t pack(Mask u, const Budgets& b) const {
    std::uint64_t key = 0;
    for (int x = 0; x < order_.n; ++x) {
      const std::uint64_t v = (touching_[x] & u) ? b[x] : 0;
      key |= std::min<std::uint64_t>(v, 255) << (8 * x);
    }
    return key;
  }

  bool solve(Mask u, const Budgets& budgets) {
    if (u == 0) return true;
    limits_.tick();
    for (int x = 0; x < order_.n; ++x)
      if (budgets[x] < need(x, u)) return false;
    const PairKey key{u, pack(u, budgets)};
    if (failed_.count(key)) return false;

    const int target = std::countr_zero(u);
    const auto [x, y] = pairs_[target];
    auto candidates = covering_lists(u, budgets, x, y);
    for (const auto& c : candidates) {
      Budgets next = budgets;
      for (std::uint32_t s = c.set; s; s &= s - 1) --next[std::countr_zero(s)];
      path_.push_back(c.seq);
      if (solve(u & ~c.gain, next)) return true;
      path_.pop_back();
    }
    failed_.insert(key);
    return false;
  }

  std::vector<Candidate> covering_lists(Mask u, const Budgets& budgets, int x, int y) {
    std::uint32_t avail = 0;
    for (int z = 0; z < order_.n; ++z)
      if (budgets[z] > 0 && (touching_[z] & u)) avail |= 1u << z;

    std::vector<Candidate> out;
    std::unordered_set<PairKey, PairKeyHash> seen;
    List seq;
    auto rec = [&](auto&& self, std::uint32_t set, Mask gain) -> void {
      if (((set >> x) & 1u) && ((set >> y) & 1u)) {
        bool every_element_helps = true;
        for (std::uint32_t s = set; s; s &= s - 1)
          if (!(gain & touching_[std::countr_zero(s)])) {
            every_element_helps = false;
            break;
          }
        if (every_element_helps) out.push_back({set, gain, seq});
      }
      for (std::uint32_t cand = avail & ~set; cand; cand &= cand - 1) {
        const int z = std::countr_zero(cand);
        if (order_.up[z] & set) continue;  // z below something already listed
        if (z == y && !((set >> x) & 1u)) continue;
        Mask g = gain;
        for (std::uint32_t s = set; s; s &= s - 1) g |= bit(std::countr_zero(s), z);
        g &= u;
        const std::uint32_t next = set | (1u << z);
        if (!seen.insert({g, next}).second) continue;
        seq.push_back(static_cast<ElementId>(z + 1));
        self(self, next, g);
        seq.pop_back();
      }
    };
    rec(rec, 0, 0);

    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      const int ga = std::popcount(a.gain), gb = std::popcount(b.gain);
      if (ga != gb) return ga > gb;
      return std::popcount(a.set) < std::popcount(b.set);
    });
    return out;
  }

  SmallOrder order_;
  SearchBudget budget_;
  Limits limits_;
  std::array<std::array<int, kExactMaxSize>, kExactMaxSize> index_{};
  std::vector<std::pair<int, int>> pairs_;
  std::array<Mask, kExactMaxSize> touching_{};
  std::array<std::vector<Mask>, kExactMaxSize> both_ways_{};
  std::unordered_set<PairKey, PairKeyHash> failed_;
  std::vector<List> path_;
};

// ---------------------------------------------------------------------------
// Dimension: exact set cover of the incomparable ordered pairs by linear
// extensions, iterative deepening on the number of extensions.
// ---------------------------------------------------------------------------

class DimSearch {
 public:
  DimSearch(const Poset& p, const SearchBudget& b) : budget_(b), limits_(b) {
    const SmallOrder order(p);
    const int n = order.n;
    std::array<std::array<int, kExactMaxSize>, kExactMaxSize> index{};
    int count = 0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) index[x][y] = order.incomparable(x, y) ? count++ : -1;
    all_ = count == 64 ? ~Mask{0} : (Mask{1} << count) - 1;

    std::unordered_map<Mask, std::size_t> by_mask;
    for (auto& le : linear_extensions(p)) {
      Mask m = 0;
      for (std::size_t i = 0; i < le.size(); ++i)
        for (std::size_t j = i + 1; j < le.size(); ++j) {
          const int k = index[le[i] - 1][le[j] - 1];
          if (k >= 0) m |= Mask{1} << k;
        }
      if (by_mask.emplace(m, extensions_.size()).second) {
        masks_.push_back(m);
        extensions_.push_back(std::move(le));
      }
    }
    // Larger coverage first.
    std::vector<std::size_t> ord(masks_.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
      return std::popcount(masks_[a]) > std::popcount(masks_[b]);
    });
    std::vector<Mask> m2;
    std::vector<List> e2;
    for (auto i : ord) {
      m2.push_back(masks_[i]);
      e2.push_back(extensions_[i]);
    }
    masks_ = std::move(m2);
    extensions_ = std::move(e2);
  }

  ExactResult run(std::size_t n) {
    ExactResult res;
    int t = 1;
    try {
      for (; t <= budget_.d_max; ++t) {
        chosen_.clear();
        if (solve(all_, t)) {
          res.value = res.lower_bound = t;
          res.witness.n = n;
          for (auto i : chosen_) res.witness.lists.push_back(extensions_[i]);
          // Pad with any extension so a chain still gets one list.
          while (static_cast<int>(res.witness.lists.size()) < t) res.witness.lists.push_back(extensions_[0]);
          res.nodes = limits_.nodes();
          return res;
        }
      }
    } catch (const LimitHit&) {
    }
    res.exceeded = true;
    res.lower_bound = t;
    res.nodes = limits_.nodes();
    return res;
  }

 private:
  bool solve(Mask u, int t) {
    if (u == 0) return true;
    if (t == 0) return false;
    limits_.tick();
    const PairKey key{u, static_cast<std::uint64_t>(t)};
    if (failed_.count(key)) return false;
    const Mask target = u & (~u + 1);
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      if (!(masks_[i] & target)) continue;
      if (t == 1 && (u & ~masks_[i])) continue;
      chosen_.push_back(i);
      if (solve(u & ~masks_[i], t - 1)) return true;
      chosen_.pop_back();
    }
    failed_.insert(key);
    return false;
  }

  SearchBudget budget_;
  Limits limits_;
  Mask all_ = 0;
  std::vector<Mask> masks_;
  std::vector<List> extensions_;
  std::vector<std::size_t> chosen_;
  std::unordered_set<PairKey, PairKeyHash> failed_;
};

// ---------------------------------------------------------------------------
// 2-dimension: assign subsets of {0..d-1} along a linear extension.
// Coordinates whose columns agree on every element assigned so far are
// interchangeable, so within such a class only "the first j coordinates"
// is tried for each j.
// ---------------------------------------------------------------------------

class TwodimSearch {
 public:
  TwodimSearch(const Poset& p, const SearchBudget& b) : order_(p), limits_(b) {
    for (ElementId a : p.topological_order()) sequence_.push_back(static_cast<int>(a - 1));
  }

  bool feasible(int d) {
    d_ = d;
    images_.assign(static_cast<std::size_t>(order_.n), 0);
    std::vector<std::uint64_t> classes;
    if (d > 0) classes.push_back(d == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1);
    return place(0, classes);
  }

  const std::vector<std::uint64_t>& images() const { return images_; }
  std::uint64_t nodes() const { return limits_.nodes(); }

 private:
  bool place(std::size_t i, const std::vector<std::uint64_t>& classes) {
    if (i == sequence_.size()) return true;
    limits_.tick();
    const int z = sequence_[i];
    std::uint64_t required = 0;
    for (std::size_t k = 0; k < i; ++k) {
      const int w = sequence_[k];
      if (order_.less(w, z)) required |= images_[w];
    }
    return choose(i, z, classes, 0, 0, required);
  }

  bool choose(std::size_t i, int z, const std::vector<std::uint64_t>& classes, std::size_t c,
              std::uint64_t image, std::uint64_t required) {
    if (c == classes.size()) {
      if (!compatible(i, z, image)) return false;
      images_[z] = image;
      std::vector<std::uint64_t> refined;
      for (auto cls : classes) {
        if (cls & image) refined.push_back(cls & image);
        if (cls & ~image) refined.push_back(cls & ~image);
      }
      return place(i + 1, refined);
    }
    const std::uint64_t cls = classes[c];
    if (cls & required) return choose(i, z, classes, c + 1, image | cls, required);
    std::uint64_t prefix = 0;
    for (std::uint64_t rest = cls;; rest &= rest - 1) {
      if (choose(i, z, classes, c + 1, image | prefix, required)) return true;
      if (!rest) break;
      prefix |= rest & (~rest + 1);
    }
    return false;
  }

  bool compatible(std::size_t i, int z, std::uint64_t image) const {
    for (std::size_t k = 0; k < i; ++k) {
      const int w = sequence_[k];
      const std::uint64_t s = images_[w];
      if (s == image) return false;
      const bool w_sub = (s & ~image) == 0;
      const bool z_sub = (image & ~s) == 0;
      if (order_.less(w, z)) {
        if (!w_sub) return false;
      } else if (w_sub || z_sub) {
        return false;
      }
    }
    return true;
  }

  SmallOrder order_;
  Limits limits_;
  std::vector<int> sequence_;
  std::vector<std::uint64_t> images_;
  int d_ = 0;
};

int longest_chain(const Poset& p) {
  std::vector<int> len(p.size(), 1);
  int best = 1;
  for (ElementId a : p.topological_order()) {
    p.for_each_below(a, [&](ElementId b) { len[a - 1] = std::max(len[a - 1], len[b - 1] + 1); });
    best = std::max(best, len[a - 1]);
  }
  return best;
}

}  // namespace

std::vector<List> linear_extensions(const Poset& p) {
  require_size(p, kExactMaxSize, "linear extension enumeration");
  const SmallOrder order(p);
  const int n = order.n;
  std::vector<List> out;
  List seq;
  auto rec = [&](auto&& self, std::uint32_t placed) -> void {
    if (static_cast<int>(seq.size()) == n) {
      out.push_back(seq);
      return;
    }
    for (int z = 0; z < n; ++z) {
      if ((placed >> z) & 1u) continue;
      if (order.down[z] & ~placed) continue;
      seq.push_back(static_cast<ElementId>(z + 1));
      self(self, placed | (1u << z));
      seq.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

ExactResult exact_ldim(const Poset& p, const SearchBudget& budget) {
  require_size(p, kExactMaxSize, "exact_ldim");
  return LdimSearch(p, budget).run();
}

ExactResult exact_dim(const Poset& p, const SearchBudget& budget) {
  require_size(p, kExactMaxSize, "exact_dim");
  return DimSearch(p, budget).run(p.size());
}

ExactResult exact_twodim(const Poset& p, const SearchBudget& budget) {
  require_size(p, kTwodimMaxSize, "exact_twodim");
  const int n = static_cast<int>(p.size());
  int d = std::max(ceil_log2(p.size()), longest_chain(p) - 1);
  const int hi = std::min(n, budget.d_max);
  TwodimSearch search(p, budget);
  ExactResult res;
  try {
    for (; d <= hi; ++d) {
      if (search.feasible(d)) {
        res.value = res.lower_bound = d;
        res.images = search.images();
        res.nodes = search.nodes();
        return res;
      }
    }
  } catch (const LimitHit&) {
  }
  res.exceeded = true;
  res.lower_bound = d;
  res.nodes = search.nodes();
  return res;
}

}  // namespace ldim
