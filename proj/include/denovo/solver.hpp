#ifndef DENOVO_SOLVER_HPP
#define DENOVO_SOLVER_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"

namespace denovo {

// Square bit matrix, row-major.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_((n * n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const {
    const auto b = i * n_ + j;
    return (words_[b >> 6] >> (b & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    const auto b = i * n_ + j;
    if (v)
      words_[b >> 6] |= std::uint64_t{1} << (b & 63);
    else
      words_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// M(i,j): paths x_0 -> x_i and y_j -> y_0 that together hold exactly one node
// of every pair 1..max(i,j).
struct MTable {
  BitMatrix bits;
  std::size_t k() const { return bits.size() - 1; }
  bool operator()(std::size_t i, std::size_t j) const { return bits(i, j); }
};

// N(i,j): a path x_i -> y_j holding exactly one node of every pair
// min(i,j)..k.
struct NTable {
  BitMatrix bits;
  std::size_t k() const { return bits.size() - 1; }
  bool operator()(std::size_t i, std::size_t j) const { return bits(i, j); }
};

template <class T>
concept MAccess = requires(const T& m, std::size_t i) {
  { m(i, i) } -> std::convertible_to<bool>;
};

namespace detail {

// Reusable 0/1 marks over pair indices, cleared after each use.
struct Marks {
  std::vector<std::uint8_t> flag;
  std::vector<std::size_t> touched;
  explicit Marks(std::size_t n) : flag(n, 0) {}
  void set(std::size_t i) {
    if (!flag[i]) touched.push_back(i);
    flag[i] = 1;
  }
  bool operator[](std::size_t i) const { return flag[i]; }
  void clear() {
    for (auto i : touched) flag[i] = 0;
    touched.clear();
  }
};

}  // namespace detail

/// Fills M with the four-rule recurrence, frontier j = 2..k, seeded by
/// M(0,0), M(1,0) and M(0,1). Plain edges only.
inline MTable compute_m(const NCSpectrumGraph& g) {
  const std::size_t k = g.k();
  MTable m{BitMatrix(k + 1)};
  auto& M = m.bits;
  M.set(0, 0);
  if (k == 0) return m;
  M.set(1, 0, g.has_edge(g.x(0), g.x(1)));
  M.set(0, 1, g.has_edge(g.y(1), g.y(0)));

  detail::Marks into_x(k + 1), from_y(k + 1);
  for (std::size_t j = 2; j <= k; ++j) {
    for (auto id : g.in_edge_ids(g.x(j))) {
      const auto& e = g.edges()[id];
      if (e.kind == EdgeKind::plain && g.is_x(e.from)) into_x.set(g.pair_of(e.from));
    }
    for (const auto& e : g.out_edges(g.y(j)))
      if (e.kind == EdgeKind::plain && !g.is_x(e.to)) from_y.set(g.pair_of(e.to));
    const bool x_step = into_x[j - 1];  // E(x_{j-1}, x_j)
    const bool y_step = from_y[j - 1];  // E(y_j, y_{j-1})
    for (std::size_t i = 0; i + 2 <= j; ++i) {
      if (M(i, j - 1)) {
        if (into_x[i]) M.set(j, j - 1);
        if (y_step) M.set(i, j);
      }
      if (M(j - 1, i)) {
        if (x_step) M.set(j, i);
        if (from_y[i]) M.set(j - 1, j);
      }
    }
    into_x.clear();
    from_y.clear();
  }
  return m;
}

/// Mirror of compute_m run from the right end. Besides the four rules, each
/// frontier j is seeded with the paths x_{j+1} -> ... -> x_k -> y_j and
/// x_j -> y_k -> ... -> y_{j+1}, which the rules alone never produce.
inline NTable compute_n(const NCSpectrumGraph& g) {
  const std::size_t k = g.k();
  NTable n{BitMatrix(k + 1)};
  auto& N = n.bits;
  if (k == 0) return n;

  // x_chain[j]: x_j -> x_{j+1} -> ... -> x_k; y_chain[j]: y_k -> ... -> y_j.
  std::vector<std::uint8_t> x_chain(k + 1, 0), y_chain(k + 1, 0);
  x_chain[k] = y_chain[k] = 1;
  for (std::size_t j = k; j-- > 0;) {
    x_chain[j] = x_chain[j + 1] && g.has_edge(g.x(j), g.x(j + 1));
    y_chain[j] = y_chain[j + 1] && g.has_edge(g.y(j + 1), g.y(j));
  }

  detail::Marks from_x(k + 1), into_y(k + 1);
  for (std::size_t j = k; j-- > 0;) {
    if (x_chain[j + 1] && g.has_edge(g.x(k), g.y(j))) N.set(j + 1, j);
    if (y_chain[j + 1] && g.has_edge(g.x(j), g.y(k))) N.set(j, j + 1);
    if (j + 2 > k) continue;

    for (const auto& e : g.out_edges(g.x(j)))
      if (e.kind == EdgeKind::plain && g.is_x(e.to)) from_x.set(g.pair_of(e.to));
    for (auto id : g.in_edge_ids(g.y(j))) {
      const auto& e = g.edges()[id];
      if (e.kind == EdgeKind::plain && !g.is_x(e.from)) into_y.set(g.pair_of(e.from));
    }
    const bool x_step = from_x[j + 1];  // E(x_j, x_{j+1})
    const bool y_step = into_y[j + 1];  // E(y_{j+1}, y_j)
    for (std::size_t i = k; i >= j + 2; --i) {
      if (N(i, j + 1)) {
        if (from_x[i]) N.set(j, j + 1);
        if (y_step) N.set(i, j);
      }
      if (N(j + 1, i)) {
        if (x_step) N.set(j, i);
        if (into_y[i]) N.set(j + 1, j);
      }
    }
    from_x.clear();
    into_y.clear();
  }
  return n;
}

// Linear encoding of M: run lengths of consecutive inside edges and the two
// sub/super-diagonals, indexed by pair.
struct LceDia {
  std::vector<std::size_t> lce_x, lce_y;
  std::vector<std::uint8_t> dia_x, dia_y;

  std::size_t k() const { return lce_x.size() - 1; }
  bool operator()(std::size_t i, std::size_t j) const;
};

/// O(1) reconstruction of M(i,j) from lce/dia.
inline bool m_entry(const LceDia& ld, std::size_t i, std::size_t j) {
  if (i > ld.k() || j > ld.k()) throw std::out_of_range("M index out of range");
  if (i == j) return i == 0;
  if (i < j) {
    if (i + 1 == j) return ld.dia_y[j];
    return ld.dia_y[i + 1] && ld.lce_y[j] >= j - i - 1;
  }
  if (j + 1 == i) return ld.dia_x[i];
  return ld.dia_x[j + 1] && ld.lce_x[j + 1] >= i - j - 1;
}

inline bool LceDia::operator()(std::size_t i, std::size_t j) const { return m_entry(*this, i, j); }

inline LceDia compute_lce_dia(const NCSpectrumGraph& g) {
  const std::size_t k = g.k();
  LceDia ld{std::vector<std::size_t>(k + 1, 0), std::vector<std::size_t>(k + 1, 0),
            std::vector<std::uint8_t>(k + 1, 0), std::vector<std::uint8_t>(k + 1, 0)};

  // Runs are filled back to front, so each consecutive edge is looked up once.
  for (std::size_t i = k; i-- > 0;)
    if (g.has_edge(g.x(i), g.x(i + 1))) ld.lce_x[i] = ld.lce_x[i + 1] + 1;
  for (std::size_t i = 1; i <= k; ++i)
    if (g.has_edge(g.y(i), g.y(i - 1))) ld.lce_y[i] = ld.lce_y[i - 1] + 1;

  ld.dia_x[0] = ld.dia_y[0] = 1;
  if (k == 0) return ld;
  ld.dia_x[1] = g.has_edge(g.x(0), g.x(1));
  ld.dia_y[1] = g.has_edge(g.y(1), g.y(0));
  for (std::size_t j = 2; j <= k; ++j) {
    // dia(x_j) = M(j, j-1): some inside edge x_i -> x_j with i <= j-2 and M(i, j-1).
    for (auto id : g.in_edge_ids(g.x(j))) {
      const auto& e = g.edges()[id];
      if (e.kind != EdgeKind::plain || !g.is_x(e.from)) continue;
      const auto i = g.pair_of(e.from);
      if (i + 2 <= j && m_entry(ld, i, j - 1)) {
        ld.dia_x[j] = 1;
        break;
      }
    }
    // dia(y_j) = M(j-1, j): some inside edge y_j -> y_p with p <= j-2 and M(j-1, p).
    for (const auto& e : g.out_edges(g.y(j))) {
      if (e.kind != EdgeKind::plain || g.is_x(e.to)) continue;
      const auto p = g.pair_of(e.to);
      if (p + 2 <= j && m_entry(ld, j - 1, p)) {
        ld.dia_y[j] = 1;
        break;
      }
    }
  }
  return ld;
}

struct FeasiblePath {
  std::vector<std::size_t> nodes;  // positions from x_0 to y_0
  std::vector<Edge> edges;
};

namespace detail {

inline const Edge* find_edge(const NCSpectrumGraph& g, std::size_t from, std::size_t to, EdgeKind kind) {
  for (const auto& e : g.out_edges(from))
    if (e.to == to && e.kind == kind) return &e;
  return nullptr;
}

inline FeasiblePath assemble(const NCSpectrumGraph& g, const std::vector<std::size_t>& left_rev,
                             const std::vector<std::size_t>& right) {
  FeasiblePath p;
  p.nodes.assign(left_rev.rbegin(), left_rev.rend());
  p.nodes.insert(p.nodes.end(), right.begin(), right.end());
  for (std::size_t t = 0; t + 1 < p.nodes.size(); ++t)
    p.edges.push_back(*find_edge(g, p.nodes[t], p.nodes[t + 1], EdgeKind::plain));
  return p;
}

// Terminal states (i, j) with M(i,j), max(i,j) = k and a cross edge x_i -> y_j:
// last row by ascending j, then last column by ascending i.
template <MAccess M>
std::vector<std::pair<std::size_t, std::size_t>> terminals(const NCSpectrumGraph& g, const M& m) {
  const std::size_t k = g.k();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (k == 0) {
    if (g.has_edge(g.x(0), g.y(0))) out.emplace_back(0, 0);
    return out;
  }
  for (std::size_t j = 0; j < k; ++j)
    if (m(k, j) && g.has_edge(g.x(k), g.y(j))) out.emplace_back(k, j);
  for (std::size_t i = 0; i < k; ++i)
    if (m(i, k) && g.has_edge(g.x(i), g.y(k))) out.emplace_back(i, k);
  return out;
}

// Predecessor states of (i, j), largest index first.
template <MAccess M>
void predecessors(const NCSpectrumGraph& g, const M& m, std::size_t i, std::size_t j,
                  std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.clear();
  if (i > j) {
    if (i == j + 1) {
      if (j == 0) {
        out.emplace_back(0, 0);
        return;
      }
      // in-edges are ordered by source position, so walk them backwards
      const auto& ids = g.in_edge_ids(g.x(i));
      for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
        const auto& e = g.edges()[*it];
        if (e.kind != EdgeKind::plain || !g.is_x(e.from)) continue;
        const auto p = g.pair_of(e.from);
        if (p < j && m(p, j)) out.emplace_back(p, j);
      }
    } else {
      out.emplace_back(i - 1, j);
    }
  } else {
    if (j == i + 1) {
      if (i == 0) {
        out.emplace_back(0, 0);
        return;
      }
      // out-edges ascend by target position, i.e. descend by y pair index
      for (const auto& e : g.out_edges(g.y(j))) {
        if (e.kind != EdgeKind::plain || g.is_x(e.to)) continue;
        const auto p = g.pair_of(e.to);
        if (p < i && m(i, p)) out.emplace_back(i, p);
      }
    } else {
      out.emplace_back(i, j - 1);
    }
  }
}

}  // namespace detail

/// One feasible solution, or nothing. Works from the full table or from the
/// lce/dia encoding.
template <MAccess M>
std::optional<FeasiblePath> extract_solution(const NCSpectrumGraph& g, const M& m) {
  const auto ends = detail::terminals(g, m);
  if (ends.empty()) return std::nullopt;
  auto [i, j] = ends.front();
  std::vector<std::size_t> left_rev{g.x(i)}, right{g.y(j)};
  std::vector<std::pair<std::size_t, std::size_t>> preds;
  while (i != 0 || j != 0) {
    detail::predecessors(g, m, i, j, preds);
    if (preds.empty()) throw std::logic_error("M table inconsistent with graph");
    const auto [pi, pj] = preds.front();
    if (pi != i) left_rev.push_back(g.x(pi));
    if (pj != j) right.push_back(g.y(pj));
    i = pi;
    j = pj;
  }
  return detail::assemble(g, left_rev, right);
}

/// All feasible solutions by exhaustive backtracking, in the same order as
/// extract_solution would pick them, truncated at limit.
template <MAccess M>
std::vector<FeasiblePath> enumerate_solutions(const NCSpectrumGraph& g, const M& m, std::size_t limit) {
  std::vector<FeasiblePath> out;
  if (limit == 0) return out;
  std::vector<std::size_t> left_rev, right;
  auto dfs = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    if (out.size() >= limit) return;
    if (i == 0 && j == 0) {
      out.push_back(detail::assemble(g, left_rev, right));
      return;
    }
    std::vector<std::pair<std::size_t, std::size_t>> preds;
    detail::predecessors(g, m, i, j, preds);
    for (auto [pi, pj] : preds) {
      if (pi != i) left_rev.push_back(g.x(pi));
      if (pj != j) right.push_back(g.y(pj));
      self(self, pi, pj);
      if (pi != i) left_rev.pop_back();
      if (pj != j) right.pop_back();
      if (out.size() >= limit) return;
    }
  };
  for (auto [i, j] : detail::terminals(g, m)) {
    left_rev.assign(1, g.x(i));
    right.assign(1, g.y(j));
    dfs(dfs, i, j);
    if (out.size() >= limit) break;
  }
  return out;
}

/// Residue multisets explaining one edge. Water-typed edges decompose
/// gap -/+ water; a pure water edge yields the empty multiset.
inline std::vector<std::string> edge_decompositions(const Edge& e, const Alphabet& alphabet, MassUnit tol,
                                                    std::size_t limit) {
  MassUnit residues = e.gap;
  if (e.kind == EdgeKind::plus_water) residues = e.gap - alphabet.water();
  if (e.kind == EdgeKind::minus_water) residues = e.gap + alphabet.water();
  auto out = decompose_gap(alphabet, residues, tol, limit);
  if (e.kind == EdgeKind::plus_water && residues.value <= tol.value && -residues.value <= tol.value)
    out.insert(out.begin(), std::string{});
  if (out.size() > limit) out.resize(limit);
  return out;
}

/// Peptide strings spelled by a path: each edge contributes every ordering of
/// each of its residue multisets. Fewest residues first, then lexicographic.
inline std::vector<std::string> expand_sequences(const FeasiblePath& p, const Alphabet& alphabet, MassUnit tol,
                                                 std::size_t limit) {
  // Hard cap on strings gathered for one residue count.
  constexpr std::size_t kLevelCap = 200000;
  std::vector<std::string> out;
  if (limit == 0) return out;

  std::vector<std::vector<std::string>> options;
  std::size_t min_total = 0, max_total = 0;
  for (const auto& e : p.edges) {
    std::vector<std::string> orders;
    for (auto ms : edge_decompositions(e, alphabet, tol, limit)) {
      std::sort(ms.begin(), ms.end());
      do orders.push_back(ms);
      while (std::next_permutation(ms.begin(), ms.end()));
    }
    if (orders.empty()) return out;
    std::sort(orders.begin(), orders.end());
    std::size_t lo = orders.front().size(), hi = lo;
    for (const auto& o : orders) {
      lo = std::min(lo, o.size());
      hi = std::max(hi, o.size());
    }
    min_total += lo;
    max_total += hi;
    options.push_back(std::move(orders));
  }

  // Fewest residues still reachable from edge t onwards.
  std::vector<std::size_t> min_rest(options.size() + 1, 0), max_rest(options.size() + 1, 0);
  for (std::size_t t = options.size(); t-- > 0;) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& o : options[t]) {
      lo = std::min(lo, o.size());
      hi = std::max(hi, o.size());
    }
    min_rest[t] = min_rest[t + 1] + lo;
    max_rest[t] = max_rest[t + 1] + hi;
  }

  std::string current;
  for (std::size_t total = min_total; total <= max_total && out.size() < limit; ++total) {
    std::set<std::string> level;
    auto dfs = [&](auto&& self, std::size_t t) -> void {
      if (level.size() >= kLevelCap) return;
      if (t == options.size()) {
        if (current.size() == total) level.insert(current);
        return;
      }
      for (const auto& o : options[t]) {
        const auto len = current.size() + o.size();
        if (len + min_rest[t + 1] > total || len + max_rest[t + 1] < total) continue;
        current += o;
        self(self, t + 1);
        current.resize(current.size() - o.size());
      }
    };
    dfs(dfs, 0);
    for (const auto& s : level) {
      if (out.size() >= limit) break;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace denovo

#endif  // DENOVO_SOLVER_HPP
