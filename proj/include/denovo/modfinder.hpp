#ifndef DENOVO_MODFINDER_HPP
#define DENOVO_MODFINDER_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"
#include "denovo/solver.hpp"

namespace denovo {

struct ModificationCandidate {
  char residue;
  double delta;  // daltons, signed
};

struct ModificationReport {
  std::size_t from = 0, to = 0;  // node positions of the missing edge
  MassUnit left, right, gap;
  std::vector<ModificationCandidate> candidates;
  bool low_priority = false;  // an unmodified exact solution also exists
};

namespace detail {

// Does adding the plain edge (u, v) create a feasible solution through it?
// Glue conditions on M and N, one family per edge orientation.
class ModificationTest {
 public:
  ModificationTest(const NCSpectrumGraph& g, const MTable& m, const NTable& n) : g_(g), m_(m), n_(n) {
    const std::size_t k = g.k();
    x_chain_.assign(k + 1, 0);
    y_chain_.assign(k + 1, 0);
    x_chain_[k] = y_chain_[k] = 1;
    for (std::size_t j = k; j-- > 0;) {
      x_chain_[j] = x_chain_[j + 1] && g.has_edge(g.x(j), g.x(j + 1));
      y_chain_[j] = y_chain_[j + 1] && g.has_edge(g.y(j + 1), g.y(j));
    }
    for (const auto& e : g.edges()) {
      if (e.kind != EdgeKind::plain) continue;
      if (g.is_x(e.from) && g.is_x(e.to)) x_inside_.push_back(&e);
      if (!g.is_x(e.from) && !g.is_x(e.to)) y_inside_.push_back(&e);
      if (g.is_x(e.from) && !g.is_x(e.to)) {
        if (g.pair_of(e.from) == k) from_xk_.push_back(g.pair_of(e.to));
        if (g.pair_of(e.to) == k) into_yk_.push_back(g.pair_of(e.from));
      }
    }
  }

  bool operator()(std::size_t u, std::size_t v) const {
    const std::size_t k = g_.k();
    if (g_.is_x(u) && g_.is_x(v)) {
      const auto i = g_.pair_of(u), j = g_.pair_of(v);
      if (i + 1 < j) return m_(i, i + 1) && n_(j, i + 1);
      // x_i, x_{i+1} both on the path: some edge into y_p (p < i, or the end
      // node y_0 when i = 0) jumps over y_{i+1} and y_i.
      auto below = [i](std::size_t p) { return p < i || p == 0; };
      for (const Edge* e : y_inside_) {
        const auto q = g_.pair_of(e->from), p = g_.pair_of(e->to);
        if (q > j && below(p) && m_(i, p) && n_(j, q)) return true;
      }
      if (x_chain_[j])
        for (auto p : from_xk_)
          if (below(p) && m_(i, p)) return true;
      return false;
    }
    if (!g_.is_x(u) && !g_.is_x(v)) {
      const auto q = g_.pair_of(u), p = g_.pair_of(v);
      if (p + 1 < q) return m_(p + 1, p) && n_(p + 1, q);
      auto below = [p](std::size_t s) { return s < p || s == 0; };
      for (const Edge* e : x_inside_) {
        const auto s = g_.pair_of(e->from), t = g_.pair_of(e->to);
        if (below(s) && t > q && m_(s, p) && n_(t, q)) return true;
      }
      if (y_chain_[q])
        for (auto s : into_yk_)
          if (below(s) && m_(s, p)) return true;
      return false;
    }
    const auto i = g_.pair_of(u), j = g_.pair_of(v);
    return std::max(i, j) == k && m_(i, j);
  }

 private:
  const NCSpectrumGraph& g_;
  const MTable& m_;
  const NTable& n_;
  std::vector<std::uint8_t> x_chain_, y_chain_;
  std::vector<const Edge*> x_inside_, y_inside_;
  std::vector<std::size_t> from_xk_, into_yk_;
};

}  // namespace detail

/// Every missing edge (u, v) with 0 < gap < h between different pairs whose
/// addition yields a feasible solution through it, deduplicated by
/// coordinates. Each report lists residue + delta explanations of its gap.
inline std::vector<ModificationReport> find_modifications(const NCSpectrumGraph& g, const MTable& m, const NTable& n,
                                                          const Alphabet& alphabet, MassUnit h) {
  const detail::ModificationTest test(g, m, n);
  const bool solved = extract_solution(g, m).has_value();
  std::vector<ModificationReport> out;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      const MassUnit gap = g.coordinate(v) - g.coordinate(u);
      if (gap.value <= 0 || gap >= h || !g.may_join(u, v)) continue;
      if (g.has_edge(u, v) || !test(u, v)) continue;
      if (!seen.emplace(g.coordinate(u).value, g.coordinate(v).value).second) continue;
      ModificationReport r{u, v, g.coordinate(u), g.coordinate(v), gap, {}, solved};
      for (const auto& res : alphabet.residues())
        r.candidates.push_back({res.symbol, alphabet.to_daltons(gap - res.mass)});
      std::stable_sort(r.candidates.begin(), r.candidates.end(),
                       [](const auto& a, const auto& b) { return std::abs(a.delta) < std::abs(b.delta); });
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.left < b.left || (a.left == b.left && a.right < b.right);
  });
  return out;
}

}  // namespace denovo

#endif  // DENOVO_MODFINDER_HPP
