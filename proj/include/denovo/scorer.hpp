#ifndef DENOVO_SCORER_HPP
#define DENOVO_SCORER_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "denovo/graph.hpp"
#include "denovo/solver.hpp"
#include "denovo/spectrum.hpp"

namespace denovo {

// Per-edge score s(u, v). The default decomposes into a reward for the
// target node minus a penalty for the edge type.
class ScoreFunction {
 public:
  using Fn = std::function<double(const NCSpectrumGraph&, const Edge&)>;

  explicit ScoreFunction(Fn fn) : fn_(std::move(fn)) {}

  double operator()(const NCSpectrumGraph& g, const Edge& e) const { return fn_(g, e); }

  static ScoreFunction constant(double v) {
    return ScoreFunction([v](const NCSpectrumGraph&, const Edge&) { return v; });
  }

 private:
  Fn fn_;
};

struct ScoreOptions {
  double reward_floor = 0.1;
  double plain_penalty = 0.0;
  double water_penalty = 0.5;
};

struct DefaultScore {
  double max_intensity = 0.0;
  ScoreOptions opts;

  // Pair intensity over the most intense peak, capped at 1 so a pair seen as
  // both b and y ions ties the strongest peak. Auxiliary nodes and nodes
  // without intensity get the floor.
  double node_reward(const NCSpectrumGraph& g, std::size_t pos) const {
    const auto& n = g.node(pos);
    if (n.pair == 0 || !(n.intensity > 0.0) || !(max_intensity > 0.0)) return opts.reward_floor;
    return std::min(1.0, n.intensity / max_intensity);
  }
  double type_penalty(EdgeKind kind) const {
    return kind == EdgeKind::plain ? opts.plain_penalty : opts.water_penalty;
  }
};

inline DefaultScore default_score_parts(const Spectrum& s, const ScoreOptions& opts = {}) {
  DefaultScore d{0.0, opts};
  for (const auto& p : s.peaks) d.max_intensity = std::max(d.max_intensity, p.intensity);
  return d;
}

inline ScoreFunction default_score(const Spectrum& s, const ScoreOptions& opts = {}) {
  auto parts = default_score_parts(s, opts);
  return ScoreFunction([parts](const NCSpectrumGraph& g, const Edge& e) {
    return parts.node_reward(g, e.to) - parts.type_penalty(e.kind);
  });
}

// Q(i, j[, c]) with a reachability flag per cell; c is the running water
// balance in {-1, 0, +1} when the table tracks water.
class QTable {
 public:
  struct Cell {
    double value = 0.0;
    bool reachable = false;
    std::size_t pred_i = 0, pred_j = 0;
    int pred_c = 0;
    std::size_t edge = 0;  // index into g.edges()
  };

  QTable(std::size_t k, bool water) : k_(k), water_(water), cells_((water ? 3 : 1) * (k + 1) * (k + 1)) {}

  std::size_t k() const { return k_; }
  bool tracks_water() const { return water_; }
  Cell& at(std::size_t i, std::size_t j, int c = 0) { return cells_[index(i, j, c)]; }
  const Cell& at(std::size_t i, std::size_t j, int c = 0) const { return cells_[index(i, j, c)]; }
  bool reachable(std::size_t i, std::size_t j, int c = 0) const { return at(i, j, c).reachable; }
  double value(std::size_t i, std::size_t j, int c = 0) const { return at(i, j, c).value; }
  std::vector<int> balances() const { return water_ ? std::vector<int>{-1, 0, 1} : std::vector<int>{0}; }

 private:
  std::size_t index(std::size_t i, std::size_t j, int c) const {
    const std::size_t layer = water_ ? static_cast<std::size_t>(c + 1) : 0;
    return (layer * (k_ + 1) + i) * (k_ + 1) + j;
  }

  std::size_t k_;
  bool water_;
  std::vector<Cell> cells_;
};

namespace detail {

inline void relax(QTable& q, std::size_t i, std::size_t j, int c, double value, std::size_t pi, std::size_t pj,
                  int pc, std::size_t edge) {
  auto& cell = q.at(i, j, c);
  if (!cell.reachable || value > cell.value) cell = {value, true, pi, pj, pc, edge};
}

inline QTable fill_q(const NCSpectrumGraph& g, const ScoreFunction& sf, bool water) {
  const std::size_t k = g.k();
  QTable q(k, water);
  q.at(0, 0, 0).reachable = true;
  const auto balances = q.balances();
  const auto& edges = g.edges();
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      // (a) R grows by y_j -> y_p.
      for (const auto& e : g.out_edges(g.y(j))) {
        if (g.is_x(e.to) || (!water && e.kind != EdgeKind::plain)) continue;
        const auto p = g.pair_of(e.to);
        const double s = sf(g, e);
        const auto id = static_cast<std::size_t>(&e - edges.data());
        for (int c : balances) {
          const int nc = c + water_delta(e.kind);
          if (nc < -1 || nc > 1 || !q.reachable(i, p, c)) continue;
          relax(q, i, j, nc, q.value(i, p, c) + s, i, p, c, id);
        }
      }
      // (b) L grows by x_p -> x_j.
      for (auto id : g.in_edge_ids(g.x(j))) {
        const auto& e = edges[id];
        if (!g.is_x(e.from) || (!water && e.kind != EdgeKind::plain)) continue;
        const auto p = g.pair_of(e.from);
        const double s = sf(g, e);
        for (int c : balances) {
          const int nc = c + water_delta(e.kind);
          if (nc < -1 || nc > 1 || !q.reachable(p, i, c)) continue;
          relax(q, j, i, nc, q.value(p, i, c) + s, p, i, c, id);
        }
      }
    }
  }
  return q;
}

}  // namespace detail

/// Maximum-score table over (L, R) pairs holding at most one node per pair.
/// Plain edges only.
inline QTable compute_q(const NCSpectrumGraph& g, const ScoreFunction& sf) { return detail::fill_q(g, sf, false); }

/// Same search over all edge types, tracking the net water count; states
/// leaving [-1, +1] are discarded.
inline QTable compute_q_water(const NCSpectrumGraph& g, const ScoreFunction& sf) {
  return detail::fill_q(g, sf, true);
}

struct ScoredPath {
  FeasiblePath path;
  double score = 0.0;
};

/// Best Q(i,j) + s(x_i, y_j) over reachable states with a cross edge, then
/// backtracks. With a water table only net-zero completions qualify.
inline std::optional<ScoredPath> best_scored_path(const NCSpectrumGraph& g, const QTable& q, const ScoreFunction& sf) {
  const std::size_t k = g.k();
  const bool water = q.tracks_water();
  bool found = false;
  double best = 0.0;
  std::size_t bi = 0, bj = 0, bedge = 0;
  int bc = 0;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i <= k; ++i) {
    for (const auto& e : g.out_edges(g.x(i))) {
      if (g.is_x(e.to) || (!water && e.kind != EdgeKind::plain)) continue;
      const auto j = g.pair_of(e.to);
      for (int c : q.balances()) {
        if (!q.reachable(i, j, c) || c + water_delta(e.kind) != 0) continue;
        const double total = q.value(i, j, c) + sf(g, e);
        if (!found || total > best) {
          found = true;
          best = total;
          bi = i;
          bj = j;
          bc = c;
          bedge = static_cast<std::size_t>(&e - edges.data());
        }
      }
    }
  }
  if (!found) return std::nullopt;

  std::vector<Edge> left_rev, right;
  std::size_t i = bi, j = bj;
  int c = bc;
  while (i != 0 || j != 0) {
    const auto& cell = q.at(i, j, c);
    const auto& e = edges[cell.edge];
    if (cell.pred_i != i)
      left_rev.push_back(e);
    else
      right.push_back(e);
    i = cell.pred_i;
    j = cell.pred_j;
    c = cell.pred_c;
  }
  ScoredPath out;
  out.score = best;
  out.path.edges.assign(left_rev.rbegin(), left_rev.rend());
  out.path.edges.push_back(edges[bedge]);
  out.path.edges.insert(out.path.edges.end(), right.begin(), right.end());
  out.path.nodes.push_back(g.x(0));
  for (const auto& e : out.path.edges) out.path.nodes.push_back(e.to);
  return out;
}

}  // namespace denovo

#endif  // DENOVO_SCORER_HPP
