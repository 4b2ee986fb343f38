#ifndef DENOVO_GRAPH_HPP
#define DENOVO_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "denovo/mass.hpp"
#include "denovo/spectrum.hpp"

namespace denovo {

enum class Side : std::uint8_t { x, y };
enum class Terminal : std::uint8_t { N, C };
enum class EdgeKind : std::uint8_t { plain, plus_water, minus_water };

inline int water_delta(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::plus_water: return 1;
    case EdgeKind::minus_water: return -1;
    default: return 0;
  }
}

inline const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::plus_water: return "plus-water";
    case EdgeKind::minus_water: return "minus-water";
    default: return "plain";
  }
}

struct EdgeType {
  EdgeKind kind = EdgeKind::plain;
  int water_delta() const { return denovo::water_delta(kind); }
  friend bool operator==(EdgeType, EdgeType) = default;
};

struct Node {
  std::size_t pair = 0;
  Side side = Side::x;
  Terminal kind = Terminal::N;
  MassUnit coordinate;
  std::vector<std::size_t> sources;  // indices into the spectrum's peak list
  double intensity = 0.0;            // summed source peaks; 0 for pair 0
};

struct Edge {
  std::size_t from = 0;  // node positions
  std::size_t to = 0;
  EdgeKind kind = EdgeKind::plain;
  MassUnit gap;
};

// Nodes are stored by position in coordinate order x_0..x_k, y_k..y_0, so
// x_i sits at position i and y_j at position 2k+1-j. Immutable once built.
class NCSpectrumGraph {
 public:
  NCSpectrumGraph(std::vector<Node> nodes, std::vector<Edge> edges, MassUnit parent_mass, double delta,
                  std::vector<std::string> warnings = {})
      : nodes_(std::move(nodes)), edges_(std::move(edges)), parent_(parent_mass), delta_(delta),
        warnings_(std::move(warnings)) {
    if (nodes_.size() < 2 || nodes_.size() % 2 != 0) throw std::invalid_argument("graph needs 2k+2 nodes");
    k_ = nodes_.size() / 2 - 1;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      if (nodes_[p].pair != pair_of(p) || nodes_[p].side != side_of(p))
        throw std::invalid_argument("node " + std::to_string(p) + " is not in x_0..x_k,y_k..y_0 order");
      if (p > 0 && nodes_[p].coordinate < nodes_[p - 1].coordinate)
        throw std::invalid_argument("node coordinates are not sorted");
    }
    for (const auto& e : edges_) {
      if (e.from >= nodes_.size() || e.to >= nodes_.size()) throw std::invalid_argument("edge endpoint out of range");
      if (!may_join(e.from, e.to)) throw std::invalid_argument("edge joins nodes of the same pair");
      if (!(nodes_[e.from].coordinate < nodes_[e.to].coordinate))
        throw std::invalid_argument("edge does not point to a greater coordinate");
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      if (a.from != b.from) return a.from < b.from;
      if (a.to != b.to) return a.to < b.to;
      return a.kind < b.kind;
    });
    edges_.erase(std::unique(edges_.begin(), edges_.end(),
                             [](const Edge& a, const Edge& b) {
                               return a.from == b.from && a.to == b.to && a.kind == b.kind;
                             }),
                 edges_.end());
    out_begin_.assign(nodes_.size() + 1, 0);
    for (const auto& e : edges_) ++out_begin_[e.from + 1];
    for (std::size_t p = 0; p < nodes_.size(); ++p) out_begin_[p + 1] += out_begin_[p];
    in_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) in_[edges_[i].to].push_back(i);
  }

  std::size_t k() const { return k_; }
  std::size_t size() const { return nodes_.size(); }
  MassUnit parent_mass() const { return parent_; }
  double delta() const { return delta_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::size_t x(std::size_t i) const { return i; }
  std::size_t y(std::size_t j) const { return 2 * k_ + 1 - j; }
  std::size_t pair_of(std::size_t pos) const { return pos <= k_ ? pos : 2 * k_ + 1 - pos; }
  Side side_of(std::size_t pos) const { return pos <= k_ ? Side::x : Side::y; }
  bool is_x(std::size_t pos) const { return pos <= k_; }
  // Nodes of one peak never share an edge; the two auxiliary ends may.
  bool may_join(std::size_t u, std::size_t v) const { return pair_of(u) != pair_of(v) || pair_of(u) == 0; }

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t pos) const { return nodes_.at(pos); }
  MassUnit coordinate(std::size_t pos) const { return nodes_[pos].coordinate; }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Edge> out_edges(std::size_t pos) const {
    return {edges_.data() + out_begin_[pos], edges_.data() + out_begin_[pos + 1]};
  }
  const std::vector<std::size_t>& in_edge_ids(std::size_t pos) const { return in_[pos]; }

  bool has_edge(std::size_t from, std::size_t to, EdgeKind kind = EdgeKind::plain) const {
    auto out = out_edges(from);
    auto it = std::lower_bound(out.begin(), out.end(), std::pair{to, kind}, [](const Edge& e, const auto& key) {
      return e.to < key.first || (e.to == key.first && e.kind < key.second);
    });
    return it != out.end() && it->to == to && it->kind == kind;
  }

  // Copy with one extra edge; used to test candidate modification edges.
  NCSpectrumGraph with_edge(std::size_t from, std::size_t to, EdgeKind kind = EdgeKind::plain) const {
    auto edges = edges_;
    edges.push_back({from, to, kind, nodes_.at(to).coordinate - nodes_.at(from).coordinate});
    return NCSpectrumGraph(nodes_, std::move(edges), parent_, delta_, warnings_);
  }

  template <class Pred>
  NCSpectrumGraph without_edges(Pred drop) const {
    std::vector<Edge> edges;
    for (const auto& e : edges_)
      if (!drop(e)) edges.push_back(e);
    return NCSpectrumGraph(nodes_, std::move(edges), parent_, delta_, warnings_);
  }

  std::string label(std::size_t pos) const {
    return std::string(is_x(pos) ? "x" : "y") + std::to_string(pair_of(pos));
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  MassUnit parent_;
  double delta_;
  std::vector<std::string> warnings_;
  std::size_t k_ = 0;
  std::vector<std::size_t> out_begin_;
  std::vector<std::vector<std::size_t>> in_;
};

struct GraphOptions {
  MassUnit tolerance{0};
  bool water_edges = false;
};

/// Builds the NC-spectrum graph of a preprocessed spectrum.
///
/// Each peak w yields a complementary pair: the N-terminal reading
/// w - proton and its complement W - (w - proton). Pairs whose coordinates
/// coincide within the tolerance are merged. Every ordered pair of nodes from
/// different pairs (or x_0, y_0) with 0 < gap < h is tested against the mass
/// array.
inline NCSpectrumGraph build_graph(const Spectrum& s, const Alphabet& alphabet, const MassArray& masses,
                                   const GraphOptions& opts = {}) {
  if (!(s.parent_mass > alphabet.water_daltons())) throw MassError("parent mass must exceed the water mass");
  const MassUnit parent = alphabet.to_units(s.parent_mass);
  const MassUnit full = parent - alphabet.water();
  std::vector<std::string> warnings;

  struct Pair {
    MassUnit lo, hi;
    Terminal lo_kind;
    double intensity;
    std::vector<std::size_t> sources;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < s.peaks.size(); ++i) {
    const auto& peak = s.peaks[i];
    const double n_mass = peak.mass - alphabet.proton_daltons();
    if (n_mass <= 0.0) {
      warnings.push_back("peak " + detail::format_mass(peak.mass) + " dropped: below the proton mass");
      continue;
    }
    const MassUnit n = alphabet.to_units(n_mass);
    const MassUnit c = parent - n;
    const MassUnit lo = std::min(n, c), hi = std::max(n, c);
    if (lo.value <= 0 || hi >= full) {
      warnings.push_back("peak " + detail::format_mass(peak.mass) + " dropped: coordinate outside (0, W - water)");
      continue;
    }
    pairs.push_back({lo, hi, n <= c ? Terminal::N : Terminal::C, peak.intensity, {i}});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.intensity > b.intensity);
  });

  // Complementary or repeated readings of one ion collapse into one pair.
  std::vector<Pair> merged;
  for (auto& p : pairs) {
    if (!merged.empty() && p.lo - merged.back().lo <= opts.tolerance) {
      auto& m = merged.back();
      m.sources.insert(m.sources.end(), p.sources.begin(), p.sources.end());
      if (p.intensity > m.intensity) {
        m.lo = p.lo;
        m.hi = p.hi;
        m.lo_kind = p.lo_kind;
      }
      m.intensity += p.intensity;
      continue;
    }
    merged.push_back(std::move(p));
  }

  const std::size_t k = merged.size();
  std::vector<Node> nodes(2 * k + 2);
  nodes[0] = Node{0, Side::x, Terminal::N, MassUnit{0}, {}, 0.0};
  nodes[2 * k + 1] = Node{0, Side::y, Terminal::C, full, {}, 0.0};
  for (std::size_t i = 1; i <= k; ++i) {
    auto& p = merged[i - 1];
    std::sort(p.sources.begin(), p.sources.end());
    const Terminal hi_kind = p.lo_kind == Terminal::N ? Terminal::C : Terminal::N;
    nodes[i] = Node{i, Side::x, p.lo_kind, p.lo, p.sources, p.intensity};
    nodes[2 * k + 1 - i] = Node{i, Side::y, hi_kind, p.hi, p.sources, p.intensity};
  }

  auto pair_of = [k](std::size_t pos) { return pos <= k ? pos : 2 * k + 1 - pos; };
  const MassUnit h = masses.h();
  const MassUnit water = alphabet.water();
  const MassUnit tol = opts.tolerance;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    for (std::size_t v = u + 1; v < nodes.size(); ++v) {
      const MassUnit gap = nodes[v].coordinate - nodes[u].coordinate;
      if (gap.value <= 0 || gap >= h || (pair_of(u) == pair_of(v) && pair_of(u) != 0)) continue;
      if (masses.is_residue_sum(gap, tol)) edges.push_back({u, v, EdgeKind::plain, gap});
      if (!opts.water_edges) continue;
      const MassUnit off = gap - water;
      if (masses.is_residue_sum(off, tol) || (off.value <= tol.value && -off.value <= tol.value))
        edges.push_back({u, v, EdgeKind::plus_water, gap});
      if (masses.is_residue_sum(gap + water, tol)) edges.push_back({u, v, EdgeKind::minus_water, gap});
    }
  }
  return NCSpectrumGraph(std::move(nodes), std::move(edges), parent, alphabet.delta(), std::move(warnings));
}

/// Edge type between two nodes of g, preferring plain when several exist.
inline std::optional<EdgeType> edge_query(const NCSpectrumGraph& g, std::size_t from, std::size_t to) {
  if (from >= g.size() || to >= g.size()) throw std::out_of_range("node does not belong to the graph");
  for (auto kind : {EdgeKind::plain, EdgeKind::plus_water, EdgeKind::minus_water})
    if (g.has_edge(from, to, kind)) return EdgeType{kind};
  return std::nullopt;
}

inline void dump_graph(std::ostream& out, const NCSpectrumGraph& g) {
  for (std::size_t p = 0; p < g.size(); ++p)
    out << "node " << g.label(p) << " coord=" << g.coordinate(p).value << '\n';
  for (const auto& e : g.edges())
    out << "edge " << g.label(e.from) << ' ' << g.label(e.to) << " type=" << to_string(e.kind)
        << " gap=" << e.gap.value << '\n';
}

}  // namespace denovo

#endif  // DENOVO_GRAPH_HPP
