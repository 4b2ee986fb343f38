#ifndef DENOVO_TESTKIT_HPP
#define DENOVO_TESTKIT_HPP

// Synthetic spectra and exhaustive oracles. The oracles implement the table
// and path definitions directly by enumeration and share no code with the
// dynamic programs they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"
#include "denovo/scorer.hpp"
#include "denovo/solver.hpp"
#include "denovo/spectrum.hpp"

namespace denovo::testkit {

inline constexpr double kIsotopeSpacing = 1.00335;

struct Modification {
  std::size_t position = 0;  // residue index, 0-based
  double delta = 0.0;        // daltons
};

struct SynthesisOptions {
  bool b_ions = true;
  bool y_ions = true;
  // Ion index: b_1..b_{n-1} are 0..n-2, y_1..y_{n-1} are n-1..2n-3.
  std::vector<std::size_t> drop_indices;
  double drop_fraction = 0.0;
  std::size_t noise_peaks = 0;
  bool isotope_envelope = false;
  std::vector<std::size_t> water_losses;  // b-ion indices observed as b - water only
  std::optional<Modification> modification;
  std::uint64_t seed = 0;
  double ion_intensity_min = 50.0, ion_intensity_max = 100.0;
  double noise_intensity_min = 5.0, noise_intensity_max = 100.0;
};

class SynthesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Singly charged b/y ladder of a peptide: b = prefix + proton,
/// y = suffix + water + proton, W = residues + water.
inline Spectrum synthesize_spectrum(const std::string& peptide, const ResidueTable& table,
                                    const SynthesisOptions& opts = {}) {
  if (peptide.empty()) throw SynthesisError("empty peptide");
  std::vector<double> masses;
  for (char c : peptide) {
    auto m = table.mass_of(c);
    if (!m) throw SynthesisError(std::string("unknown residue symbol '") + c + "'");
    masses.push_back(*m);
  }
  if (opts.modification) {
    if (opts.modification->position >= masses.size()) throw SynthesisError("modification position out of range");
    masses[opts.modification->position] += opts.modification->delta;
  }
  const std::size_t n = masses.size();
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);

  Spectrum s;
  s.parent_mass = total + table.water();
  s.title = peptide;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ion_int(opts.ion_intensity_min, opts.ion_intensity_max);

  struct Ion {
    double mass;
    bool is_b;
    std::size_t b_index;
  };
  std::vector<Ion> ions;
  double prefix = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    prefix += masses[i];
    ions.push_back({prefix + table.proton(), true, i});
  }
  double suffix = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    suffix += masses[n - 1 - i];
    ions.push_back({suffix + table.water() + table.proton(), false, 0});
  }

  std::vector<std::uint8_t> keep(ions.size(), 1);
  for (std::size_t t = 0; t < ions.size(); ++t)
    if ((ions[t].is_b && !opts.b_ions) || (!ions[t].is_b && !opts.y_ions)) keep[t] = 0;
  for (auto d : opts.drop_indices)
    if (d < keep.size()) keep[d] = 0;
  if (opts.drop_fraction > 0.0) {
    std::vector<std::size_t> order(ions.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto count = static_cast<std::size_t>(std::lround(opts.drop_fraction * static_cast<double>(ions.size())));
    for (std::size_t t = 0; t < count && t < order.size(); ++t) keep[order[t]] = 0;
  }

  for (std::size_t t = 0; t < ions.size(); ++t) {
    if (!keep[t]) continue;
    double mass = ions[t].mass;
    if (ions[t].is_b &&
        std::find(opts.water_losses.begin(), opts.water_losses.end(), ions[t].b_index) != opts.water_losses.end())
      mass -= table.water();
    const double intensity = ion_int(rng);
    s.peaks.push_back({mass, intensity});
    if (opts.isotope_envelope) {
      s.peaks.push_back({mass + kIsotopeSpacing, intensity * 0.5});
      s.peaks.push_back({mass + 2 * kIsotopeSpacing, intensity * 0.15});
    }
  }

  if (opts.noise_peaks > 0) {
    const double lo = table.water() + 2 * table.proton(), hi = s.parent_mass - 1.0;
    if (!(lo < hi)) throw SynthesisError("peptide too light for noise peaks");
    std::uniform_real_distribution<double> noise_mass(lo, hi);
    std::uniform_real_distribution<double> noise_int(opts.noise_intensity_min, opts.noise_intensity_max);
    for (std::size_t t = 0; t < opts.noise_peaks; ++t) {
      const double m = noise_mass(rng);
      s.peaks.push_back({m, noise_int(rng)});
    }
  }
  sort_peaks(s.peaks);
  return s;
}

// ---------------------------------------------------------------------------
// Oracles

inline constexpr std::size_t kOracleMaxK = 10;

class OracleLimitError : public std::invalid_argument {
 public:
  OracleLimitError() : std::invalid_argument("oracle enumeration is limited to k <= 10") {}
};

namespace detail {

struct PartialPath {
  std::size_t end;            // pair index of the free end
  std::uint32_t pairs;        // bit p set when pair p is used
};

inline std::uint32_t range_mask(std::size_t lo, std::size_t hi) {  // bits lo..hi inclusive
  if (lo > hi) return 0;
  const std::uint32_t upto = (hi >= 31) ? 0xffffffffu : ((1u << (hi + 1)) - 1);
  return upto & ~((1u << lo) - 1);
}

}  // namespace detail

/// M and N by enumerating every candidate path (pair).
inline std::pair<MTable, NTable> oracle_tables(const NCSpectrumGraph& g) {
  const std::size_t k = g.k();
  if (k > kOracleMaxK) throw OracleLimitError();

  // All plain x-side paths from x_0 and all plain y-side paths into y_0.
  std::vector<detail::PartialPath> lefts, rights;
  auto grow_left = [&](auto&& self, std::size_t i, std::uint32_t mask) -> void {
    lefts.push_back({i, mask});
    for (const auto& e : g.out_edges(g.x(i)))
      if (e.kind == EdgeKind::plain && g.is_x(e.to)) self(self, g.pair_of(e.to), mask | (1u << g.pair_of(e.to)));
  };
  auto grow_right = [&](auto&& self, std::size_t j, std::uint32_t mask) -> void {
    rights.push_back({j, mask});
    for (auto id : g.in_edge_ids(g.y(j))) {
      const auto& e = g.edges()[id];
      if (e.kind == EdgeKind::plain && !g.is_x(e.from)) self(self, g.pair_of(e.from), mask | (1u << g.pair_of(e.from)));
    }
  };
  grow_left(grow_left, 0, 1u);
  grow_right(grow_right, 0, 1u);

  MTable m{BitMatrix(k + 1)};
  for (const auto& l : lefts) {
    for (const auto& r : rights) {
      const auto need = detail::range_mask(1, std::max(l.end, r.end));
      if ((l.pairs & r.pairs & need) == 0 && ((l.pairs | r.pairs) & need) == need) m.bits.set(l.end, r.end);
    }
  }

  NTable n{BitMatrix(k + 1)};
  for (std::size_t i = 0; i <= k; ++i) {
    auto walk = [&](auto&& self, std::size_t pos, std::uint32_t xs, std::uint32_t ys) -> void {
      if (!g.is_x(pos)) {
        const auto j = g.pair_of(pos);
        const auto need = detail::range_mask(std::min(i, j), k);
        if ((xs & ys & need) == 0 && ((xs | ys) & need) == need) n.bits.set(i, j);
      }
      for (const auto& e : g.out_edges(pos)) {
        if (e.kind != EdgeKind::plain) continue;
        const auto p = g.pair_of(e.to);
        if (g.is_x(e.to))
          self(self, e.to, xs | (1u << p), ys);
        else
          self(self, e.to, xs, ys | (1u << p));
      }
    };
    walk(walk, g.x(i), 1u << i, 0);
  }
  return {std::move(m), std::move(n)};
}

/// Every path x_0 -> y_0 over plain edges holding exactly one node of each
/// pair 1..k. Paths come back as node position lists.
inline std::vector<std::vector<std::size_t>> oracle_paths(const NCSpectrumGraph& g) {
  const std::size_t k = g.k();
  if (k > kOracleMaxK) throw OracleLimitError();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> nodes{g.x(0)};
  const auto all = detail::range_mask(1, k);
  auto walk = [&](auto&& self, std::size_t pos, std::uint32_t used) -> void {
    if (pos == g.y(0)) {
      if ((used & all) == all) out.push_back(nodes);
      return;
    }
    for (const auto& e : g.out_edges(pos)) {
      if (e.kind != EdgeKind::plain) continue;
      const auto p = g.pair_of(e.to);
      if (p != 0 && (used & (1u << p))) continue;
      nodes.push_back(e.to);
      self(self, e.to, used | (p ? (1u << p) : 0u));
      nodes.pop_back();
    }
  };
  walk(walk, g.x(0), 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct OracleScoredPath {
  std::vector<Edge> edges;
  double score;
  int net_water;
  bool balance_ok;  // running balance stays within [-1, +1] in DP stage order
};

// Running water balance in the order the DP adds edges: inside edges by their
// larger pair index, the cross edge last.
inline bool balance_within_one(const NCSpectrumGraph& g, const std::vector<Edge>& edges) {
  std::vector<std::pair<std::size_t, int>> staged;
  int cross = 0;
  for (const auto& e : edges) {
    if (g.is_x(e.from) != g.is_x(e.to)) {
      cross = water_delta(e.kind);
      continue;
    }
    staged.emplace_back(std::max(g.pair_of(e.from), g.pair_of(e.to)), water_delta(e.kind));
  }
  std::sort(staged.begin(), staged.end());
  int c = 0;
  for (auto [stage, d] : staged) {
    c += d;
    if (c < -1 || c > 1) return false;
  }
  return c + cross == 0;
}

/// Every path x_0 -> y_0 holding at most one node of each pair, scored with
/// sf. Water-typed edges are included only when with_water is set.
inline std::vector<OracleScoredPath> oracle_scored_paths(const NCSpectrumGraph& g, const ScoreFunction& sf,
                                                         bool with_water) {
  if (g.k() > kOracleMaxK) throw OracleLimitError();
  std::vector<OracleScoredPath> out;
  std::vector<Edge> edges;
  auto walk = [&](auto&& self, std::size_t pos, std::uint32_t used, double score, int water) -> void {
    if (pos == g.y(0)) {
      out.push_back({edges, score, water, balance_within_one(g, edges)});
      return;
    }
    for (const auto& e : g.out_edges(pos)) {
      if (!with_water && e.kind != EdgeKind::plain) continue;
      const auto p = g.pair_of(e.to);
      if (p != 0 && (used & (1u << p))) continue;
      edges.push_back(e);
      self(self, e.to, used | (p ? (1u << p) : 0u), score + sf(g, e), water + water_delta(e.kind));
      edges.pop_back();
    }
  };
  walk(walk, g.x(0), 0, 0.0, 0);
  return out;
}

/// Exhaustive maximum score; in water mode only balanced paths qualify.
inline std::optional<double> oracle_best_score(const NCSpectrumGraph& g, const ScoreFunction& sf,
                                               bool with_water = false) {
  std::optional<double> best;
  for (const auto& p : oracle_scored_paths(g, sf, with_water)) {
    if (with_water && !p.balance_ok) continue;
    if (!best || p.score > *best) best = p.score;
  }
  return best;
}

/// Per-state maxima of the Q definition, by pairing every L with every R.
/// Entry is nullopt when no qualifying pair exists.
inline std::vector<std::vector<std::optional<double>>> oracle_q(const NCSpectrumGraph& g, const ScoreFunction& sf) {
  const std::size_t k = g.k();
  if (k > kOracleMaxK) throw OracleLimitError();
  struct Half {
    std::size_t end;
    std::uint32_t pairs;
    double score;
  };
  std::vector<Half> lefts, rights;
  auto grow_left = [&](auto&& self, std::size_t i, std::uint32_t mask, double s) -> void {
    lefts.push_back({i, mask, s});
    for (const auto& e : g.out_edges(g.x(i)))
      if (e.kind == EdgeKind::plain && g.is_x(e.to))
        self(self, g.pair_of(e.to), mask | (1u << g.pair_of(e.to)), s + sf(g, e));
  };
  auto grow_right = [&](auto&& self, std::size_t j, std::uint32_t mask, double s) -> void {
    rights.push_back({j, mask, s});
    for (auto id : g.in_edge_ids(g.y(j))) {
      const auto& e = g.edges()[id];
      if (e.kind == EdgeKind::plain && !g.is_x(e.from))
        self(self, g.pair_of(e.from), mask | (1u << g.pair_of(e.from)), s + sf(g, e));
    }
  };
  grow_left(grow_left, 0, 1u, 0.0);
  grow_right(grow_right, 0, 1u, 0.0);
  std::vector<std::vector<std::optional<double>>> q(k + 1, std::vector<std::optional<double>>(k + 1));
  for (const auto& l : lefts)
    for (const auto& r : rights) {
      const auto span = detail::range_mask(1, std::max(l.end, r.end));
      if ((l.pairs & r.pairs & span) != 0) continue;
      auto& cell = q[l.end][r.end];
      if (!cell || l.score + r.score > *cell) cell = l.score + r.score;
    }
  return q;
}

/// Missing plain edges (u, v), 0 < gap < h, different pairs, whose addition
/// creates a feasible path through them. Checked by re-solving exhaustively.
inline std::vector<std::pair<std::size_t, std::size_t>> oracle_modification_edges(const NCSpectrumGraph& g,
                                                                                 MassUnit h) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      const auto gap = g.coordinate(v) - g.coordinate(u);
      if (gap.value <= 0 || gap >= h || !g.may_join(u, v) || g.has_edge(u, v)) continue;
      const auto augmented = g.with_edge(u, v);
      for (const auto& path : oracle_paths(augmented)) {
        bool through = false;
        for (std::size_t t = 0; t + 1 < path.size(); ++t) through |= (path[t] == u && path[t + 1] == v);
        if (through) {
          out.emplace_back(u, v);
          break;
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Random instances for oracle comparisons

struct RandomGraphOptions {
  std::size_t max_k = 8;
  double drop_edge_probability = 0.2;
  bool water_edges = false;
};

/// Small integer-mass graph: random alphabet of 2-5 residues, a random
/// peptide's ions plus noise, then random edge deletions.
inline NCSpectrumGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opts = {}) {
  std::uniform_int_distribution<int> alpha_size(2, 5), residue_mass(5, 40);
  std::vector<Residue> residues;
  const int n_res = alpha_size(rng);
  for (int r = 0; r < n_res; ++r) residues.push_back({static_cast<char>('A' + r), double(residue_mass(rng))});
  const ResidueTable table(residues, 6.0, 1.0);

  std::uniform_int_distribution<int> len(2, static_cast<int>(opts.max_k) + 2);
  std::string peptide;
  const int L = len(rng);
  for (int t = 0; t < L; ++t) peptide += static_cast<char>('A' + std::uniform_int_distribution<int>(0, n_res - 1)(rng));

  SynthesisOptions so;
  so.seed = rng();
  so.drop_fraction = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
  so.noise_peaks = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  auto spectrum = synthesize_spectrum(peptide, table, so);
  for (auto& p : spectrum.peaks) p.mass = std::round(p.mass);
  std::shuffle(spectrum.peaks.begin(), spectrum.peaks.end(), rng);
  // keep k small enough for the oracles
  const std::size_t cap = std::uniform_int_distribution<std::size_t>(0, opts.max_k)(rng);
  if (spectrum.peaks.size() > cap) spectrum.peaks.resize(cap);
  spectrum = dedupe_peaks(std::move(spectrum), 1.0);

  const Alphabet alphabet(table, 1.0);
  const MassArray masses(alphabet, MassUnit{200});
  auto g = build_graph(spectrum, alphabet, masses, {MassUnit{0}, opts.water_edges});
  std::bernoulli_distribution drop(opts.drop_edge_probability);
  std::vector<std::uint8_t> dropped(g.edges().size());
  for (auto& d : dropped) d = drop(rng);
  std::size_t idx = 0;
  return g.without_edges([&](const Edge&) { return dropped[idx++] != 0; });
}

}  // namespace denovo::testkit

#endif  // DENOVO_TESTKIT_HPP
