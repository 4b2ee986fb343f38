#ifndef DENOVO_MASS_HPP
#define DENOVO_MASS_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace denovo {

// Integer mass in units of delta daltons. All graph and DP arithmetic runs on
// these; doubles only appear at the I/O boundary.
struct MassUnit {
  std::int64_t value = 0;

  constexpr MassUnit() = default;
  constexpr explicit MassUnit(std::int64_t v) : value(v) {}

  friend constexpr auto operator<=>(MassUnit, MassUnit) = default;
  friend constexpr MassUnit operator+(MassUnit a, MassUnit b) { return MassUnit{a.value + b.value}; }
  friend constexpr MassUnit operator-(MassUnit a, MassUnit b) { return MassUnit{a.value - b.value}; }
  MassUnit& operator+=(MassUnit o) { value += o.value; return *this; }
  MassUnit& operator-=(MassUnit o) { value -= o.value; return *this; }
};

class MassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResidueTableError : public std::runtime_error {
 public:
  ResidueTableError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Round-half-up of mass / delta.
inline MassUnit discretize(double mass, double delta) {
  if (!(delta > 0.0)) throw MassError("mass precision must be positive");
  if (mass < 0.0) throw MassError("negative mass");
  return MassUnit{static_cast<std::int64_t>(std::floor(mass / delta + 0.5))};
}

inline constexpr double kMonoWater = 18.0106;
inline constexpr double kMonoProton = 1.00728;

struct Residue {
  char symbol;
  double mass;  // daltons
};

// Monoisotopic residue masses of the 20 standard amino acids. Mirrored in
// data/residues_monoisotopic.tsv.
inline constexpr std::string_view kMonoisotopicTable =
    "# symbol\tmonoisotopic residue mass (Da)\n"
    "G\t57.02146\n"
    "A\t71.03711\n"
    "S\t87.03203\n"
    "P\t97.05276\n"
    "V\t99.06841\n"
    "T\t101.04768\n"
    "C\t103.00919\n"
    "L\t113.08406\n"
    "I\t113.08406\n"
    "N\t114.04293\n"
    "D\t115.02694\n"
    "Q\t128.05858\n"
    "K\t128.09496\n"
    "E\t129.04259\n"
    "M\t131.04049\n"
    "H\t137.05891\n"
    "F\t147.06841\n"
    "R\t156.10111\n"
    "Y\t163.06333\n"
    "W\t186.07931\n"
    "water\t18.0106\n"
    "proton\t1.00728\n";

// Integer (nominal) masses; handy for hand-checkable toy instances.
inline constexpr std::string_view kNominalTable =
    "# symbol\tnominal residue mass (Da)\n"
    "G\t57\nA\t71\nS\t87\nP\t97\nV\t99\nT\t101\nC\t103\nL\t113\nI\t113\nN\t114\n"
    "D\t115\nQ\t128\nK\t128\nE\t129\nM\t131\nH\t137\nF\t147\nR\t156\nY\t163\nW\t186\n"
    "water\t18\nproton\t1\n";

class ResidueTable {
 public:
  ResidueTable(std::vector<Residue> entries, double water = kMonoWater, double proton = kMonoProton)
      : entries_(std::move(entries)), water_(water), proton_(proton) {
    if (entries_.empty()) throw ResidueTableError("empty residue table");
    if (!(water_ > 0.0)) throw ResidueTableError("water mass must be positive");
    if (!(proton_ > 0.0)) throw ResidueTableError("proton mass must be positive");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!(entries_[i].mass > 0.0))
        throw ResidueTableError(std::string("non-positive mass for residue ") + entries_[i].symbol);
      for (std::size_t j = 0; j < i; ++j)
        if (entries_[j].symbol == entries_[i].symbol)
          throw ResidueTableError(std::string("duplicate symbol ") + entries_[i].symbol);
    }
  }

  // Lines are "symbol<TAB or spaces>mass"; '#' lines and blank lines are
  // skipped. The keys "water" and "proton" override the terminal constants.
  static ResidueTable parse(std::string_view text) {
    std::vector<Residue> entries;
    double water = kMonoWater;
    double proton = kMonoProton;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream fields(line);
      std::string key, mass_text, extra;
      if (!(fields >> key >> mass_text) || (fields >> extra))
        throw ResidueTableError("expected 'symbol<TAB>mass'", lineno);
      double mass = 0.0;
      try {
        std::size_t used = 0;
        mass = std::stod(mass_text, &used);
        if (used != mass_text.size()) throw std::invalid_argument(mass_text);
      } catch (const std::exception&) {
        throw ResidueTableError("unparseable mass '" + mass_text + "'", lineno);
      }
      if (!(mass > 0.0)) throw ResidueTableError("non-positive mass", lineno);
      if (key == "water") {
        water = mass;
      } else if (key == "proton") {
        proton = mass;
      } else if (key.size() == 1) {
        for (const auto& e : entries)
          if (e.symbol == key[0]) throw ResidueTableError("duplicate symbol " + key, lineno);
        entries.push_back({key[0], mass});
      } else {
        throw ResidueTableError("residue symbol must be one letter, got '" + key + "'", lineno);
      }
    }
    if (entries.empty()) throw ResidueTableError("empty residue table");
    return ResidueTable(std::move(entries), water, proton);
  }

  static ResidueTable monoisotopic() { return parse(kMonoisotopicTable); }
  static ResidueTable nominal() { return parse(kNominalTable); }

  const std::vector<Residue>& entries() const { return entries_; }
  double water() const { return water_; }
  double proton() const { return proton_; }

  std::optional<double> mass_of(char symbol) const {
    for (const auto& e : entries_)
      if (e.symbol == symbol) return e.mass;
    return std::nullopt;
  }

 private:
  std::vector<Residue> entries_;
  double water_;
  double proton_;
};

struct UnitResidue {
  char symbol;
  MassUnit mass;
};

// A residue table bound to a mass precision delta. Residues are kept in
// symbol order, which is the tie-break order for decompositions.
class Alphabet {
 public:
  Alphabet(const ResidueTable& table, double delta)
      : delta_(delta),
        water_daltons_(table.water()),
        proton_daltons_(table.proton()),
        water_(discretize(table.water(), delta)),
        proton_(discretize(table.proton(), delta)) {
    for (const auto& e : table.entries()) {
      auto m = discretize(e.mass, delta);
      if (m.value <= 0) throw MassError(std::string("residue ") + e.symbol + " rounds to zero at this precision");
      residues_.push_back({e.symbol, m});
    }
    std::sort(residues_.begin(), residues_.end(),
              [](const UnitResidue& a, const UnitResidue& b) { return a.symbol < b.symbol; });
  }

  double delta() const { return delta_; }
  double water_daltons() const { return water_daltons_; }
  double proton_daltons() const { return proton_daltons_; }
  MassUnit water() const { return water_; }
  MassUnit proton() const { return proton_; }
  const std::vector<UnitResidue>& residues() const { return residues_; }

  MassUnit to_units(double daltons) const { return discretize(daltons, delta_); }
  // Dividing by an integral 1/delta rounds correctly (0.01 * 56630 does not).
  double to_daltons(MassUnit m) const {
    const double per_dalton = std::round(1.0 / delta_);
    if (std::abs(per_dalton * delta_ - 1.0) < 1e-12) return static_cast<double>(m.value) / per_dalton;
    return static_cast<double>(m.value) * delta_;
  }

  std::optional<MassUnit> mass_of(char symbol) const {
    for (const auto& r : residues_)
      if (r.symbol == symbol) return r.mass;
    return std::nullopt;
  }

  // Residues sharing a discretized mass are indistinguishable; the smallest
  // symbol of each class is its representative.
  char representative(char symbol) const {
    auto m = mass_of(symbol);
    if (!m) return symbol;
    for (const auto& r : residues_)
      if (r.mass == *m) return r.symbol;
    return symbol;
  }

  std::string canonical(std::string_view sequence) const {
    std::string out(sequence);
    for (auto& c : out) c = representative(c);
    return out;
  }

  std::vector<std::string> equivalence_classes() const {
    std::map<std::int64_t, std::string> by_mass;
    for (const auto& r : residues_) by_mass[r.mass.value] += r.symbol;
    std::vector<std::string> out;
    for (auto& [m, s] : by_mass)
      if (s.size() > 1) out.push_back(s);
    return out;
  }

 private:
  double delta_;
  double water_daltons_;
  double proton_daltons_;
  MassUnit water_;
  MassUnit proton_;
  std::vector<UnitResidue> residues_;
};

// Decomposability array: bit m is set iff m is a sum of one or more residue
// masses, for 0 <= m <= h.
class MassArray {
 public:
  MassArray(const Alphabet& alphabet, MassUnit h) : h_(h) {
    if (h.value <= 0) throw MassError("maximum mass h must be positive");
    const auto n = static_cast<std::size_t>(h.value) + 1;
    bits_.assign(n, 0);
    for (std::size_t m = 1; m < n; ++m) {
      for (const auto& r : alphabet.residues()) {
        const auto rm = static_cast<std::size_t>(r.mass.value);
        if (rm == m || (rm < m && bits_[m - rm])) {
          bits_[m] = 1;
          break;
        }
      }
    }
    prefix_.assign(n + 1, 0);
    for (std::size_t m = 0; m < n; ++m) prefix_[m + 1] = prefix_[m] + bits_[m];
  }

  MassUnit h() const { return h_; }
  std::size_t size() const { return bits_.size(); }

  bool operator[](MassUnit m) const {
    return m.value >= 0 && m.value <= h_.value && bits_[static_cast<std::size_t>(m.value)];
  }

  // True iff some g in [gap - tol, gap + tol] intersected with [1, h] is set.
  bool is_residue_sum(MassUnit gap, MassUnit tol) const {
    const auto lo = std::max<std::int64_t>(1, gap.value - tol.value);
    const auto hi = std::min<std::int64_t>(h_.value, gap.value + tol.value);
    if (lo > hi) return false;
    return prefix_[static_cast<std::size_t>(hi) + 1] - prefix_[static_cast<std::size_t>(lo)] > 0;
  }

 private:
  MassUnit h_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::uint32_t> prefix_;
};

inline bool is_residue_sum(const MassArray& a, MassUnit gap, MassUnit tol) { return a.is_residue_sum(gap, tol); }

/// Multisets of residues whose total lies within tol of gap. Each multiset is
/// a string of symbols in alphabet order; results come fewest residues first,
/// lexicographic within a size, truncated at limit.
inline std::vector<std::string> decompose_gap(const Alphabet& alphabet, MassUnit gap, MassUnit tol,
                                              std::size_t limit) {
  std::vector<std::string> out;
  const auto& res = alphabet.residues();
  if (res.empty() || limit == 0) return out;
  const std::int64_t lo = gap.value - tol.value;
  const std::int64_t hi = gap.value + tol.value;
  if (hi <= 0) return out;
  std::int64_t min_mass = res.front().mass.value, max_mass = min_mass;
  for (const auto& r : res) {
    min_mass = std::min(min_mass, r.mass.value);
    max_mass = std::max(max_mass, r.mass.value);
  }
  const std::int64_t max_size = hi / min_mass;

  std::string current;
  auto dfs = [&](auto&& self, std::size_t start, std::int64_t remaining, std::int64_t sum) -> void {
    if (remaining == 0) {
      if (sum >= lo && sum <= hi) out.push_back(current);
      return;
    }
    if (sum + remaining * min_mass > hi || sum + remaining * max_mass < lo) return;
    for (std::size_t i = start; i < res.size(); ++i) {
      current.push_back(res[i].symbol);
      self(self, i, remaining - 1, sum + res[i].mass.value);
      current.pop_back();
    }
  };

  for (std::int64_t size = 1; size <= max_size && out.size() < limit; ++size) dfs(dfs, 0, size, 0);
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace denovo

#endif  // DENOVO_MASS_HPP
