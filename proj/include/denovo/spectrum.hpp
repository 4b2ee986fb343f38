#ifndef DENOVO_SPECTRUM_HPP
#define DENOVO_SPECTRUM_HPP

#include <algorithm>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "denovo/mass.hpp"

namespace denovo {

struct Peak {
  double mass;       // singly charged ion mass, daltons
  double intensity;  // relative units
};

struct Spectrum {
  double parent_mass = 0.0;  // neutral peptide mass W (residues + water)
  std::vector<Peak> peaks;
  std::optional<std::string> title;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::string format_mass(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

}  // namespace detail

// Reads the MGF subset: BEGIN IONS / TITLE= / PEPMASS= / CHARGE=1+ /
// "<mass> <intensity>" peak lines / END IONS. Lines starting with '#' are
// comments. Peaks are kept in file order.
inline std::vector<Spectrum> parse_mgf(std::istream& in) {
  std::vector<Spectrum> out;
  std::optional<Spectrum> current;
  bool has_pepmass = false;
  std::size_t begin_line = 0;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "BEGIN IONS") {
      if (current) throw ParseError("nested BEGIN IONS", lineno);
      current.emplace();
      has_pepmass = false;
      begin_line = lineno;
      continue;
    }
    if (!current) throw ParseError("content outside BEGIN IONS/END IONS block", lineno);
    if (line == "END IONS") {
      if (!has_pepmass) throw ParseError("missing PEPMASS", begin_line);
      out.push_back(std::move(*current));
      current.reset();
      continue;
    }
    if (const auto eq = line.find('='); eq != std::string::npos) {
      const auto key = line.substr(0, eq);
      const auto value = detail::trim(line.substr(eq + 1));
      if (key == "TITLE") {
        current->title = value;
      } else if (key == "PEPMASS") {
        // PEPMASS may carry a trailing intensity; only the mass is used.
        std::istringstream fields(value);
        std::string first;
        fields >> first;
        auto v = detail::parse_double(first);
        if (!v || !(*v > 0.0)) throw ParseError("malformed PEPMASS '" + value + "'", lineno);
        current->parent_mass = *v;
        has_pepmass = true;
      } else if (key == "CHARGE") {
        if (value != "1+" && value != "1") throw ParseError("unsupported charge '" + value + "'", lineno);
      }
      // other keys are ignored
      continue;
    }
    std::istringstream fields(line);
    std::string m, i, extra;
    if (!(fields >> m >> i) || (fields >> extra)) throw ParseError("malformed peak line '" + line + "'", lineno);
    auto mass = detail::parse_double(m);
    auto intensity = detail::parse_double(i);
    if (!mass || !intensity || !(*mass > 0.0) || *intensity < 0.0)
      throw ParseError("malformed peak line '" + line + "'", lineno);
    current->peaks.push_back({*mass, *intensity});
  }
  if (current) throw ParseError("unterminated BEGIN IONS block", begin_line);
  return out;
}

inline std::vector<Spectrum> parse_mgf(const std::string& text) {
  std::istringstream in(text);
  return parse_mgf(in);
}

inline void write_mgf(std::ostream& out, const Spectrum& s) {
  out << "BEGIN IONS\n";
  if (s.title) out << "TITLE=" << *s.title << '\n';
  out << "PEPMASS=" << detail::format_mass(s.parent_mass) << '\n';
  out << "CHARGE=1+\n";
  for (const auto& p : s.peaks) out << detail::format_mass(p.mass) << ' ' << detail::format_mass(p.intensity) << '\n';
  out << "END IONS\n";
}

inline void sort_peaks(std::vector<Peak>& peaks) {
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.mass < b.mass || (a.mass == b.mass && a.intensity > b.intensity);
  });
}

/// Keeps peaks whose intensity is at least min_rel percent of the most
/// intense peak. Output is sorted by mass.
inline Spectrum filter_intensity(Spectrum s, double min_rel = 5.0) {
  sort_peaks(s.peaks);
  if (s.peaks.empty() || min_rel <= 0.0) return s;
  double max_i = 0.0;
  for (const auto& p : s.peaks) max_i = std::max(max_i, p.intensity);
  const double cut = max_i * min_rel / 100.0;
  std::erase_if(s.peaks, [&](const Peak& p) { return p.intensity < cut; });
  return s;
}

enum class IsotopeStrategy { keep_lowest_mass, keep_highest_intensity };

// Groups maximal ascending chains whose successive gaps are <= window and
// replaces each group by one peak carrying the summed intensity.
inline Spectrum merge_isotopes(Spectrum s, double window = 1.5,
                               IsotopeStrategy strategy = IsotopeStrategy::keep_lowest_mass) {
  sort_peaks(s.peaks);
  std::vector<Peak> merged;
  std::size_t i = 0;
  while (i < s.peaks.size()) {
    std::size_t j = i + 1;
    while (j < s.peaks.size() && s.peaks[j].mass - s.peaks[j - 1].mass <= window) ++j;
    Peak rep = s.peaks[i];
    double total = 0.0;
    for (std::size_t t = i; t < j; ++t) {
      total += s.peaks[t].intensity;
      if (strategy == IsotopeStrategy::keep_highest_intensity && s.peaks[t].intensity > rep.intensity) rep = s.peaks[t];
    }
    rep.intensity = total;
    merged.push_back(rep);
    i = j;
  }
  s.peaks = std::move(merged);
  return s;
}

// Sorts and collapses peaks that share a discretized mass, keeping the most
// intense one.
inline Spectrum dedupe_peaks(Spectrum s, double delta) {
  sort_peaks(s.peaks);
  std::vector<Peak> out;
  for (const auto& p : s.peaks) {
    if (!out.empty() && discretize(out.back().mass, delta) == discretize(p.mass, delta)) {
      if (p.intensity > out.back().intensity) out.back() = p;
      continue;
    }
    out.push_back(p);
  }
  s.peaks = std::move(out);
  return s;
}

struct PreprocessOptions {
  double min_rel_intensity = 5.0;
  bool merge_isotopes = true;
  double isotope_window = 1.5;
  IsotopeStrategy isotope_strategy = IsotopeStrategy::keep_lowest_mass;
};

inline Spectrum preprocess(Spectrum s, const PreprocessOptions& opts, double delta) {
  s = filter_intensity(std::move(s), opts.min_rel_intensity);
  if (opts.merge_isotopes) s = merge_isotopes(std::move(s), opts.isotope_window, opts.isotope_strategy);
  return dedupe_peaks(std::move(s), delta);
}

}  // namespace denovo

#endif  // DENOVO_SPECTRUM_HPP
