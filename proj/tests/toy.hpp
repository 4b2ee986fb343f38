#ifndef DENOVO_TESTS_TOY_HPP
#define DENOVO_TESTS_TOY_HPP

// Toy instances over nominal masses G=57, A=71, water 18, proton 1, delta 1.
//   T1: peptide AG, W=146, one peak 72 (b1). Solvable.
//   T2: peptide A*G with A shifted by +14, W=160, one peak 86. Not solvable.

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"
#include "denovo/spectrum.hpp"

namespace toy {

inline denovo::ResidueTable table() { return denovo::ResidueTable({{'G', 57.0}, {'A', 71.0}}, 18.0, 1.0); }

struct Instance {
  denovo::Alphabet alphabet;
  denovo::MassArray masses;
  denovo::NCSpectrumGraph graph;
};

inline denovo::Spectrum spectrum(double parent, std::vector<denovo::Peak> peaks) {
  denovo::Spectrum s;
  s.parent_mass = parent;
  s.peaks = std::move(peaks);
  return s;
}

inline Instance make(const denovo::Spectrum& s, bool water = false, std::int64_t h = 400) {
  denovo::Alphabet a(table(), 1.0);
  denovo::MassArray m(a, denovo::MassUnit{h});
  auto g = denovo::build_graph(s, a, m, {denovo::MassUnit{0}, water});
  return {std::move(a), std::move(m), std::move(g)};
}

inline denovo::Spectrum t1_spectrum() { return spectrum(146.0, {{72.0, 100.0}}); }
inline denovo::Spectrum t2_spectrum() { return spectrum(160.0, {{86.0, 100.0}}); }
inline Instance t1() { return make(t1_spectrum()); }
inline Instance t2() { return make(t2_spectrum()); }

}  // namespace toy

#endif  // DENOVO_TESTS_TOY_HPP
