#include <random>

#include <gtest/gtest.h>

#include "denovo/testkit.hpp"
#include "toy.hpp"

using namespace denovo;
using testkit::SynthesisOptions;

TEST(Synthesize, AgFullIons) {
  const auto s = testkit::synthesize_spectrum("AG", ResidueTable::nominal());
  EXPECT_DOUBLE_EQ(s.parent_mass, 146.0);
  ASSERT_EQ(s.peaks.size(), 2u);
  EXPECT_DOUBLE_EQ(s.peaks[0].mass, 72.0);
  EXPECT_DOUBLE_EQ(s.peaks[1].mass, 76.0);
  EXPECT_EQ(s.title, "AG");
}

TEST(Synthesize, AgDropY1IsT1) {
  SynthesisOptions o;
  o.drop_indices = {1};
  const auto s = testkit::synthesize_spectrum("AG", toy::table(), o);
  EXPECT_DOUBLE_EQ(s.parent_mass, 146.0);
  ASSERT_EQ(s.peaks.size(), 1u);
  EXPECT_DOUBLE_EQ(s.peaks[0].mass, 72.0);
  const auto a = toy::make(s);
  const auto b = toy::t1();
  EXPECT_EQ(a.graph.edges().size(), b.graph.edges().size());
  for (std::size_t p = 0; p < a.graph.size(); ++p) EXPECT_EQ(a.graph.coordinate(p), b.graph.coordinate(p));
}

TEST(Synthesize, ModifiedBIonsOnlyIsT2) {
  SynthesisOptions o;
  o.y_ions = false;
  o.modification = testkit::Modification{0, 14.0};
  const auto s = testkit::synthesize_spectrum("AG", toy::table(), o);
  EXPECT_DOUBLE_EQ(s.parent_mass, 160.0);
  ASSERT_EQ(s.peaks.size(), 1u);
  EXPECT_DOUBLE_EQ(s.peaks[0].mass, 86.0);
}

TEST(Synthesize, Errors) {
  EXPECT_THROW(testkit::synthesize_spectrum("AZ", ResidueTable::nominal()), testkit::SynthesisError);
  EXPECT_THROW(testkit::synthesize_spectrum("", ResidueTable::nominal()), testkit::SynthesisError);
  SynthesisOptions o;
  o.modification = testkit::Modification{5, 1.0};
  EXPECT_THROW(testkit::synthesize_spectrum("AG", ResidueTable::nominal(), o), testkit::SynthesisError);
}

TEST(Synthesize, Corruptions) {
  const auto mono = ResidueTable::monoisotopic();
  SynthesisOptions o;
  o.seed = 12;
  o.noise_peaks = 4;
  o.isotope_envelope = true;
  o.water_losses = {0};
  const auto s = testkit::synthesize_spectrum("PEPTIDE", mono, o);
  EXPECT_EQ(s.peaks.size(), 12u * 3 + 4);
  const double b1 = *mono.mass_of('P') + mono.proton();
  bool loss = false, plain = false;
  for (const auto& p : s.peaks) {
    loss |= std::abs(p.mass - (b1 - mono.water())) < 1e-9;
    plain |= std::abs(p.mass - b1) < 1e-9;
  }
  EXPECT_TRUE(loss);
  EXPECT_FALSE(plain);

  SynthesisOptions d;
  d.seed = 3;
  d.drop_fraction = 0.5;
  EXPECT_EQ(testkit::synthesize_spectrum("PEPTIDE", mono, d).peaks.size(), 6u);
}

TEST(Synthesize, DeterministicPerSeed) {
  SynthesisOptions o;
  o.seed = 77;
  o.noise_peaks = 3;
  o.drop_fraction = 0.3;
  const auto mono = ResidueTable::monoisotopic();
  const auto a = testkit::synthesize_spectrum("GGLEPINFQTAADQAR", mono, o);
  const auto b = testkit::synthesize_spectrum("GGLEPINFQTAADQAR", mono, o);
  ASSERT_EQ(a.peaks.size(), b.peaks.size());
  for (std::size_t t = 0; t < a.peaks.size(); ++t) {
    EXPECT_EQ(a.peaks[t].mass, b.peaks[t].mass);
    EXPECT_EQ(a.peaks[t].intensity, b.peaks[t].intensity);
  }
}

TEST(Oracle, ToyExamples) {
  const auto t1 = toy::t1();
  const auto [m, n] = testkit::oracle_tables(t1.graph);
  EXPECT_TRUE(m(1, 0));
  EXPECT_TRUE(n(1, 0));
  EXPECT_EQ(testkit::oracle_paths(t1.graph).size(), 1u);
  EXPECT_TRUE(testkit::oracle_paths(toy::t2().graph).empty());
  const auto empty = toy::make(toy::spectrum(103.0, {}));
  const auto [em, en] = testkit::oracle_tables(empty.graph);
  EXPECT_EQ(em.k(), 0u);
  EXPECT_TRUE(em(0, 0));
}

TEST(Oracle, RefusesLargeGraphs) {
  std::vector<Peak> peaks;
  for (int t = 0; t < 11; ++t) peaks.push_back({30.0 + 3 * t, 1});
  const auto big = toy::make(toy::spectrum(500.0, peaks));
  ASSERT_EQ(big.graph.k(), 11u);
  EXPECT_THROW(testkit::oracle_tables(big.graph), testkit::OracleLimitError);
  EXPECT_THROW(testkit::oracle_paths(big.graph), testkit::OracleLimitError);
}

TEST(RandomGraph, StaysWithinOracleBound) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) EXPECT_LE(testkit::random_graph(rng, {8, 0.2, false}).k(), 8u);
}
