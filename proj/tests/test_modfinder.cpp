#include <random>
#include <set>

#include <gtest/gtest.h>

#include "denovo/modfinder.hpp"
#include "denovo/testkit.hpp"
#include "toy.hpp"

using namespace denovo;

namespace {

std::vector<ModificationReport> run(const NCSpectrumGraph& g, const Alphabet& a, MassUnit h) {
  return find_modifications(g, compute_m(g), compute_n(g), a, h);
}

}  // namespace

TEST(FindModifications, T2) {
  const auto t = toy::t2();
  const auto& g = t.graph;
  EXPECT_EQ(g.coordinate(g.x(1)).value, 75);
  EXPECT_EQ(g.coordinate(g.y(1)).value, 85);
  EXPECT_FALSE(extract_solution(g, compute_m(g)).has_value());
  EXPECT_TRUE(compute_m(g)(0, 1));
  const auto reports = run(g, t.alphabet, t.masses.h());
  const auto it = std::find_if(reports.begin(), reports.end(), [&](const auto& r) {
    return r.from == g.x(0) && r.to == g.y(1);
  });
  ASSERT_NE(it, reports.end());
  EXPECT_EQ(it->gap.value, 85);
  EXPECT_FALSE(it->low_priority);
  ASSERT_FALSE(it->candidates.empty());
  EXPECT_EQ(it->candidates.front().residue, 'A');
  EXPECT_DOUBLE_EQ(it->candidates.front().delta, 14.0);
  for (const auto& r : reports) EXPECT_FALSE(t.masses.is_residue_sum(r.gap, MassUnit{0}));
}

TEST(FindModifications, T1OnlyLowPriority) {
  const auto t = toy::t1();
  for (const auto& r : run(t.graph, t.alphabet, t.masses.h())) EXPECT_TRUE(r.low_priority);
}

TEST(FindModifications, CandidateArithmetic) {
  const auto t = toy::t2();
  for (const auto& r : run(t.graph, t.alphabet, t.masses.h())) {
    EXPECT_EQ(r.gap, r.right - r.left);
    for (const auto& c : r.candidates)
      EXPECT_DOUBLE_EQ(t.alphabet.to_daltons(*t.alphabet.mass_of(c.residue)) + c.delta, t.alphabet.to_daltons(r.gap));
  }
}

TEST(FindModifications, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(41);
  const MassUnit h{200};
  int nonempty = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = testkit::random_graph(rng, {6, 0.25, false});
    const Alphabet dummy(ResidueTable({{'A', 1.0}}, 6.0, 1.0), 1.0);
    const auto reports = find_modifications(g, compute_m(g), compute_n(g), dummy, h);
    std::set<std::pair<std::int64_t, std::int64_t>> mine, want;
    for (const auto& r : reports) mine.emplace(r.left.value, r.right.value);
    for (auto [u, v] : testkit::oracle_modification_edges(g, h))
      want.emplace(g.coordinate(u).value, g.coordinate(v).value);
    ASSERT_EQ(mine, want) << "trial " << trial;
    nonempty += !want.empty();
    // soundness: the augmented graph solves through the reported edge
    for (const auto& r : reports) {
      const auto aug = g.with_edge(r.from, r.to);
      bool through = false;
      for (const auto& p : enumerate_solutions(aug, compute_m(aug), 1000))
        for (const auto& e : p.edges) through |= (e.from == r.from && e.to == r.to);
      EXPECT_TRUE(through) << "trial " << trial;
    }
  }
  EXPECT_GT(nonempty, 100);
}
