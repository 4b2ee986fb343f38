#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "denovo/mass.hpp"

using namespace denovo;

namespace {

ResidueTable toy_table() { return ResidueTable({{'G', 57.0}, {'A', 71.0}}, 18.0, 1.0); }

// All residue multisets with sum <= h, by brute force over counts.
std::set<std::int64_t> multiset_sums(const std::vector<std::int64_t>& masses, std::int64_t h) {
  std::set<std::int64_t> out;
  std::vector<std::int64_t> frontier{0};
  std::set<std::int64_t> seen{0};
  while (!frontier.empty()) {
    auto m = frontier.back();
    frontier.pop_back();
    for (auto r : masses)
      if (m + r <= h && seen.insert(m + r).second) {
        out.insert(m + r);
        frontier.push_back(m + r);
      }
  }
  return out;
}

}  // namespace

TEST(ResidueTable, ParsesTwoResidues) {
  auto t = ResidueTable::parse("G 57.02146\nA 71.03711");
  ASSERT_EQ(t.entries().size(), 2u);
  EXPECT_DOUBLE_EQ(*t.mass_of('G'), 57.02146);
  EXPECT_DOUBLE_EQ(*t.mass_of('A'), 71.03711);
  EXPECT_FALSE(t.mass_of('Z').has_value());
}

TEST(ResidueTable, EmptyInputFails) {
  try {
    ResidueTable::parse("");
    FAIL();
  } catch (const ResidueTableError& e) {
    EXPECT_STREQ(e.what(), "empty residue table");
  }
  EXPECT_THROW(ResidueTable::parse("# only a comment\n\n"), ResidueTableError);
}

TEST(ResidueTable, DuplicateSymbolFails) {
  try {
    ResidueTable::parse("G 57.0\nG 58.0");
    FAIL();
  } catch (const ResidueTableError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ResidueTable, BadLinesReportLineNumber) {
  try {
    ResidueTable::parse("# header\nG\t57.0\nA\tabc\n");
    FAIL();
  } catch (const ResidueTableError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(ResidueTable::parse("G -1"), ResidueTableError);
  EXPECT_THROW(ResidueTable::parse("G 0"), ResidueTableError);
  EXPECT_THROW(ResidueTable::parse("G 57 extra"), ResidueTableError);
  EXPECT_THROW(ResidueTable::parse("Gly 57"), ResidueTableError);
}

TEST(ResidueTable, WaterAndProtonOverrides) {
  auto t = ResidueTable::parse("G\t57\nwater\t18\nproton\t1\n");
  EXPECT_DOUBLE_EQ(t.water(), 18.0);
  EXPECT_DOUBLE_EQ(t.proton(), 1.0);
}

TEST(ResidueTable, BundledTables) {
  auto mono = ResidueTable::monoisotopic();
  EXPECT_EQ(mono.entries().size(), 20u);
  EXPECT_DOUBLE_EQ(*mono.mass_of('G'), 57.02146);
  EXPECT_DOUBLE_EQ(*mono.mass_of('W'), 186.07931);
  EXPECT_DOUBLE_EQ(mono.water(), kMonoWater);
  auto nominal = ResidueTable::nominal();
  EXPECT_DOUBLE_EQ(*nominal.mass_of('A'), 71.0);
  EXPECT_DOUBLE_EQ(nominal.water(), 18.0);
  EXPECT_DOUBLE_EQ(nominal.proton(), 1.0);
}

TEST(ResidueTable, DataFilesMatchEmbeddedTables) {
  auto read = [](const char* name) {
    std::ifstream in(std::string(DENOVO_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (auto [file, embedded] : {std::pair{"residues_monoisotopic.tsv", ResidueTable::monoisotopic()},
                                std::pair{"residues_nominal.tsv", ResidueTable::nominal()}}) {
    auto t = ResidueTable::parse(read(file));
    ASSERT_EQ(t.entries().size(), embedded.entries().size()) << file;
    for (const auto& e : embedded.entries()) EXPECT_DOUBLE_EQ(*t.mass_of(e.symbol), e.mass) << file;
    EXPECT_DOUBLE_EQ(t.water(), embedded.water());
    EXPECT_DOUBLE_EQ(t.proton(), embedded.proton());
  }
}

TEST(Discretize, Examples) {
  EXPECT_EQ(discretize(57.02146, 0.01).value, 5702);
  EXPECT_EQ(discretize(0.0, 0.01).value, 0);
  EXPECT_EQ(discretize(146.0, 1.0).value, 146);
  EXPECT_EQ(discretize(0.5, 1.0).value, 1);  // half rounds up
  EXPECT_THROW(discretize(-1.0, 0.01), MassError);
  EXPECT_THROW(discretize(1.0, 0.0), MassError);
}

TEST(Alphabet, EquivalenceClassesDependOnDelta) {
  const auto mono = ResidueTable::monoisotopic();
  const Alphabet fine(mono, 0.01);
  EXPECT_EQ(fine.equivalence_classes(), std::vector<std::string>{"IL"});
  EXPECT_EQ(fine.canonical("LIKQ"), "IIKQ");
  const Alphabet coarse(mono, 1.0);
  auto classes = coarse.equivalence_classes();
  EXPECT_NE(std::find(classes.begin(), classes.end(), "KQ"), classes.end());
}

TEST(MassArray, ToyExamples) {
  const Alphabet a(toy_table(), 1.0);
  const MassArray arr(a, MassUnit{400});
  EXPECT_TRUE(arr[MassUnit{57}]);
  EXPECT_TRUE(arr[MassUnit{71}]);
  EXPECT_TRUE(arr[MassUnit{128}]);
  EXPECT_TRUE(arr[MassUnit{142}]);
  EXPECT_FALSE(arr[MassUnit{1}]);
  EXPECT_FALSE(arr[MassUnit{85}]);
  EXPECT_FALSE(arr[MassUnit{0}]);
  EXPECT_EQ(arr.size(), 401u);
  EXPECT_THROW(MassArray(a, MassUnit{0}), MassError);
}

TEST(MassArray, IsResidueSum) {
  const Alphabet a(toy_table(), 1.0);
  const MassArray arr(a, MassUnit{400});
  EXPECT_TRUE(is_residue_sum(arr, MassUnit{128}, MassUnit{0}));
  EXPECT_FALSE(is_residue_sum(arr, MassUnit{85}, MassUnit{0}));
  EXPECT_FALSE(is_residue_sum(arr, MassUnit{405}, MassUnit{0}));
  EXPECT_TRUE(is_residue_sum(arr, MassUnit{55}, MassUnit{2}));
  EXPECT_FALSE(is_residue_sum(arr, MassUnit{55}, MassUnit{1}));
  EXPECT_FALSE(is_residue_sum(arr, MassUnit{-3}, MassUnit{1}));
}

TEST(MassArray, MatchesMultisetOracleOnRandomAlphabets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<Residue> res;
    std::vector<std::int64_t> masses;
    for (int r = 0; r < n; ++r) {
      const auto m = std::uniform_int_distribution<std::int64_t>(3, 200)(rng);
      res.push_back({static_cast<char>('A' + r), double(m)});
      masses.push_back(m);
    }
    const Alphabet a(ResidueTable(res, 18.0, 1.0), 1.0);
    const std::int64_t h = std::uniform_int_distribution<std::int64_t>(50, 2000)(rng);
    const MassArray arr(a, MassUnit{h});
    const auto sums = multiset_sums(masses, h);
    for (std::int64_t m = 0; m <= h; ++m) {
      ASSERT_EQ(arr[MassUnit{m}], sums.count(m) == 1) << "mass " << m;
      if (m % 7 == 0 && m <= 400) {
        ASSERT_EQ(arr[MassUnit{m}], !decompose_gap(a, MassUnit{m}, MassUnit{0}, 1).empty()) << "mass " << m;
      }
    }
    // table order does not matter
    std::reverse(res.begin(), res.end());
    const MassArray again(Alphabet(ResidueTable(res, 18.0, 1.0), 1.0), MassUnit{h});
    for (std::int64_t m = 0; m <= h; ++m) ASSERT_EQ(arr[MassUnit{m}], again[MassUnit{m}]);
  }
}

TEST(DecomposeGap, Examples) {
  const Alphabet a(toy_table(), 1.0);
  EXPECT_EQ(decompose_gap(a, MassUnit{128}, MassUnit{0}, 10), std::vector<std::string>{"AG"});
  EXPECT_EQ(decompose_gap(a, MassUnit{57}, MassUnit{0}, 10), std::vector<std::string>{"G"});
  EXPECT_TRUE(decompose_gap(a, MassUnit{85}, MassUnit{0}, 10).empty());
  EXPECT_EQ(decompose_gap(a, MassUnit{114}, MassUnit{0}, 10), std::vector<std::string>{"GG"});
}

TEST(DecomposeGap, FewestFirstNoDuplicatesWithinTolerance) {
  const auto mono = ResidueTable::monoisotopic();
  const Alphabet a(mono, 0.01);
  const MassUnit tol{50};
  const auto out = decompose_gap(a, MassUnit{25000}, tol, 1000);
  ASSERT_FALSE(out.empty());
  std::set<std::string> unique(out.begin(), out.end());
  EXPECT_EQ(unique.size(), out.size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    std::int64_t sum = 0;
    for (char c : out[t]) sum += a.mass_of(c)->value;
    EXPECT_LE(std::abs(sum - 25000), tol.value) << out[t];
    EXPECT_TRUE(std::is_sorted(out[t].begin(), out[t].end()));
    if (t) {
      EXPECT_LE(out[t - 1].size(), out[t].size());
    }
  }
  EXPECT_EQ(decompose_gap(a, MassUnit{25000}, tol, 3).size(), 3u);
}
