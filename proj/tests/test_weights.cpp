#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace treedec;
namespace ts = testsupport;

TEST_CASE("mi_pair matches the worked example's I(X1;X2)") {
  const JointTable t = ts::example_table();
  REQUIRE(std::abs(mi_pair(t, 0, 1) - 0.012477515387798073) <= 1e-12);
  REQUIRE(mi_pair(t, 0, 1) == mi_pair(t, 1, 0));
}

TEST_CASE("xor triplet: zero pairwise information, ln 2 triple information") {
  const JointTable t = ts::xor_table();
  REQUIRE(std::abs(mi_pair(t, 0, 1)) <= 1e-15);
  REQUIRE(std::abs(mi_pair(t, 0, 2)) <= 1e-15);
  REQUIRE(std::abs(mi_pair(t, 1, 2)) <= 1e-15);
  REQUIRE(std::abs(mi_triple(t, 0, 1, 2) - std::log(2.0)) <= 1e-12);
}

TEST_CASE("mi_pair of independent variables is zero") {
  JointTable t;
  t.variables = {"A", "B"};
  t.probs = {0.4 * 0.3, 0.6 * 0.3, 0.4 * 0.7, 0.6 * 0.7};
  REQUIRE(std::abs(mi_pair(t, 0, 1)) <= 1e-15);
}

TEST_CASE("triple weight decomposes by the chain rule") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const JointTable t = random_table(4, seed);
    const auto joint = marginal_over(t, {0, 2, 3});
    const auto pair = marginal_over(t, {0, 2});
    const auto mc = marginal_over(t, {3});
    double chain = 0.0;  // I((X1,X3); X4)
    for (int x = 0; x < 8; ++x) {
      const double p = joint[x];
      if (p <= 0.0) continue;
      chain += p * std::log(p / (pair[x & 3] * mc[x >> 2]));
    }
    REQUIRE(std::abs(mi_triple(t, 0, 2, 3) - (mi_pair(t, 0, 2) + chain)) <= 1e-9);
  }
}

TEST_CASE("triple weight dominates each pairwise weight") {
  for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
    const JointTable t = random_table(5, seed);
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        for (int c = b + 1; c < 5; ++c) {
          const double w = mi_triple(t, a, b, c);
          REQUIRE(w >= mi_pair(t, a, b) - 1e-12);
          REQUIRE(w >= mi_pair(t, a, c) - 1e-12);
          REQUIRE(w >= mi_pair(t, b, c) - 1e-12);
        }
  }
}

TEST_CASE("mi_triple is symmetric under argument permutation") {
  const JointTable t = random_table(4, 55);
  const double base = mi_triple(t, 0, 1, 3);
  REQUIRE(std::abs(mi_triple(t, 1, 0, 3) - base) <= 1e-12);
  REQUIRE(std::abs(mi_triple(t, 3, 1, 0) - base) <= 1e-12);
  REQUIRE(std::abs(mi_triple(t, 0, 3, 1) - base) <= 1e-12);
}

TEST_CASE("build_catalog enumerates every pair and triple exactly once") {
  const JointTable t = random_table(5, 66);
  const WeightCatalog catalog = build_catalog(t);
  REQUIRE(catalog.n == 5);
  REQUIRE(catalog.entries.size() == 10u + 10u);  // C(5,2) + C(5,3)
  for (const auto& e : catalog.entries) {
    std::uint32_t mask = 0;
    for (int v : e.vars) mask |= 1u << v;
    REQUIRE(mask == e.mask);
    REQUIRE(std::is_sorted(e.vars.begin(), e.vars.end()));
    REQUIRE(e.weight >= 0.0);
  }
  for (std::size_t i = 1; i < catalog.entries.size(); ++i)
    REQUIRE(catalog.entries[i - 1].weight >= catalog.entries[i].weight);
}

TEST_CASE("catalog ties break on the lexicographically smaller variable set") {
  JointTable t;
  t.variables = {"A", "B", "C"};
  t.probs.assign(8, 0.125);  // fully independent: every weight clamps to 0
  const WeightCatalog catalog = build_catalog(t);
  REQUIRE(catalog.entries.size() == 4);
  REQUIRE(catalog.entries[0].vars == std::vector<int>{0, 1});
  REQUIRE(catalog.entries[1].vars == std::vector<int>{0, 1, 2});
  REQUIRE(catalog.entries[2].vars == std::vector<int>{0, 2});
  REQUIRE(catalog.entries[3].vars == std::vector<int>{1, 2});
  for (const auto& e : catalog.entries) REQUIRE(e.weight == 0.0);
}

TEST_CASE("build_catalog is deterministic") {
  const JointTable t = random_table(6, 77);
  const WeightCatalog a = build_catalog(t);
  const WeightCatalog b = build_catalog(t);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    REQUIRE(a.entries[i].vars == b.entries[i].vars);
    REQUIRE(a.entries[i].weight == b.entries[i].weight);
  }
}
