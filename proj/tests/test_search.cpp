#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace treedec;
namespace ts = testsupport;

namespace {

void require_structurally_sound(const SearchReport& report, const WeightCatalog& catalog) {
  REQUIRE(validate_topology(report.topology, catalog.n).empty());
  int triples = 0, slots = 0;
  for (const auto& c : report.topology.components) {
    if (c.size() == 3) ++triples;
    slots += static_cast<int>(c.size()) - 1;
  }
  REQUIRE(2 * triples <= catalog.n);
  REQUIRE(slots == catalog.n - static_cast<int>(report.topology.roots.size()));
  REQUIRE(std::abs(report.weight_sum - weight_sum(report.topology, catalog)) <= 1e-12);
}

// Exhaustive maximum over all connected completions of `ranks` that only
// use higher-ranked entries; reference for the bound-soundness audit.
double best_completion_weight(const WeightCatalog& catalog, std::vector<int>& ranks,
                              detail::Dsu& dsu, int slots, double weight, bool& any) {
  const int n = catalog.n;
  if (slots == n - 1) {
    any = true;
    return weight;
  }
  double best = -1.0;
  const int first = ranks.empty() ? 0 : ranks.back() + 1;
  for (std::size_t r = first; r < catalog.entries.size(); ++r) {
    const CatalogEntry& e = catalog.entries[r];
    if (slots + e.size() - 1 > n - 1) continue;
    std::vector<int> saved = dsu.parent;
    if (!detail::acyclic_addition(dsu, e)) {
      dsu.parent = std::move(saved);
      continue;
    }
    detail::merge_entry(dsu, e);
    ranks.push_back(static_cast<int>(r));
    bool sub_any = false;
    const double sub = best_completion_weight(catalog, ranks, dsu, slots + e.size() - 1,
                                              weight + e.weight, sub_any);
    if (sub_any) {
      any = true;
      best = std::max(best, sub);
    }
    ranks.pop_back();
    dsu.parent = std::move(saved);
  }
  return best;
}

}  // namespace

TEST_CASE("xor witness: exact search picks the triple, chow-liu cannot") {
  const WeightCatalog catalog = build_catalog(ts::xor_table());

  const SearchReport exact = branch_and_bound(catalog);
  REQUIRE(exact.optimal_flag);
  REQUIRE(exact.topology.components == std::vector<std::vector<int>>{{0, 1, 2}});
  REQUIRE(std::abs(exact.weight_sum - std::log(2.0)) <= 1e-12);

  const SearchReport greedy_report = greedy(catalog);
  REQUIRE(greedy_report.topology.components == std::vector<std::vector<int>>{{0, 1, 2}});
  REQUIRE(greedy_report.greedy_iterations == 1);

  const SearchReport cl = chow_liu(catalog);
  REQUIRE(cl.weight_sum <= 1e-9);
  REQUIRE(cl.topology.components.size() == 2);  // a spanning tree of pairs
  REQUIRE(exact.weight_sum - cl.weight_sum >= std::log(2.0) - 1e-6);

  require_structurally_sound(exact, catalog);
  require_structurally_sound(greedy_report, catalog);
  require_structurally_sound(cl, catalog);
}

TEST_CASE("uniform weights fall back to the deterministic tie-break") {
  JointTable t;
  t.variables = {"A", "B", "C"};
  t.probs.assign(8, 0.125);
  const WeightCatalog catalog = build_catalog(t);
  const SearchReport g = greedy(catalog);
  REQUIRE(g.topology.components == std::vector<std::vector<int>>{{0, 1}, {0, 2}});
  REQUIRE(g.weight_sum == 0.0);
  const SearchReport b = branch_and_bound(catalog);
  REQUIRE(b.topology.components == std::vector<std::vector<int>>{{0, 1}, {0, 2}});
  const SearchReport bf = brute_force(catalog);
  REQUIRE(bf.topology == b.topology);
}

TEST_CASE("chow_liu on two variables returns the single pair") {
  const JointTable t = random_table(2, 5);
  const SearchReport r = chow_liu(build_catalog(t));
  REQUIRE(r.topology.components == std::vector<std::vector<int>>{{0, 1}});
  REQUIRE(r.topology.roots == std::vector<int>{0});
}

TEST_CASE("chow_liu recovers a chain-structured source exactly") {
  const JointTable t = ts::chain_table();
  const SearchReport r = chow_liu(build_catalog(t));
  REQUIRE(r.topology.components == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  const FittedModel model = project_parameters(t, r.topology);
  REQUIRE(model.scores.i_divergence <= 1e-10);
}

TEST_CASE("brute force counts the known structure spaces") {
  const JointTable two = random_table(2, 6);
  REQUIRE(brute_force(build_catalog(two)).nodes_expanded == 1);

  const JointTable three = random_table(3, 7);
  REQUIRE(brute_force(build_catalog(three)).nodes_expanded == 4);  // 3 pair trees + 1 triple

  const JointTable seven = random_table(7, 8);
  REQUIRE_THROWS_AS(brute_force(build_catalog(seven)), std::invalid_argument);
}

TEST_CASE("branch and bound agrees with brute force on seeded instances") {
  std::mt19937_64 gen(1234);
  for (int n = 4; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const JointTable t = random_table(n, gen());
      const WeightCatalog catalog = build_catalog(t);
      const SearchReport bb = branch_and_bound(catalog);
      const SearchReport bf = brute_force(catalog);
      REQUIRE(bb.optimal_flag);
      REQUIRE(std::abs(bb.weight_sum - bf.weight_sum) <= 1e-9);
      REQUIRE(bb.topology == bf.topology);
      require_structurally_sound(bb, catalog);
      require_structurally_sound(bf, catalog);
    }
  }
}

TEST_CASE("greedy never beats exact search") {
  std::mt19937_64 gen(1235);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 3;
    const JointTable t = random_table(n, gen());
    const WeightCatalog catalog = build_catalog(t);
    for (SearchMode mode : {SearchMode::kPaperGreedy, SearchMode::kConnected}) {
      SearchOptions options;
      options.mode = mode;
      const SearchReport g = greedy(catalog, options);
      const SearchReport b = branch_and_bound(catalog);
      REQUIRE(g.weight_sum <= b.weight_sum + 1e-12);
      require_structurally_sound(g, catalog);
    }
  }
}

TEST_CASE("connected greedy always returns a single tree") {
  std::mt19937_64 gen(1236);
  SearchOptions options;
  options.mode = SearchMode::kConnected;
  for (int trial = 0; trial < 8; ++trial) {
    const JointTable t = random_table(5, gen());
    const SearchReport g = greedy(build_catalog(t), options);
    REQUIRE(g.topology.roots.size() == 1);
  }
}

TEST_CASE("a node budget of one yields the greedy-quality fallback") {
  const JointTable t = random_table(6, 4096);
  const WeightCatalog catalog = build_catalog(t);
  SearchOptions options;
  options.node_budget = 1;
  const SearchReport limited = branch_and_bound(catalog, options);
  REQUIRE_FALSE(limited.optimal_flag);
  REQUIRE(limited.nodes_expanded == 1);
  require_structurally_sound(limited, catalog);
  const auto seed_completion = bnb_completion(catalog, {});
  REQUIRE(seed_completion.has_value());
  // at least greedy quality: the seed incumbent is never thrown away
  REQUIRE(limited.weight_sum >= weight_sum(*seed_completion, catalog) - 1e-12);
}

TEST_CASE("increasing the budget never lowers the result") {
  const JointTable t = random_table(6, 8192);
  const WeightCatalog catalog = build_catalog(t);
  double previous = -1.0;
  for (long long budget : {1LL, 4LL, 16LL, 64LL, 1000000LL}) {
    SearchOptions options;
    options.node_budget = budget;
    const SearchReport r = branch_and_bound(catalog, options);
    REQUIRE(r.weight_sum >= previous - 1e-12);
    previous = r.weight_sum;
  }
}

TEST_CASE("search reports are deterministic") {
  const JointTable t = random_table(6, 31337);
  const WeightCatalog catalog = build_catalog(t);
  const SearchReport a = branch_and_bound(catalog);
  const SearchReport b = branch_and_bound(catalog);
  REQUIRE(a.topology == b.topology);
  REQUIRE(a.weight_sum == b.weight_sum);
  REQUIRE(a.nodes_expanded == b.nodes_expanded);
  REQUIRE(a.nodes_pruned == b.nodes_pruned);
  const SearchReport g1 = greedy(catalog);
  const SearchReport g2 = greedy(catalog);
  REQUIRE(g1.topology == g2.topology);
}

TEST_CASE("upper and lower bounds sandwich the true best completion") {
  std::mt19937_64 gen(777);
  for (int trial = 0; trial < 3; ++trial) {
    const JointTable t = random_table(4, gen());
    const WeightCatalog catalog = build_catalog(t);
    // Walk every feasible partial solution the search could expand.
    std::vector<std::vector<int>> partials = {{}};
    for (std::size_t i = 0; i < partials.size(); ++i) {
      const std::vector<int> node = partials[i];
      int slots = 0;
      detail::Dsu dsu(catalog.n);
      for (int r : node) {
        detail::merge_entry(dsu, catalog.entries[r]);
        slots += catalog.entries[r].size() - 1;
      }
      const int first = node.empty() ? 0 : node.back() + 1;
      for (std::size_t r = first; r < catalog.entries.size(); ++r) {
        const CatalogEntry& e = catalog.entries[r];
        if (slots + e.size() - 1 > catalog.n - 1) continue;
        detail::Dsu probe;
        probe.parent = dsu.parent;
        if (!detail::acyclic_addition(probe, e)) continue;
        std::vector<int> child = node;
        child.push_back(static_cast<int>(r));
        partials.push_back(std::move(child));
      }

      double weight = 0.0;
      for (int r : node) weight += catalog.entries[r].weight;
      std::vector<int> scratch = node;
      detail::Dsu scratch_dsu(catalog.n);
      for (int r : node) detail::merge_entry(scratch_dsu, catalog.entries[r]);
      bool any = false;
      const double best =
          best_completion_weight(catalog, scratch, scratch_dsu, slots, weight, any);
      const double ub = bnb_upper_bound(catalog, node);
      if (any) REQUIRE(ub >= best - 1e-12);
      const auto lower = bnb_completion(catalog, node);
      if (lower.has_value()) {
        REQUIRE(any);
        REQUIRE(weight_sum(*lower, catalog) <= best + 1e-12);
        REQUIRE(weight_sum(*lower, catalog) <= ub + 1e-12);
      }
    }
  }
}

TEST_CASE("searches reject degenerate inputs") {
  const JointTable t = random_table(1, 1);
  const WeightCatalog catalog = build_catalog(t);
  REQUIRE_THROWS_AS(greedy(catalog), std::invalid_argument);
  REQUIRE_THROWS_AS(chow_liu(catalog), std::invalid_argument);
  REQUIRE_THROWS_AS(branch_and_bound(catalog), std::invalid_argument);
  REQUIRE_THROWS_AS(brute_force(catalog), std::invalid_argument);

  const WeightCatalog six = build_catalog(random_table(6, 2));
  SearchOptions bad_budget;
  bad_budget.node_budget = 0;
  REQUIRE_THROWS_AS(branch_and_bound(six, bad_budget), std::invalid_argument);
}

TEST_CASE("nine variables stay comfortably inside the node budget") {
  const JointTable t = random_table(9, 90001);
  const WeightCatalog catalog = build_catalog(t);
  const SearchReport r = branch_and_bound(catalog);
  REQUIRE(r.optimal_flag);
  REQUIRE(r.nodes_expanded < 10000);
  require_structurally_sound(r, catalog);
}
