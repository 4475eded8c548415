#ifndef TREEDEC_SEARCH_HPP_
#define TREEDEC_SEARCH_HPP_

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "treedec/model.hpp"
#include "treedec/topology.hpp"
#include "treedec/weights.hpp"

namespace treedec {

enum class SearchMode {
  kPaperGreedy,  // accept entries overlapping the covered set in <= 1 variable
  kConnected,    // accept only entries overlapping in exactly 1 (tree stays connected)
};

struct SearchOptions {
  SearchMode mode = SearchMode::kPaperGreedy;
  long long node_budget = 1'000'000;
  double tolerance = 1e-12;
};

struct SearchReport {
  Topology topology;
  double weight_sum = 0.0;
  long long nodes_expanded = 0;
  long long nodes_pruned = 0;
  long long greedy_iterations = 0;
  bool optimal_flag = false;
};

namespace detail {

/// Builds the canonical report for a chosen component multiset: default
/// roots, canonical ordering, weight recomputed from the catalog so every
/// method reports identical weights for identical structures.
inline SearchReport finish_report(std::vector<std::vector<int>> components,
                                  const WeightCatalog& catalog) {
  SearchReport report;
  report.topology.components = std::move(components);
  report.topology.roots = default_roots(report.topology.components, catalog.n);
  report.topology.canonicalize();
  report.weight_sum = weight_sum(report.topology, catalog);
  return report;
}

inline std::vector<std::vector<int>> sorted_sets(const std::vector<int>& ranks,
                                                 const WeightCatalog& catalog) {
  std::vector<std::vector<int>> sets;
  sets.reserve(ranks.size());
  for (int r : ranks) sets.push_back(catalog.entries[r].vars);
  std::sort(sets.begin(), sets.end());
  return sets;
}

/// True when candidate entry e can be added to the forest tracked by dsu
/// without creating a cycle: its variables must lie in pairwise distinct
/// parts (this also subsumes the share-at-most-one-variable rule).
inline bool acyclic_addition(Dsu& dsu, const CatalogEntry& e) {
  if (e.size() == 2) return dsu.find(e.vars[0]) != dsu.find(e.vars[1]);
  const int a = dsu.find(e.vars[0]);
  const int b = dsu.find(e.vars[1]);
  const int c = dsu.find(e.vars[2]);
  return a != b && a != c && b != c;
}

inline void merge_entry(Dsu& dsu, const CatalogEntry& e) {
  for (int i = 1; i < e.size(); ++i) dsu.unite(e.vars[0], e.vars[i]);
}

}  // namespace detail

/// Single descending pass over the catalog. The first entry is always
/// accepted; later entries are accepted when their overlap with the set of
/// already-covered variables is at most one variable (paper-greedy mode) or
/// exactly one (connected mode). Deterministic given the catalog order.
inline SearchReport greedy(const WeightCatalog& catalog, const SearchOptions& options = {}) {
  const int n = catalog.n;
  if (n < 2) throw std::invalid_argument("greedy: need at least 2 variables");
  std::uint32_t covered = 0;
  const std::uint32_t all = (n >= 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::vector<int>> chosen;
  long long accepted = 0;
  for (const auto& e : catalog.entries) {
    if (covered == all) break;
    const int overlap = std::popcount(covered & e.mask);
    const bool ok = covered == 0 ? true
                    : options.mode == SearchMode::kPaperGreedy ? overlap <= 1
                                                               : overlap == 1;
    if (!ok) continue;
    chosen.push_back(e.vars);
    covered |= e.mask;
    ++accepted;
  }
  SearchReport report = detail::finish_report(std::move(chosen), catalog);
  report.greedy_iterations = accepted;
  return report;
}

/// Maximum-weight spanning tree over the pair entries (Kruskal in catalog
/// order): the best second-order structure.
inline SearchReport chow_liu(const WeightCatalog& catalog) {
  const int n = catalog.n;
  if (n < 2) throw std::invalid_argument("chow_liu: need at least 2 variables");
  detail::Dsu dsu(n);
  std::vector<std::vector<int>> chosen;
  for (const auto& e : catalog.entries) {
    if (static_cast<int>(chosen.size()) == n - 1) break;
    if (e.size() != 2) continue;
    if (dsu.unite(e.vars[0], e.vars[1])) chosen.push_back(e.vars);
  }
  return detail::finish_report(std::move(chosen), catalog);
}

/// Relaxed upper bound on the total weight of any connected structure that
/// extends the partial solution `ranks` (an increasing list of catalog
/// indices) using only higher-ranked entries. Overlap and acyclicity are
/// dropped: the remaining child slots are filled by a fractional knapsack
/// over weight per slot. Admissible because every real completion consumes
/// exactly the remaining slots at no better value density.
inline double bnb_upper_bound(const WeightCatalog& catalog, const std::vector<int>& ranks) {
  const int n = catalog.n;
  double weight = 0.0;
  int slots = 0;
  for (int r : ranks) {
    weight += catalog.entries[r].weight;
    slots += catalog.entries[r].size() - 1;
  }
  int capacity = (n - 1) - slots;
  if (capacity <= 0) return weight;
  const int first = ranks.empty() ? 0 : ranks.back() + 1;
  struct Item {
    double density;
    int cost;
  };
  std::vector<Item> items;
  for (std::size_t r = first; r < catalog.entries.size(); ++r) {
    const int cost = catalog.entries[r].size() - 1;
    items.push_back({catalog.entries[r].weight / cost, cost});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.density > b.density; });
  double bound = weight;
  for (const Item& it : items) {
    if (capacity <= 0) break;
    const int take = std::min(capacity, it.cost);
    bound += it.density * take;
    capacity -= take;
  }
  return bound;
}

/// Greedy connected completion of the partial solution using only entries
/// ranked after the last chosen one; the branch-and-bound lower bound.
/// Returns nothing when no such completion exists (possible for deep
/// partial solutions, never for the empty one).
inline std::optional<Topology> bnb_completion(const WeightCatalog& catalog,
                                              const std::vector<int>& ranks) {
  const int n = catalog.n;
  detail::Dsu dsu(n);
  int slots = 0;
  for (int r : ranks) {
    detail::merge_entry(dsu, catalog.entries[r]);
    slots += catalog.entries[r].size() - 1;
  }
  std::vector<int> all_ranks = ranks;
  const int first = ranks.empty() ? 0 : ranks.back() + 1;
  for (std::size_t r = first; r < catalog.entries.size() && slots < n - 1; ++r) {
    const CatalogEntry& e = catalog.entries[r];
    if (slots + e.size() - 1 > n - 1) continue;
    if (!detail::acyclic_addition(dsu, e)) continue;
    detail::merge_entry(dsu, e);
    slots += e.size() - 1;
    all_ranks.push_back(static_cast<int>(r));
  }
  if (slots != n - 1) return std::nullopt;  // forest left disconnected
  Topology t;
  t.components = detail::sorted_sets(all_ranks, catalog);
  t.roots = default_roots(t.components, n);
  t.canonicalize();
  return t;
}

/// Best-first exact search over connected structures. Nodes are partial
/// component sets; children extend a node with one feasible entry of
/// strictly higher catalog rank, so every structure is generated exactly
/// once (by increasing rank). A node is fathomed when its relaxed upper
/// bound falls more than `tolerance` below the incumbent; ties within
/// tolerance are still expanded so the lexicographically smallest optimal
/// component multiset is found deterministically.
inline SearchReport branch_and_bound(const WeightCatalog& catalog,
                                     const SearchOptions& options = {}) {
  const int n = catalog.n;
  if (n < 2) throw std::invalid_argument("branch_and_bound: need at least 2 variables");
  if (options.node_budget < 1)
    throw std::invalid_argument("branch_and_bound: node budget must be at least 1");
  const double tol = options.tolerance;
  const int target_slots = n - 1;

  struct Node {
    std::vector<int> ranks;
    std::vector<int> dsu_parent;
    int slots = 0;
    double weight = 0.0;
    double ub = 0.0;
    long long seq = 0;
  };
  const auto node_order = [](const Node& a, const Node& b) {
    if (a.ub != b.ub) return a.ub < b.ub;  // priority_queue: top has max ub
    return a.seq > b.seq;                  // FIFO among equal bounds
  };
  std::priority_queue<Node, std::vector<Node>, decltype(node_order)> frontier(node_order);

  double incumbent_weight = -1.0;
  std::vector<std::vector<int>> incumbent_sets;
  const auto offer_incumbent = [&](double w, std::vector<std::vector<int>> sets) {
    if (w > incumbent_weight + tol) {
      incumbent_weight = w;
      incumbent_sets = std::move(sets);
    } else if (w >= incumbent_weight - tol && !incumbent_sets.empty() &&
               sets < incumbent_sets) {
      incumbent_sets = std::move(sets);
    }
  };
  const auto completion_weight = [&](const Topology& t) { return weight_sum(t, catalog); };

  // Seed the incumbent with the greedy completion of the empty solution.
  if (auto seed = bnb_completion(catalog, {}))
    offer_incumbent(completion_weight(*seed), seed->components);

  long long seq = 0;
  Node root;
  root.dsu_parent.resize(n);
  std::iota(root.dsu_parent.begin(), root.dsu_parent.end(), 0);
  root.ub = bnb_upper_bound(catalog, {});
  root.seq = seq++;
  frontier.push(root);

  long long expanded = 0, pruned = 0;
  while (!frontier.empty() && expanded < options.node_budget) {
    Node node = frontier.top();
    frontier.pop();
    if (node.ub < incumbent_weight - tol) {
      ++pruned;
      continue;
    }
    ++expanded;
    if (node.slots == target_slots) {
      // slots == n-1 with an acyclic forest forces a single connected tree
      offer_incumbent(node.weight, detail::sorted_sets(node.ranks, catalog));
      continue;
    }
    const int first = node.ranks.empty() ? 0 : node.ranks.back() + 1;
    for (std::size_t r = first; r < catalog.entries.size(); ++r) {
      const CatalogEntry& e = catalog.entries[r];
      if (node.slots + e.size() - 1 > target_slots) continue;
      detail::Dsu dsu{};
      dsu.parent = node.dsu_parent;
      if (!detail::acyclic_addition(dsu, e)) continue;
      detail::merge_entry(dsu, e);
      Node child;
      child.ranks = node.ranks;
      child.ranks.push_back(static_cast<int>(r));
      child.dsu_parent = std::move(dsu.parent);
      child.slots = node.slots + e.size() - 1;
      child.weight = node.weight + e.weight;
      child.ub = bnb_upper_bound(catalog, child.ranks);
      if (auto done = bnb_completion(catalog, child.ranks))
        offer_incumbent(completion_weight(*done), done->components);
      if (child.ub < incumbent_weight - tol) {
        ++pruned;
        continue;
      }
      child.seq = seq++;
      frontier.push(std::move(child));
    }
  }

  SearchReport report = detail::finish_report(std::move(incumbent_sets), catalog);
  report.nodes_expanded = expanded;
  report.nodes_pruned = pruned;
  report.optimal_flag = frontier.empty();
  return report;
}

/// Exhaustive enumeration of every connected valid structure, in canonical
/// order (component variable sets added in increasing catalog rank).
/// nodes_expanded reports the number of complete structures visited.
inline SearchReport brute_force(const WeightCatalog& catalog) {
  const int n = catalog.n;
  if (n < 2) throw std::invalid_argument("brute_force: need at least 2 variables");
  if (n > 6) throw std::invalid_argument("brute_force: guarded to n <= 6");
  const double tol = 1e-12;
  const int target_slots = n - 1;

  double best_weight = -1.0;
  std::vector<std::vector<int>> best_sets;
  long long structures = 0;

  std::vector<int> ranks;
  detail::Dsu dsu(n);
  const auto consider = [&](double w) {
    ++structures;
    auto sets = detail::sorted_sets(ranks, catalog);
    if (w > best_weight + tol) {
      best_weight = w;
      best_sets = std::move(sets);
    } else if (w >= best_weight - tol && !best_sets.empty() && sets < best_sets) {
      best_sets = std::move(sets);
    }
  };
  const auto recurse = [&](auto&& self, int first, int slots, double weight) -> void {
    if (slots == target_slots) {
      consider(weight);
      return;
    }
    for (std::size_t r = first; r < catalog.entries.size(); ++r) {
      const CatalogEntry& e = catalog.entries[r];
      if (slots + e.size() - 1 > target_slots) continue;
      std::vector<int> saved = dsu.parent;
      if (!detail::acyclic_addition(dsu, e)) continue;
      detail::merge_entry(dsu, e);
      ranks.push_back(static_cast<int>(r));
      self(self, static_cast<int>(r) + 1, slots + e.size() - 1, weight + e.weight);
      ranks.pop_back();
      dsu.parent = std::move(saved);
    }
  };
  recurse(recurse, 0, 0, 0.0);

  SearchReport report = detail::finish_report(std::move(best_sets), catalog);
  report.nodes_expanded = structures;
  report.optimal_flag = true;
  return report;
}

}  // namespace treedec

#endif  // TREEDEC_SEARCH_HPP_
