#ifndef TREEDEC_WEIGHTS_HPP_
#define TREEDEC_WEIGHTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "treedec/joint_table.hpp"

namespace treedec {

/// Weights smaller than this are clamped to zero in catalogs.
inline constexpr double kWeightFloor = 1e-12;

/// A candidate tree component: a variable pair or triple with its
/// information weight. `vars` is sorted ascending; `mask` has the same
/// variables as set bits, for overlap tests.
struct CatalogEntry {
  std::vector<int> vars;
  double weight = 0.0;
  std::uint32_t mask = 0;

  int size() const { return static_cast<int>(vars.size()); }
};

struct WeightCatalog {
  int n = 0;
  std::vector<CatalogEntry> entries;
};

/// I(X_a; X_b) in nats. Terms with a zero joint cell contribute zero.
inline double mi_pair(const JointTable& table, int a, int b) {
  const std::vector<double> joint = marginal_over(table, {a, b});
  const std::vector<double> ma = marginal_over(table, {a});
  const std::vector<double> mb = marginal_over(table, {b});
  double mi = 0.0;
  for (int xa = 0; xa < 2; ++xa)
    for (int xb = 0; xb < 2; ++xb) {
      const double p = joint[xa | (xb << 1)];
      if (p <= 0.0) continue;
      mi += p * std::log(p / (ma[xa] * mb[xb]));
    }
  return mi;
}

/// Total correlation of a triplet: the divergence of the joint from the
/// product of the three singleton marginals, in nats. Decomposes as
/// I(X_a;X_b) + I((X_a,X_b); X_c), so it dominates every pairwise term.
inline double mi_triple(const JointTable& table, int a, int b, int c) {
  const std::vector<double> joint = marginal_over(table, {a, b, c});
  const std::vector<double> ma = marginal_over(table, {a});
  const std::vector<double> mb = marginal_over(table, {b});
  const std::vector<double> mc = marginal_over(table, {c});
  double mi = 0.0;
  for (int x = 0; x < 8; ++x) {
    const double p = joint[x];
    if (p <= 0.0) continue;
    mi += p * std::log(p / (ma[x & 1] * mb[(x >> 1) & 1] * mc[(x >> 2) & 1]));
  }
  return mi;
}

/// All pairs and triples of the table's variables, weighted by their
/// information content and sorted by descending weight; ties break on the
/// lexicographically smaller variable list. Weights below kWeightFloor are
/// clamped to zero. Deterministic for a given table.
inline WeightCatalog build_catalog(const JointTable& table) {
  const int n = table.n();
  WeightCatalog catalog;
  catalog.n = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      CatalogEntry e;
      e.vars = {a, b};
      e.weight = mi_pair(table, a, b);
      if (e.weight < kWeightFloor) e.weight = 0.0;
      e.mask = (1u << a) | (1u << b);
      catalog.entries.push_back(std::move(e));
    }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        CatalogEntry e;
        e.vars = {a, b, c};
        e.weight = mi_triple(table, a, b, c);
        if (e.weight < kWeightFloor) e.weight = 0.0;
        e.mask = (1u << a) | (1u << b) | (1u << c);
        catalog.entries.push_back(std::move(e));
      }
  std::stable_sort(catalog.entries.begin(), catalog.entries.end(),
                   [](const CatalogEntry& x, const CatalogEntry& y) {
                     if (x.weight != y.weight) return x.weight > y.weight;
                     return x.vars < y.vars;
                   });
  return catalog;
}

}  // namespace treedec

#endif  // TREEDEC_WEIGHTS_HPP_
