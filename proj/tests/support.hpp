#ifndef TREEDEC_TESTS_SUPPORT_HPP_
#define TREEDEC_TESTS_SUPPORT_HPP_

// Shared fixtures for the unit tests and the acceptance runner. Everything
// here is deterministic: randomness goes through std::mt19937_64 with
// explicit seeds and raw bit mapping, never through distributions with
// implementation-defined output.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <treedec/treedec.hpp>

namespace testsupport {

inline double unit_draw(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline int draw_below(std::mt19937_64& gen, int k) {
  return static_cast<int>(gen() % static_cast<std::uint64_t>(k));
}

/// Fair independent A, B with C = A xor B: every pairwise MI is zero while
/// the triple weight is ln 2.
inline treedec::JointTable xor_table() {
  treedec::JointTable t;
  t.variables = {"A", "B", "C"};
  t.probs = {0.25, 0.0, 0.0, 0.25, 0.0, 0.25, 0.25, 0.0};
  return t;
}

/// The worked three-variable example: stats (0.7, 0.56, 0.41, 0.428,
/// 0.278, 0.226, 0.1708), whose star solution is improper.
inline treedec::TripletStats example_stats() {
  return treedec::TripletStats{0.7, 0.56, 0.41, 0.428, 0.278, 0.226, 0.1708};
}

inline treedec::JointTable example_table() {
  return treedec::table_from_stats(example_stats());
}

/// A proper star (w=0.6, u=(0.9,0.8,0.7), v=(0.2,0.3,0.1)) and the stats
/// it generates; used as the well-behaved counterpart of example_stats.
inline treedec::StarParams proper_star() {
  treedec::StarParams p;
  p.w = 0.6;
  p.u = {0.9, 0.8, 0.7};
  p.v = {0.2, 0.3, 0.1};
  p.proper = true;
  return p;
}

/// Source distribution P(A) P(B|A) P(C|B) with fixed conditionals; its
/// best structure is the chain itself, which represents it exactly.
inline treedec::JointTable chain_table() {
  treedec::JointTable t;
  t.variables = {"A", "B", "C"};
  t.probs.assign(8, 0.0);
  const double pa = 0.6;
  const double pb_a[2] = {0.2, 0.85};  // P(B=1 | A=a)
  const double pc_b[2] = {0.3, 0.75};  // P(C=1 | B=b)
  for (int x = 0; x < 8; ++x) {
    const int a = x & 1, b = (x >> 1) & 1, c = (x >> 2) & 1;
    double p = a ? pa : 1.0 - pa;
    p *= b ? pb_a[a] : 1.0 - pb_a[a];
    p *= c ? pc_b[b] : 1.0 - pc_b[b];
    t.probs[x] = p;
  }
  return t;
}

/// Random star parameters with all conditionals inside (0.05, 0.95) and a
/// latent prior inside (0.2, 0.8); retried until every absolute pairwise
/// covariance of the implied stats is at least min_cov.
inline treedec::StarParams random_proper_star(std::mt19937_64& gen, double min_cov = 1e-4) {
  for (;;) {
    treedec::StarParams p;
    p.w = 0.2 + 0.6 * unit_draw(gen);
    for (int i = 0; i < 3; ++i) {
      p.u[i] = 0.05 + 0.9 * unit_draw(gen);
      p.v[i] = 0.05 + 0.9 * unit_draw(gen);
    }
    p.proper = true;
    const treedec::TripletStats s = treedec::star_forward(p);
    const double c12 = s.p12 - s.p1 * s.p2;
    const double c13 = s.p13 - s.p1 * s.p3;
    const double c23 = s.p23 - s.p2 * s.p3;
    if (std::abs(c12) < min_cov || std::abs(c13) < min_cov || std::abs(c23) < min_cov) continue;
    if (!treedec::triplet_violations(s).empty()) continue;
    return p;
  }
}

/// Branch swap W <-> not-W onto the canonical labeling (w >= 0.5; u1 >= v1
/// at the midpoint), the form star_solve reports.
inline treedec::StarParams canonical_star(treedec::StarParams p) {
  const bool flip = p.w < 0.5 || (p.w == 0.5 && p.u[0] < p.v[0]);
  if (flip) {
    p.w = 1.0 - p.w;
    std::swap(p.u, p.v);
  }
  return p;
}

/// Random connected valid topology over n variables: grows from a random
/// start, attaching each new pair or triple through exactly one covered
/// variable.
inline treedec::Topology random_topology(int n, std::mt19937_64& gen) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[draw_below(gen, i + 1)]);

  treedec::Topology t;
  std::vector<int> covered = {order[0]};
  std::size_t next = 1;
  while (next < order.size()) {
    const int anchor = covered[draw_below(gen, static_cast<int>(covered.size()))];
    const bool triple = order.size() - next >= 2 && draw_below(gen, 2) == 0;
    std::vector<int> comp = {anchor, order[next++]};
    if (triple) comp.push_back(order[next++]);
    for (std::size_t k = 1; k < comp.size(); ++k) covered.push_back(comp[k]);
    t.components.push_back(comp);
  }
  t.roots = treedec::default_roots(t.components, n);
  t.canonicalize();
  return t;
}

/// All 18 evidence patterns over a triplet (one or two observables fixed),
/// as (evidence, value-mask) pairs: 6 single-variable and 12 two-variable.
inline std::vector<treedec::StarEvidence> all_star_evidence() {
  std::vector<treedec::StarEvidence> out;
  for (int i = 0; i < 3; ++i)
    for (int vi = 0; vi < 2; ++vi) out.push_back({{i, vi == 1}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int vi = 0; vi < 2; ++vi)
        for (int vj = 0; vj < 2; ++vj)
          out.push_back({{i, vi == 1}, {j, vj == 1}});
  return out;
}

}  // namespace testsupport

#endif  // TREEDEC_TESTS_SUPPORT_HPP_
