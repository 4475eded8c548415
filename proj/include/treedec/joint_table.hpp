#ifndef TREEDEC_JOINT_TABLE_HPP_
#define TREEDEC_JOINT_TABLE_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treedec/errors.hpp"

namespace treedec {

inline constexpr int kMaxVariables = 20;
inline constexpr int kMaxGeneratedVariables = 12;
inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kDefaultMinMass = 1e-6;

/// Dense joint distribution over n named binary variables.
///
/// Outcomes are indexed LSB-first: bit i of the outcome index is 1 iff
/// variable i is true, so probs[0] = P(all false) and probs[2^n - 1] =
/// P(all true). This encoding is also the file-format anchor.
struct JointTable {
  std::vector<std::string> variables;
  std::vector<double> probs;

  int n() const { return static_cast<int>(variables.size()); }
  std::size_t outcomes() const { return probs.size(); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
      if (variables[i] == name) return i;
    throw UnknownVariable("unknown variable '" + name + "'");
  }
};

/// Report-style validation: one message per violated invariant, empty if ok.
inline std::vector<std::string> validate(const JointTable& table) {
  std::vector<std::string> out;
  const int n = table.n();
  if (n < 1 || n > kMaxVariables)
    out.push_back("variable count " + std::to_string(n) + " outside [1, " +
                  std::to_string(kMaxVariables) + "]");
  for (int i = 0; i < n; ++i) {
    if (table.variables[i].empty()) out.push_back("empty variable name at position " + std::to_string(i));
    for (int j = i + 1; j < n; ++j)
      if (table.variables[i] == table.variables[j])
        out.push_back("duplicate variable name '" + table.variables[i] + "'");
  }
  if (n >= 1 && n <= kMaxVariables) {
    const std::size_t expected = std::size_t{1} << n;
    if (table.probs.size() != expected) {
      out.push_back("probability vector has " + std::to_string(table.probs.size()) +
                    " entries, expected 2^n = " + std::to_string(expected));
      return out;  // entry checks below assume the right shape
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < table.probs.size(); ++k) {
    const double p = table.probs[k];
    if (!(p >= 0.0))
      out.push_back("negative entry " + std::to_string(p) + " at outcome " + std::to_string(k));
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    out.push_back("entries sum to " + std::to_string(sum) + ", expected 1");
  return out;
}

/// Marginal probabilities over `subset` (variable indices); bit k of the
/// result index corresponds to subset[k], so the caller's order is kept.
inline std::vector<double> marginal_over(const JointTable& table, const std::vector<int>& subset) {
  const int n = table.n();
  if (subset.empty()) throw std::invalid_argument("marginal: empty subset");
  for (std::size_t a = 0; a < subset.size(); ++a) {
    if (subset[a] < 0 || subset[a] >= n)
      throw UnknownVariable("marginal: variable index " + std::to_string(subset[a]) + " out of range");
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      if (subset[a] == subset[b])
        throw std::invalid_argument("marginal: repeated variable index " + std::to_string(subset[a]));
  }
  std::vector<double> acc(std::size_t{1} << subset.size(), 0.0);
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < subset.size(); ++k)
      j |= ((i >> subset[k]) & 1u) << k;
    acc[j] += table.probs[i];
  }
  return acc;
}

inline JointTable marginal(const JointTable& table, const std::vector<int>& subset) {
  JointTable out;
  out.probs = marginal_over(table, subset);
  out.variables.reserve(subset.size());
  for (int idx : subset) out.variables.push_back(table.variables[idx]);
  return out;
}

inline JointTable marginal(const JointTable& table, const std::vector<std::string>& subset) {
  std::vector<int> idx;
  idx.reserve(subset.size());
  for (const auto& name : subset) idx.push_back(table.index_of(name));
  return marginal(table, idx);
}

/// Shannon entropy in nats, with the 0 log 0 = 0 convention.
inline double entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

inline double entropy(const JointTable& table) { return entropy(table.probs); }

/// The seven joint-occurrence probabilities of a binary triplet: marginals,
/// pairwise joints and the triple joint, all for the "true" outcome.
struct TripletStats {
  double p1, p2, p3;
  double p12, p13, p23;
  double p123;
};

/// The 8-cell distribution implied by triplet stats via inclusion-exclusion.
/// Cell index is LSB-first over (X1, X2, X3).
inline std::array<double, 8> triplet_cells(const TripletStats& s) {
  // moments[m] = P(all variables in m true), m a bitmask over X1..X3
  const std::array<double, 8> moments = {1.0, s.p1, s.p2, s.p12, s.p3, s.p13, s.p23, s.p123};
  std::array<double, 8> cells{};
  for (int x = 0; x < 8; ++x) {
    double c = 0.0;
    for (int m = 0; m < 8; ++m) {
      if ((m & x) != x) continue;
      const int extra = __builtin_popcount(static_cast<unsigned>(m & ~x));
      c += (extra % 2 == 0 ? 1.0 : -1.0) * moments[m];
    }
    cells[x] = c;
  }
  return cells;
}

/// Report-style check of the TripletStats consistency bounds (all Frechet
/// bounds are equivalent to nonnegativity of the implied 8-cell table).
inline std::vector<std::string> triplet_violations(const TripletStats& s) {
  std::vector<std::string> out;
  const auto cells = triplet_cells(s);
  for (int x = 0; x < 8; ++x)
    if (cells[x] < -kSumTolerance)
      out.push_back("implied cell " + std::to_string(x) + " is negative: " + std::to_string(cells[x]));
  return out;
}

/// Exact joint table over three variables reproducing the given stats.
inline JointTable table_from_stats(const TripletStats& s,
                                   std::vector<std::string> names = {"X1", "X2", "X3"}) {
  if (names.size() != 3) throw std::invalid_argument("table_from_stats: need exactly 3 names");
  JointTable t;
  t.variables = std::move(names);
  const auto cells = triplet_cells(s);
  t.probs.assign(cells.begin(), cells.end());
  return t;
}

inline TripletStats triplet_stats(const JointTable& table, int a, int b, int c) {
  if (a == b || a == c || b == c)
    throw std::invalid_argument("triplet_stats: variables must be distinct");
  const auto m = marginal_over(table, {a, b, c});
  auto prob_of = [&m](unsigned mask) {
    double s = 0.0;
    for (unsigned i = 0; i < 8; ++i)
      if ((i & mask) == mask) s += m[i];
    return s;
  };
  return TripletStats{prob_of(1), prob_of(2), prob_of(4),
                      prob_of(3), prob_of(5), prob_of(6), prob_of(7)};
}

inline TripletStats triplet_stats(const JointTable& table, const std::string& a,
                                  const std::string& b, const std::string& c) {
  return triplet_stats(table, table.index_of(a), table.index_of(b), table.index_of(c));
}

/// Conjunctive evidence: (variable, observed value) assignments.
struct Evidence {
  std::vector<std::pair<std::string, bool>> assignments;
};

/// Exact P(target = true | evidence) by direct marginalization.
inline double posterior(const JointTable& table, const Evidence& evidence, const std::string& target) {
  const int ti = table.index_of(target);
  std::uint32_t mask = 0, values = 0;
  for (const auto& [name, value] : evidence.assignments) {
    const int i = table.index_of(name);
    if (i == ti) throw std::invalid_argument("posterior: target '" + target + "' appears in evidence");
    const std::uint32_t bit = 1u << i;
    if (mask & bit) throw std::invalid_argument("posterior: variable '" + name + "' assigned twice");
    mask |= bit;
    if (value) values |= bit;
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    if ((static_cast<std::uint32_t>(i) & mask) != values) continue;
    den += table.probs[i];
    if ((i >> ti) & 1u) num += table.probs[i];
  }
  if (den <= 0.0) throw ZeroProbabilityEvidence("posterior: evidence has zero probability");
  return num / den;
}

/// Deterministic random instance: 2^n draws from std::mt19937_64(seed),
/// mapped to [0,1) via the top 53 bits, plus min_mass, then normalized.
/// The mapping avoids std::uniform_real_distribution (whose output is
/// implementation-defined), so results are bit-identical across platforms.
inline JointTable random_table(int n, std::uint64_t seed, double min_mass = kDefaultMinMass) {
  if (n < 1 || n > kMaxGeneratedVariables)
    throw std::invalid_argument("random_table: n must be in [1, " +
                                std::to_string(kMaxGeneratedVariables) + "]");
  if (min_mass < 0.0) throw std::invalid_argument("random_table: min_mass must be >= 0");
  std::mt19937_64 gen(seed);
  JointTable t;
  t.variables.reserve(n);
  for (int i = 0; i < n; ++i) t.variables.push_back("X" + std::to_string(i + 1));
  t.probs.resize(std::size_t{1} << n);
  double sum = 0.0;
  for (auto& p : t.probs) {
    p = static_cast<double>(gen() >> 11) * 0x1.0p-53 + min_mass;
    sum += p;
  }
  for (auto& p : t.probs) p /= sum;
  return t;
}

}  // namespace treedec

#endif  // TREEDEC_JOINT_TABLE_HPP_
