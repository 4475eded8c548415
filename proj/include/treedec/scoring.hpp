#ifndef TREEDEC_SCORING_HPP_
#define TREEDEC_SCORING_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "treedec/joint_table.hpp"

namespace treedec {

/// Logarithmic score S = sum_k p_k ln r_k in nats. Outcomes with p_k = 0
/// contribute nothing; any outcome with p_k > 0 and r_k <= 0 makes the
/// score -infinity (returned, not thrown).
inline double log_score(const JointTable& p, const JointTable& r) {
  if (p.variables != r.variables)
    throw std::invalid_argument("log_score: tables are over different variables");
  double s = 0.0;
  for (std::size_t k = 0; k < p.probs.size(); ++k) {
    if (p.probs[k] <= 0.0) continue;
    if (r.probs[k] <= 0.0) return -std::numeric_limits<double>::infinity();
    s += p.probs[k] * std::log(r.probs[k]);
  }
  return s;
}

/// Directed divergence sum_k p_k ln(p_k / r_k) in nats; equals
/// -entropy(p) - log_score(p, r). +infinity when r's support misses p's.
inline double i_divergence(const JointTable& p, const JointTable& r) {
  const double s = log_score(p, r);
  if (std::isinf(s)) return std::numeric_limits<double>::infinity();
  return -entropy(p.probs) - s;
}

/// Quadratic (Brier) score -sum_k (p_k - r_k)^2; maximum 0 at r = p.
inline double quadratic_score(const std::vector<double>& p, const std::vector<double>& r) {
  if (p.size() != r.size())
    throw std::invalid_argument("quadratic_score: vector length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - r[k];
    s -= d * d;
  }
  return s;
}

/// Spherical score sum_k p_k r_k / ||r||_2.
inline double spherical_score(const std::vector<double>& p, const std::vector<double>& r) {
  if (p.size() != r.size())
    throw std::invalid_argument("spherical_score: vector length mismatch");
  double dot = 0.0, norm2 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    dot += p[k] * r[k];
    norm2 += r[k] * r[k];
  }
  if (norm2 <= 0.0) throw std::invalid_argument("spherical_score: r is the zero vector");
  return dot / std::sqrt(norm2);
}

}  // namespace treedec

#endif  // TREEDEC_SCORING_HPP_
