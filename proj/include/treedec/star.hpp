#ifndef TREEDEC_STAR_HPP_
#define TREEDEC_STAR_HPP_

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "treedec/errors.hpp"
#include "treedec/joint_table.hpp"

namespace treedec {

/// Pairwise covariances below this are treated as independence.
inline constexpr double kCovarianceFloor = 1e-10;
inline constexpr double kProperSlack = 1e-12;

/// Parameters of a latent-variable star over a binary triplet: the latent
/// prior P(W) and the conditionals P(X_i|W), P(X_i|~W).
///
/// The conditionals may lie outside [0,1] (pseudo-probabilities). Such
/// solutions still reproduce the triplet's joint-occurrence probabilities
/// exactly and update observable posteriors consistently; `proper` records
/// whether all six conditionals are genuine probabilities.
struct StarParams {
  double w = 0.5;              // P(W), always in (0,1)
  std::array<double, 3> u{};   // P(X_i | W)
  std::array<double, 3> v{};   // P(X_i | ~W)
  bool proper = false;
};

inline bool is_proper(const StarParams& p) {
  for (int i = 0; i < 3; ++i) {
    if (p.u[i] < -kProperSlack || p.u[i] > 1.0 + kProperSlack) return false;
    if (p.v[i] < -kProperSlack || p.v[i] > 1.0 + kProperSlack) return false;
  }
  return true;
}

/// Evaluates the star product form: the joint-occurrence probabilities of
/// the observables implied by mixing the two latent branches.
inline TripletStats star_forward(const StarParams& p) {
  if (!(p.w > 0.0 && p.w < 1.0))
    throw std::invalid_argument("star_forward: latent prior must be in (0,1)");
  const double w = p.w, nw = 1.0 - p.w;
  const auto& u = p.u;
  const auto& v = p.v;
  TripletStats s;
  s.p1 = u[0] * w + v[0] * nw;
  s.p2 = u[1] * w + v[1] * nw;
  s.p3 = u[2] * w + v[2] * nw;
  s.p12 = u[0] * u[1] * w + v[0] * v[1] * nw;
  s.p13 = u[0] * u[2] * w + v[0] * v[2] * nw;
  s.p23 = u[1] * u[2] * w + v[1] * v[2] * nw;
  s.p123 = u[0] * u[1] * u[2] * w + v[0] * v[1] * v[2] * nw;
  return s;
}

/// Largest absolute residual of the seven star equations for params against
/// the given stats.
inline double star_residual(const StarParams& p, const TripletStats& s) {
  const TripletStats f = star_forward(p);
  double r = 0.0;
  r = std::max(r, std::abs(f.p1 - s.p1));
  r = std::max(r, std::abs(f.p2 - s.p2));
  r = std::max(r, std::abs(f.p3 - s.p3));
  r = std::max(r, std::abs(f.p12 - s.p12));
  r = std::max(r, std::abs(f.p13 - s.p13));
  r = std::max(r, std::abs(f.p23 - s.p23));
  r = std::max(r, std::abs(f.p123 - s.p123));
  return r;
}

/// Solves the seven star equations for a mutually dependent binary triplet.
///
/// Closed form: with covariances c_ij = p_ij - p_i p_j and differences
/// d_i = u_i - v_i, the pairwise equations give c_ij = w(1-w) d_i d_j and
/// the third-moment equation reduces to a quadratic in w. The two roots are
/// the relabeling W <-> ~W of one another; the canonical root has w >= 0.5
/// (and u1 >= v1 when w = 0.5 exactly).
///
/// Solvability: c12*c13*c23 = [w(1-w)]^3 (d1 d2 d3)^2 must be nonnegative,
/// and it is invariant under complementing any observable. A negative
/// covariance product therefore admits no real solution with w in (0,1) and
/// raises StarNoRealSolution. Every positive-product sign pattern (all
/// positive, or exactly two negative) is solved directly.
inline StarParams star_solve(const TripletStats& s) {
  const double c12 = s.p12 - s.p1 * s.p2;
  const double c13 = s.p13 - s.p1 * s.p3;
  const double c23 = s.p23 - s.p2 * s.p3;
  if (std::abs(c12) <= kCovarianceFloor || std::abs(c13) <= kCovarianceFloor ||
      std::abs(c23) <= kCovarianceFloor)
    throw StarDegenerate("star_solve: a pairwise covariance is (near) zero; "
                         "the triplet is not mutually dependent");
  const double cov_product = c12 * c13 * c23;
  if (cov_product <= 0.0)
    throw StarNoRealSolution("star_solve: negative covariance product; "
                             "the star equations have no real root");

  // Third central moment residue: p123 = p1 p2 p3 + sum c_ij p_k + w(1-w)(1-2w) d1 d2 d3
  const double k3 = s.p123 - s.p1 * s.p2 * s.p3 - c12 * s.p3 - c13 * s.p2 - c23 * s.p1;
  // (1-2w)^2 solves the quadratic; canonical root takes w >= 0.5.
  const double sq = k3 * k3 / (4.0 * cov_product + k3 * k3);
  const double w = 0.5 * (1.0 + std::sqrt(sq));
  const double t = w * (1.0 - w);

  double d1 = std::sqrt(c12 * c13 / (t * c23));
  double d2 = std::sqrt(c12 * c23 / (t * c13));
  double d3 = std::sqrt(c13 * c23 / (t * c12));
  // Pairwise sign pattern: start from d1 > 0; sign(d_i d_j) must match c_ij.
  if (c12 < 0.0) d2 = -d2;
  if (c13 < 0.0) d3 = -d3;
  // Triple product sign must match k3 / (1-2w), with 1-2w <= 0 here. When
  // k3 == 0 the product sign is free (w = 0.5) and d1 > 0 is the canonical
  // tie-break (u1 >= v1).
  if (k3 != 0.0 && d1 * d2 * d3 * k3 > 0.0) {
    d1 = -d1;
    d2 = -d2;
    d3 = -d3;
  }

  StarParams p;
  p.w = w;
  const double nw = 1.0 - w;
  const std::array<double, 3> marg = {s.p1, s.p2, s.p3};
  const std::array<double, 3> diff = {d1, d2, d3};
  for (int i = 0; i < 3; ++i) {
    p.u[i] = marg[i] + nw * diff[i];
    p.v[i] = marg[i] - w * diff[i];
  }
  p.proper = is_proper(p);
  return p;
}

/// Evidence over the star's observables: (observable index 0..2, value).
using StarEvidence = std::vector<std::pair<int, bool>>;

namespace detail {
inline void check_star_query(const StarEvidence& evidence, int target) {
  if (target < 0 || target > 2)
    throw std::invalid_argument("star query: target index out of range");
  if (evidence.empty() || evidence.size() > 2)
    throw std::invalid_argument("star query: evidence must cover 1 or 2 observables");
  for (std::size_t a = 0; a < evidence.size(); ++a) {
    if (evidence[a].first < 0 || evidence[a].first > 2)
      throw std::invalid_argument("star query: evidence index out of range");
    if (evidence[a].first == target)
      throw std::invalid_argument("star query: target appears in evidence");
    for (std::size_t b = a + 1; b < evidence.size(); ++b)
      if (evidence[a].first == evidence[b].first)
        throw std::invalid_argument("star query: observable assigned twice");
  }
}
}  // namespace detail

/// Posterior P(target = true | evidence) computed through the latent
/// variable: the evidence likelihood of each latent branch weights the
/// target conditionals. Consistent (equal to the direct triplet posterior)
/// even for improper parameter sets.
inline double star_posterior(const StarParams& p, const StarEvidence& evidence, int target) {
  detail::check_star_query(evidence, target);
  double branch_w = p.w, branch_nw = 1.0 - p.w;
  for (const auto& [i, value] : evidence) {
    branch_w *= value ? p.u[i] : 1.0 - p.u[i];
    branch_nw *= value ? p.v[i] : 1.0 - p.v[i];
  }
  const double den = branch_w + branch_nw;  // = P(evidence) under star_forward
  if (den <= 0.0) throw ZeroProbabilityEvidence("star_posterior: evidence has zero probability");
  const double num = p.u[target] * branch_w + p.v[target] * branch_nw;
  const double r = num / den;
  return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
}

/// Star reparameterized by arc reversal so that observable `root` is the
/// tree root: stores P(X_root) and P(W | X_root), P(W | ~X_root) instead of
/// P(W) and P(X_root | W), P(X_root | ~W). Conditionals of the other two
/// observables are unchanged; the u/v slots at index `root` are not part of
/// the parameterization.
struct RootedStar {
  int root = 0;
  double p_root = 0.0;           // P(X_root)
  double w_given_root = 0.0;     // P(W | X_root)
  double w_given_not_root = 0.0; // P(W | ~X_root)
  std::array<double, 3> u{};
  std::array<double, 3> v{};
};

/// Bayes-rule arc reversal of the root->W arc. The implied joint over
/// (W, X1, X2, X3) is identical to the original's.
inline RootedStar star_reroot(const StarParams& p, int root) {
  if (root < 0 || root > 2) throw std::invalid_argument("star_reroot: root index out of range");
  const double p_root = p.u[root] * p.w + p.v[root] * (1.0 - p.w);
  if (!(p_root > 0.0 && p_root < 1.0))
    throw std::invalid_argument("star_reroot: degenerate root marginal " + std::to_string(p_root));
  RootedStar r;
  r.root = root;
  r.p_root = p_root;
  r.w_given_root = p.u[root] * p.w / p_root;
  r.w_given_not_root = (1.0 - p.u[root]) * p.w / (1.0 - p_root);
  r.u = p.u;
  r.v = p.v;
  return r;
}

/// Inverse arc reversal; star_reroot followed by this is the identity.
inline StarParams star_reroot_inverse(const RootedStar& r) {
  StarParams p;
  p.w = r.w_given_root * r.p_root + r.w_given_not_root * (1.0 - r.p_root);
  if (!(p.w > 0.0 && p.w < 1.0))
    throw std::invalid_argument("star_reroot_inverse: implied latent prior outside (0,1)");
  p.u = r.u;
  p.v = r.v;
  p.u[r.root] = r.w_given_root * r.p_root / p.w;
  p.v[r.root] = (1.0 - r.w_given_root) * r.p_root / (1.0 - p.w);
  p.proper = is_proper(p);
  return p;
}

/// Joint over (X1, X2, X3, W) implied by the star; index bits 0..2 are the
/// observables, bit 3 is W. Cells may be negative for improper parameters.
inline std::array<double, 16> latent_joint(const StarParams& p) {
  std::array<double, 16> j{};
  for (int x = 0; x < 16; ++x) {
    const bool w_true = (x >> 3) & 1;
    double cell = w_true ? p.w : 1.0 - p.w;
    for (int i = 0; i < 3; ++i) {
      const double cond = w_true ? p.u[i] : p.v[i];
      cell *= ((x >> i) & 1) ? cond : 1.0 - cond;
    }
    j[x] = cell;
  }
  return j;
}

inline std::array<double, 16> latent_joint(const RootedStar& r) {
  std::array<double, 16> j{};
  for (int x = 0; x < 16; ++x) {
    const bool w_true = (x >> 3) & 1;
    const bool root_true = (x >> r.root) & 1;
    double cell = root_true ? r.p_root : 1.0 - r.p_root;
    const double w_cond = root_true ? r.w_given_root : r.w_given_not_root;
    cell *= w_true ? w_cond : 1.0 - w_cond;
    for (int i = 0; i < 3; ++i) {
      if (i == r.root) continue;
      const double cond = w_true ? r.u[i] : r.v[i];
      cell *= ((x >> i) & 1) ? cond : 1.0 - cond;
    }
    j[x] = cell;
  }
  return j;
}

/// Posterior through the rerooted parameterization, by summing its implied
/// latent joint. Matches star_posterior of the original parameters.
inline double star_posterior(const RootedStar& r, const StarEvidence& evidence, int target) {
  detail::check_star_query(evidence, target);
  const auto j = latent_joint(r);
  double num = 0.0, den = 0.0;
  for (int x = 0; x < 16; ++x) {
    bool consistent = true;
    for (const auto& [i, value] : evidence)
      if ((((x >> i) & 1) != 0) != value) consistent = false;
    if (!consistent) continue;
    den += j[x];
    if ((x >> target) & 1) num += j[x];
  }
  if (den <= 0.0) throw ZeroProbabilityEvidence("star_posterior: evidence has zero probability");
  const double result = num / den;
  return result < 0.0 ? 0.0 : (result > 1.0 ? 1.0 : result);
}

}  // namespace treedec

#endif  // TREEDEC_STAR_HPP_
