#ifndef TREEDEC_ERRORS_HPP_
#define TREEDEC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace treedec {

/// A variable name or index that does not belong to the table at hand.
struct UnknownVariable : std::invalid_argument {
  explicit UnknownVariable(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Conditioning on an evidence event of probability zero.
struct ZeroProbabilityEvidence : std::runtime_error {
  explicit ZeroProbabilityEvidence(const std::string& msg) : std::runtime_error(msg) {}
};

/// A triplet with a (near-)vanishing pairwise covariance; the variables are
/// not mutually dependent and no unique star decomposition exists.
struct StarDegenerate : std::runtime_error {
  explicit StarDegenerate(const std::string& msg) : std::runtime_error(msg) {}
};

/// The star equations have no real root for this triplet (negative
/// covariance product).
struct StarNoRealSolution : std::runtime_error {
  explicit StarNoRealSolution(const std::string& msg) : std::runtime_error(msg) {}
};

/// A component CPT could not be projected because a conditioning row has
/// zero probability under the source distribution.
struct ProjectionError : std::runtime_error {
  explicit ProjectionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace treedec

#endif  // TREEDEC_ERRORS_HPP_
