#ifndef TREEDEC_TREEDEC_HPP_
#define TREEDEC_TREEDEC_HPP_

#include "treedec/errors.hpp"
#include "treedec/io.hpp"
#include "treedec/joint_table.hpp"
#include "treedec/model.hpp"
#include "treedec/scoring.hpp"
#include "treedec/search.hpp"
#include "treedec/star.hpp"
#include "treedec/topology.hpp"
#include "treedec/weights.hpp"

#endif  // TREEDEC_TREEDEC_HPP_
