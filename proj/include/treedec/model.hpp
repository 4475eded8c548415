#ifndef TREEDEC_MODEL_HPP_
#define TREEDEC_MODEL_HPP_

#include <array>
#include <string>
#include <vector>

#include "treedec/errors.hpp"
#include "treedec/joint_table.hpp"
#include "treedec/scoring.hpp"
#include "treedec/topology.hpp"
#include "treedec/weights.hpp"

namespace treedec {

struct ModelScores {
  double weight_sum = 0.0;
  double log_score = 0.0;
  double i_divergence = 0.0;
};

/// Conditional table of a component's children given its parent.
/// rows[parent_value][outcome] with outcome bit 0 = children[0] and bit 1 =
/// children[1]; pairs use outcomes 0..1, triples 0..3. Each row sums to 1.
struct Cpt {
  std::array<std::array<double, 4>, 2> rows{};
};

/// A topology with projected parameters: per-root priors, per-component
/// CPTs (aligned with topology.components via the oriented component list),
/// and the resulting scores against the source table.
struct FittedModel {
  std::vector<std::string> variables;
  Topology topology;
  std::vector<Component> components;
  std::vector<std::array<double, 2>> root_priors;  // [P(root=0), P(root=1)]
  std::vector<Cpt> cpts;
  ModelScores scores;

  int n() const { return static_cast<int>(variables.size()); }
};

/// Sum of the catalog weights of the topology's components. Orientation
/// plays no role; components are matched by variable set.
inline double weight_sum(const Topology& t, const WeightCatalog& catalog) {
  double total = 0.0;
  for (const auto& comp : t.components) {
    std::vector<int> key = comp;
    std::sort(key.begin(), key.end());
    bool found = false;
    for (const auto& e : catalog.entries)
      if (e.vars == key) {
        total += e.weight;
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("weight_sum: component " + detail::var_set_string(comp) +
                                  " has no catalog entry");
  }
  return total;
}

namespace detail {

/// Information weight of one component's variable set, clamped exactly as
/// build_catalog clamps, so per-component sums match catalog lookups.
inline double component_weight(const JointTable& table, const std::vector<int>& vars) {
  double w = vars.size() == 3 ? mi_triple(table, vars[0], vars[1], vars[2])
                              : mi_pair(table, vars[0], vars[1]);
  return w < kWeightFloor ? 0.0 : w;
}

}  // namespace detail

/// Product joint implied by the model: per outcome, the product of the
/// root priors and one CPT row entry per component.
inline JointTable model_joint(const FittedModel& model) {
  const int n = model.n();
  JointTable out;
  out.variables = model.variables;
  out.probs.assign(std::size_t{1} << n, 0.0);
  for (std::size_t x = 0; x < out.probs.size(); ++x) {
    double p = 1.0;
    for (std::size_t i = 0; i < model.topology.roots.size(); ++i)
      p *= model.root_priors[i][(x >> model.topology.roots[i]) & 1];
    for (std::size_t j = 0; j < model.components.size(); ++j) {
      const Component& c = model.components[j];
      int idx = static_cast<int>((x >> c.children[0]) & 1);
      if (c.kind == ComponentKind::kTriple) idx |= static_cast<int>((x >> c.children[1]) & 1) << 1;
      p *= model.cpts[j].rows[(x >> c.parent) & 1][idx];
    }
    out.probs[x] = p;
  }
  return out;
}

/// Fits the topology to the table by projection: each CPT is the exact
/// conditional marginal of the source table, which maximizes the log score
/// among all parameterizations of the topology. Throws ProjectionError
/// when a conditioning event has zero probability.
inline FittedModel project_parameters(const JointTable& table, const Topology& t) {
  const int n = table.n();
  const auto violations = validate_topology(t, n);
  if (!violations.empty())
    throw std::invalid_argument("project_parameters: invalid topology: " + violations.front());

  FittedModel model;
  model.variables = table.variables;
  model.topology = t;
  model.components = orient(t, n);

  for (int r : t.roots) {
    const std::vector<double> m = marginal_over(table, {r});
    model.root_priors.push_back({m[0], m[1]});
  }
  for (const Component& c : model.components) {
    const bool triple = c.kind == ComponentKind::kTriple;
    std::vector<int> order = {c.children[0]};
    if (triple) order.push_back(c.children[1]);
    order.push_back(c.parent);
    const std::vector<double> m = marginal_over(table, order);
    const int child_outcomes = triple ? 4 : 2;
    Cpt cpt;
    for (int pv = 0; pv < 2; ++pv) {
      double parent_mass = 0.0;
      for (int idx = 0; idx < child_outcomes; ++idx)
        parent_mass += m[idx | (pv << (triple ? 2 : 1))];
      if (parent_mass <= 0.0)
        throw ProjectionError("project_parameters: conditioning event " +
                              table.variables[c.parent] + "=" + std::to_string(pv) +
                              " has zero probability");
      for (int idx = 0; idx < child_outcomes; ++idx)
        cpt.rows[pv][idx] = m[idx | (pv << (triple ? 2 : 1))] / parent_mass;
    }
    model.cpts.push_back(cpt);
  }

  double wsum = 0.0;
  for (const auto& comp : t.components) {
    std::vector<int> key = comp;
    std::sort(key.begin(), key.end());
    wsum += detail::component_weight(table, key);
  }
  model.scores.weight_sum = wsum;
  const JointTable joint = model_joint(model);
  model.scores.log_score = log_score(table, joint);
  model.scores.i_divergence = i_divergence(table, joint);
  return model;
}

}  // namespace treedec

#endif  // TREEDEC_MODEL_HPP_
