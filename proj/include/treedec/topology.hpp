#ifndef TREEDEC_TOPOLOGY_HPP_
#define TREEDEC_TOPOLOGY_HPP_

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "treedec/errors.hpp"

namespace treedec {

enum class ComponentKind { kPair, kTriple };

/// Oriented component: one conditioning variable (parent) and one or two
/// conditioned variables (children). children[1] is -1 for pairs.
struct Component {
  ComponentKind kind = ComponentKind::kPair;
  int parent = -1;
  std::array<int, 2> children = {-1, -1};
};

/// A tree-decomposable structure stored as unordered data: component
/// variable sets plus one root per connected part. Orientation (who is
/// whose parent) is derived by breadth-first search from the roots, since
/// weights and scores do not depend on it.
struct Topology {
  std::vector<int> roots;
  std::vector<std::vector<int>> components;

  /// Sorts each component ascending, then components lexicographically,
  /// then roots ascending. Two topologies are interchangeable iff their
  /// canonical forms compare equal.
  void canonicalize() {
    for (auto& c : components) std::sort(c.begin(), c.end());
    std::sort(components.begin(), components.end());
    std::sort(roots.begin(), roots.end());
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.roots == b.roots && a.components == b.components;
  }
  friend bool operator!=(const Topology& a, const Topology& b) { return !(a == b); }
};

namespace detail {

/// Union-find over variable indices, used for connectivity bookkeeping.
struct Dsu {
  std::vector<int> parent;

  Dsu() = default;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  /// Returns false when x and y were already in the same set.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[y] = x;
    return true;
  }
};

inline std::string var_set_string(const std::vector<int>& vars) {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vars[i]);
  }
  return s + "}";
}

}  // namespace detail

/// Checks every structural invariant and reports all violations found.
/// An empty result means the topology is valid for n variables.
inline std::vector<std::string> validate_topology(const Topology& t, int n) {
  std::vector<std::string> violations;
  if (n < 1) {
    violations.push_back("variable count must be at least 1");
    return violations;
  }
  if (t.roots.empty()) violations.push_back("roots list is empty");

  std::vector<int> root_count(n, 0);
  for (int r : t.roots) {
    if (r < 0 || r >= n) {
      violations.push_back("root index " + std::to_string(r) + " out of range");
      continue;
    }
    if (++root_count[r] == 2)
      violations.push_back("root " + std::to_string(r) + " listed more than once");
  }

  bool components_well_formed = true;
  for (const auto& c : t.components) {
    if (c.size() != 2 && c.size() != 3) {
      violations.push_back("component " + detail::var_set_string(c) +
                           " must have 2 or 3 variables");
      components_well_formed = false;
      continue;
    }
    for (int v : c)
      if (v < 0 || v >= n) {
        violations.push_back("component " + detail::var_set_string(c) +
                             " has variable index out of range");
        components_well_formed = false;
      }
    bool repeat_reported = false;
    for (std::size_t i = 0; i + 1 < c.size() && !repeat_reported; ++i)
      for (std::size_t j = i + 1; j < c.size() && !repeat_reported; ++j)
        if (c[i] == c[j]) {
          violations.push_back("component " + detail::var_set_string(c) +
                               " repeats a variable");
          components_well_formed = false;
          repeat_reported = true;
        }
  }
  if (!components_well_formed) return violations;

  for (std::size_t i = 0; i < t.components.size(); ++i)
    for (std::size_t j = i + 1; j < t.components.size(); ++j) {
      int overlap = 0;
      for (int v : t.components[i])
        if (std::find(t.components[j].begin(), t.components[j].end(), v) !=
            t.components[j].end())
          ++overlap;
      if (overlap >= 2)
        violations.push_back("components " + detail::var_set_string(t.components[i]) +
                             " and " + detail::var_set_string(t.components[j]) +
                             " share a pair of variables");
    }

  int slots = 0, triples = 0;
  for (const auto& c : t.components) {
    slots += static_cast<int>(c.size()) - 1;
    if (c.size() == 3) ++triples;
  }
  const int n_roots = static_cast<int>(t.roots.size());
  if (slots != n - n_roots)
    violations.push_back("child-slot count " + std::to_string(slots) +
                         " does not equal n - #roots = " + std::to_string(n - n_roots));
  if (2 * triples > n)
    violations.push_back("triple count " + std::to_string(triples) +
                         " exceeds the n/2 auxiliary-variable bound");

  // Breadth-first attachment from the roots. Every component must attach
  // through exactly one already-reached variable; a component whose
  // variables are all unreached is disconnected from every root, and one
  // with two or more reached variables gives some variable a second
  // parent (or closes a cycle).
  std::vector<char> reached(n, 0);
  for (int r : t.roots)
    if (r >= 0 && r < n) reached[r] = 1;
  std::vector<char> attached(t.components.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < t.components.size(); ++i) {
      if (attached[i]) continue;
      int reached_here = 0;
      for (int v : t.components[i]) reached_here += reached[v];
      if (reached_here == 0) continue;
      attached[i] = 1;
      progress = true;
      if (reached_here >= 2) {
        violations.push_back("multiple parents / cycle: component " +
                             detail::var_set_string(t.components[i]) +
                             " attaches through more than one reached variable");
        continue;
      }
      for (int v : t.components[i]) reached[v] = 1;
    }
  }
  for (std::size_t i = 0; i < t.components.size(); ++i)
    if (!attached[i])
      violations.push_back("component " + detail::var_set_string(t.components[i]) +
                           " is unreachable from any root");
  for (int v = 0; v < n; ++v)
    if (!reached[v])
      violations.push_back("variable " + std::to_string(v) +
                           " is neither a root nor any component's child");
  return violations;
}

inline std::vector<std::string> validate_topology(const Topology& t,
                                                  const std::vector<std::string>& variables) {
  return validate_topology(t, static_cast<int>(variables.size()));
}

/// Derives the parent/children orientation of each component by
/// breadth-first search from the roots. Output is aligned with
/// t.components; children are listed in ascending order. Throws on an
/// invalid topology.
inline std::vector<Component> orient(const Topology& t, int n) {
  const auto violations = validate_topology(t, n);
  if (!violations.empty())
    throw std::invalid_argument("orient: invalid topology: " + violations.front());

  std::vector<Component> out(t.components.size());
  std::vector<char> reached(n, 0);
  for (int r : t.roots) reached[r] = 1;
  std::vector<char> attached(t.components.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < t.components.size(); ++i) {
      if (attached[i]) continue;
      int parent = -1;
      for (int v : t.components[i])
        if (reached[v]) parent = v;
      if (parent < 0) continue;
      attached[i] = 1;
      progress = true;
      Component c;
      c.kind = t.components[i].size() == 3 ? ComponentKind::kTriple : ComponentKind::kPair;
      c.parent = parent;
      int slot = 0;
      for (int v : t.components[i])
        if (v != parent) {
          reached[v] = 1;
          c.children[slot++] = v;
        }
      if (c.children[1] >= 0 && c.children[0] > c.children[1])
        std::swap(c.children[0], c.children[1]);
      out[i] = c;
    }
  }
  return out;
}

/// Smallest-index representative of each connected part, in ascending
/// order; the conventional root choice for structures produced by search.
inline std::vector<int> default_roots(const std::vector<std::vector<int>>& components, int n) {
  detail::Dsu dsu(n);
  for (const auto& c : components)
    for (std::size_t i = 1; i < c.size(); ++i) dsu.unite(c[0], c[i]);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (dsu.find(v) == v) roots.push_back(v);
  // find() compresses toward the first-united element, which is not always
  // the smallest; normalize by scanning parts explicitly.
  std::vector<int> smallest(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = dsu.find(v);
    if (smallest[r] < 0) smallest[r] = v;
  }
  roots.clear();
  for (int v = 0; v < n; ++v)
    if (smallest[dsu.find(v)] == v) roots.push_back(v);
  return roots;
}

/// Same component sets, reoriented so new_root is the root of its
/// connected part. Roots of other parts are unchanged.
inline Topology reroot(const Topology& t, int new_root, int n) {
  if (new_root < 0 || new_root >= n)
    throw UnknownVariable("reroot: variable index " + std::to_string(new_root) +
                          " out of range");
  const auto violations = validate_topology(t, n);
  if (!violations.empty())
    throw std::invalid_argument("reroot: invalid topology: " + violations.front());

  detail::Dsu dsu(n);
  for (const auto& c : t.components)
    for (std::size_t i = 1; i < c.size(); ++i) dsu.unite(c[0], c[i]);
  const int part = dsu.find(new_root);
  Topology out = t;
  for (int& r : out.roots)
    if (dsu.find(r) == part) r = new_root;
  out.canonicalize();
  return out;
}

}  // namespace treedec

#endif  // TREEDEC_TOPOLOGY_HPP_
