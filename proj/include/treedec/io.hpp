#ifndef TREEDEC_IO_HPP_
#define TREEDEC_IO_HPP_

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "treedec/errors.hpp"
#include "treedec/joint_table.hpp"
#include "treedec/model.hpp"
#include "treedec/topology.hpp"

namespace treedec {

/// Shortest representation that round-trips a double exactly (17
/// significant digits). Output is locale-independent as long as the
/// process stays in the default "C" locale, which this library assumes.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string name_array(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(names[i]) + "\"";
  }
  return out + "]";
}

template <typename Seq>
std::string number_array(const Seq& xs) {
  std::string out = "[";
  bool first = true;
  for (double x : xs) {
    if (!first) out += ", ";
    first = false;
    out += format_double(x);
  }
  return out + "]";
}

}  // namespace detail

/// Serializes a table with a fixed key order and 17-significant-digit
/// decimals; the output is byte-deterministic for a given table.
inline std::string write_table(const JointTable& table) {
  std::string out = "{\n";
  out += "  \"variables\": " + detail::name_array(table.variables) + ",\n";
  out += "  \"probabilities\": [\n";
  for (std::size_t i = 0; i < table.probs.size(); ++i) {
    out += "    " + format_double(table.probs[i]);
    out += i + 1 < table.probs.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

/// Parses and validates a table document; throws std::invalid_argument
/// with a description on any defect.
inline JointTable read_table(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("table file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variables") || !doc.contains("probabilities"))
    throw std::invalid_argument("table file: expected an object with 'variables' and 'probabilities'");
  JointTable table;
  try {
    table.variables = doc["variables"].get<std::vector<std::string>>();
    table.probs = doc["probabilities"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("table file: ") + e.what());
  }
  const auto violations = validate(table);
  if (!violations.empty())
    throw std::invalid_argument("table file: " + violations.front());
  return table;
}

/// On-disk form of a structure: the topology plus, optionally, projected
/// parameters and scores. Component order and root order follow the file;
/// `oriented` is re-derived on read and checked against the stated
/// parent/children split.
struct StructureDoc {
  std::vector<std::string> variables;
  Topology topology;
  std::vector<Component> oriented;
  bool has_parameters = false;
  std::vector<std::array<double, 2>> root_priors;
  std::vector<Cpt> cpts;
  bool has_scores = false;
  ModelScores scores;
};

inline StructureDoc structure_doc_from_model(const FittedModel& model) {
  StructureDoc doc;
  doc.variables = model.variables;
  doc.topology = model.topology;
  doc.oriented = model.components;
  doc.has_parameters = true;
  doc.root_priors = model.root_priors;
  doc.cpts = model.cpts;
  doc.has_scores = true;
  doc.scores = model.scores;
  return doc;
}

/// FittedModel view of a parameterized structure document.
inline FittedModel model_from_doc(const StructureDoc& doc) {
  if (!doc.has_parameters)
    throw std::invalid_argument("structure document carries no parameters");
  FittedModel model;
  model.variables = doc.variables;
  model.topology = doc.topology;
  model.components = doc.oriented;
  model.root_priors = doc.root_priors;
  model.cpts = doc.cpts;
  if (doc.has_scores) model.scores = doc.scores;
  return model;
}

inline std::string write_structure(const StructureDoc& doc) {
  const auto& vars = doc.variables;
  std::string out = "{\n";
  out += "  \"variables\": " + detail::name_array(vars) + ",\n";
  std::vector<std::string> root_names;
  for (int r : doc.topology.roots) root_names.push_back(vars[r]);
  out += "  \"roots\": " + detail::name_array(root_names) + ",\n";
  out += "  \"components\": [\n";
  for (std::size_t i = 0; i < doc.oriented.size(); ++i) {
    const Component& c = doc.oriented[i];
    const bool triple = c.kind == ComponentKind::kTriple;
    out += "    {\"kind\": \"";
    out += triple ? "triple" : "pair";
    out += "\", \"parent\": \"" + detail::json_escape(vars[c.parent]) + "\", \"children\": ";
    std::vector<std::string> children = {vars[c.children[0]]};
    if (triple) children.push_back(vars[c.children[1]]);
    out += detail::name_array(children) + "}";
    out += i + 1 < doc.oriented.size() ? ",\n" : "\n";
  }
  out += "  ]";
  if (doc.has_parameters) {
    out += ",\n  \"parameters\": {\n    \"root_priors\": [\n";
    for (std::size_t i = 0; i < doc.root_priors.size(); ++i) {
      out += "      " + detail::number_array(doc.root_priors[i]);
      out += i + 1 < doc.root_priors.size() ? ",\n" : "\n";
    }
    out += "    ],\n    \"cpts\": [\n";
    for (std::size_t i = 0; i < doc.cpts.size(); ++i) {
      const bool triple = doc.oriented[i].kind == ComponentKind::kTriple;
      const int width = triple ? 4 : 2;
      out += "      [";
      for (int row = 0; row < 2; ++row) {
        std::vector<double> entries(doc.cpts[i].rows[row].begin(),
                                    doc.cpts[i].rows[row].begin() + width);
        if (row) out += ", ";
        out += detail::number_array(entries);
      }
      out += "]";
      out += i + 1 < doc.cpts.size() ? ",\n" : "\n";
    }
    out += "    ]\n  }";
  }
  if (doc.has_scores) {
    out += ",\n  \"scores\": {\n";
    out += "    \"weight_sum\": " + format_double(doc.scores.weight_sum) + ",\n";
    out += "    \"log_score\": " + format_double(doc.scores.log_score) + ",\n";
    out += "    \"i_divergence\": " + format_double(doc.scores.i_divergence) + "\n  }";
  }
  out += "\n}\n";
  return out;
}

inline StructureDoc read_structure(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("structure file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("variables") || !doc.contains("roots") ||
      !doc.contains("components"))
    throw std::invalid_argument(
        "structure file: expected an object with 'variables', 'roots' and 'components'");

  StructureDoc out;
  try {
    out.variables = doc["variables"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("structure file: ") + e.what());
  }
  const int n = static_cast<int>(out.variables.size());
  if (n < 1) throw std::invalid_argument("structure file: empty variable list");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (out.variables[i] == out.variables[j])
        throw std::invalid_argument("structure file: duplicate variable '" + out.variables[i] + "'");
  const auto index_of = [&](const std::string& name) {
    for (int i = 0; i < n; ++i)
      if (out.variables[i] == name) return i;
    throw std::invalid_argument("structure file: unknown variable '" + name + "'");
  };

  std::vector<std::array<int, 2>> stated_children;  // file order, -1 pad
  try {
    for (const auto& r : doc["roots"]) out.topology.roots.push_back(index_of(r.get<std::string>()));
    for (const auto& c : doc["components"]) {
      const std::string kind = c.at("kind").get<std::string>();
      const int parent = index_of(c.at("parent").get<std::string>());
      std::vector<int> children;
      for (const auto& ch : c.at("children")) children.push_back(index_of(ch.get<std::string>()));
      if (kind != "pair" && kind != "triple")
        throw std::invalid_argument("structure file: unknown component kind '" + kind + "'");
      if (children.size() != (kind == "pair" ? 1u : 2u))
        throw std::invalid_argument("structure file: component kind '" + kind + "' must have " +
                                    (kind == "pair" ? std::string("1 child") : std::string("2 children")));
      std::vector<int> members = children;
      members.push_back(parent);
      std::sort(members.begin(), members.end());
      out.topology.components.push_back(members);
      stated_children.push_back({children[0], children.size() == 2 ? children[1] : -1});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("structure file: ") + e.what());
  }

  const auto violations = validate_topology(out.topology, n);
  if (!violations.empty())
    throw std::invalid_argument("structure file: " + violations.front());
  out.oriented = orient(out.topology, n);
  for (std::size_t i = 0; i < out.oriented.size(); ++i) {
    const int stated_parent =
        out.topology.components[i][0] + out.topology.components[i][1] +
        (out.topology.components[i].size() == 3 ? out.topology.components[i][2] : 0) -
        stated_children[i][0] - (stated_children[i][1] >= 0 ? stated_children[i][1] : 0);
    if (stated_parent != out.oriented[i].parent)
      throw std::invalid_argument(
          "structure file: component " + detail::var_set_string(out.topology.components[i]) +
          " states parent '" + out.variables[stated_parent] +
          "' but the roots orient it toward '" + out.variables[out.oriented[i].parent] + "'");
  }

  if (doc.contains("parameters")) {
    out.has_parameters = true;
    try {
      const auto& params = doc["parameters"];
      const auto priors = params.at("root_priors").get<std::vector<std::vector<double>>>();
      const auto cpts = params.at("cpts").get<std::vector<std::vector<std::vector<double>>>>();
      if (priors.size() != out.topology.roots.size())
        throw std::invalid_argument("structure file: root_priors count mismatch");
      for (const auto& pr : priors) {
        if (pr.size() != 2 || pr[0] < 0.0 || pr[1] < 0.0 || std::abs(pr[0] + pr[1] - 1.0) > 1e-9)
          throw std::invalid_argument("structure file: root prior is not a distribution");
        out.root_priors.push_back({pr[0], pr[1]});
      }
      if (cpts.size() != out.oriented.size())
        throw std::invalid_argument("structure file: cpts count mismatch");
      for (std::size_t i = 0; i < cpts.size(); ++i) {
        const bool triple = out.oriented[i].kind == ComponentKind::kTriple;
        const std::size_t width = triple ? 4 : 2;
        if (cpts[i].size() != 2)
          throw std::invalid_argument("structure file: a CPT must have 2 rows");
        Cpt cpt;
        for (int row = 0; row < 2; ++row) {
          const auto& r = cpts[i][row];
          if (r.size() != width)
            throw std::invalid_argument("structure file: CPT row width mismatch");
          double sum = 0.0;
          for (std::size_t k = 0; k < width; ++k) {
            if (r[k] < 0.0)
              throw std::invalid_argument("structure file: negative CPT entry");
            cpt.rows[row][k] = r[k];
            sum += r[k];
          }
          if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("structure file: CPT row sums to " + std::to_string(sum));
        }
        // Stated children may be listed in descending order; CPT columns
        // follow the file's order, so permute them onto ascending order.
        if (triple && stated_children[i][0] > stated_children[i][1]) {
          std::swap(cpt.rows[0][1], cpt.rows[0][2]);
          std::swap(cpt.rows[1][1], cpt.rows[1][2]);
        }
        out.cpts.push_back(cpt);
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("structure file: ") + e.what());
    }
  }
  if (doc.contains("scores")) {
    out.has_scores = true;
    try {
      const auto& s = doc["scores"];
      out.scores.weight_sum = s.at("weight_sum").get<double>();
      out.scores.log_score = s.at("log_score").get<double>();
      out.scores.i_divergence = s.at("i_divergence").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("structure file: ") + e.what());
    }
  }
  return out;
}

/// Deterministic Graphviz rendering: observables as ellipses in variable
/// order, one box node per triple component (W1, W2, ... in component
/// order) with edges to its three members, pairs as parent->child edges.
inline std::string write_dot(const StructureDoc& doc) {
  std::string out = "digraph treedec {\n";
  for (const auto& v : doc.variables)
    out += "  \"" + detail::json_escape(v) + "\" [shape=ellipse];\n";
  int aux = 0;
  for (const auto& c : doc.oriented)
    if (c.kind == ComponentKind::kTriple)
      out += "  \"W" + std::to_string(++aux) + "\" [shape=box];\n";
  aux = 0;
  for (const auto& c : doc.oriented) {
    if (c.kind == ComponentKind::kTriple) {
      const std::string w = "W" + std::to_string(++aux);
      for (int member : {c.parent, c.children[0], c.children[1]})
        out += "  \"" + w + "\" -> \"" + detail::json_escape(doc.variables[member]) + "\";\n";
    } else {
      out += "  \"" + detail::json_escape(doc.variables[c.parent]) + "\" -> \"" +
             detail::json_escape(doc.variables[c.children[0]]) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace treedec

#endif  // TREEDEC_IO_HPP_
