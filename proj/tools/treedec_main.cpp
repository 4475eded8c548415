// Command-line front end: generation, fitting, scoring, star queries,
// posterior queries and DOT export over the table / structure file formats.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <treedec/treedec.hpp>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
}

// Keeps "-0.000000" out of fixed-decimal reports.
double unsigned_zero(double x) { return x == 0.0 ? 0.0 : x; }

struct GenArgs {
  int n = 0;
  std::uint64_t seed = 1;
  double min_mass = treedec::kDefaultMinMass;
  std::string out;
};

struct FitArgs {
  std::string input;
  std::string method = "exact";
  std::string mode = "paper";
  long long budget = 1'000'000;
  std::string out;
};

struct ScoreArgs {
  std::string input, structure;
};

struct StarArgs {
  std::string input, vars;
};

struct QueryArgs {
  std::string input, structure, evidence, target;
};

struct DotArgs {
  std::string structure, out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

treedec::FittedModel load_model(const treedec::JointTable& table, const treedec::StructureDoc& doc) {
  if (table.variables != doc.variables)
    throw std::invalid_argument("table and structure are over different variable lists");
  if (doc.has_parameters) return treedec::model_from_doc(doc);
  return treedec::project_parameters(table, doc.topology);
}

void run_gen(const GenArgs& args) {
  const treedec::JointTable table = treedec::random_table(args.n, args.seed, args.min_mass);
  spill(args.out, treedec::write_table(table));
}

void run_fit(const FitArgs& args) {
  const treedec::JointTable table = treedec::read_table(slurp(args.input));
  treedec::SearchReport report;
  if (table.n() == 1) {
    report.topology.roots = {0};
    report.optimal_flag = true;
  } else {
    const treedec::WeightCatalog catalog = treedec::build_catalog(table);
    treedec::SearchOptions options;
    options.mode = args.mode == "connected" ? treedec::SearchMode::kConnected
                                            : treedec::SearchMode::kPaperGreedy;
    options.node_budget = args.budget;
    if (args.method == "greedy") {
      report = treedec::greedy(catalog, options);
    } else if (args.method == "chow-liu") {
      report = treedec::chow_liu(catalog);
    } else {
      report = treedec::branch_and_bound(catalog, options);
    }
  }
  const treedec::FittedModel model = treedec::project_parameters(table, report.topology);
  if (!args.out.empty())
    spill(args.out, treedec::write_structure(treedec::structure_doc_from_model(model)));
  std::printf("method=%s weight_sum=%.6f log_score=%.6f i_divergence=%.6f nodes_expanded=%lld optimal=%s\n",
              args.method.c_str(), unsigned_zero(model.scores.weight_sum),
              unsigned_zero(model.scores.log_score), unsigned_zero(model.scores.i_divergence),
              report.nodes_expanded, report.optimal_flag ? "true" : "false");
}

void run_score(const ScoreArgs& args) {
  const treedec::JointTable table = treedec::read_table(slurp(args.input));
  const treedec::StructureDoc doc = treedec::read_structure(slurp(args.structure));
  const treedec::FittedModel model = load_model(table, doc);
  const treedec::JointTable joint = treedec::model_joint(model);
  double wsum = 0.0;
  if (table.n() >= 2)
    wsum = treedec::weight_sum(doc.topology, treedec::build_catalog(table));
  std::printf("log_score=%.6f\n", unsigned_zero(treedec::log_score(table, joint)));
  std::printf("i_divergence=%.6f\n", unsigned_zero(treedec::i_divergence(table, joint)));
  std::printf("weight_sum=%.6f\n", unsigned_zero(wsum));
  std::printf("quadratic_score=%.6f\n",
              unsigned_zero(treedec::quadratic_score(table.probs, joint.probs)));
  std::printf("spherical_score=%.6f\n",
              unsigned_zero(treedec::spherical_score(table.probs, joint.probs)));
}

void run_star(const StarArgs& args) {
  const treedec::JointTable table = treedec::read_table(slurp(args.input));
  const std::vector<std::string> names = split(args.vars, ',');
  if (names.size() != 3)
    throw std::invalid_argument("--vars expects exactly three comma-separated names");
  const treedec::TripletStats s = treedec::triplet_stats(table, names[0], names[1], names[2]);
  std::printf("p1=%.6f p2=%.6f p3=%.6f p12=%.6f p13=%.6f p23=%.6f p123=%.6f\n", s.p1, s.p2,
              s.p3, s.p12, s.p13, s.p23, s.p123);
  const treedec::StarParams params = treedec::star_solve(s);
  std::printf("w=%.6f\n", params.w);
  std::printf("u=(%.6f, %.6f, %.6f)\n", params.u[0], params.u[1], params.u[2]);
  std::printf("v=(%.6f, %.6f, %.6f)\n", params.v[0], params.v[1], params.v[2]);
  std::printf("proper=%s\n", params.proper ? "true" : "false");
  std::printf("residual_max=%.3g\n", treedec::star_residual(params, s));
}

void run_query(const QueryArgs& args) {
  const treedec::JointTable table = treedec::read_table(slurp(args.input));
  const treedec::StructureDoc doc = treedec::read_structure(slurp(args.structure));
  const treedec::FittedModel model = load_model(table, doc);
  const treedec::JointTable joint = treedec::model_joint(model);

  treedec::Evidence evidence;
  if (!args.evidence.empty()) {
    for (const std::string& tok : split(args.evidence, ',')) {
      const std::vector<std::string> kv = split(tok, '=');
      if (kv.size() != 2 || kv[0].empty() || (kv[1] != "0" && kv[1] != "1"))
        throw std::invalid_argument("evidence must look like name=0 or name=1, got '" + tok + "'");
      evidence.assignments.emplace_back(kv[0], kv[1] == "1");
    }
  }
  const double direct = treedec::posterior(joint, evidence, args.target);
  std::printf("posterior=%.6f\n", direct);

  const bool single_triple =
      doc.topology.components.size() == 1 && doc.topology.components[0].size() == 3;
  if (single_triple && !evidence.assignments.empty() && evidence.assignments.size() <= 2) {
    const std::vector<int>& comp = doc.topology.components[0];
    const auto slot_of = [&](const std::string& name) {
      const int idx = joint.index_of(name);
      for (int k = 0; k < 3; ++k)
        if (comp[k] == idx) return k;
      throw std::invalid_argument("variable '" + name + "' is not part of the triple");
    };
    try {
      const treedec::StarParams params =
          treedec::star_solve(treedec::triplet_stats(joint, comp[0], comp[1], comp[2]));
      treedec::StarEvidence sev;
      for (const auto& [name, value] : evidence.assignments)
        sev.emplace_back(slot_of(name), value);
      const double via_star = treedec::star_posterior(params, sev, slot_of(args.target));
      std::printf("star_posterior=%.6f\n", via_star);
      if (std::abs(via_star - direct) > 1e-9)
        throw std::invalid_argument("star route and direct marginalization disagree");
    } catch (const treedec::StarDegenerate&) {
      // no unique star parameters for this triple; direct answer stands
    } catch (const treedec::StarNoRealSolution&) {
    }
  }
}

void run_dot(const DotArgs& args) {
  const treedec::StructureDoc doc = treedec::read_structure(slurp(args.structure));
  spill(args.out, treedec::write_dot(doc));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closest tree-decomposable distribution toolkit"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded random joint table");
  gen->add_option("--n", gen_args.n, "Number of variables")->required()->check(CLI::Range(1, 12));
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--min-mass", gen_args.min_mass, "Smoothing mass added to every outcome")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_args.out, "Output table file")->required();

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "Fit a tree-decomposable structure to a table");
  fit->add_option("input", fit_args.input, "Table file")->required();
  fit->add_option("--method", fit_args.method, "Search method")
      ->check(CLI::IsMember({"greedy", "exact", "chow-liu"}));
  fit->add_option("--mode", fit_args.mode, "Greedy acceptance rule")
      ->check(CLI::IsMember({"paper", "connected"}));
  fit->add_option("--budget", fit_args.budget, "Node budget for exact search")
      ->check(CLI::PositiveNumber);
  fit->add_option("--out", fit_args.out, "Output structure file");

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score", "Score a structure against a table");
  score->add_option("input", score_args.input, "Table file")->required();
  score->add_option("structure", score_args.structure, "Structure file")->required();

  StarArgs star_args;
  CLI::App* star = app.add_subcommand("star", "Star-decompose a triplet of variables");
  star->add_option("input", star_args.input, "Table file")->required();
  star->add_option("--vars", star_args.vars, "Three comma-separated variable names")->required();

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand("query", "Posterior of a target given evidence");
  query->add_option("input", query_args.input, "Table file")->required();
  query->add_option("structure", query_args.structure, "Structure file")->required();
  query->add_option("--evidence", query_args.evidence, "Comma-separated name=0|1 assignments");
  query->add_option("--target", query_args.target, "Target variable")->required();

  DotArgs dot_args;
  CLI::App* dot = app.add_subcommand("export-dot", "Render a structure as Graphviz DOT");
  dot->add_option("structure", dot_args.structure, "Structure file")->required();
  dot->add_option("--out", dot_args.out, "Output DOT file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) run_gen(gen_args);
    if (fit->parsed()) run_fit(fit_args);
    if (score->parsed()) run_score(score_args);
    if (star->parsed()) run_star(star_args);
    if (query->parsed()) run_query(query_args);
    if (dot->parsed()) run_dot(dot_args);
    return 0;
  } catch (const treedec::ProjectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const treedec::StarDegenerate& e) {
    std::cerr << "error: degenerate: " << e.what() << "\n";
    return 4;
  } catch (const treedec::StarNoRealSolution& e) {
    std::cerr << "error: no real solution: " << e.what() << "\n";
    return 4;
  } catch (const treedec::ZeroProbabilityEvidence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
