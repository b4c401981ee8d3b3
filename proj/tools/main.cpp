#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invmine/formulation.hpp"
#include "invmine/io.hpp"
#include "invmine/miner.hpp"
#include "invmine/oracle.hpp"
#include "invmine/privacy.hpp"
#include "invmine/rounding.hpp"
#include "invmine/simplex.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

const std::map<std::string, invmine::RoundingMethod> kMethods = {
    {"round-u", invmine::RoundingMethod::RoundU},
    {"round-x", invmine::RoundingMethod::RoundX},
    {"random-x", invmine::RoundingMethod::RandomX},
    {"random-u", invmine::RoundingMethod::RandomU},
    {"derandom-x", invmine::RoundingMethod::DerandomX},
    {"derandom-u", invmine::RoundingMethod::DerandomU},
};

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<std::string> make_header(const std::string& command_line, std::uint64_t seed) {
  return {std::string("invmine ") + kVersion, "command: " + command_line,
          "seed: " + std::to_string(seed)};
}

invmine::ItemSet parse_items(const std::string& text, int universe_size) {
  invmine::ItemSet s(universe_size);
  std::istringstream in(text);
  int id;
  while (in >> id) {
    if (id < 0 || id >= universe_size)
      throw invmine::InputError("item id out of range: " + std::to_string(id));
    s.set(id, true);
  }
  if (!in.eof()) throw invmine::InputError("unparseable item list: " + text);
  return s;
}

struct SolveOutcome {
  invmine::LpSolution solution;
  int exit_code = 0;  // nonzero when the solve did not reach an optimum
};

SolveOutcome solve_relaxation(const invmine::LpModel& model, const std::string& dump_path) {
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw invmine::InputError("cannot open " + dump_path);
    invmine::dump_lp(out, model);
  }
  SolveOutcome outcome;
  outcome.solution = invmine::solve(model);
  switch (outcome.solution.status) {
    case invmine::LpStatus::Optimal:
      break;
    case invmine::LpStatus::IterationLimit:
      std::cerr << "error: solver hit the iteration limit\n";
      outcome.exit_code = 2;
      break;
    default:
      std::cerr << "error: relaxation is infeasible or unbounded\n";
      outcome.exit_code = 2;
      break;
  }
  return outcome;
}

void print_summary(const invmine::SynthesisReport& report) {
  std::cout << "n=" << report.n_actual << " sum_abs_dev=" << report.sum_abs_deviation
            << " max_abs_dev=" << report.max_abs_deviation << " lp_obj=" << report.lp_objective
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic transaction database generation from itemset support constraints"};
  app.set_version_flag("--version", std::string("invmine ") + kVersion);
  app.require_subcommand(1);
  const std::string command_line = join_argv(argc, argv);

  std::string db_path, cst_path, out_path, report_path, dump_lp_path, prv_path;
  std::string edges_path, sensitive_items, model_name = "overshoot";
  long long minsup = 1;
  int maxlen = 3;
  std::uint64_t seed = 0;
  int refine_rounds = 2;
  double threshold = 0.5;
  long long k0 = 1;
  invmine::RoundingMethod method = invmine::RoundingMethod::DerandomX;

  auto* mine = app.add_subcommand("mine", "Mine frequent itemsets into a constraint file");
  mine->add_option("--db", db_path, "input database (.dat)")->required();
  mine->add_option("--minsup", minsup, "minimum absolute support")->required();
  mine->add_option("--maxlen", maxlen, "maximum itemset size")->required();
  mine->add_option("--out", cst_path, "output constraint file (.cst)")->required();

  auto* synth = app.add_subcommand("synth", "Synthesize a database from constraints");
  synth->add_option("--constraints", cst_path, "input constraint file (.cst)")->required();
  synth->add_option("--out", out_path, "output database (.dat)")->required();
  synth->add_option("--method", method, "rounding method")
      ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--refine-rounds", refine_rounds, "probability refinement rounds");
  synth->add_option("--report", report_path, "deviation report CSV path");
  synth->add_option("--dump-lp", dump_lp_path, "write the relaxation as plain text");

  auto* verify = app.add_subcommand("verify", "Report deviations of a database from constraints");
  verify->add_option("--db", db_path, "database to check (.dat)")->required();
  verify->add_option("--constraints", cst_path, "constraint file (.cst)")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive tiny-instance optimum");
  oracle->add_option("--constraints", cst_path, "constraint file (.cst)")->required();
  oracle->add_option("--model", model_name, "deviation model")
      ->check(CLI::IsMember({"overshoot", "absolute"}));

  auto* gen3col = app.add_subcommand("gen-3col", "Constraint set of the 3-coloring reduction");
  gen3col->add_option("--edges", edges_path, "edge list file, one `u v` per line")->required();
  gen3col->add_option("--k0", k0, "instance scale factor");
  gen3col->add_option("--out", cst_path, "output constraint file (.cst)")->required();

  auto* audit = app.add_subcommand("audit", "Audit a constraint set against privacy rules");
  audit->add_option("--constraints", cst_path, "constraint file (.cst)")->required();
  audit->add_option("--privacy", prv_path, "privacy rule file (.prv)")->required();
  audit->add_option("--threshold", threshold, "leak confidence threshold")->required();
  audit->add_option("--method", method, "rounding method")
      ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
  audit->add_option("--seed", seed, "random seed");
  audit->add_option("--refine-rounds", refine_rounds, "probability refinement rounds");

  auto* scrub_db = app.add_subcommand("scrub-db", "Randomize rule supports in a database");
  scrub_db->add_option("--db", db_path, "input database (.dat)")->required();
  scrub_db->add_option("--privacy", prv_path, "privacy rule file (.prv)")->required();
  scrub_db->add_option("--seed", seed, "random seed");
  scrub_db->add_option("--out", out_path, "output database (.dat)")->required();

  auto* scrub_cst = app.add_subcommand("scrub-cst", "Randomize a sensitive constraint support");
  scrub_cst->add_option("--constraints", cst_path, "input constraint file (.cst)")->required();
  scrub_cst->add_option("--sensitive", sensitive_items, "sensitive itemset, space-separated ids")
      ->required();
  scrub_cst->add_option("--seed", seed, "random seed");
  scrub_cst->add_option("--out", out_path, "output constraint file (.cst)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const std::vector<std::string> header = make_header(command_line, seed);

    if (*mine) {
      const invmine::TransactionDatabase db = invmine::io::read_database_file(db_path);
      const invmine::ConstraintSet cs = invmine::extract_constraints(db, minsup, maxlen);
      invmine::io::write_constraints_file(cst_path, cs, header);
      std::cout << "m=" << cs.m() << " n=" << cs.n << " t=" << cs.universe.size << "\n";
    } else if (*synth) {
      const invmine::ConstraintSet cs = invmine::io::read_constraints_file(cst_path);
      const invmine::LpModel model = invmine::build_relaxed_lp(cs);
      const SolveOutcome solved = solve_relaxation(model, dump_lp_path);
      if (solved.exit_code) return solved.exit_code;
      const invmine::RoundedSolution rounded =
          invmine::apply_rounding(method, solved.solution, cs, seed, refine_rounds);
      const invmine::TransactionDatabase db = invmine::build_database(rounded, cs.universe);
      invmine::io::write_database_file(out_path, db, header);
      const invmine::SynthesisReport report =
          invmine::deviation_report(db, cs, solved.solution.objective);
      if (!report_path.empty()) invmine::io::write_report_file(report_path, report);
      print_summary(report);
    } else if (*verify) {
      const invmine::ConstraintSet cs = invmine::io::read_constraints_file(cst_path);
      const invmine::TransactionDatabase db =
          invmine::io::read_database_file(db_path, cs.universe.size);
      invmine::io::write_report(std::cout, invmine::deviation_report(db, cs, 0.0));
    } else if (*oracle) {
      const invmine::ConstraintSet cs = invmine::io::read_constraints_file(cst_path);
      const invmine::DeviationModel dm = model_name == "absolute"
                                             ? invmine::DeviationModel::Absolute
                                             : invmine::DeviationModel::Overshoot;
      const invmine::OracleResult res = invmine::brute_force_optimum(cs, dm);
      if (!res.feasible) {
        std::cout << "infeasible\n";
      } else {
        std::cout << "optimum=" << res.optimum << "\n";
        for (std::size_t type = 0; type < res.witness.size(); ++type) {
          if (res.witness[type] == 0) continue;
          const invmine::ItemSet s =
              invmine::itemset_of_type(cs.universe.size, static_cast<int>(type));
          std::cout << res.witness[type] << " x [" << invmine::io::format_items(s) << "]\n";
        }
      }
    } else if (*gen3col) {
      std::ifstream in(edges_path);
      if (!in) throw invmine::InputError("cannot open " + edges_path);
      invmine::Graph g;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int u, v;
        if (!(row >> u >> v)) throw invmine::InputError("unparseable edge line: " + line);
        g.edges.emplace_back(u, v);
        g.vertex_count = std::max({g.vertex_count, u + 1, v + 1});
      }
      const invmine::ConstraintSet cs = invmine::reduce_3coloring(g, k0);
      invmine::io::write_constraints_file(cst_path, cs, header);
      std::cout << "m=" << cs.m() << " n=" << cs.n << " t=" << cs.universe.size << "\n";
    } else if (*audit) {
      const invmine::ConstraintSet cs = invmine::io::read_constraints_file(cst_path);
      const std::vector<invmine::PrivacyRule> rules =
          invmine::io::read_privacy_rules_file(prv_path, cs.universe.size);
      invmine::AuditConfig config;
      config.method = method;
      config.seed = seed;
      config.refine_rounds = refine_rounds;
      const std::vector<invmine::AuditFinding> findings =
          invmine::audit(cs, rules, threshold, config);
      std::cout << "itemset,s_min,s_max,c_low,c_high,confidence,leaked\n";
      for (const invmine::AuditFinding& f : findings) {
        std::cout << invmine::io::format_items(f.rule.itemset) << "," << f.rule.s_min << ","
                  << f.rule.s_max << ",";
        if (f.confidence_low_branch) std::cout << *f.confidence_low_branch;
        std::cout << ",";
        if (f.confidence_high_branch) std::cout << *f.confidence_high_branch;
        std::cout << "," << f.confidence << "," << (f.leaked ? "true" : "false") << "\n";
      }
    } else if (*scrub_db) {
      const invmine::TransactionDatabase db = invmine::io::read_database_file(db_path);
      const std::vector<invmine::PrivacyRule> rules =
          invmine::io::read_privacy_rules_file(prv_path, db.universe.size);
      const invmine::ScrubDatabaseResult scrubbed = invmine::scrub_database(db, rules, seed);
      invmine::io::write_database_file(out_path, scrubbed.db, header);
      for (std::size_t i = 0; i < rules.size(); ++i)
        std::cout << "rule " << invmine::io::format_items(rules[i].itemset)
                  << " target=" << scrubbed.targets[i] << "\n";
    } else if (*scrub_cst) {
      const invmine::ConstraintSet cs = invmine::io::read_constraints_file(cst_path);
      const invmine::ItemSet sensitive = parse_items(sensitive_items, cs.universe.size);
      const invmine::ConstraintSet scrubbed = invmine::scrub_constraints(cs, sensitive, seed);
      invmine::io::write_constraints_file(out_path, scrubbed, header);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
