#include "wkb/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wkb/bench.hpp"
#include "wkb/core.hpp"
#include "wkb/interp.hpp"
#include "wkb/reason.hpp"
#include "wkb/search.hpp"
#include "wkb/text.hpp"

namespace wkb::cli {

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitBudget = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExtendedCost parse_k(const std::string& text) {
  if (text == "inf") return ExtendedCost::inf();
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error("invalid bound: " + text + " (expected a decimal integer or 'inf')");
  return ExtendedCost::fin(BigInt(text));
}

nlohmann::json cost_json(const ExtendedCost& cost) {
  if (cost.is_infinite()) return "inf";
  if (cost.value() <= BigInt(UINT64_MAX))
    return static_cast<std::uint64_t>(cost.value());
  return cost.value().str();
}

struct Shared {
  std::string kb_path;
  std::string query_path;
  std::string k_text;
  std::string semantics = "certain-opt";
  std::string engine = "search";
  std::uint64_t anon_bound = 0;
  bool anon_bound_set = false;
  std::uint64_t node_budget = 20'000'000;
  std::uint64_t point_budget = std::uint64_t(1) << 22;
  bool plain = false;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd, bool with_kb = true) {
    if (with_kb) cmd->add_option("--kb", kb_path, "knowledge base file")->required();
    cmd->add_option("--anon-bound", anon_bound, "anonymous-domain size limit")
        ->each([this](const std::string&) { anon_bound_set = true; });
    cmd->add_option("--budget-nodes", node_budget, "search node budget");
    cmd->add_option("--budget-points", point_budget, "oracle enumeration budget");
    cmd->add_option("--engine", engine, "decision engine: search | configs")
        ->check(CLI::IsMember({"search", "configs"}));
    cmd->add_flag("--plain", plain, "plain-text output instead of JSON");
    cmd->add_option("--seed", seed, "seed for randomized generation");
  }
};

DomainBound resolve_bound(const Shared& shared, const WeightedKB& kb, BoundProblem problem) {
  std::uint64_t cap = kDefaultAnonCap;
  bool user_set = shared.anon_bound_set;
  std::uint64_t user_value = shared.anon_bound;
  if (!user_set) {
    if (const char* env = std::getenv("WKB_ANON_BOUND")) {
      user_set = true;
      user_value = std::strtoull(env, nullptr, 10);
    }
  }
  if (!user_set) return completeness_bound(kb, problem, cap);
  // honesty of the completeness flag for a user-supplied limit
  DomainBound theoretical = completeness_bound(kb, problem, UINT64_MAX);
  bool complete = theoretical.theoretical_complete && user_value >= theoretical.anon_limit;
  return {user_value, complete};
}

Semantics parse_semantics(const std::string& text, const std::string& k_text) {
  if (text == "certain-opt") return Semantics::certain_opt();
  if (text == "possible-opt") return Semantics::possible_opt();
  if (text == "certain-k" || text == "certain") {
    if (k_text.empty()) throw Error("--k is required for bounded semantics");
    return Semantics::certain_bounded(parse_k(k_text));
  }
  if (text == "possible-k" || text == "possible") {
    if (k_text.empty()) throw Error("--k is required for bounded semantics");
    return Semantics::possible_bounded(parse_k(k_text));
  }
  throw Error("unknown semantics: " + text);
}

BoundProblem problem_of(const Semantics& sem) {
  return sem.is_certain() ? BoundProblem::Certain : BoundProblem::Possible;
}

struct Report {
  nlohmann::json json = nlohmann::json::object();
  int exit_code = kExitYes;
};

void emit(const Report& report, bool plain, std::ostream& out) {
  if (!plain) {
    out << report.json.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : report.json.items()) {
    if (key == "witness" || key == "stats") continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

int verdict_exit(const Verdict& v) {
  if (v.answer) return kExitYes;
  return v.complete ? kExitNo : kExitIncomplete;
}

void fill_verdict(Report& report, const Verdict& v) {
  report.json["answer"] = v.opt_infinite ? nlohmann::json() : nlohmann::json(v.answer);
  report.json["complete"] = v.complete;
  if (v.opt_used) report.json["opt"] = cost_json(*v.opt_used);
  if (v.opt_infinite) report.json["status"] = "opt=inf";
  if (v.witness) report.json["witness"] = nlohmann::json::parse(interpretation_to_json(*v.witness));
  report.exit_code = verdict_exit(v);
}

class Stopwatch {
 public:
  std::uint64_t millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reasoner for weighted description-logic knowledge bases"};
  app.require_subcommand(1);
  Shared shared;

  auto* validate_cmd = app.add_subcommand("validate", "check a KB file for well-formedness");
  shared.attach(validate_cmd);

  auto* checksat_cmd = app.add_subcommand("check-sat", "bounded-cost satisfiability");
  shared.attach(checksat_cmd);
  checksat_cmd->add_option("--k", shared.k_text, "cost bound (decimal or 'inf')")->required();

  auto* opt_cmd = app.add_subcommand("opt", "optimal interpretation cost");
  shared.attach(opt_cmd);

  auto* entail_cmd = app.add_subcommand("entail", "Boolean query entailment");
  shared.attach(entail_cmd);
  entail_cmd->add_option("--query", shared.query_path, "query file")->required();
  entail_cmd
      ->add_option("--semantics", shared.semantics,
                   "certain-k | possible-k | certain-opt | possible-opt")
      ->required();
  entail_cmd->add_option("--k", shared.k_text, "cost bound for the bounded semantics");

  auto* answers_cmd = app.add_subcommand("answers", "answer enumeration");
  shared.attach(answers_cmd);
  answers_cmd->add_option("--query", shared.query_path, "query file")->required();
  answers_cmd
      ->add_option("--semantics", shared.semantics,
                   "certain-k | possible-k | certain-opt | possible-opt")
      ->required();
  answers_cmd->add_option("--k", shared.k_text, "cost bound for the bounded semantics");

  std::string reduction, graph_path, formula_path, out_path;
  std::uint64_t is_vertex = 0;
  std::uint64_t random_vertices = 0, random_vars = 0, random_clauses = 0;
  auto* gen_cmd = app.add_subcommand("gen", "emit a hardness-reduction KB");
  gen_cmd->add_option("--reduction", reduction, "3col | independent-set | lexmax")->required();
  gen_cmd->add_option("--graph", graph_path, "graph file (n, then 'u v' lines)");
  gen_cmd->add_option("--formula", formula_path, "2+2 formula file");
  gen_cmd->add_option("--w", is_vertex, "distinguished vertex (independent-set)");
  gen_cmd->add_option("--random-vertices", random_vertices, "generate a random graph instead");
  gen_cmd->add_option("--random-vars", random_vars, "random formula: variable count");
  gen_cmd->add_option("--random-clauses", random_clauses, "random formula: clause count");
  gen_cmd->add_option("--out", out_path, "output file (default stdout)");
  gen_cmd->add_option("--seed", shared.seed, "seed for randomized generation");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force definitional oracle");
  oracle_cmd->require_subcommand(1);
  auto* oracle_checksat = oracle_cmd->add_subcommand("check-sat", "oracle BCS");
  shared.attach(oracle_checksat);
  oracle_checksat->add_option("--k", shared.k_text, "cost bound")->required();
  auto* oracle_opt = oracle_cmd->add_subcommand("opt", "oracle optimal cost");
  shared.attach(oracle_opt);
  auto* oracle_entail = oracle_cmd->add_subcommand("entail", "oracle entailment");
  shared.attach(oracle_entail);
  oracle_entail->add_option("--query", shared.query_path, "query file")->required();
  oracle_entail
      ->add_option("--semantics", shared.semantics,
                   "certain-k | possible-k | certain-opt | possible-opt")
      ->required();
  oracle_entail->add_option("--k", shared.k_text, "cost bound for the bounded semantics");

  std::vector<const char*> argv;
  argv.push_back("wkb");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Stopwatch watch;
  SearchStats stats;
  SearchOptions options;
  options.node_budget = shared.node_budget;

  try {
    if (*gen_cmd) {
      std::mt19937_64 rng(shared.seed);
      WeightedKB kb;
      if (reduction == "3col") {
        bench::Graph g = random_vertices > 0
                             ? bench::random_graph(rng, random_vertices)
                             : bench::parse_graph(read_file(graph_path));
        kb = bench::gen_3col(g).kb;
      } else if (reduction == "independent-set") {
        bench::Graph g = random_vertices > 0
                             ? bench::random_graph(rng, random_vertices)
                             : bench::parse_graph(read_file(graph_path));
        kb = bench::gen_independent_set(g, is_vertex);
      } else if (reduction == "lexmax") {
        bench::TwoTwoFormula f;
        if (random_vars > 0) {
          do {
            f = bench::random_two_two(rng, random_vars, std::max<std::uint64_t>(random_clauses, 1));
          } while (!bench::lexmax_assignment(f));
        } else {
          f = bench::parse_two_two(read_file(formula_path));
        }
        kb = bench::gen_lexmax(f);
      } else {
        throw Error("unknown reduction: " + reduction);
      }
      std::string text = serialize_wkb(kb);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path);
        if (!file) throw Error("cannot write file: " + out_path);
        file << text;
      }
      return kExitYes;
    }

    WeightedKB kb = parse_wkb(read_file(shared.kb_path));
    Report report;

    if (*validate_cmd) {
      std::vector<Diagnostic> diagnostics = validate(kb);
      report.json["problem"] = "validate";
      report.json["answer"] = diagnostics.empty();
      nlohmann::json list = nlohmann::json::array();
      for (const auto& d : diagnostics)
        list.push_back({{"location", d.location}, {"message", d.message}});
      report.json["diagnostics"] = list;
      report.exit_code = diagnostics.empty() ? kExitYes : kExitNo;
    } else if (*checksat_cmd) {
      ExtendedCost k = parse_k(shared.k_text);
      DomainBound bound = resolve_bound(shared, kb, BoundProblem::BCS);
      Verdict v = shared.engine == "configs"
                      ? bcs_via_configurations(kb, k, bound, options, &stats)
                      : bcs(kb, k, bound, options, &stats);
      report.json["problem"] = "check-sat";
      report.json["k"] = cost_json(k);
      fill_verdict(report, v);
    } else if (*opt_cmd) {
      DomainBound bound = resolve_bound(shared, kb, BoundProblem::BCS);
      auto [value, complete] = optimal_cost(kb, bound, options, &stats);
      report.json["problem"] = "opt";
      report.json["answer"] = nullptr;
      report.json["opt"] = cost_json(value);
      report.json["complete"] = complete;
      report.exit_code = complete ? kExitYes : kExitIncomplete;
    } else if (*entail_cmd) {
      Query query = parse_query(read_file(shared.query_path));
      if (!query.is_boolean()) throw Error("entail expects a Boolean query (empty answer list)");
      Semantics sem = parse_semantics(shared.semantics, shared.k_text);
      DomainBound bound = resolve_bound(shared, kb, problem_of(sem));
      Verdict v;
      if (shared.engine == "configs") {
        if (sem.is_opt())
          throw Error("the configuration engine supports bounded semantics only");
        v = sem.is_certain()
                ? entails_via_configurations(kb, query, sem.k, bound, options, &stats)
                : possible_via_configurations(kb, query, sem.k, bound, options, &stats);
      } else {
        v = entails(kb, query, sem, bound, options, &stats);
      }
      report.json["problem"] = "entail";
      report.json["semantics"] = shared.semantics;
      if (!shared.k_text.empty()) report.json["k"] = cost_json(parse_k(shared.k_text));
      fill_verdict(report, v);
    } else if (*answers_cmd) {
      Query query = parse_query(read_file(shared.query_path));
      Semantics sem = parse_semantics(shared.semantics, shared.k_text);
      DomainBound bound = resolve_bound(shared, kb, problem_of(sem));
      AnswersResult result = answers(kb, query, sem, bound, options, &stats);
      report.json["problem"] = "answers";
      report.json["semantics"] = shared.semantics;
      nlohmann::json tuples = nlohmann::json::array();
      for (const auto& t : result.tuples) tuples.push_back(t.individuals);
      report.json["answers"] = tuples;
      report.json["answer"] = !result.tuples.empty();
      report.json["complete"] = result.complete;
      report.exit_code = !result.tuples.empty() ? kExitYes
                         : result.complete      ? kExitNo
                                                : kExitIncomplete;
    } else if (*oracle_checksat) {
      ExtendedCost k = parse_k(shared.k_text);
      DomainBound bound = resolve_bound(shared, kb, BoundProblem::BCS);
      Verdict v = bench::oracle_bcs(kb, k, bound, shared.point_budget);
      report.json["problem"] = "oracle-check-sat";
      report.json["k"] = cost_json(k);
      fill_verdict(report, v);
    } else if (*oracle_opt) {
      DomainBound bound = resolve_bound(shared, kb, BoundProblem::BCS);
      auto [value, complete] = bench::oracle_opt(kb, bound, shared.point_budget);
      report.json["problem"] = "oracle-opt";
      report.json["answer"] = nullptr;
      report.json["opt"] = cost_json(value);
      report.json["complete"] = complete;
      report.exit_code = complete ? kExitYes : kExitIncomplete;
    } else if (*oracle_entail) {
      Query query = parse_query(read_file(shared.query_path));
      if (!query.is_boolean())
        throw Error("oracle entail expects a Boolean query (empty answer list)");
      Semantics sem = parse_semantics(shared.semantics, shared.k_text);
      DomainBound bound = resolve_bound(shared, kb, problem_of(sem));
      Verdict v = bench::oracle_entails(kb, query, sem, bound, shared.point_budget);
      report.json["problem"] = "oracle-entail";
      report.json["semantics"] = shared.semantics;
      fill_verdict(report, v);
    }

    report.json["stats"] = {{"nodes", stats.count()}, {"millis", watch.millis()}};
    emit(report, shared.plain, out);
    return report.exit_code;
  } catch (const BudgetExhaustedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const bench::BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace wkb::cli
