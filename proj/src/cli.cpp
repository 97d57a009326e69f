#include "sharing/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sharing/envy.hpp"
#include "sharing/errors.hpp"
#include "sharing/io.hpp"
#include "sharing/matching.hpp"
#include "sharing/model.hpp"
#include "sharing/numeric.hpp"
#include "sharing/oracle.hpp"
#include "sharing/reductions.hpp"
#include "sharing/treewidth.hpp"
#include "sharing/welfare.hpp"

namespace sharing {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << bytes;
}

// What one subcommand run produced; main() turns it into the result JSON
// line and the process exit code.
struct Outcome {
  bool yes = false;
  json value;  // welfare/envy value, or null
  std::string algorithm;
};

double elapsed_ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::optional<long long> node_cap_from_env() {
  const char* raw = std::getenv("SHARE_ALLOC_NODE_CAP");
  if (raw == nullptr) return std::nullopt;
  try {
    std::size_t used = 0;
    const long long cap = std::stoll(raw, &used);
    if (used != std::string(raw).size() || cap < 1) {
      throw std::invalid_argument(raw);
    }
    return cap;
  } catch (const std::exception&) {
    throw InputError(std::string("SHARE_ALLOC_NODE_CAP must be a positive "
                                 "integer, got \"") +
                     raw + "\"");
  }
}

NodeBudget make_budget() {
  const auto cap = node_cap_from_env();
  return NodeBudget(cap.value_or(NodeBudget::kDefaultCap));
}

int count_envious(const Instance& inst, const Sharing& sharing) {
  return static_cast<int>(envious_agents(inst, sharing).envious.size());
}

// Result-JSON rendering of a welfare value: integral rationals lose the
// "/1" suffix documents keep (the document format stays uniform "p/q" so
// fixtures diff cleanly; the result line is for humans and shells).
std::string format_value(const Rat& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return format_rational(value);
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string problem;
  std::string algorithm = "auto";
  std::string instance_path;
  std::string witness_path;
  std::string decomposition_path;
  std::string target;  // --k: welfare target (rational) or envy count
  int bound = 1;       // --b
};

void require_simple(const SolveOptions& opt) {
  if (opt.bound != 1) {
    throw InputError("--algorithm " + opt.algorithm +
                     " decides simple sharings only (--b 1); use "
                     "--algorithm brute for larger bounds");
  }
}

int parse_envy_target(const std::string& text) {
  try {
    std::size_t used = 0;
    const int k = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return k;
  } catch (const std::exception&) {
    throw InputError("--k must be an integer envy count, got \"" + text +
                     "\"");
  }
}

Outcome solve_uwsa_command(const Instance& inst, const SolveOptions& opt,
                           std::optional<Sharing>& witness_out) {
  const Rat target = parse_rational(opt.target);
  if (opt.algorithm == "auto" || opt.algorithm == "matching") {
    const UwsaResult result = solve_uwsa(inst, opt.bound, target);
    if (result.yes) witness_out = result.witness;
    return {result.yes, format_value(result.optimum), "matching"};
  }
  if (opt.algorithm == "brute") {
    NodeBudget budget = make_budget();
    const WelfareOptimum best = max_welfare_bruteforce(inst, opt.bound,
                                                       &budget);
    const bool yes = best.utilitarian >= target;
    if (yes) witness_out = best.utilitarian_witness;
    return {yes, format_value(best.utilitarian), "brute"};
  }
  throw InputError("--algorithm " + opt.algorithm +
                   " does not solve --problem uwsa (use auto, matching or "
                   "brute)");
}

Outcome solve_ewsa_command(const Instance& inst, const SolveOptions& opt,
                           std::optional<Sharing>& witness_out) {
  const Rat target = parse_rational(opt.target);
  std::string algorithm = opt.algorithm;
  if (algorithm == "auto") {
    algorithm = opt.bound == 1 ? "matching" : "bounded-shared";
  }
  if (algorithm == "matching") {
    require_simple(opt);
    const EwsaOptimum best = maximize_ewsa_simple(inst);
    const bool yes = best.optimum >= target;
    if (yes) witness_out = best.witness;
    return {yes, format_value(best.optimum), "matching"};
  }
  if (algorithm == "bounded-shared") {
    if (opt.bound < 2) {
      throw InputError(
          "--algorithm bounded-shared needs --b 2 or more; --b 1 is the "
          "matching algorithm");
    }
    NodeBudget budget = make_budget();
    const EwsaResult result =
        solve_ewsa_bounded_exact(inst, opt.bound, target, &budget);
    json value;
    if (result.yes) {
      witness_out = result.witness;
      value = format_value(welfare(inst, result.witness).second);
    }
    return {result.yes, value, "bounded-shared"};
  }
  if (algorithm == "brute") {
    NodeBudget budget = make_budget();
    const WelfareOptimum best = max_welfare_bruteforce(inst, opt.bound,
                                                       &budget);
    const bool yes = best.egalitarian >= target;
    if (yes) witness_out = best.egalitarian_witness;
    return {yes, format_value(best.egalitarian), "brute"};
  }
  throw InputError("--algorithm " + opt.algorithm +
                   " does not solve --problem ewsa (use auto, matching, "
                   "bounded-shared or brute)");
}

Outcome solve_ersa_command(const Instance& inst, const SolveOptions& opt,
                           std::optional<Sharing>& witness_out) {
  const int k = parse_envy_target(opt.target);
  const std::string& algorithm = opt.algorithm;
  if (algorithm == "auto") {
    require_simple(opt);
    const ErsaDispatch result = solve_ersa_auto(inst, k);
    json value;
    if (result.yes) {
      witness_out = result.witness;
      value = count_envious(inst, result.witness);
    }
    return {result.yes, value, result.algorithm};
  }
  if (algorithm == "fpt-agents") {
    require_simple(opt);
    NodeBudget budget = make_budget();
    const ErsaResult result = solve_ersa_fpt_agents(inst, k, &budget);
    json value;
    if (result.yes) {
      witness_out = result.witness;
      value = count_envious(inst, result.witness);
    }
    return {result.yes, value, "fpt-agents"};
  }
  if (algorithm == "treewidth") {
    require_simple(opt);
    NiceTreeDecomposition dec;
    if (!opt.decomposition_path.empty()) {
      dec = parse_decomposition(read_file(opt.decomposition_path));
      const auto violations = validate_nice_decomposition(inst, dec);
      if (!violations.empty()) {
        throw InputError("decomposition invalid: " + violations.front());
      }
    } else {
      dec = build_nice_decomposition(inst);
    }
    const ErsaOptimum result = solve_ersa_treewidth(inst, dec, k);
    if (result.yes) witness_out = result.witness;
    return {result.yes, result.min_envy, "treewidth"};
  }
  if (algorithm == "identical-clique") {
    require_simple(opt);
    const ErsaOptimum result = solve_ersa_identical_clique(inst, k);
    if (result.yes) witness_out = result.witness;
    return {result.yes, result.min_envy, "identical-clique"};
  }
  if (algorithm == "bounded-shared") {
    require_simple(opt);
    NodeBudget budget = make_budget();
    const int s_max = std::min(inst.n / 2, inst.m);
    const ErsaResult result = solve_ersa_bounded_shared(inst, k, s_max,
                                                        &budget);
    json value;
    if (result.yes) {
      witness_out = result.witness;
      value = count_envious(inst, result.witness);
    }
    return {result.yes, value, "bounded-shared"};
  }
  if (algorithm == "brute") {
    NodeBudget budget = make_budget();
    const EnvyOptimum best = min_envy_bruteforce(inst, opt.bound, &budget);
    const bool yes = best.envy_count <= k;
    if (yes) witness_out = best.witness;
    return {yes, best.envy_count, "brute"};
  }
  throw InputError("--algorithm " + algorithm +
                   " does not solve --problem ersa (use auto, fpt-agents, "
                   "treewidth, identical-clique, bounded-shared or brute)");
}

Outcome run_solve(const SolveOptions& opt) {
  const Instance inst = parse_instance(read_file(opt.instance_path));
  std::optional<Sharing> witness;
  Outcome outcome;
  if (opt.problem == "uwsa") {
    outcome = solve_uwsa_command(inst, opt, witness);
  } else if (opt.problem == "ewsa") {
    outcome = solve_ewsa_command(inst, opt, witness);
  } else if (opt.problem == "ersa") {
    outcome = solve_ersa_command(inst, opt, witness);
  } else {
    throw InputError("--problem must be uwsa, ewsa or ersa, got \"" +
                     opt.problem + "\"");
  }
  if (witness.has_value()) {
    const auto violations = validate_sharing(inst, *witness);
    if (!violations.empty()) {
      throw std::logic_error("solver emitted an invalid witness: " +
                             violations.front().detail);
    }
    if (!opt.witness_path.empty()) {
      write_file(opt.witness_path, serialize_sharing(*witness));
    }
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// verify

Outcome run_verify(const std::string& instance_path,
                   const std::string& sharing_path) {
  const Instance inst = parse_instance(read_file(instance_path));
  const Sharing sharing = parse_sharing(read_file(sharing_path));
  const auto violations = validate_sharing(inst, sharing);
  if (!violations.empty()) {
    for (const Violation& v : violations) {
      std::cerr << violation_kind_name(v.kind) << ": " << v.detail << "\n";
    }
    return {false, json(), "verify"};
  }
  return {true, count_envious(inst, sharing), "verify"};
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  bool random = false;
  std::string gadget;
  std::string source_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int u_max = 9;
  std::string sharing_model = "clique";
  std::string attention_model = "same_as_sharing_bidirected";
};

SourceGraph parse_source_graph(const std::string& bytes) {
  const json doc = json::parse(bytes);
  SourceGraph graph;
  graph.n = doc.at("vertices").get<int>();
  for (const json& e : doc.at("edges")) {
    graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  return graph;
}

Outcome run_gen(const GenOptions& opt) {
  if (opt.random != opt.gadget.empty()) {
    throw InputError("gen needs exactly one of --random or --gadget");
  }
  if (opt.random) {
    const Instance inst = generate_random(
        opt.seed, opt.n, opt.m, parse_graph_model(opt.sharing_model),
        parse_graph_model(opt.attention_model), opt.u_max);
    write_file(opt.out_path, serialize_instance(inst));
    return {true, json(), "gen-random"};
  }

  // Gadget sources are small JSON documents; malformed ones surface as
  // input errors with the offending key in the message.
  json doc;
  const std::string bytes = read_file(opt.source_path);
  try {
    doc = json::parse(bytes);
    if (opt.gadget == "independent-set") {
      const ErsaGadget gadget = gen_independent_set_ersa(
          parse_source_graph(bytes), doc.at("set_size").get<int>());
      write_file(opt.out_path, serialize_instance(gadget.instance));
      return {true, gadget.k, "gen-gadget-independent-set"};
    }
    if (opt.gadget == "3sat") {
      CnfFormula formula;
      formula.variables = doc.at("variables").get<int>();
      for (const json& clause : doc.at("clauses")) {
        formula.clauses.push_back(clause.get<std::vector<int>>());
      }
      const ErsaGadget gadget = gen_3sat_ersa(formula);
      write_file(opt.out_path, serialize_instance(gadget.instance));
      return {true, gadget.k, "gen-gadget-3sat"};
    }
    if (opt.gadget == "multicolored-clique") {
      const ErsaGadget gadget = gen_multicolored_clique_ersa(
          parse_source_graph(bytes),
          doc.at("coloring").get<std::vector<int>>(),
          doc.at("colors").get<int>());
      write_file(opt.out_path, serialize_instance(gadget.instance));
      return {true, gadget.k, "gen-gadget-multicolored-clique"};
    }
    if (opt.gadget == "clique") {
      const ErsaGadget gadget = gen_clique_ersa(
          parse_source_graph(bytes), doc.at("clique_size").get<int>());
      write_file(opt.out_path, serialize_instance(gadget.instance));
      return {true, gadget.k, "gen-gadget-clique"};
    }
    if (opt.gadget == "n3dm") {
      const auto ints = [&doc](const char* key) {
        std::vector<Int> out;
        for (const json& v : doc.at(key)) out.push_back(Int(v.get<long long>()));
        return out;
      };
      const EwsaGadget gadget = gen_n3dm_ewsa(ints("x"), ints("y"), ints("z"),
                                              Int(doc.at("t").get<long long>()));
      write_file(opt.out_path, serialize_instance(gadget.instance));
      json value;
      value = gadget.target.str();
      return {true, value, "gen-gadget-n3dm"};
    }
  } catch (const json::exception& e) {
    throw InputError("bad gadget source \"" + opt.source_path +
                     "\": " + e.what());
  }
  throw InputError("--gadget must be independent-set, 3sat, "
                   "multicolored-clique, clique or n3dm, got \"" +
                   opt.gadget + "\"");
}

// ---------------------------------------------------------------------------
// bench

Outcome run_bench(const std::string& corpus_dir,
                  const std::string& report_path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) {
    throw InputError("--corpus \"" + corpus_dir + "\" is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  json report = json::array();
  for (const fs::path& file : files) {
    const Instance inst = parse_instance(read_file(file.string()));
    const auto task_start = std::chrono::steady_clock::now();
    json row;
    row["file"] = file.filename().string();
    try {
      const ErsaDispatch result = solve_ersa_auto(inst, 0);
      row["answer"] = result.yes ? "yes" : "no";
      row["value"] =
          result.yes ? json(count_envious(inst, result.witness)) : json();
      row["algorithm"] = result.algorithm;
    } catch (const SearchBudgetError& e) {
      row["answer"] = "skipped";
      row["value"] = json();
      row["algorithm"] = "none";
      std::cerr << file.filename().string() << ": " << e.what() << "\n";
    }
    row["elapsed_ms"] = elapsed_ms_since(task_start);
    report.push_back(std::move(row));
  }
  write_file(report_path, report.dump(2) + "\n");
  Outcome outcome;
  outcome.yes = true;
  outcome.value = static_cast<int>(files.size());
  outcome.algorithm = "bench";
  return outcome;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"solvers for sharing indivisible resources on a social "
               "network: welfare maximization and envy minimization"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "decide a welfare or envy question about one instance");
  solve->add_option("--problem", solve_opt.problem,
                    "uwsa (utilitarian), ewsa (egalitarian) or ersa (envy)")
      ->required();
  solve->add_option("--instance", solve_opt.instance_path,
                    "instance document to solve")
      ->required();
  solve->add_option("--k", solve_opt.target,
                    "decision target: welfare bound (integer or p/q) for "
                    "uwsa/ewsa, envy count for ersa")
      ->required();
  solve->add_option("--b", solve_opt.bound,
                    "per-agent bound on sharing participations");
  solve->add_option("--algorithm", solve_opt.algorithm,
                    "auto, matching, fpt-agents, treewidth, "
                    "identical-clique, bounded-shared or brute");
  solve->add_option("--witness", solve_opt.witness_path,
                    "write the yes-witness sharing here");
  solve->add_option("--decomposition", solve_opt.decomposition_path,
                    "nice tree decomposition for --algorithm treewidth");

  std::string verify_instance, verify_sharing;
  CLI::App* verify = app.add_subcommand(
      "verify", "check a sharing document against its instance");
  verify->add_option("--instance", verify_instance, "instance document")
      ->required();
  verify->add_option("--sharing", verify_sharing, "sharing document")
      ->required();

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand(
      "gen", "generate an instance document (random or hardness gadget)");
  gen->add_flag("--random", gen_opt.random, "seeded random instance");
  gen->add_option("--gadget", gen_opt.gadget,
                  "independent-set, 3sat, multicolored-clique, clique or "
                  "n3dm");
  gen->add_option("--source", gen_opt.source_path,
                  "JSON description of the source problem for --gadget");
  gen->add_option("--out", gen_opt.out_path, "instance document to write")
      ->required();
  gen->add_option("--seed", gen_opt.seed, "random seed");
  gen->add_option("--n", gen_opt.n, "agent count");
  gen->add_option("--m", gen_opt.m, "resource count");
  gen->add_option("--u-max", gen_opt.u_max, "utility ceiling (inclusive)");
  gen->add_option("--sharing", gen_opt.sharing_model,
                  "clique, erdos_renyi:P, path or tree");
  gen->add_option("--attention", gen_opt.attention_model,
                  "clique, erdos_renyi:P, path, tree or "
                  "same_as_sharing_bidirected");

  std::string bench_corpus, bench_report;
  CLI::App* bench = app.add_subcommand(
      "bench", "solve every instance in a corpus and write a report");
  bench->add_option("--corpus", bench_corpus, "directory of *.json instances")
      ->required();
  bench->add_option("--report", bench_report, "report file to write")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic to stderr
    return kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (solve->parsed()) {
      outcome = run_solve(solve_opt);
    } else if (verify->parsed()) {
      outcome = run_verify(verify_instance, verify_sharing);
    } else if (gen->parsed()) {
      outcome = run_gen(gen_opt);
    } else {
      outcome = run_bench(bench_corpus, bench_report);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SearchBudgetError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitBudget;
  }

  json result;
  result["answer"] = outcome.yes ? "yes" : "no";
  result["value"] = outcome.value;
  result["algorithm"] = outcome.algorithm;
  result["elapsed_ms"] = elapsed_ms_since(start);
  std::cout << result.dump() << "\n";
  return outcome.yes ? kExitYes : kExitNo;
}

}  // namespace sharing
