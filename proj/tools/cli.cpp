#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathsdd/circuit.hpp"
#include "pathsdd/compiler.hpp"
#include "pathsdd/error.hpp"
#include "pathsdd/generators.hpp"
#include "pathsdd/oracle.hpp"
#include "pathsdd/queries.hpp"

namespace pathsdd::cli {

namespace {

using nlohmann::json;

constexpr double kOracleRelTol = 1e-9;
constexpr std::size_t kOracleSweepLimit = 20;
constexpr std::size_t kEnumerateGuard = 1'000'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string graph_path;
  std::string circuit_path;
  std::string logits_path;
  std::string out_path;
  double threshold = 0.0;
  std::size_t top_k = 1;
  std::optional<std::size_t> limit;
  bool conditional = false;
  bool oracle = false;
  std::optional<std::uint64_t> seed;
  bool stats = false;
  bool timing = false;
  bool merge = false;
  bool no_trim = false;
  bool reduce = false;
  bool serial = false;
  unsigned grid_m = 0;
  unsigned grid_n = 0;
};

json to_json(const WeightedState& ws) {
  json j{{"state", ws.state.to_string()}, {"log_weight", ws.log_weight}, {"prob", ws.prob}};
  if (ws.cond_prob) j["cond_prob"] = *ws.cond_prob;
  return j;
}

json to_json(const CircuitStats& s) {
  return {{"decision_count", s.decision_count},
          {"terminal_count", s.terminal_count},
          {"wire_count", s.wire_count},
          {"depth", s.depth}};
}

std::string to_string(const BigCount& n) { return n.str(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot write '" + path + "'", path);
  f << text;
}

[[noreturn]] void mismatch(const std::string& what) {
  throw Error(ErrorCode::OracleMismatch, "oracle disagrees: " + what);
}

bool close(double x, double y) {
  return std::abs(x - y) <= kOracleRelTol * std::max({1.0, std::abs(x), std::abs(y)});
}

class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {}

  json dispatch() {
    const auto& cmd = opt_.command;
    if (cmd == "gen-grid") return gen_grid_cmd();

    load();
    if (cmd == "compile") return compile_cmd();
    if (cmd == "stats") return stats_cmd();
    if (cmd == "export-dot") return dot_cmd();
    if (cmd == "count") return count_cmd();
    if (cmd == "pqe") return pqe_cmd();
    if (cmd == "mpe") return mpe_cmd();
    if (cmd == "topk") return ranked_cmd(opt_.top_k);
    if (cmd == "enumerate") return enumerate_cmd();
    if (cmd == "thresh") return thresh_cmd();
    throw UsageError("unknown command '" + cmd + "'");
  }

 private:
  void load() {
    const bool has_graph = !opt_.graph_path.empty();
    const bool has_circuit = !opt_.circuit_path.empty();
    if (opt_.command == "compile") {
      if (!has_graph || has_circuit) throw UsageError("compile needs a graph file");
    } else if (!has_graph && !has_circuit) {
      throw UsageError("give <graph> or --circuit");
    } else if (has_graph && has_circuit && !opt_.oracle) {
      throw UsageError("<graph> together with --circuit needs --oracle");
    }
    if (opt_.oracle && !has_graph) throw UsageError("--oracle needs the graph file");

    if (has_graph) {
      dag_ = read_edge_list_file(opt_.graph_path);
      oracle_dag_ = opt_.merge ? merge_endpoints(*dag_) : *dag_;
    }
    if (has_circuit) {
      // With a graph as well, the file is checked against that graph.
      circuit_ = read_circuit_file(opt_.circuit_path);
      return;
    }
    CompileOptions co;
    co.merge_endpoints = opt_.merge;
    co.trim = !opt_.no_trim;
    co.reduce = opt_.reduce;
    co.parallel = !opt_.serial;
    compilation_ = compile_detailed(*dag_, co);
    circuit_ = compilation_->circuit;
  }


  Logits logits() const {
    Logits a = opt_.logits_path.empty() ? Logits::zeros(circuit_.k())
                                        : read_logits_file(opt_.logits_path);
    if (a.size() != circuit_.k()) {
      throw Error(ErrorCode::Range, "logits have " + std::to_string(a.size()) +
                                        " entries, expected k = " + std::to_string(circuit_.k()),
                  opt_.logits_path);
    }
    return a;
  }

  // Full 2^k sweep of the circuit against the path definition.
  void check_circuit() const {
    const Dag& d = *oracle_dag_;
    const auto paths = oracle::brute_paths(d);
    if (count_models(circuit_) != BigCount(paths.size())) mismatch("path count");
    const std::size_t k = d.edge_count();
    if (k > kOracleSweepLimit) return;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
      State y(k);
      for (std::size_t i = 0; i < k; ++i) y.set(i, (m >> i) & 1U);
      if (evaluate(circuit_, y) != paths.contains(y)) mismatch("state " + y.to_string());
    }
  }

  json compile_cmd() {
    json j{{"command", "compile"},
           {"k", circuit_.k()},
           {"vertices", compilation_->vertex_count},
           {"decision_count", stats(circuit_).decision_count},
           {"untrimmed_decision_count", compilation_->untrimmed_decisions}};
    if (opt_.stats) j["stats"] = to_json(stats(circuit_));
    if (!opt_.out_path.empty()) {
      write_file(opt_.out_path, serialize_circuit(circuit_));
      j["out"] = opt_.out_path;
    }
    if (opt_.oracle) check_circuit();
    return j;
  }

  json stats_cmd() {
    if (opt_.oracle) check_circuit();
    json j = to_json(stats(circuit_));
    j["k"] = circuit_.k();
    return j;
  }

  json dot_cmd() {
    if (opt_.oracle) check_circuit();
    std::string dot = to_dot(circuit_);
    if (!opt_.out_path.empty()) {
      write_file(opt_.out_path, dot);
      return {{"out", opt_.out_path}};
    }
    return {{"dot", dot}};
  }

  json count_cmd() {
    BigCount n = count_models(circuit_);
    if (opt_.oracle && BigCount(oracle::brute_paths(*oracle_dag_).size()) != n) {
      mismatch("count");
    }
    return {{"count", to_string(n)}};
  }

  json pqe_cmd() {
    const Logits a = logits();
    const double p = pqe(circuit_, a);
    const double lp = log_pqe(circuit_, a);
    if (opt_.oracle) {
      auto dist = oracle::brute_distribution(*oracle_dag_, a);
      if (!close(p, dist.constraint_prob)) mismatch("pqe");
    }
    return {{"pqe", p}, {"log_pqe", std::isfinite(lp) ? json(lp) : json(nullptr)}};
  }

  json mpe_cmd() {
    const Logits a = logits();
    WeightedState best = mpe(circuit_, a);
    if (opt_.oracle) {
      auto ref = oracle::dag_best_path(*oracle_dag_, a);
      if (!close(ref.log_weight, best.log_weight) || ref.state != best.state) mismatch("mpe");
    }
    return to_json(best);
  }

  json states_json(const std::vector<WeightedState>& states) const {
    json arr = json::array();
    for (const auto& s : states) arr.push_back(to_json(s));
    return arr;
  }

  void check_ranked(const std::vector<WeightedState>& got, const Logits& a) const {
    auto ref = oracle::ranked_paths(*oracle_dag_, a);
    const std::size_t n = std::min(ref.size(), got.size());
    if (got.size() > ref.size()) mismatch("ranked enumeration returned extra states");
    for (std::size_t i = 0; i < n; ++i) {
      if (ref[i].state != got[i].state || !close(ref[i].log_weight, got[i].log_weight)) {
        mismatch("ranked position " + std::to_string(i));
      }
    }
  }

  json ranked_cmd(std::size_t limit) {
    const Logits a = logits();
    auto states = ranked_enumerate(circuit_, a, limit);
    if (opt_.oracle) check_ranked(states, a);
    return {{"limit", limit}, {"states", states_json(states)}};
  }

  json enumerate_cmd() {
    std::size_t limit = opt_.limit.value_or(0);
    if (!opt_.limit) {
      BigCount n = count_models(circuit_);
      if (n > kEnumerateGuard) {
        throw Error(ErrorCode::Range, "circuit has " + to_string(n) +
                                          " states; pass --limit to enumerate a prefix");
      }
      limit = std::max<std::size_t>(1, static_cast<std::size_t>(n));
    }
    return ranked_cmd(limit);
  }

  json thresh_cmd() {
    const Logits a = logits();
    auto states = opt_.conditional ? cond_thresh(circuit_, a, opt_.threshold)
                                   : thresh(circuit_, a, opt_.threshold);
    if (opt_.oracle) {
      auto dist = oracle::brute_distribution(*oracle_dag_, a);
      std::vector<State> expected;
      const double cutoff = opt_.threshold * (1.0 - kThresholdSlack);
      for (const auto& row : dist.rows) {
        const double p = opt_.conditional ? row.cond_prob : row.prob;
        if (row.satisfies && p >= cutoff) expected.push_back(row.state);
      }
      std::vector<State> got;
      for (const auto& s : states) got.push_back(s.state);
      std::sort(got.begin(), got.end());
      if (got != expected) mismatch("threshold set");
    }
    return {{"threshold", opt_.threshold},
            {"conditional", opt_.conditional},
            {"size_bound", static_cast<std::uint64_t>(std::floor(1.0 / opt_.threshold))},
            {"states", states_json(states)}};
  }

  json gen_grid_cmd() {
    Dag d = gen_grid(opt_.grid_m, opt_.grid_n);
    if (opt_.seed) d = shuffle_edges(d, *opt_.seed);
    const auto paths = oracle::binomial(opt_.grid_m + opt_.grid_n, opt_.grid_m);
    if (opt_.oracle && BigCount(oracle::brute_paths(d).size()) != paths) mismatch("grid count");
    json j{{"m", opt_.grid_m},
           {"n", opt_.grid_n},
           {"vertices", d.vertex_count()},
           {"edges", d.edge_count()},
           {"paths", paths.str()}};
    const std::string text = serialize_edge_list(d);
    if (!opt_.out_path.empty()) {
      write_file(opt_.out_path, text);
      j["out"] = opt_.out_path;
    } else {
      j["edge_list"] = text;
    }
    return j;
  }

  const Options& opt_;
  std::optional<Dag> dag_;
  std::optional<Dag> oracle_dag_;
  std::optional<Compilation> compilation_;
  Circuit circuit_;
};

void add_common(CLI::App* sub, Options& opt, bool needs_logits) {
  sub->add_option("graph", opt.graph_path, "Edge-list graph file");
  sub->add_option("--circuit", opt.circuit_path, "Compiled circuit file (skips compilation)");
  if (needs_logits) {
    sub->add_option("--logits", opt.logits_path, "Logits file (JSON or CSV); default all zeros");
  }
  sub->add_flag("--oracle", opt.oracle, "Cross-check against the brute-force oracle");
  sub->add_flag("--timing", opt.timing, "Report wall-clock time");
  sub->add_flag("--merge", opt.merge, "Merge all sources and sinks before compiling");
  sub->add_flag("--no-trim", opt.no_trim, "Keep the untrimmed table");
  sub->add_flag("--reduce", opt.reduce, "Apply full reduction after compiling");
  sub->add_flag("--serial", opt.serial, "Use the serial reference compiler");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Compile s-t simple-path constraints of DAGs and query them", "pathsdd"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "Compile a graph into a decision diagram");
  add_common(compile, opt, false);
  compile->add_option("--out", opt.out_path, "Write the circuit here");
  compile->add_flag("--stats", opt.stats, "Include circuit statistics");

  auto* count = app.add_subcommand("count", "Count s-t paths");
  add_common(count, opt, false);

  auto* pqe_cmd = app.add_subcommand("pqe", "Probability of the constraint");
  add_common(pqe_cmd, opt, true);

  auto* mpe_cmd = app.add_subcommand("mpe", "Most probable accepted state");
  add_common(mpe_cmd, opt, true);

  auto* topk = app.add_subcommand("topk", "The k most probable accepted states");
  add_common(topk, opt, true);
  topk->add_option("-k", opt.top_k, "Number of states")->check(CLI::Range(1ul, 1ul << 40));

  auto* thresh_cmd = app.add_subcommand("thresh", "Accepted states above a probability");
  add_common(thresh_cmd, opt, true);
  thresh_cmd->add_option("-t", opt.threshold, "Threshold in (0, 1]")->required();
  thresh_cmd->add_option("--conditional", opt.conditional, "Threshold P(y|a,κ) instead of P(y|a)")
      ->expected(0, 1)
      ->default_str("true");

  auto* enumerate = app.add_subcommand("enumerate", "Ranked enumeration of accepted states");
  add_common(enumerate, opt, true);
  enumerate->add_option("--limit", opt.limit, "Stop after this many states")
      ->check(CLI::Range(1ul, 1ul << 40));

  auto* stats_cmd = app.add_subcommand("stats", "Circuit statistics");
  add_common(stats_cmd, opt, false);

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of the circuit");
  add_common(dot, opt, false);
  dot->add_option("--out", opt.out_path, "Write the DOT file here");

  auto* grid = app.add_subcommand("gen-grid", "Emit a directed grid graph");
  grid->add_option("m", opt.grid_m, "Rows of cells")->required();
  grid->add_option("n", opt.grid_n, "Columns of cells")->required();
  grid->add_option("--out", opt.out_path, "Write the edge list here");
  grid->add_option("--seed", opt.seed, "Shuffle the edge order with this seed");
  grid->add_flag("--oracle", opt.oracle, "Cross-check the path count by enumeration");
  grid->add_flag("--timing", opt.timing, "Report wall-clock time");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int rc = app.exit(e, o, er);
    err << o.str() << er.str();
    return rc == 0 ? kOk : kUsageError;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    Session session(opt);
    json result = session.dispatch();
    if (opt.oracle) result["oracle"] = "agree";
    if (opt.timing) {
      result["timing_ms"] = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
    }
    out << result.dump(2) << '\n';
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    json j{{"code", std::string(to_string(e.code()))},
           {"message", e.what()},
           {"location", e.location().empty() ? json(nullptr) : json(e.location())}};
    out << j.dump(2) << '\n';
    return e.code() == ErrorCode::OracleMismatch ? kOracleMismatch : kDomainError;
  }
}

}  // namespace pathsdd::cli
