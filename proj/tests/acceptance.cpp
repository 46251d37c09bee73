// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pathsdd/compiler.hpp"
#include "pathsdd/generators.hpp"
#include "pathsdd/oracle.hpp"
#include "pathsdd/queries.hpp"

using namespace pathsdd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({std::abs(x), std::abs(y), 1e-300});
}

// Each check returns an empty string on success, else the first failure.
using Check = std::function<std::string()>;

std::string oracle_equivalence() {
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dag d = random_dag(seed);
    if (d.edge_count() < 4 || d.edge_count() > 16) return "generator produced k out of range";
    if (auto bad = fixtures::disagreements(compile(d), d)) {
      return "seed " + std::to_string(seed) + ": " + std::to_string(bad) + " states differ";
    }
  }
  const double s = seconds_since(t0);
  if (s >= 60) return "took " + std::to_string(s) + " s";
  return {};
}

std::string grid_counts() {
  for (unsigned m = 1; m <= 8; ++m) {
    for (unsigned n = 1; n <= 8; ++n) {
      if (count_models(compile(gen_grid(m, n))) != oracle::binomial(m + n, m)) {
        return "grid " + std::to_string(m) + "x" + std::to_string(n);
      }
    }
  }
  const Dag g = gen_grid(11, 11);
  const auto t0 = Clock::now();
  const BigCount n = count_models(compile(g));
  const double s = seconds_since(t0);
  if (n != oracle::binomial(22, 11) || n != 705432) return "grid 11x11 count " + n.str();
  if (s >= 1) return "grid 11x11 took " + std::to_string(s) + " s";
  return {};
}

std::string size_bound() {
  std::vector<Dag> graphs;
  for (std::uint64_t seed = 0; seed < 100; ++seed) graphs.push_back(random_dag(seed));
  for (unsigned m = 1; m <= 8; ++m) graphs.push_back(gen_grid(m, 9 - m));
  graphs.push_back(fixtures::diamond());
  graphs.push_back(fixtures::single_edge());
  for (const auto& d : graphs) {
    auto comp = compile_detailed(d);
    if (comp.untrimmed_decisions > d.vertex_count() * d.edge_count()) {
      return "untrimmed " + std::to_string(comp.untrimmed_decisions) + " > |V|k";
    }
  }
  auto grid = compile_detailed(gen_grid(4, 4));
  if (stats(grid.circuit).decision_count >= grid.untrimmed_decisions) {
    return "grid 4x4 trimmed not smaller";
  }
  return {};
}

std::string structure() {
  auto check = [](const Circuit& c) {
    auto rep = validate_structure(c, StructureMode::QuasiReduced);
    return rep.ok() ? std::string() : rep.violations.front();
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Dag d = random_dag(seed);
    for (const Dag& g : {d, shuffle_edges(d, seed + 1)}) {
      if (auto v = check(compile(g)); !v.empty()) return "seed " + std::to_string(seed) + ": " + v;
    }
  }
  for (unsigned m = 1; m <= 8; ++m) {
    if (auto v = check(compile(shuffle_edges(gen_grid(m, 5), m))); !v.empty()) return v;
  }
  return {};
}

std::string pqe_exactness() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Dag d = random_dag(2000 + seed);
    auto a = fixtures::random_logits(d.edge_count(), seed);
    Circuit c = compile(d);
    const double want = oracle::brute_distribution(d, a).constraint_prob;
    if (!rel_close(pqe(c, a), want, 1e-9)) return "seed " + std::to_string(seed);
    // pqe(0) * 2^k is an integer double when the ratio is exact.
    const double scaled = std::ldexp(pqe(c, Logits::zeros(d.edge_count())), int(d.edge_count()));
    if (std::floor(scaled) != scaled || BigCount(static_cast<std::uint64_t>(scaled)) != count_models(c)) {
      return "uniform ratio, seed " + std::to_string(seed);
    }
  }
  return {};
}

std::string mpe_exactness() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Dag d = random_dag(3000 + seed);
    auto a = seed % 5 == 0 ? Logits::zeros(d.edge_count())
                           : fixtures::random_logits(d.edge_count(), seed);
    auto got = mpe(compile(d), a);
    auto want = oracle::dag_best_path(d, a);
    if (std::abs(got.log_weight - want.log_weight) > 1e-9 || got.state != want.state) {
      return "seed " + std::to_string(seed) + ": " + got.state.to_string() + " vs " +
             want.state.to_string();
    }
  }
  return {};
}

std::string thresholds() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Dag d = random_dag(4000 + seed);
    auto a = fixtures::random_logits(d.edge_count(), seed, 2.0 + seed % 3);
    Circuit c = compile(d);
    auto dist = oracle::brute_distribution(d, a);
    for (double t : {0.5, 0.1, 0.01}) {
      for (bool conditional : {false, true}) {
        auto got = conditional ? cond_thresh(c, a, t) : thresh(c, a, t);
        if (got.size() > static_cast<std::size_t>(std::floor(1 / t))) return "size bound";
        std::vector<State> have, want;
        for (const auto& w : got) have.push_back(w.state);
        std::sort(have.begin(), have.end());
        for (const auto& row : dist.rows) {
          const double p = conditional ? row.cond_prob : row.prob;
          if (row.satisfies && p >= t * (1 - kThresholdSlack)) want.push_back(row.state);
        }
        if (have != want) {
          std::ostringstream o;
          o << "seed " << seed << " t " << t << (conditional ? " conditional" : "");
          return o.str();
        }
      }
    }
  }
  return {};
}

std::string ranked() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Dag d = random_dag(5000 + seed);
    auto a = seed % 5 == 0 ? Logits::zeros(d.edge_count())
                           : fixtures::random_logits(d.edge_count(), seed);
    auto want = oracle::ranked_paths(d, a);
    const std::size_t n = std::min<std::size_t>(8, want.size());
    auto got = ranked_enumerate(compile(d), a, 8);
    if (got.size() != n) return "seed " + std::to_string(seed) + ": wrong length";
    for (std::size_t i = 0; i < n; ++i) {
      if (got[i].state != want[i].state || std::abs(got[i].log_weight - want[i].log_weight) > 1e-9) {
        return "seed " + std::to_string(seed) + " rank " + std::to_string(i);
      }
    }
  }
  return {};
}

std::string renaming() {
  std::size_t done = 0;
  for (std::uint64_t seed = 0; done < 25; ++seed) {
    if (seed > 1000) return "could not draw 25 non-topological orders";
    Dag shuffled = shuffle_edges(random_dag(6000 + seed), seed);
    if (is_topological(shuffled, EdgeOrdering::identity(shuffled.edge_count()))) continue;
    ++done;
    const auto ord = topological_edge_order(shuffled);
    Dag sorted(shuffled.name(shuffled.source()), shuffled.name(shuffled.target()));
    for (Position i = 1; i <= ord.size(); ++i) {
      const Edge& e = shuffled.edge(ord.label_at(i));
      sorted.add_edge(shuffled.name(e.tail), shuffled.name(e.head));
    }
    Circuit renamed = compile(shuffled);
    Circuit reference = compile(sorted);
    const auto paths = oracle::brute_paths(shuffled);
    const std::size_t k = shuffled.edge_count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
      const State y = fixtures::state_of(k, m);
      State y_sorted(k);
      for (Position i = 1; i <= k; ++i) y_sorted.set(i - 1, y.get_label(ord.label_at(i)));
      const bool r = evaluate(renamed, y);
      if (r != evaluate(reference, y_sorted) || r != paths.contains(y)) {
        return "seed " + std::to_string(seed) + " state " + y.to_string();
      }
    }
  }
  return {};
}

std::string scale() {
  const Dag g = gen_grid(20, 20);
  if (g.edge_count() != 840) return "grid has " + std::to_string(g.edge_count()) + " edges";
  const auto t0 = Clock::now();
  Circuit c = compile(g);
  const double s = seconds_since(t0);
  const BigCount n = count_models(c);
  if (n != oracle::binomial(40, 20)) return "count " + n.str();
  if (s >= 10) return "compile took " + std::to_string(s) + " s";
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria{
      {"1 oracle equivalence on 100 random DAGs", oracle_equivalence},
      {"2 grid counts equal C(m+n,m); 11x11 under 1 s", grid_counts},
      {"3 untrimmed size <= |V|k; trimming shrinks 4x4 grid", size_bound},
      {"4 quasi-reduced structure after renaming", structure},
      {"5 pqe within 1e-9; uniform pqe = count/2^k", pqe_exactness},
      {"6 mpe weight and tie-broken state", mpe_exactness},
      {"7 thresh/cond_thresh sets and 1/t bound", thresholds},
      {"8 ranked enumeration prefix of 8", ranked},
      {"9 shuffled file order equals sorted order", renaming},
      {"10 20x20 grid compile under 10 s, exact count", scale},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    std::string why;
    try {
      why = check();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double s = seconds_since(t0);
    if (why.empty()) {
      std::printf("PASS  %-52s (%.3f s)\n", name, s);
    } else {
      ++failed;
      std::printf("FAIL  %-52s (%.3f s) %s\n", name, s, why.c_str());
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
