#include "pathsdd/queries.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "level_schedule.hpp"
#include "pathsdd/error.hpp"

namespace pathsdd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_lengths(const Circuit& c, const Logits& a) {
  if (a.size() != c.k()) {
    throw Error(ErrorCode::Range, "logits have " + std::to_string(a.size()) +
                                      " entries, circuit has k = " + std::to_string(c.k()));
  }
}

/// Non-negative number with an unbounded binary exponent: value = m * 2^e,
/// m in [0.5, 1) or zero. Products and sums of dyadic rationals stay exact
/// while the mantissa fits, and nothing underflows.
struct Scaled {
  double m = 0.0;
  long e = 0;

  static Scaled of(double x) {
    Scaled s;
    int ex = 0;
    s.m = std::frexp(x, &ex);
    s.e = ex;
    return s;
  }
  bool zero() const { return m == 0.0; }

  Scaled times(double p) const {
    if (zero() || p == 0.0) return {};
    int ex = 0;
    Scaled out;
    out.m = std::frexp(m * p, &ex);
    out.e = e + ex;
    return out;
  }

  friend Scaled operator+(const Scaled& x, const Scaled& y) {
    if (x.zero()) return y;
    if (y.zero()) return x;
    const Scaled& big = x.e >= y.e ? x : y;
    const Scaled& small = x.e >= y.e ? y : x;
    const long shift = small.e - big.e;
    double sum = big.m + (shift < -1100 ? 0.0 : std::ldexp(small.m, static_cast<int>(shift)));
    int ex = 0;
    Scaled out;
    out.m = std::frexp(sum, &ex);
    out.e = big.e + ex;
    return out;
  }

  double log() const {
    return zero() ? kNegInf : std::log(m) + static_cast<double>(e) * std::log(2.0);
  }
  double value() const { return zero() ? 0.0 : std::ldexp(m, static_cast<int>(std::max(e, -2000L))); }
};

/// P(y_var = 1) and P(y_var = 0) without cancellation.
std::pair<double, double> bernoulli(double logit) {
  return {std::exp(-softplus(-logit)), std::exp(-softplus(logit))};
}

}  // namespace

WeightedState state_prob(const Logits& a, const State& y) {
  WeightedState ws;
  ws.state = y;
  ws.log_weight = log_weight(a, y);
  ws.prob = std::exp(ws.log_weight - a.log_partition());
  return ws;
}

WeightedState state_prob(const Circuit& c, const Logits& a, const State& y) {
  check_lengths(c, a);
  WeightedState ws = state_prob(a, y);
  ws.cond_prob = cond_state_prob(c, a, y);
  return ws;
}

BigCount count_models(const Circuit& c) {
  const detail::LevelSchedule sched(c);
  std::vector<BigCount> count(c.size());
  count[kTrue] = 1;
  const auto& nodes = c.nodes();

#pragma omp parallel if (c.size() >= detail::kParallelMinNodes)
  for (Level L = 1; L <= c.k(); ++L) {
#pragma omp for schedule(static)
    for (std::size_t idx = sched.begin(L); idx < sched.end(L); ++idx) {
      const NodeRef r = sched.nodes[idx];
      const Node& n = nodes[r];
      BigCount sum = 0;
      if (n.high != kFalse) sum += count[n.high] << (n.level - nodes[n.high].level - 1);
      if (n.low != kFalse) sum += count[n.low] << (n.level - nodes[n.low].level - 1);
      count[r] = std::move(sum);
    }
  }
  if (c.root() == kFalse) return 0;
  return count[c.root()] << (c.k() - nodes[c.root()].level);
}

// Each node holds the probability that its sub-diagram accepts, with the
// variables below it drawn from P(.|a). Free variables integrate to 1, so
// level gaps need no correction.
namespace {

Scaled constraint_prob(const Circuit& c, const Logits& a) {
  check_lengths(c, a);
  const detail::LevelSchedule sched(c);
  std::vector<std::pair<double, double>> branch(c.k());
  for (Level L = 1; L <= c.k(); ++L) branch[L - 1] = bernoulli(a.at_label(c.var_at(L)));

  std::vector<Scaled> prob(c.size());
  prob[kTrue] = Scaled::of(1.0);
  const auto& nodes = c.nodes();

#pragma omp parallel if (c.size() >= detail::kParallelMinNodes)
  for (Level L = 1; L <= c.k(); ++L) {
    const auto [p_high, p_low] = branch[L - 1];
#pragma omp for schedule(static)
    for (std::size_t idx = sched.begin(L); idx < sched.end(L); ++idx) {
      const NodeRef r = sched.nodes[idx];
      const Node& n = nodes[r];
      prob[r] = prob[n.high].times(p_high) + prob[n.low].times(p_low);
    }
  }
  return prob[c.root()];
}

}  // namespace

double log_pqe(const Circuit& c, const Logits& a) { return constraint_prob(c, a).log(); }

double pqe(const Circuit& c, const Logits& a) { return constraint_prob(c, a).value(); }

double cond_state_prob(const Circuit& c, const Logits& a, const State& y) {
  const double log_constraint = log_pqe(c, a);
  if (log_constraint == kNegInf) {
    throw Error(ErrorCode::UnsatCondition, "constraint is unsatisfiable; conditioning undefined");
  }
  if (!evaluate(c, y)) return 0.0;
  return std::exp(log_weight(a, y) - a.log_partition() - log_constraint);
}

}  // namespace pathsdd
