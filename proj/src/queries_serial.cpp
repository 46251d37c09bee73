#include <algorithm>
#include <cmath>
#include <limits>

#include "pathsdd/error.hpp"
#include "pathsdd/queries.hpp"

namespace pathsdd::serial {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// prefix[L] = sum of f(a_var) over levels 1..L
template <typename F>
std::vector<double> level_prefix(const Circuit& c, const Logits& a, F f) {
  std::vector<double> prefix(c.k() + 1, 0.0);
  for (Level L = 1; L <= c.k(); ++L) prefix[L] = prefix[L - 1] + f(a.at_label(c.var_at(L)));
  return prefix;
}

void check_lengths(const Circuit& c, const Logits& a) {
  if (a.size() != c.k()) throw Error(ErrorCode::Range, "logits length does not match circuit k");
}

}  // namespace

BigCount count_models(const Circuit& c) {
  std::vector<BigCount> count(c.size());
  count[kTrue] = 1;
  for (NodeRef r = 2; r < c.size(); ++r) {
    const Node& n = c.node(r);
    const BigCount high = count[n.high] * (BigCount(1) << (n.level - c.node(n.high).level - 1));
    const BigCount low = count[n.low] * (BigCount(1) << (n.level - c.node(n.low).level - 1));
    count[r] = high + low;
  }
  return count[c.root()] * (BigCount(1) << (c.k() - c.node(c.root()).level));
}

// Unnormalized weighted count in log space; skipped levels contribute
// log(1 + e^{a_j}) each, and log Z is subtracted at the end.
double log_pqe(const Circuit& c, const Logits& a) {
  check_lengths(c, a);
  const auto free = level_prefix(c, a, softplus);
  std::vector<double> value(c.size(), kNegInf);
  value[kTrue] = 0.0;
  for (NodeRef r = 2; r < c.size(); ++r) {
    const Node& n = c.node(r);
    const double logit = a.at_label(c.var_at(n.level));
    const double gap_high = free[n.level - 1] - free[c.node(n.high).level];
    const double gap_low = free[n.level - 1] - free[c.node(n.low).level];
    value[r] = log_add(logit + value[n.high] + gap_high, value[n.low] + gap_low);
  }
  const Level top = c.node(c.root()).level;
  return value[c.root()] + (free[c.k()] - free[top]) - free[c.k()];
}

double mpe_log_weight(const Circuit& c, const Logits& a) {
  check_lengths(c, a);
  const auto free = level_prefix(c, a, [](double x) { return std::max(0.0, x); });
  std::vector<double> value(c.size(), kNegInf);
  value[kTrue] = 0.0;
  for (NodeRef r = 2; r < c.size(); ++r) {
    const Node& n = c.node(r);
    const double logit = a.at_label(c.var_at(n.level));
    const double gap_high = free[n.level - 1] - free[c.node(n.high).level];
    const double gap_low = free[n.level - 1] - free[c.node(n.low).level];
    value[r] = std::max(logit + value[n.high] + gap_high, value[n.low] + gap_low);
  }
  const Level top = c.node(c.root()).level;
  return value[c.root()] + (free[c.k()] - free[top]);
}

}  // namespace pathsdd::serial
