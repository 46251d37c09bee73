#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include <omp.h>

#include "level_schedule.hpp"
#include "pathsdd/error.hpp"
#include "pathsdd/queries.hpp"

namespace pathsdd {

namespace detail {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

bool MpeTable::satisfiable(NodeRef r) const { return score[r] != kNegInf; }

void write_completion(const Circuit& c, const MpeTable& t, const Logits& a, NodeRef n,
                      Level from_level, Bits& out) {
  Level L = from_level;
  for (;;) {
    const Level node_level = c.node(n).level;
    for (; L > node_level; --L) {
      const EdgeLabel x = c.var_at(L);
      set_bit(out, x, a.at_label(x) > 0);
    }
    if (Circuit::is_terminal(n)) {
      assert(n == kTrue);
      return;
    }
    const bool high = t.take_high[n] != 0;
    set_bit(out, c.var_at(L), high);
    n = high ? c.node(n).high : c.node(n).low;
    --L;
  }
}

State to_state(const Bits& b, std::size_t k) {
  std::vector<std::uint8_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = (b[i / 64] >> (i % 64)) & 1U;
  return State(std::move(v));
}

double canonical_weight(const Bits& b, const Logits& a) {
  double w = 0.0;
  for (std::size_t word = 0; word < b.size(); ++word) {
    for (std::uint64_t bits = b[word]; bits != 0; bits &= bits - 1) {
      w += a[word * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))];
    }
  }
  return w;
}

MpeTable solve_mpe(const Circuit& c, const Logits& a) {
  if (a.size() != c.k()) throw Error(ErrorCode::Range, "logits length does not match circuit k");
  const LevelSchedule sched(c);
  MpeTable t;
  t.score.assign(c.size(), kNegInf);
  t.take_high.assign(c.size(), 0);
  t.score[kTrue] = 0.0;
  const auto& nodes = c.nodes();
  const std::size_t words = (c.k() + 63) / 64;

#pragma omp parallel if (c.size() >= kParallelMinNodes)
  {
    Bits via_high(words), via_low(words);
    for (Level L = 1; L <= c.k(); ++L) {
      const EdgeLabel x = c.var_at(L);
      const double logit = a.at_label(x);
      // Scores are relative to the best free assignment of the node's own
      // variables, so the high branch pays min(a, 0) and the low one -max(a, 0).
      const double high_cost = std::min(logit, 0.0);
      const double low_cost = -std::max(logit, 0.0);
#pragma omp for schedule(static)
      for (std::size_t idx = sched.begin(L); idx < sched.end(L); ++idx) {
        const NodeRef r = sched.nodes[idx];
        const Node& n = nodes[r];
        const double hi = t.satisfiable(n.high) ? high_cost + t.score[n.high] : kNegInf;
        const double lo = t.satisfiable(n.low) ? low_cost + t.score[n.low] : kNegInf;
        if (hi > lo) {
          t.score[r] = hi;
          t.take_high[r] = 1;
        } else if (lo > hi || lo == kNegInf) {
          t.score[r] = lo;
          t.take_high[r] = 0;
        } else {
          std::fill(via_high.begin(), via_high.end(), 0);
          std::fill(via_low.begin(), via_low.end(), 0);
          set_bit(via_high, x, true);
          write_completion(c, t, a, n.high, L - 1, via_high);
          write_completion(c, t, a, n.low, L - 1, via_low);
          t.score[r] = lo;
          t.take_high[r] = key_less(via_high, via_low) ? 1 : 0;
        }
      }
    }
  }
  return t;
}

}  // namespace detail

namespace {

WeightedState make_weighted(const detail::Bits& bits, const Logits& a, std::size_t k,
                            double log_z, double log_constraint) {
  WeightedState ws;
  ws.state = detail::to_state(bits, k);
  ws.log_weight = detail::canonical_weight(bits, a);
  ws.prob = std::exp(ws.log_weight - log_z);
  ws.cond_prob = std::exp(ws.log_weight - log_z - log_constraint);
  return ws;
}

void check_threshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::Range, "threshold must lie in (0, 1], got " + std::to_string(t));
  }
}

}  // namespace

WeightedState mpe(const Circuit& c, const Logits& a) {
  const detail::MpeTable table = detail::solve_mpe(c, a);
  if (!table.satisfiable(c.root())) {
    throw Error(ErrorCode::UnsatCondition, "constraint is unsatisfiable; no MPE state");
  }
  detail::Bits bits((c.k() + 63) / 64, 0);
  detail::write_completion(c, table, a, c.root(), static_cast<Level>(c.k()), bits);
  return make_weighted(bits, a, c.k(), a.log_partition(), log_pqe(c, a));
}

struct RankedEnumerator::Impl {
  struct Entry {
    detail::Bits bits;
    double weight;
    NodeRef node;   // bits above `level` are fixed; below is node's best completion
    Level level;
  };

  // Max-heap order: higher weight first, then smaller big-endian key.
  static bool worse(const Entry& x, const Entry& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    return detail::key_less(y.bits, x.bits);
  }

  const Circuit& circuit;
  Logits logits;
  detail::MpeTable table;
  double log_z;
  double log_constraint;
  std::vector<Entry> heap;

  Impl(const Circuit& c, const Logits& a)
      : circuit(c),
        logits(a),
        table(detail::solve_mpe(c, a)),
        log_z(a.log_partition()),
        log_constraint(log_pqe(c, a)) {
    if (!table.satisfiable(c.root())) return;
    detail::Bits bits((c.k() + 63) / 64, 0);
    detail::write_completion(c, table, logits, c.root(), static_cast<Level>(c.k()), bits);
    push({std::move(bits), 0.0, c.root(), static_cast<Level>(c.k())});
  }

  void push(Entry e) {
    e.weight = detail::canonical_weight(e.bits, logits);
    heap.push_back(std::move(e));
    std::push_heap(heap.begin(), heap.end(), worse);
  }

  // Walk the best completion of `e` and push, at every position, the best
  // state that deviates there. Each accepted state is reached exactly once.
  void expand(const Entry& e) {
    NodeRef n = e.node;
    for (Level L = e.level; L > 0; --L) {
      const EdgeLabel x = circuit.var_at(L);
      if (L > circuit.node(n).level) {
        Entry alt{e.bits, 0.0, n, static_cast<Level>(L - 1)};
        detail::set_bit(alt.bits, x, !(logits.at_label(x) > 0));
        push(std::move(alt));
        continue;
      }
      const Node& nd = circuit.node(n);
      const bool high = table.take_high[n] != 0;
      const NodeRef other = high ? nd.low : nd.high;
      if (table.satisfiable(other)) {
        Entry alt{e.bits, 0.0, other, static_cast<Level>(L - 1)};
        detail::set_bit(alt.bits, x, !high);
        detail::write_completion(circuit, table, logits, other, L - 1, alt.bits);
        push(std::move(alt));
      }
      n = high ? nd.high : nd.low;
    }
  }

  std::optional<WeightedState> next() {
    if (heap.empty()) return std::nullopt;
    std::pop_heap(heap.begin(), heap.end(), worse);
    Entry top = std::move(heap.back());
    heap.pop_back();
    expand(top);
    return make_weighted(top.bits, logits, circuit.k(), log_z, log_constraint);
  }
};

RankedEnumerator::RankedEnumerator(const Circuit& c, const Logits& a)
    : impl_(std::make_unique<Impl>(c, a)) {}
RankedEnumerator::~RankedEnumerator() = default;
RankedEnumerator::RankedEnumerator(RankedEnumerator&&) noexcept = default;
RankedEnumerator& RankedEnumerator::operator=(RankedEnumerator&&) noexcept = default;

std::optional<double> RankedEnumerator::peek_log_weight() const {
  if (impl_->heap.empty()) return std::nullopt;
  return impl_->heap.front().weight;
}

std::optional<WeightedState> RankedEnumerator::next() { return impl_->next(); }

std::vector<WeightedState> ranked_enumerate(const Circuit& c, const Logits& a,
                                            std::size_t limit) {
  if (limit == 0) throw Error(ErrorCode::Range, "limit must be >= 1");
  RankedEnumerator it(c, a);
  std::vector<WeightedState> out;
  while (out.size() < limit) {
    auto ws = it.next();
    if (!ws) break;
    out.push_back(std::move(*ws));
  }
  return out;
}

std::vector<WeightedState> thresh(const Circuit& c, const Logits& a, double t) {
  check_threshold(t);
  RankedEnumerator it(c, a);
  const double cutoff = t * (1.0 - kThresholdSlack);
  const double log_z = a.log_partition();
  std::vector<WeightedState> out;
  while (auto w = it.peek_log_weight()) {
    if (std::exp(*w - log_z) < cutoff) break;
    out.push_back(*it.next());
  }
  return out;
}

std::vector<WeightedState> cond_thresh(const Circuit& c, const Logits& a, double t) {
  check_threshold(t);
  const double log_constraint = log_pqe(c, a);
  if (log_constraint == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::UnsatCondition, "constraint is unsatisfiable; conditioning undefined");
  }
  RankedEnumerator it(c, a);
  const double cutoff = t * (1.0 - kThresholdSlack);
  const double log_z = a.log_partition();
  std::vector<WeightedState> out;
  while (auto w = it.peek_log_weight()) {
    if (std::exp(*w - log_z - log_constraint) < cutoff) break;
    out.push_back(*it.next());
  }
  return out;
}

}  // namespace pathsdd
