#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathsdd/circuit.hpp"
#include "pathsdd/state.hpp"

namespace pathsdd {

using BigCount = boost::multiprecision::cpp_int;

struct WeightedState {
  State state;
  double log_weight = 0.0;  // sum of a_i * y_i
  double prob = 0.0;        // P(y | a)
  std::optional<double> cond_prob;  // P(y | a, κ), set when a circuit is known
};

/// Unconditioned weight and probability of y. Throws Error(Range) on a
/// length mismatch.
WeightedState state_prob(const Logits& a, const State& y);
/// Same, with cond_prob filled from the circuit (0 when y is rejected).
/// Throws Error(UnsatCondition) if the circuit accepts nothing.
WeightedState state_prob(const Circuit& c, const Logits& a, const State& y);

/// Number of accepted states. Level-parallel over the arena.
BigCount count_models(const Circuit& c);

/// log P(κ | a); -inf for an unsatisfiable circuit.
double log_pqe(const Circuit& c, const Logits& a);
/// P(κ | a).
double pqe(const Circuit& c, const Logits& a);

/// P(y | a) · 1_κ(y) / P(κ | a). Throws Error(UnsatCondition) when P(κ|a) = 0.
double cond_state_prob(const Circuit& c, const Logits& a, const State& y);

/// Most probable accepted state; among equal weights the smallest state in
/// big-endian order (y_1 most significant) wins. Throws
/// Error(UnsatCondition) for an unsatisfiable circuit.
WeightedState mpe(const Circuit& c, const Logits& a);

/// Best-first enumeration of accepted states in non-increasing weight, ties
/// by ascending big-endian order. Each call to next() costs O(k) heap pushes
/// of O(k) work.
class RankedEnumerator {
 public:
  RankedEnumerator(const Circuit& c, const Logits& a);
  ~RankedEnumerator();
  RankedEnumerator(RankedEnumerator&&) noexcept;
  RankedEnumerator& operator=(RankedEnumerator&&) noexcept;

  /// Weight of the state the next call to next() would return.
  std::optional<double> peek_log_weight() const;
  std::optional<WeightedState> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// First `limit` states of the ranked enumeration (fewer on exhaustion).
/// Throws Error(Range) when limit is 0.
std::vector<WeightedState> ranked_enumerate(const Circuit& c, const Logits& a,
                                            std::size_t limit);

/// Relative slack applied to threshold comparisons so that states sitting
/// exactly on the threshold are not lost to rounding.
inline constexpr double kThresholdSlack = 1e-12;

/// Accepted states with P(y | a) >= t, in ranked order. Throws Error(Range)
/// unless 0 < t <= 1.
std::vector<WeightedState> thresh(const Circuit& c, const Logits& a, double t);

/// Accepted states with P(y | a, κ) >= t; the cutoff is t · P(κ | a).
/// Throws Error(UnsatCondition) for an unsatisfiable circuit.
std::vector<WeightedState> cond_thresh(const Circuit& c, const Logits& a, double t);

namespace serial {
// Plain loops over the arena in index order. Kept as references for the
// level-parallel kernels above.
BigCount count_models(const Circuit& c);
double log_pqe(const Circuit& c, const Logits& a);
double mpe_log_weight(const Circuit& c, const Logits& a);
}  // namespace serial

}  // namespace pathsdd
