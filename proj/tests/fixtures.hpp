#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pathsdd/circuit.hpp"
#include "pathsdd/graph.hpp"
#include "pathsdd/oracle.hpp"
#include "pathsdd/state.hpp"

namespace fixtures {

inline constexpr const char* kSingleEdge = "s S\nt T\ne S T\n";
inline constexpr const char* kDiamond = "s S\nt T\ne S A\ne S B\ne A T\ne B T\n";
inline constexpr const char* kDiamondShuffled = "s S\nt T\ne A T\ne S A\ne B T\ne S B\n";

inline pathsdd::Dag single_edge() { return pathsdd::parse_edge_list(kSingleEdge); }
inline pathsdd::Dag diamond() { return pathsdd::parse_edge_list(kDiamond); }

inline pathsdd::State state_of(std::size_t k, std::uint64_t mask) {
  pathsdd::State y(k);
  for (std::size_t i = 0; i < k; ++i) y.set(i, (mask >> i) & 1U);
  return y;
}

inline pathsdd::Logits random_logits(std::size_t k, std::uint64_t seed, double spread = 3.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> v(k);
  for (auto& x : v) x = u(rng);
  return pathsdd::Logits(std::move(v));
}

// Number of states on which the circuit and the path oracle disagree.
inline std::size_t disagreements(const pathsdd::Circuit& c, const pathsdd::Dag& d) {
  const auto paths = pathsdd::oracle::brute_paths(d);
  std::size_t bad = 0;
  const std::size_t k = d.edge_count();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    const auto y = state_of(k, m);
    if (pathsdd::evaluate(c, y) != paths.contains(y)) ++bad;
  }
  return bad;
}

}  // namespace fixtures
