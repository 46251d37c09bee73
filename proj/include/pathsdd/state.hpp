#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathsdd {

/// Boolean assignment over edge variables, indexed by original edge label
/// (label 1 is element 0). Comparison is lexicographic in label order, which
/// is the big-endian binary order with y_1 most significant.
class State {
 public:
  State() = default;
  explicit State(std::size_t k) : bits_(k, 0) {}
  explicit State(std::vector<std::uint8_t> bits);

  /// Parses a 0/1 string such as "1010".
  static State from_string(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t label_index) const { return bits_[label_index] != 0; }
  void set(std::size_t label_index, bool value) { bits_[label_index] = value ? 1 : 0; }
  bool get_label(std::uint32_t label) const { return bits_.at(label - 1) != 0; }

  std::size_t popcount() const;
  std::string to_string() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  friend auto operator<=>(const State&, const State&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Real-valued log-odds, one per original edge label.
class Logits {
 public:
  Logits() = default;
  /// Throws Error(Range) on a non-finite entry.
  explicit Logits(std::vector<double> values);

  static Logits zeros(std::size_t k) { return Logits(std::vector<double>(k, 0.0)); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t label_index) const { return values_[label_index]; }
  double at_label(std::uint32_t label) const { return values_.at(label - 1); }
  std::span<const double> values() const { return values_; }

  /// log Z = sum_i log(1 + e^{a_i}).
  double log_partition() const;

 private:
  std::vector<double> values_;
};

/// Sum of a_i * y_i, accumulated in ascending label order. Every reported
/// weight goes through this function so equal states get bitwise-equal
/// weights.
double log_weight(const Logits& a, const State& y);

/// log(1 + e^x) without overflow.
double softplus(double x);

/// Reads `{"logits": [...]}` JSON or one decimal per line (CSV). Throws
/// Error(Parse) on malformed input.
Logits read_logits(std::istream& in);
Logits read_logits_file(const std::string& path);

}  // namespace pathsdd
