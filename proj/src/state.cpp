#include "pathsdd/state.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "pathsdd/error.hpp"

namespace pathsdd {

State::State(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

State State::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::Parse, "state must be a 0/1 string, got '" + std::string(bits) + "'");
    }
    out.push_back(c == '1');
  }
  return State(std::move(out));
}

std::size_t State::popcount() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::string State::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

Logits::Logits(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::Range, "logit " + std::to_string(i + 1) + " is not finite");
    }
  }
}

double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Logits::log_partition() const {
  double z = 0.0;
  for (double v : values_) z += softplus(v);
  return z;
}

double log_weight(const Logits& a, const State& y) {
  if (a.size() != y.size()) {
    throw Error(ErrorCode::Range, "state has " + std::to_string(y.size()) +
                                      " variables but logits have " + std::to_string(a.size()));
  }
  double w = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) w += a[i];
  }
  return w;
}

Logits read_logits(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto first = text.find_first_not_of(" \t\r\n");
  std::vector<double> values;

  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, std::string("logits JSON: ") + e.what());
    }
    if (!doc.contains("logits") || !doc["logits"].is_array()) {
      throw Error(ErrorCode::Parse, "logits JSON must be an object with a \"logits\" array");
    }
    for (const auto& v : doc["logits"]) {
      if (!v.is_number()) throw Error(ErrorCode::Parse, "logits array must hold numbers");
      values.push_back(v.get<double>());
    }
    return Logits(std::move(values));
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r,");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r,");
    std::string token = line.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw Error(ErrorCode::Parse, "bad logit '" + token + "'", "line " + std::to_string(lineno));
    }
    values.push_back(v);
  }
  return Logits(std::move(values));
}

Logits read_logits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open logits file '" + path + "'", path);
  return read_logits(in);
}

}  // namespace pathsdd
