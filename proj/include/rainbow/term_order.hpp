#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainbow/error.hpp"
#include "rainbow/monomial.hpp"

namespace rainbow {

/// Weight order on the n×m grid refined by row-major lex
/// (x11 > x12 > ... > x1m > x21 > ...). Variables outside the grid, and
/// plain-ring variables, carry weight zero.
class TermOrder {
 public:
  TermOrder() = default;

  explicit TermOrder(std::vector<std::vector<std::int64_t>> weights) : weights_(std::move(weights)) {
    if (weights_.empty() || weights_.front().empty()) {
      throw Error(ErrorCode::InvalidArgument, "weight matrix must be non-empty");
    }
    for (const auto& row : weights_) {
      if (row.size() != weights_.front().size()) {
        throw Error(ErrorCode::InvalidArgument, "weight matrix rows differ in length");
      }
      for (auto w : row) {
        if (w < 0) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
      }
    }
  }

  /// The diagonal order: zero weights, pure row-major lex.
  static TermOrder diagonal(int n, int m) {
    if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
    return TermOrder(std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(m, 0)));
  }

  /// Integer weights drawn uniformly from [0, 10^4].
  template <class Rng>
  static TermOrder random(int n, int m, Rng& rng) {
    std::uniform_int_distribution<std::int64_t> dist(0, 10'000);
    std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(m));
    for (auto& row : w) {
      for (auto& x : row) x = dist(rng);
    }
    return TermOrder(std::move(w));
  }

  int rows() const { return static_cast<int>(weights_.size()); }
  int cols() const { return weights_.empty() ? 0 : static_cast<int>(weights_.front().size()); }
  const std::vector<std::vector<std::int64_t>>& weights() const { return weights_; }
  std::string tiebreak() const { return "row-major"; }

  std::int64_t weight(Variable v) const {
    if (v.is_plain() || v.row > rows() || v.col > cols()) return 0;
    return weights_[v.row - 1][v.col - 1];
  }

  std::int64_t weight(const Monomial& mono) const {
    std::int64_t w = 0;
    for (const auto& [v, e] : mono.terms()) w += weight(v) * static_cast<std::int64_t>(e);
    return w;
  }

  /// Weight first, then lex: the first variable (row-major) whose exponents
  /// differ decides, larger exponent wins.
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (auto c = weight(a) <=> weight(b); c != 0) return c;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0, j = 0;
    while (i < ta.size() && j < tb.size()) {
      if (ta[i].first == tb[j].first) {
        if (ta[i].second != tb[j].second) return ta[i].second <=> tb[j].second;
        ++i;
        ++j;
      } else if (ta[i].first < tb[j].first) {
        return std::strong_ordering::greater;
      } else {
        return std::strong_ordering::less;
      }
    }
    if (i < ta.size()) return std::strong_ordering::greater;
    if (j < tb.size()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  nlohmann::json to_json() const {
    return nlohmann::json{{"weights", weights_}, {"tiebreak", tiebreak()}};
  }

  static TermOrder from_json(const nlohmann::json& j) {
    try {
      if (j.contains("tiebreak") && j.at("tiebreak").get<std::string>() != "row-major") {
        throw Error(ErrorCode::ParseError, "only the row-major tiebreak is supported");
      }
      return TermOrder(j.at("weights").get<std::vector<std::vector<std::int64_t>>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("term order JSON: ") + e.what());
    }
  }

  friend bool operator==(const TermOrder&, const TermOrder&) = default;

 private:
  std::vector<std::vector<std::int64_t>> weights_;
};

inline std::strong_ordering compare(const TermOrder& order, const Monomial& a, const Monomial& b) {
  return order.compare(a, b);
}

}  // namespace rainbow
