#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

/// A variable x_{row,col} of the grid ring, or x_{row} of a plain ring when
/// col == 0. The defaulted ordering is row-major index order.
struct Variable {
  int row = 0;
  int col = 0;

  bool is_plain() const { return col == 0; }
  std::string to_string() const {
    return is_plain() ? "x[" + std::to_string(row) + "]"
                      : "x[" + std::to_string(row) + "," + std::to_string(col) + "]";
  }
  friend constexpr auto operator<=>(const Variable&, const Variable&) = default;
};

inline Variable grid_var(int row, int col) { return Variable{row, col}; }
inline Variable plain_var(int index) { return Variable{index, 0}; }

/// Monomial with sparse exponent storage: (variable, exponent > 0) pairs
/// sorted by variable. The defaulted comparison is structural and only meant
/// for containers; term orders live in term_order.hpp.
class Monomial {
 public:
  using Term = std::pair<Variable, std::uint32_t>;

  Monomial() = default;

  explicit Monomial(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

  static Monomial of(Variable v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

  /// Squarefree product of grid variables, e.g. grid({{1,1},{2,2}}) = x11*x22.
  static Monomial grid(std::initializer_list<std::pair<int, int>> cells) {
    std::vector<Term> t;
    for (auto [r, c] : cells) t.push_back({Variable{r, c}, 1});
    return Monomial(std::move(t));
  }

  /// Plain-ring monomial from an exponent list, x_1^{e_1} ... x_k^{e_k}.
  static Monomial plain(std::initializer_list<std::uint32_t> exps) {
    std::vector<Term> t;
    int i = 1;
    for (auto e : exps) t.push_back({Variable{i++, 0}, e});
    return Monomial(std::move(t));
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_one() const { return terms_.empty(); }

  std::uint32_t exponent(Variable v) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v,
                               [](const Term& t, Variable x) { return t.first < x; });
    return (it != terms_.end() && it->first == v) ? it->second : 0;
  }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d += t.second;
    return d;
  }

  bool is_squarefree() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 1; });
  }

  std::vector<Variable> support() const {
    std::vector<Variable> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) s.push_back(t.first);
    return s;
  }

  bool divides(const Monomial& other) const {
    std::size_t j = 0;
    for (const auto& [v, e] : terms_) {
      while (j < other.terms_.size() && other.terms_[j].first < v) ++j;
      if (j == other.terms_.size() || other.terms_[j].first != v || other.terms_[j].second < e) {
        return false;
      }
    }
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    return combine(o, [](std::uint32_t a, std::uint32_t b) { return a + b; });
  }

  /// Exact quotient this / d, or nullopt when d does not divide this.
  std::optional<Monomial> divide(const Monomial& d) const {
    if (!d.divides(*this)) return std::nullopt;
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : terms_) {
      std::uint32_t sub = 0;
      if (j < d.terms_.size() && d.terms_[j].first == v) sub = d.terms_[j++].second;
      if (e > sub) r.terms_.push_back({v, e - sub});
    }
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    return a.combine(b, [](std::uint32_t x, std::uint32_t y) { return std::max(x, y); });
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    return a.combine(b, [](std::uint32_t x, std::uint32_t y) { return std::min(x, y); });
  }

  /// Text form `x[1,1]^2*x[2,3]`, `x[2]^3`, or `1` for the unit.
  std::string to_string() const {
    if (terms_.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : terms_) {
      if (!s.empty()) s += '*';
      s += v.to_string();
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  static Monomial parse(std::string_view text);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.terms_ <=> b.terms_; }

 private:
  template <class Op>
  Monomial combine(const Monomial& o, Op op) const {
    Monomial r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        if (auto e = op(terms_[i].second, 0u)) r.terms_.push_back({terms_[i].first, e});
        ++i;
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        if (auto e = op(0u, o.terms_[j].second)) r.terms_.push_back({o.terms_[j].first, e});
        ++j;
      } else {
        if (auto e = op(terms_[i].second, o.terms_[j].second)) {
          r.terms_.push_back({terms_[i].first, e});
        }
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
      if (t.first.row < 1 || t.first.col < 0) {
        throw Error(ErrorCode::InvalidArgument, "variable indices must be positive");
      }
      if (!merged.empty() && merged.back().first == t.first) {
        merged.back().second += t.second;
      } else {
        merged.push_back(t);
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

namespace detail {

class TextCursor {
 public:
  explicit TextCursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ == s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint32_t number() {
    skip_ws();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                why + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Monomial Monomial::parse(std::string_view text) {
  detail::TextCursor cur(text);
  if (cur.done()) cur.fail("empty monomial");
  if (cur.accept('1')) {
    if (!cur.done()) cur.fail("trailing input after unit");
    return Monomial();
  }
  std::vector<Term> terms;
  do {
    cur.expect('x');
    cur.expect('[');
    const int row = static_cast<int>(cur.number());
    int col = 0;
    if (cur.accept(',')) {
      col = static_cast<int>(cur.number());
      if (col == 0) cur.fail("column index must be positive");
    }
    cur.expect(']');
    if (row == 0) cur.fail("row index must be positive");
    std::uint32_t e = 1;
    if (cur.accept('^')) e = cur.number();
    terms.push_back({Variable{row, col}, e});
  } while (cur.accept('*'));
  if (!cur.done()) cur.fail("unexpected trailing input");
  return Monomial(std::move(terms));
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [v, e] : m.terms()) {
      h ^= std::hash<std::uint64_t>{}((std::uint64_t(v.row) << 40) ^ (std::uint64_t(v.col) << 20) ^ e) +
           0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace rainbow
