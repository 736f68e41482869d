#pragma once

// Bitmask encoding of squarefree monomials over a fixed variable set, used by
// the combinatorial hot loops (transversals, lcm lattices, Koszul strands).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/monomial.hpp"

namespace rainbow {

using Mask = std::uint64_t;

class VariableIndex {
 public:
  VariableIndex() = default;

  template <class Range>
  explicit VariableIndex(const Range& monomials) {
    for (const Monomial& m : monomials) {
      for (const auto& [v, e] : m.terms()) vars_.push_back(v);
    }
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    if (vars_.size() > 64) throw Error(ErrorCode::SizeCap, "more than 64 variables");
  }

  std::size_t size() const { return vars_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }

  int index_of(Variable v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v) return -1;
    return static_cast<int>(it - vars_.begin());
  }

  Mask mask(const Monomial& m) const {
    Mask r = 0;
    for (const auto& [v, e] : m.terms()) {
      if (e != 1) throw Error(ErrorCode::NotSquarefree, m.to_string());
      const int i = index_of(v);
      if (i < 0) throw Error(ErrorCode::InvalidArgument, "variable outside index: " + v.to_string());
      r |= Mask{1} << i;
    }
    return r;
  }

  Monomial monomial(Mask mask) const {
    std::vector<Monomial::Term> t;
    while (mask != 0) {
      const int i = std::countr_zero(mask);
      t.push_back({vars_[i], 1});
      mask &= mask - 1;
    }
    return Monomial(std::move(t));
  }

 private:
  std::vector<Variable> vars_;
};

inline int popcount(Mask m) { return std::popcount(m); }

}  // namespace rainbow
