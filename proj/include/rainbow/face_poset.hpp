#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "rainbow/complex.hpp"
#include "rainbow/error.hpp"
#include "rainbow/linalg.hpp"
#include "rainbow/term_order.hpp"

namespace rainbow {

struct PosetNode {
  std::string id;     // multidegree text, "0" for the least element
  std::string label;  // basis label in the source complex
  int rank = 0;
  Monomial mdeg;
  int degree = -1;  // homological degree in the source complex, -1 if formal
  std::size_t slot = 0;
};

struct PosetCover {
  std::size_t lo;
  std::size_t hi;
  int sign;
};

/// Face poset of a based complex: f < e when f is in the support of d(e),
/// closed transitively, with a least element. Node 0 is always the least
/// element.
class FacePoset {
 public:
  std::size_t size() const { return nodes_.size(); }
  const PosetNode& node(std::size_t x) const { return nodes_.at(x); }
  const std::vector<PosetNode>& nodes() const { return nodes_; }
  const std::vector<PosetCover>& covers() const { return covers_; }
  std::size_t bottom() const { return 0; }
  int rank(std::size_t x) const { return nodes_.at(x).rank; }

  int max_rank() const {
    int r = 0;
    for (const auto& n : nodes_) r = std::max(r, n.rank);
    return r;
  }

  /// Elements covered by x, with incidence signs.
  const std::vector<std::pair<std::size_t, int>>& lower_covers(std::size_t x) const { return down_.at(x); }
  const std::vector<std::pair<std::size_t, int>>& upper_covers(std::size_t x) const { return up_.at(x); }

  bool leq(std::size_t a, std::size_t b) const { return below_[b][a / 64] >> (a % 64) & 1u; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  /// Incidence sign of the cover lo < hi, 0 if not a cover.
  int sign(std::size_t lo, std::size_t hi) const {
    for (const auto& [l, s] : down_.at(hi)) {
      if (l == lo) return s;
    }
    return 0;
  }

  std::vector<std::size_t> of_rank(int r) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x) {
      if (nodes_[x].rank == r) out.push_back(x);
    }
    return out;
  }

  /// Rank-1 elements below x (the vertex set V(x)).
  std::vector<std::size_t> vertices(std::size_t x) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < size(); ++v) {
      if (nodes_[v].rank == 1 && leq(v, x)) out.push_back(v);
    }
    return out;
  }

  /// Elements strictly between x and y.
  std::vector<std::size_t> open_interval(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < size(); ++z) {
      if (less(x, z) && less(z, y)) out.push_back(z);
    }
    return out;
  }

  std::optional<std::size_t> find(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> node_of(int degree, std::size_t slot) const {
    auto it = by_slot_.find({degree, slot});
    if (it == by_slot_.end()) return std::nullopt;
    return it->second;
  }

  friend FacePoset face_poset(const BasedComplex& c);

 private:
  std::size_t add_node(PosetNode n) {
    if (!by_id_.emplace(n.id, nodes_.size()).second) {
      throw Error(ErrorCode::LabelCollision, "two poset elements share multidegree " + n.id);
    }
    by_slot_.emplace(std::pair{n.degree, n.slot}, nodes_.size());
    nodes_.push_back(std::move(n));
    up_.emplace_back();
    down_.emplace_back();
    return nodes_.size() - 1;
  }

  void add_cover(std::size_t lo, std::size_t hi, int sign) {
    for (const auto& [l, s] : down_[hi]) {
      if (l == lo) throw Error(ErrorCode::InvalidArgument, "repeated cover " + nodes_[lo].id + " < " + nodes_[hi].id);
    }
    covers_.push_back({lo, hi, sign});
    down_[hi].push_back({lo, sign});
    up_[lo].push_back({hi, sign});
  }

  void close() {
    const std::size_t words = (size() + 63) / 64;
    below_.assign(size(), std::vector<std::uint64_t>(words, 0));
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return nodes_[a].rank < nodes_[b].rank; });
    for (std::size_t x : order) {
      below_[x][x / 64] |= std::uint64_t{1} << (x % 64);
      for (const auto& [l, s] : down_[x]) {
        for (std::size_t w = 0; w < words; ++w) below_[x][w] |= below_[l][w];
      }
    }
  }

  std::vector<PosetNode> nodes_;
  std::vector<PosetCover> covers_;
  std::vector<std::vector<std::pair<std::size_t, int>>> up_, down_;
  std::vector<std::vector<std::uint64_t>> below_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::map<std::pair<int, std::size_t>, std::size_t> by_slot_;
};

/// If degree 0 is a single unit element it becomes the least element and
/// ranks equal homological degrees; otherwise a formal least element is
/// added below degree 0 and ranks are shifted up by one.
inline FacePoset face_poset(const BasedComplex& c) {
  FacePoset p;
  const bool unit_bottom = c.rank(0) == 1 && c.element(0, 0).mdeg.is_one();
  const int shift = unit_bottom ? 0 : 1;
  if (unit_bottom) {
    p.add_node({"0", c.element(0, 0).label, 0, Monomial(), 0, 0});
  } else {
    p.add_node({"0", "", 0, Monomial(), -1, 0});
  }
  for (int i = unit_bottom ? 1 : 0; i <= c.top_degree(); ++i) {
    for (std::size_t k = 0; k < c.rank(i); ++k) {
      const auto& e = c.element(i, k);
      p.add_node({e.mdeg.to_string(), e.label, i + shift, e.mdeg, i, k});
    }
  }
  if (!unit_bottom) {
    for (std::size_t k = 0; k < c.rank(0); ++k) p.add_cover(0, *p.node_of(0, k), 1);
  }
  for (int i = 1; i <= c.top_degree(); ++i) {
    for (const auto& e : c.differential(i)) p.add_cover(*p.node_of(i - 1, e.to), *p.node_of(i, e.from), e.sign);
  }
  p.close();
  return p;
}

/// Every closed interval of length two has exactly four elements.
inline bool is_thin(const FacePoset& p) {
  for (std::size_t y = 0; y < p.size(); ++y) {
    std::map<std::size_t, int> middle_count;
    for (const auto& [z, s] : p.lower_covers(y)) {
      for (const auto& [x, t] : p.lower_covers(z)) ++middle_count[x];
    }
    for (const auto& [x, cnt] : middle_count) {
      if (cnt != 2) return false;
    }
  }
  return true;
}

/// Incidence-sign axiom: eps(a,y)eps(x,a) + eps(b,y)eps(x,b) = 0 on every
/// length-two interval {x < a, b < y}.
inline bool incidence_signs_consistent(const FacePoset& p) {
  for (std::size_t y = 0; y < p.size(); ++y) {
    std::map<std::size_t, int> sum;
    for (const auto& [z, s] : p.lower_covers(y)) {
      for (const auto& [x, t] : p.lower_covers(z)) sum[x] += s * t;
    }
    for (const auto& [x, v] : sum) {
      if (v != 0) return false;
    }
  }
  return true;
}

/// Reduced homology ranks; ranks[d + 1] is the rank of H~_d (d >= -1).
struct ReducedHomology {
  std::vector<std::size_t> ranks;

  std::size_t at(int d) const {
    const auto i = static_cast<std::size_t>(d + 1);
    return i < ranks.size() ? ranks[i] : 0;
  }

  bool is_sphere(int dim) const {
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (ranks[i] != (static_cast<int>(i) - 1 == dim ? 1u : 0u)) return false;
    }
    return dim + 1 < static_cast<int>(ranks.size());
  }
};

/// Reduced simplicial homology of the order complex of the open interval
/// (x, y); the empty interval gives the (-1)-sphere.
inline ReducedHomology open_interval_homology(const FacePoset& p, std::size_t x, std::size_t y,
                                              const PrimeField& field = PrimeField()) {
  if (!p.less(x, y)) throw Error(ErrorCode::InvalidArgument, "open interval needs x < y");
  auto inner = p.open_interval(x, y);
  std::stable_sort(inner.begin(), inner.end(), [&](auto a, auto b) { return p.rank(a) < p.rank(b); });
  // chains[k] = chains with k elements (dimension k - 1)
  std::vector<std::vector<std::vector<std::size_t>>> chains(1, {{}});
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t i = from; i < inner.size(); ++i) {
      if (!cur.empty() && !p.less(cur.back(), inner[i])) continue;
      cur.push_back(inner[i]);
      if (chains.size() <= cur.size()) chains.resize(cur.size() + 1);
      chains[cur.size()].push_back(cur);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(0);
  VectorSpaceComplex v;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(chains.size());
  for (std::size_t k = 0; k < chains.size(); ++k) {
    v.dims.push_back(chains[k].size());
    for (std::size_t i = 0; i < chains[k].size(); ++i) index[k].emplace(chains[k][i], i);
  }
  v.maps.resize(chains.size());
  for (std::size_t k = 1; k < chains.size(); ++k) {
    v.maps[k] = IntMatrix(v.dims[k], v.dims[k - 1]);
    for (std::size_t r = 0; r < chains[k].size(); ++r) {
      for (std::size_t drop = 0; drop < k; ++drop) {
        auto face = chains[k][r];
        face.erase(face.begin() + static_cast<long>(drop));
        v.maps[k].add(r, index[k - 1].at(face), drop % 2 ? -1 : 1);
      }
    }
  }
  return {v.homology(field)};
}

/// How the induced atom orderings of upper intervals [a_j, x] are formed
/// during recursion: atoms covering an earlier a_i first (the rule from the
/// shelling argument), or deliberately last.
enum class AtomBlockPolicy { FirstBlockFirst, FirstBlockLast };

struct RaoLimits {
  std::size_t max_atoms = 12;
  int max_depth = 8;
};

namespace detail {

inline std::vector<std::size_t> atoms_of(const FacePoset& p, std::size_t b, std::size_t x) {
  std::vector<std::size_t> out;
  for (const auto& [a, s] : p.upper_covers(b)) {
    if (p.leq(a, x)) out.push_back(a);
  }
  return out;
}

inline void sort_by_order(const FacePoset& p, const TermOrder& order, std::vector<std::size_t>& v) {
  std::sort(v.begin(), v.end(), [&](auto a, auto b) { return order.less(p.node(a).mdeg, p.node(b).mdeg); });
}

inline bool check_rao(const FacePoset& p, std::size_t b, std::size_t x, const std::vector<std::size_t>& atoms,
                      const TermOrder& order, AtomBlockPolicy policy, const RaoLimits& lim, int depth) {
  if (p.rank(x) - p.rank(b) <= 1) return true;
  if (depth > lim.max_depth) throw Error(ErrorCode::SizeCap, "recursive atom ordering depth cap exceeded");
  if (atoms.size() > lim.max_atoms) throw Error(ErrorCode::SizeCap, "recursive atom ordering atom cap exceeded");
  auto expected = atoms_of(p, b, x);
  auto given = atoms;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given) return false;
  std::vector<std::size_t> above;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p.less(b, y) && p.leq(y, x)) above.push_back(y);
  }
  // (ii): a_i, a_j < y with i < j forces some z covering a_j and an earlier
  // a_k, z <= y.
  for (std::size_t j = 1; j < atoms.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t y : above) {
        if (!p.less(atoms[i], y) || !p.less(atoms[j], y)) continue;
        bool ok = false;
        for (const auto& [z, s] : p.upper_covers(atoms[j])) {
          if (!p.leq(z, y)) continue;
          for (std::size_t k = 0; k < j && !ok; ++k) ok = p.sign(atoms[k], z) != 0;
          if (ok) break;
        }
        if (!ok) return false;
      }
    }
  }
  // (i): each [a_j, x] has a recursive atom ordering with the atoms that
  // cover an earlier a_i first.
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    std::vector<std::size_t> first, rest;
    for (std::size_t z : atoms_of(p, atoms[j], x)) {
      bool covers_earlier = false;
      for (std::size_t i = 0; i < j && !covers_earlier; ++i) covers_earlier = p.sign(atoms[i], z) != 0;
      (covers_earlier ? first : rest).push_back(z);
    }
    sort_by_order(p, order, first);
    sort_by_order(p, order, rest);
    std::vector<std::size_t> sub;
    if (policy == AtomBlockPolicy::FirstBlockFirst) {
      sub = first;
      sub.insert(sub.end(), rest.begin(), rest.end());
    } else {
      sub = rest;
      sub.insert(sub.end(), first.begin(), first.end());
    }
    for (std::size_t t = 0; t < first.size(); ++t) {
      if (std::find(first.begin(), first.end(), sub[t]) == first.end()) return false;
    }
    if (!check_rao(p, atoms[j], x, sub, order, policy, lim, depth + 1)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks that `atom_order` (atoms of [0, x]) is a recursive atom ordering,
/// with the induced orderings of upper intervals built by the block rule
/// of `policy` and sorted by the term order inside each block.
inline bool recursive_atom_ordering_check(const FacePoset& p, std::size_t x, const std::vector<std::size_t>& atom_order,
                                          const TermOrder& order,
                                          AtomBlockPolicy policy = AtomBlockPolicy::FirstBlockFirst,
                                          const RaoLimits& limits = {}) {
  if (x == p.bottom()) throw Error(ErrorCode::InvalidArgument, "interval [0, 0] has no atoms");
  return detail::check_rao(p, p.bottom(), x, atom_order, order, policy, limits, 1);
}

/// Atoms of [0, x] sorted increasingly by the term order on multidegrees.
inline std::vector<std::size_t> term_order_atoms(const FacePoset& p, std::size_t x, const TermOrder& order) {
  auto a = detail::atoms_of(p, p.bottom(), x);
  detail::sort_by_order(p, order, a);
  return a;
}

struct CWCertificate {
  bool has_least_element = false;
  bool nontrivial = false;
  bool thin = false;
  bool sphere_intervals = false;
  bool recursive_atom_orderings = false;
  std::string failure;  // first failing axiom, empty if none

  bool ok() const {
    return has_least_element && nontrivial && thin && sphere_intervals && recursive_atom_orderings;
  }

  nlohmann::json to_json() const {
    return {{"least_element", has_least_element}, {"nontrivial", nontrivial},
            {"thin", thin},                       {"sphere_intervals", sphere_intervals},
            {"recursive_atom_orderings", recursive_atom_orderings},
            {"verdict", ok()},                    {"failure", failure}};
  }
};

/// Least element, more than one element, thin, and every lower interval
/// (0, x) a homology sphere of dimension rank(x) - 2 with a verified
/// recursive atom ordering by the term order.
inline CWCertificate is_cw_poset(const FacePoset& p, const TermOrder& order, const PrimeField& field = PrimeField(),
                                 const RaoLimits& limits = {}) {
  CWCertificate c;
  auto fail = [&](const std::string& why) {
    if (c.failure.empty()) c.failure = why;
  };
  c.has_least_element = true;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!p.leq(p.bottom(), x)) c.has_least_element = false;
  }
  if (!c.has_least_element) fail("least element");
  c.nontrivial = p.size() > 1;
  if (!c.nontrivial) fail("more than one element");
  c.thin = is_thin(p);
  if (!c.thin) fail("thin");
  c.sphere_intervals = true;
  c.recursive_atom_orderings = true;
  for (std::size_t x = 1; x < p.size(); ++x) {
    if (c.sphere_intervals && !open_interval_homology(p, p.bottom(), x, field).is_sphere(p.rank(x) - 2)) {
      c.sphere_intervals = false;
      fail("sphere interval below " + p.node(x).id);
    }
    if (c.recursive_atom_orderings &&
        !recursive_atom_ordering_check(p, x, term_order_atoms(p, x, order), order,
                                       AtomBlockPolicy::FirstBlockFirst, limits)) {
      c.recursive_atom_orderings = false;
      fail("recursive atom ordering below " + p.node(x).id);
    }
  }
  if (!c.nontrivial) {
    c.sphere_intervals = false;
    c.recursive_atom_orderings = false;
  }
  return c;
}

/// Every two elements of [mu, nu] covering a common element of the interval
/// have a common upper cover inside it.
inline bool upper_semimodularity_check(const FacePoset& p, std::size_t mu, std::size_t nu) {
  if (!p.leq(mu, nu)) throw Error(ErrorCode::InvalidArgument, "empty interval");
  auto inside = [&](std::size_t z) { return p.leq(mu, z) && p.leq(z, nu); };
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!inside(x)) continue;
    std::vector<std::size_t> ups;
    for (const auto& [u, s] : p.upper_covers(x)) {
      if (inside(u)) ups.push_back(u);
    }
    for (std::size_t i = 0; i < ups.size(); ++i) {
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        bool joined = false;
        for (const auto& [z, s] : p.upper_covers(ups[i])) {
          if (inside(z) && p.sign(ups[j], z) != 0) {
            joined = true;
            break;
          }
        }
        if (!joined) return false;
      }
    }
  }
  return true;
}

enum class PosetFormat { Dot, Json };

inline std::string export_poset(const FacePoset& p, PosetFormat format) {
  if (format == PosetFormat::Json) {
    nlohmann::json nodes = nlohmann::json::array(), covers = nlohmann::json::array();
    for (const auto& n : p.nodes()) nodes.push_back({{"id", n.id}, {"rank", n.rank}, {"mdeg", n.mdeg.to_string()}});
    for (const auto& c : p.covers()) {
      covers.push_back({{"lo", p.node(c.lo).id}, {"hi", p.node(c.hi).id}, {"sign", c.sign}});
    }
    return nlohmann::json{{"nodes", nodes}, {"covers", covers}}.dump(2);
  }
  std::ostringstream os;
  os << "digraph face_poset {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) {
    os << "  n" << x << " [label=\"" << p.node(x).id << "\\nrank " << p.rank(x) << "\"];\n";
  }
  for (const auto& c : p.covers()) {
    os << "  n" << c.lo << " -> n" << c.hi << " [label=\"" << (c.sign > 0 ? "+" : "-") << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rainbow
