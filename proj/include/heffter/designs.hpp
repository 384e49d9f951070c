#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "heffter/group.hpp"
#include "heffter/halfset.hpp"
#include "heffter/number_theory.hpp"

namespace heffter {

using Rational = boost::rational<std::int64_t>;
using BlockClass = std::vector<OrderedBlock>;

/// A partition of a half-set into zero-sum blocks.
struct HeffterSystem {
  std::vector<Elem> halfset;
  BlockClass blocks;
};

/// A resolved partial linear space whose parallel classes are Heffter systems
/// on a common half-set.
struct HeffterSpace {
  std::vector<Elem> halfset;
  std::vector<BlockClass> classes;
};

enum class DesignKind { system, space, configuration, net, array_pair, ruler, packing };

constexpr std::string_view kind_name(DesignKind k) noexcept {
  switch (k) {
    case DesignKind::system: return "system";
    case DesignKind::space: return "space";
    case DesignKind::configuration: return "configuration";
    case DesignKind::net: return "net";
    case DesignKind::array_pair: return "array-pair";
    case DesignKind::ruler: return "ruler";
    case DesignKind::packing: return "packing";
  }
  return "unknown";
}

inline std::string format_block(std::span<const Elem> b) {
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i].code);
  return s + "}";
}

inline std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct DesignReport {
  DesignKind kind = DesignKind::system;
  std::size_t v = 0;
  /// Block size per class; 0 marks a class with mixed block sizes.
  std::vector<std::size_t> sizes;
  std::size_t r = 0;
  std::optional<Rational> density;
  std::vector<std::string> violations;

  bool valid() const noexcept { return violations.empty(); }

  /// Parameter string such as (35,5;5) or (35,{5^5,7}).
  std::string parameters() const {
    std::ostringstream os;
    os << "(" << v << ",";
    const bool constant = !sizes.empty() && std::all_of(sizes.begin(), sizes.end(), [&](auto k) { return k == sizes[0]; });
    if (constant) {
      os << sizes[0] << ";" << r << ")";
      return os.str();
    }
    std::map<std::size_t, std::size_t> mult;
    for (auto k : sizes) ++mult[k];
    os << "{";
    bool first = true;
    for (auto [k, m] : mult) {
      os << (first ? "" : ",") << k;
      if (m > 1) os << "^" << m;
      first = false;
    }
    os << "})";
    return os.str();
  }

  std::string summary() const {
    std::ostringstream os;
    os << (valid() ? "VALID " : "INVALID ") << kind_name(kind) << " " << parameters() << "\n";
    if (density) os << "density " << format_rational(*density) << "\n";
    for (const auto& v_ : violations) os << "violation " << v_ << "\n";
    return os.str();
  }

  /// Flat key=value lines.
  std::string structured() const {
    std::ostringstream os;
    os << "valid=" << (valid() ? "true" : "false") << "\n";
    os << "kind=" << kind_name(kind) << "\n";
    os << "v=" << v << "\n";
    os << "r=" << r << "\n";
    os << "sizes=";
    for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
    os << "\n";
    if (density) os << "density=" << format_rational(*density) << "\n";
    os << "violations=" << violations.size() << "\n";
    for (std::size_t i = 0; i < violations.size(); ++i) os << "violation." << i << "=" << violations[i] << "\n";
    return os.str();
  }
};

namespace detail {

/// Appends violations for one class; returns the constant block size or 0.
template <AdditiveGroup G>
std::size_t check_partition(const G& grp, std::span<const Elem> V, const BlockClass& blocks, const std::string& prefix,
                            std::vector<std::string>& out) {
  const std::uint64_t order = grp.order();
  std::vector<std::int64_t> owner(order, -1);
  std::vector<char> in_v(order, 0);
  for (Elem x : V)
    if (x.code < order) in_v[x.code] = 1;

  std::size_t size = blocks.empty() ? 0 : blocks[0].size();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    if (block.size() != size) size = 0;
    if (block.size() < 3) out.push_back(prefix + "block " + std::to_string(b) + " " + format_block(block) + " has fewer than 3 elements");
    for (Elem x : block) {
      if (x.code >= order || !in_v[x.code]) {
        out.push_back(prefix + "block " + std::to_string(b) + " contains " + std::to_string(x.code) + " which is not in the half-set");
        continue;
      }
      if (owner[x.code] == static_cast<std::int64_t>(b)) {
        out.push_back(prefix + "block " + std::to_string(b) + " repeats element " + std::to_string(x.code));
      } else if (owner[x.code] >= 0) {
        out.push_back(prefix + "element " + std::to_string(x.code) + " lies in blocks " + std::to_string(owner[x.code]) + " and " +
                      std::to_string(b));
      } else {
        owner[x.code] = static_cast<std::int64_t>(b);
      }
    }
    bool in_range = std::all_of(block.begin(), block.end(), [&](Elem x) { return x.code < order; });
    if (in_range) {
      const Elem s = sum_of(grp, std::span<const Elem>(block));
      if (s.code != 0)
        out.push_back(prefix + "block " + std::to_string(b) + " " + format_block(block) + " sums to " + std::to_string(s.code) +
                      ", not 0");
    }
  }
  for (Elem x : V)
    if (x.code < order && owner[x.code] < 0)
      out.push_back(prefix + "element " + std::to_string(x.code) + " of the half-set is not covered");
  return size;
}

}  // namespace detail

/// Valid iff the blocks partition the half-set V into zero-sum parts.
template <AdditiveGroup G>
DesignReport verify_heffter_system(const G& grp, std::span<const Elem> V, const BlockClass& blocks) {
  DesignReport rep;
  rep.kind = DesignKind::system;
  rep.v = V.size();
  rep.r = 1;
  if (auto problem = half_set_problem(grp, V)) rep.violations.push_back("half-set: " + *problem);
  rep.sizes.push_back(detail::check_partition(grp, V, blocks, "", rep.violations));
  if (rep.valid() && rep.sizes[0] > 0 && rep.v > 1)
    rep.density = Rational(static_cast<std::int64_t>(rep.sizes[0] - 1), static_cast<std::int64_t>(rep.v - 1));
  return rep;
}

template <AdditiveGroup G>
DesignReport verify_heffter_system(const G& grp, const HeffterSystem& sys) {
  return verify_heffter_system(grp, std::span<const Elem>(sys.halfset), sys.blocks);
}

inline bool same_point_set(std::vector<Elem> a, std::vector<Elem> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

struct OrthogonalityCheck {
  bool orthogonal = true;
  /// Indices (block of P, block of Q) meeting in two or more elements.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Every block of P meets every block of Q in at most one element.
inline OrthogonalityCheck verify_orthogonality(const HeffterSystem& P, const HeffterSystem& Q) {
  if (!same_point_set(P.halfset, Q.halfset))
    throw Error(Errc::mismatched_half_sets, "orthogonality needs both systems on the same half-set");
  std::unordered_map<std::uint32_t, std::size_t> q_owner;
  for (std::size_t j = 0; j < Q.blocks.size(); ++j)
    for (Elem x : Q.blocks[j]) q_owner[x.code] = j;
  for (std::size_t i = 0; i < P.blocks.size(); ++i) {
    std::map<std::size_t, int> hits;
    for (Elem x : P.blocks[i]) {
      auto it = q_owner.find(x.code);
      if (it == q_owner.end()) continue;
      if (++hits[it->second] > 1) return {false, std::make_pair(i, it->second)};
    }
  }
  return {};
}

namespace detail {

struct PointIndex {
  std::unordered_map<std::uint32_t, std::uint32_t> index;
  explicit PointIndex(std::span<const Elem> V) {
    index.reserve(V.size() * 2);
    for (std::uint32_t i = 0; i < V.size(); ++i) index.emplace(V[i].code, i);
  }
  std::optional<std::uint32_t> operator()(Elem x) const {
    auto it = index.find(x.code);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace detail

/// Collinearity degree of every half-set point (indexed like S.halfset).
inline std::vector<std::size_t> collinearity_degrees(const HeffterSpace& S) {
  detail::PointIndex idx(S.halfset);
  const std::size_t v = S.halfset.size();
  std::vector<std::vector<char>> adj(v, std::vector<char>(v, 0));
  for (const auto& cls : S.classes)
    for (const auto& b : cls)
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
          auto a = idx(b[i]), c = idx(b[j]);
          if (a && c && *a != *c) adj[*a][*c] = adj[*c][*a] = 1;
        }
  std::vector<std::size_t> deg(v, 0);
  for (std::size_t i = 0; i < v; ++i) deg[i] = static_cast<std::size_t>(std::count(adj[i].begin(), adj[i].end(), 1));
  return deg;
}

/// Number of collinear point pairs.
inline std::uint64_t collinearity_edge_count(const HeffterSpace& S) {
  std::uint64_t total = 0;
  for (auto d : collinearity_degrees(S)) total += d;
  return total / 2;
}

/// Full check: half-set, every class a Heffter system, and no point pair in
/// two blocks. Classifies the result as space, configuration or net.
template <AdditiveGroup G>
DesignReport verify_heffter_space(const G& grp, const HeffterSpace& S) {
  DesignReport rep;
  rep.v = S.halfset.size();
  rep.r = S.classes.size();
  if (auto problem = half_set_problem(grp, std::span<const Elem>(S.halfset)))
    rep.violations.push_back("half-set: " + *problem);
  for (std::size_t c = 0; c < S.classes.size(); ++c)
    rep.sizes.push_back(
        detail::check_partition(grp, S.halfset, S.classes[c], "class " + std::to_string(c) + ": ", rep.violations));

  detail::PointIndex idx(S.halfset);
  const std::uint64_t v = rep.v;
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> seen;
  std::size_t pair_count = 0;
  for (const auto& cls : S.classes)
    for (const auto& b : cls) pair_count += b.size() * (b.size() - 1) / 2;
  seen.reserve(pair_count);
  for (std::size_t c = 0; c < S.classes.size(); ++c) {
    for (std::size_t bi = 0; bi < S.classes[c].size(); ++bi) {
      const auto& b = S.classes[c][bi];
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
          auto a = idx(b[i]), d = idx(b[j]);
          if (!a || !d || *a == *d) continue;
          const std::uint64_t key = std::uint64_t{std::min(*a, *d)} * v + std::max(*a, *d);
          auto [it, inserted] = seen.emplace(key, std::make_pair(c, bi));
          if (!inserted && it->second != std::make_pair(c, bi)) {
            rep.violations.push_back("points " + std::to_string(b[i].code) + " and " + std::to_string(b[j].code) +
                                     " lie in class " + std::to_string(it->second.first) + " block " +
                                     std::to_string(it->second.second) + " and class " + std::to_string(c) + " block " +
                                     std::to_string(bi));
          }
        }
    }
  }

  const bool constant = !rep.sizes.empty() && rep.sizes[0] > 0 &&
                        std::all_of(rep.sizes.begin(), rep.sizes.end(), [&](auto k) { return k == rep.sizes[0]; });
  if (!constant)
    rep.kind = DesignKind::space;
  else if (rep.sizes[0] * rep.sizes[0] == rep.v)
    rep.kind = DesignKind::net;
  else
    rep.kind = DesignKind::configuration;

  if (rep.valid() && rep.v > 1) {
    const bool all_constant = std::all_of(rep.sizes.begin(), rep.sizes.end(), [](auto k) { return k > 0; });
    if (all_constant) {
      std::int64_t num = 0;
      for (auto k : rep.sizes) num += static_cast<std::int64_t>(k) - 1;
      rep.density = Rational(num, static_cast<std::int64_t>(rep.v - 1));
    } else {
      const auto e = static_cast<std::int64_t>(collinearity_edge_count(S));
      rep.density = Rational(e, static_cast<std::int64_t>(rep.v * (rep.v - 1) / 2));
    }
  }
  return rep;
}

/// Density of the collinearity graph, (sum k_i - r)/(v-1) for constant class
/// sizes. Always cross-checked against |E| / C(v,2).
template <AdditiveGroup G>
Rational density(const G& grp, const HeffterSpace& S) {
  const DesignReport rep = verify_heffter_space(grp, S);
  if (!rep.valid()) throw Error(Errc::invalid_space, rep.violations.front());
  const std::int64_t v = static_cast<std::int64_t>(rep.v);
  const Rational by_edges(static_cast<std::int64_t>(collinearity_edge_count(S)), v * (v - 1) / 2);
  if (*rep.density != by_edges)
    throw std::logic_error("density formula " + format_rational(*rep.density) + " disagrees with edge count " +
                           format_rational(by_edges));
  return by_edges;
}

enum class UpperBound { feasible, tight_linear, infeasible };

/// Collinearity bound: sum(k_i) - r <= v - 1, with equality only for a linear space.
inline UpperBound check_upper_bound(std::uint64_t v, std::span<const std::uint64_t> sizes) {
  std::int64_t lhs = 0;
  for (auto k : sizes) lhs += static_cast<std::int64_t>(k) - 1;
  const auto rhs = static_cast<std::int64_t>(v) - 1;
  if (lhs > rhs) return UpperBound::infeasible;
  if (lhs == rhs) return UpperBound::tight_linear;
  return UpperBound::feasible;
}

/// Largest r with r(k-1) <= v-1.
inline std::uint64_t max_mohs_size(std::uint64_t v, std::uint64_t k) { return (v - 1) / (k - 1); }

struct LinearFeasibility {
  bool possible = true;
  std::string reason;
};

/// Necessary condition for a linear Heffter space of degree r over the abelian
/// group with the given invariant factors: every element order divides r - 1.
inline LinearFeasibility check_linear_feasibility(std::span<const std::uint64_t> invariant_factors, std::uint64_t r) {
  std::uint64_t order = 1, exponent = 1;
  for (auto f : invariant_factors) {
    if (f == 0) throw Error(Errc::invalid_argument, "invariant factor 0");
    order *= f;
    exponent = std::lcm(exponent, f);
  }
  if (order % 2 == 0) throw Error(Errc::invalid_argument, "group order must be odd");
  if (r == 0) return {false, "degree 0"};
  const std::uint64_t rm1 = r - 1;
  for (auto p : prime_divisors(order)) {
    if (rm1 % p != 0)
      return {false, "prime " + std::to_string(p) + " divides the group order but not r-1 = " + std::to_string(rm1)};
  }
  if (rm1 % exponent != 0)
    return {false, "an element of order " + std::to_string(exponent) + " does not divide r-1 = " + std::to_string(rm1)};
  return {true, "every element order divides r-1 = " + std::to_string(rm1)};
}

/// Finds an ordering of a zero-sum block whose partial sums are pairwise
/// distinct. The least code goes first; the remaining elements are tried in
/// increasing code order, so the result is the lexicographically first simple
/// ordering with that head.
template <AdditiveGroup G>
std::optional<OrderedBlock> order_for_simplicity(const G& grp, std::span<const Elem> block) {
  if (sum_of(grp, block).code != 0) throw Error(Errc::not_zero_sum, format_block(block) + " is not zero-sum");
  OrderedBlock sorted(block.begin(), block.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::invalid_argument, format_block(block) + " has repeated elements");
  if (sorted.empty()) return sorted;

  const std::size_t k = sorted.size();
  OrderedBlock current{sorted[0]};
  std::vector<char> used(k, 0);
  used[0] = 1;
  std::vector<Elem> sums{sorted[0]};

  auto dfs = [&](auto&& self) -> bool {
    if (current.size() == k) return true;
    for (std::size_t i = 1; i < k; ++i) {
      if (used[i]) continue;
      const Elem s = grp.add(sums.back(), sorted[i]);
      if (std::find(sums.begin(), sums.end(), s) != sums.end()) continue;
      used[i] = 1;
      current.push_back(sorted[i]);
      sums.push_back(s);
      if (self(self)) return true;
      used[i] = 0;
      current.pop_back();
      sums.pop_back();
    }
    return false;
  };
  if (dfs(dfs)) return current;
  return std::nullopt;
}

/// Any simple ordering, found quickly on long blocks: the given order, then
/// up to `shuffles` seeded shuffles, then the exhaustive search above.
template <AdditiveGroup G>
std::optional<OrderedBlock> quick_simple_ordering(const G& grp, std::span<const Elem> block, std::uint64_t seed = 1,
                                                  std::size_t shuffles = 10000) {
  if (sum_of(grp, block).code != 0) throw Error(Errc::not_zero_sum, format_block(block) + " is not zero-sum");
  OrderedBlock cur(block.begin(), block.end());
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t <= shuffles; ++t) {
    if (is_simple_ordering(grp, std::span<const Elem>(cur))) return cur;
    std::shuffle(cur.begin(), cur.end(), rng);
  }
  return order_for_simplicity(grp, block);
}

/// Partially filled matrix: cell (i,j) holds the common element of row block i
/// and column block j, if any.
struct HeffterArray {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::optional<Elem>>> cells;
};

inline HeffterArray array_from_pair(const HeffterSystem& P, const HeffterSystem& Q) {
  const auto check = verify_orthogonality(P, Q);
  if (!check.orthogonal)
    throw Error(Errc::not_orthogonal, "blocks " + std::to_string(check.witness->first) + " and " +
                                          std::to_string(check.witness->second) + " share two elements");
  HeffterArray A;
  A.rows = P.blocks.size();
  A.cols = Q.blocks.size();
  A.cells.assign(A.rows, std::vector<std::optional<Elem>>(A.cols));
  std::unordered_map<std::uint32_t, std::size_t> col_of;
  for (std::size_t j = 0; j < Q.blocks.size(); ++j)
    for (Elem x : Q.blocks[j]) col_of[x.code] = j;
  for (std::size_t i = 0; i < P.blocks.size(); ++i)
    for (Elem x : P.blocks[i]) {
      auto it = col_of.find(x.code);
      if (it != col_of.end()) A.cells[i][it->second] = x;
    }
  return A;
}

/// Rebuilds the orthogonal pair (rows, columns) from a Heffter array,
/// checking conditions (a)-(d).
template <AdditiveGroup G>
std::pair<HeffterSystem, HeffterSystem> pair_from_array(const G& grp, const HeffterArray& A) {
  HeffterSystem rows, cols;
  cols.blocks.assign(A.cols, {});
  std::vector<Elem> entries;
  for (std::size_t i = 0; i < A.rows; ++i) {
    OrderedBlock row;
    for (std::size_t j = 0; j < A.cols; ++j)
      if (const auto& c = A.cells[i][j]) {
        row.push_back(*c);
        cols.blocks[j].push_back(*c);
        entries.push_back(*c);
      }
    rows.blocks.push_back(std::move(row));
  }
  auto fail = [](const std::string& cond, const std::string& why) {
    throw Error(Errc::array_condition_violated, "condition " + cond + ": " + why);
  };
  for (std::size_t i = 0; i < rows.blocks.size(); ++i)
    if (rows.blocks[i].size() != rows.blocks[0].size())
      fail("(a)", "row " + std::to_string(i) + " has " + std::to_string(rows.blocks[i].size()) + " filled cells");
  for (std::size_t j = 0; j < cols.blocks.size(); ++j)
    if (cols.blocks[j].size() != cols.blocks[0].size())
      fail("(b)", "column " + std::to_string(j) + " has " + std::to_string(cols.blocks[j].size()) + " filled cells");
  if (auto problem = half_set_problem(grp, std::span<const Elem>(entries))) fail("(c)", *problem);
  for (std::size_t i = 0; i < rows.blocks.size(); ++i)
    if (sum_of(grp, std::span<const Elem>(rows.blocks[i])).code != 0) fail("(d)", "row " + std::to_string(i) + " is not zero-sum");
  for (std::size_t j = 0; j < cols.blocks.size(); ++j)
    if (sum_of(grp, std::span<const Elem>(cols.blocks[j])).code != 0)
      fail("(d)", "column " + std::to_string(j) + " is not zero-sum");
  std::sort(entries.begin(), entries.end());
  rows.halfset = entries;
  cols.halfset = entries;
  return {std::move(rows), std::move(cols)};
}

/// Space whose resolution is the given family of systems.
inline HeffterSpace assemble_space(const std::vector<HeffterSystem>& systems) {
  HeffterSpace S;
  if (systems.empty()) return S;
  S.halfset = systems[0].halfset;
  for (const auto& sys : systems) {
    if (!same_point_set(sys.halfset, S.halfset))
      throw Error(Errc::mismatched_half_sets, "systems are not on a common half-set");
    S.classes.push_back(sys.blocks);
  }
  return S;
}

inline std::vector<HeffterSystem> systems_of(const HeffterSpace& S) {
  std::vector<HeffterSystem> out;
  for (const auto& cls : S.classes) out.push_back({S.halfset, cls});
  return out;
}

}  // namespace heffter
