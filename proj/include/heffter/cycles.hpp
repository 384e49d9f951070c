#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heffter/designs.hpp"
#include "heffter/error.hpp"
#include "heffter/group.hpp"
#include "heffter/parallel.hpp"

namespace heffter {

/// Vertex sequence (c_0, ..., c_{k-1}); edges join consecutive vertices and
/// c_{k-1} to c_0.
using Cycle = std::vector<Elem>;

inline std::string format_cycle(std::span<const Elem> c) { return format_block(c); }

/// Multiset of differences +-(c_{i+1} - c_i), sorted by code.
template <AdditiveGroup G>
std::vector<Elem> cycle_differences(const G& grp, std::span<const Elem> c) {
  std::vector<Elem> out;
  out.reserve(2 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Elem d = group_sub(grp, c[(i + 1) % c.size()], c[i]);
    out.push_back(d);
    out.push_back(grp.neg(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The cycle of running partial sums of a zero-sum simple ordered block.
template <AdditiveGroup G>
Cycle partial_sum_cycle(const G& grp, std::span<const Elem> block) {
  if (sum_of(grp, block).code != 0) throw Error(Errc::not_zero_sum, format_block(block) + " is not zero-sum");
  if (!is_simple_ordering(grp, block)) throw Error(Errc::not_simple, format_block(block) + " is not simple in this order");
  Cycle c = partial_sums(grp, block);
  std::vector<Elem> expected(block.begin(), block.end());
  for (Elem b : block) expected.push_back(grp.neg(b));
  std::sort(expected.begin(), expected.end());
  if (cycle_differences(grp, std::span<const Elem>(c)) != expected)
    throw std::logic_error("difference list of " + format_cycle(c) + " is not B u -B");
  return c;
}

/// One partial-sum cycle per block, in block order.
template <AdditiveGroup G>
std::vector<Cycle> base_cycles(const G& grp, const HeffterSystem& sys) {
  std::vector<Cycle> out;
  out.reserve(sys.blocks.size());
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const auto& block = sys.blocks[b];
    if (!is_simple_ordering(grp, std::span<const Elem>(block)))
      throw Error(Errc::not_simple, "block " + std::to_string(b) + " " + format_block(block) + " is not simple");
    out.push_back(partial_sum_cycle(grp, std::span<const Elem>(block)));
  }
  return out;
}

/// Rotation and reflection normal form: least vertex first, then the lesser
/// of its two neighbours.
inline Cycle canonical_cycle(std::span<const Elem> c) {
  if (c.size() < 3) return Cycle(c.begin(), c.end());
  const std::size_t k = c.size();
  const std::size_t m = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
  const bool forward = c[(m + 1) % k] < c[(m + k - 1) % k];
  Cycle out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(forward ? c[(m + i) % k] : c[(m + k - i) % k]);
  return out;
}

struct BaseCycleReport {
  bool ok = false;
  /// Nonzero elements not covered by any difference.
  std::vector<Elem> missing;
  /// Elements covered more than once, with multiplicity.
  std::vector<std::pair<Elem, std::uint32_t>> repeated;
  /// Other structural faults (repeated vertices, mixed lengths).
  std::vector<std::string> problems;

  std::string summary() const {
    std::ostringstream os;
    os << (ok ? "VALID" : "INVALID") << " base cycles\n";
    for (const auto& p : problems) os << "violation " << p << "\n";
    if (!missing.empty()) os << "violation " << missing.size() << " elements not covered\n";
    for (auto [e, n] : repeated) os << "violation " << e.code << " covered " << n << " times\n";
    return os.str();
  }
};

/// Whether the difference lists of `cycles` cover G \ {0} exactly once.
template <AdditiveGroup G>
BaseCycleReport verify_base_cycles(const G& grp, const std::vector<Cycle>& cycles) {
  BaseCycleReport rep;
  const std::uint64_t order = grp.order();
  std::vector<std::uint32_t> count(order, 0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    if (c.size() < 3) rep.problems.push_back("cycle " + std::to_string(i) + " has fewer than 3 vertices");
    if (!cycles.empty() && c.size() != cycles.front().size())
      rep.problems.push_back("cycle " + std::to_string(i) + " has length " + std::to_string(c.size()));
    Cycle sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      rep.problems.push_back("cycle " + std::to_string(i) + " " + format_cycle(c) + " repeats a vertex");
    for (Elem d : cycle_differences(grp, std::span<const Elem>(c))) ++count[d.code];
  }
  if (count[0] > 0) rep.repeated.push_back({Elem{0}, count[0]});
  for (std::uint32_t x = 1; x < order; ++x) {
    if (count[x] == 0) rep.missing.push_back(Elem{x});
    if (count[x] > 1) rep.repeated.push_back({Elem{x}, count[x]});
  }
  rep.ok = rep.problems.empty() && rep.missing.empty() && rep.repeated.empty();
  return rep;
}

/// A cycle system on the elements of a group, listed in full.
struct CycleSystem {
  std::uint32_t order = 0;
  std::vector<Cycle> cycles;
};

namespace detail {

inline std::uint64_t edge_key(std::uint32_t order, Elem a, Elem b) {
  if (b < a) std::swap(a, b);
  return std::uint64_t{a.code} * order + b.code;
}

}  // namespace detail

/// All translates C + g, cycle-major: index i * |G| + g. The edges are
/// checked to partition the edges of the complete graph on G.
template <AdditiveGroup G>
CycleSystem develop_cycle_system(const G& grp, const std::vector<Cycle>& base) {
  const auto rep = verify_base_cycles(grp, base);
  if (!rep.ok) throw Error(Errc::base_cycles_invalid, rep.summary());
  const std::uint32_t order = static_cast<std::uint32_t>(grp.order());
  CycleSystem sys;
  sys.order = order;
  sys.cycles.reserve(base.size() * order);
  std::vector<char> seen(std::uint64_t{order} * order, 0);
  std::uint64_t edges = 0;
  for (const auto& c : base)
    for (std::uint32_t g = 0; g < order; ++g) {
      Cycle t;
      t.reserve(c.size());
      for (Elem x : c) t.push_back(grp.add(x, Elem{g}));
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto key = detail::edge_key(order, t[i], t[(i + 1) % t.size()]);
        if (seen[key]) throw std::logic_error("edge repeated in developed system");
        seen[key] = 1;
        ++edges;
      }
      sys.cycles.push_back(std::move(t));
    }
  if (edges != std::uint64_t{order} * (order - 1) / 2) throw std::logic_error("developed system misses edges");
  return sys;
}

struct CycleOrthogonality {
  bool orthogonal = true;
  /// Indices of a cycle in each system sharing two or more edges.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::uint32_t shared = 0;
};

/// Every cycle of `a` shares at most one edge with every cycle of `b`,
/// checked through an edge index of `b`.
inline CycleOrthogonality cycle_systems_orthogonal(const CycleSystem& a, const CycleSystem& b, unsigned threads = 1) {
  if (a.order != b.order)
    throw Error(Errc::vertex_set_mismatch,
                "systems on " + std::to_string(a.order) + " and " + std::to_string(b.order) + " vertices");
  const std::uint32_t order = a.order;
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> owner(std::uint64_t{order} * order, none);
  for (std::size_t j = 0; j < b.cycles.size(); ++j) {
    const auto& c = b.cycles[j];
    for (std::size_t i = 0; i < c.size(); ++i) owner[detail::edge_key(order, c[i], c[(i + 1) % c.size()])] = static_cast<std::uint32_t>(j);
  }
  const std::size_t batch = 256;
  const std::size_t batches = (a.cycles.size() + batch - 1) / batch;
  auto found = parallel_first<CycleOrthogonality>(batches, threads, [&](std::size_t bi, auto&&) {
    std::optional<CycleOrthogonality> out;
    std::vector<std::uint32_t> ids;
    for (std::size_t i = bi * batch; i < std::min(a.cycles.size(), (bi + 1) * batch); ++i) {
      const auto& c = a.cycles[i];
      ids.clear();
      for (std::size_t t = 0; t < c.size(); ++t) {
        const auto id = owner[detail::edge_key(order, c[t], c[(t + 1) % c.size()])];
        if (id != none) ids.push_back(id);
      }
      std::sort(ids.begin(), ids.end());
      for (std::size_t t = 0; t < ids.size();) {
        std::size_t u = t;
        while (u < ids.size() && ids[u] == ids[t]) ++u;
        if (u - t > 1) {
          out = CycleOrthogonality{false, std::pair{i, std::size_t{ids[t]}}, static_cast<std::uint32_t>(u - t)};
          return out;
        }
        t = u;
      }
    }
    return out;
  });
  return found ? *found : CycleOrthogonality{};
}

/// The same test on base cycles only, using regularity: it is enough to
/// compare each base cycle of `a` with every translate of `b`. The witness
/// indexes the developed systems (i * |G| + g).
template <AdditiveGroup G>
CycleOrthogonality base_cycles_orthogonal(const G& grp, const std::vector<Cycle>& a, const std::vector<Cycle>& b) {
  const std::uint32_t order = static_cast<std::uint32_t>(grp.order());
  // An edge {x, x + d} of the system of b belongs to the translate of the
  // base edge (c_t, c_{t+1}) with difference d, so that difference fixes the
  // base cycle j, the position t and the translate g = x - c_t.
  struct Source {
    std::uint32_t cycle = UINT32_MAX;
    Elem start;
  };
  std::vector<Source> by_diff(order);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t t = 0; t < b[j].size(); ++t) {
      const Elem x = b[j][t], y = b[j][(t + 1) % b[j].size()];
      by_diff[group_sub(grp, y, x).code] = {static_cast<std::uint32_t>(j), x};
      by_diff[group_sub(grp, x, y).code] = {static_cast<std::uint32_t>(j), y};
    }
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<std::uint64_t> ids;
    for (std::size_t t = 0; t < a[i].size(); ++t) {
      const Elem x = a[i][t], y = a[i][(t + 1) % a[i].size()];
      const Source s = by_diff[group_sub(grp, y, x).code];
      if (s.cycle == UINT32_MAX) continue;
      ids.push_back(std::uint64_t{s.cycle} * order + group_sub(grp, x, s.start).code);
    }
    std::sort(ids.begin(), ids.end());
    const auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
      const auto n = static_cast<std::uint32_t>(std::count(ids.begin(), ids.end(), *dup));
      return CycleOrthogonality{false, std::pair{i * order, static_cast<std::size_t>(*dup)}, n};
    }
  }
  return {};
}

}  // namespace heffter
