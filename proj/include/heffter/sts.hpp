#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "heffter/error.hpp"

namespace heffter {

using Triple = std::array<std::uint32_t, 3>;

/// A Steiner triple system on {0, ..., v-1}; triples sorted, list sorted.
struct SteinerTripleSystem {
  std::uint32_t v = 0;
  std::vector<Triple> triples;

  friend bool operator==(const SteinerTripleSystem&, const SteinerTripleSystem&) = default;
};

inline bool sts_order_admissible(std::uint32_t v) { return v % 6 == 1 || v % 6 == 3; }

inline SteinerTripleSystem normalize_sts(std::uint32_t v, std::vector<Triple> triples) {
  for (auto& t : triples) std::sort(t.begin(), t.end());
  std::sort(triples.begin(), triples.end());
  return {v, std::move(triples)};
}

/// Third point of the triple through each pair, as a v*v table; throws
/// NotAnSTS unless every pair lies in exactly one triple.
inline std::vector<std::uint32_t> completion_table(const SteinerTripleSystem& S) {
  const std::uint32_t v = S.v;
  if (!sts_order_admissible(v)) throw Error(Errc::not_an_sts, "no STS of order " + std::to_string(v));
  if (S.triples.size() != std::uint64_t{v} * (v - 1) / 6)
    throw Error(Errc::not_an_sts, std::to_string(S.triples.size()) + " triples for v = " + std::to_string(v));
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> third(std::uint64_t{v} * v, none);
  for (const auto& t : S.triples) {
    if (t[0] >= v || t[1] >= v || t[2] >= v || t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw Error(Errc::not_an_sts, "bad triple {" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                        std::to_string(t[2]) + "}");
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
      if (third[a * v + b] != none)
        throw Error(Errc::not_an_sts, "pair {" + std::to_string(a) + "," + std::to_string(b) + "} lies in two triples");
      third[a * v + b] = third[b * v + a] = c;
    }
  }
  return third;
}

inline void validate_sts(const SteinerTripleSystem& S) { completion_table(S); }

/// N(x): the pairs {y, z} with {x, y, z} a triple, as y < z.
inline std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> near_one_factorization(
    const SteinerTripleSystem& S) {
  validate_sts(S);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> N(S.v);
  for (const auto& t : S.triples) {
    N[t[0]].push_back({t[1], t[2]});
    N[t[1]].push_back({t[0], t[2]});
    N[t[2]].push_back({t[0], t[1]});
  }
  for (auto& f : N) std::sort(f.begin(), f.end());
  return N;
}

struct SuperOrthogonality {
  bool super_orthogonal = false;
  bool disjoint = false;
  /// Explanation of the first failure found, empty on success.
  std::string witness;
};

namespace detail {

inline std::optional<Triple> common_triple(const SteinerTripleSystem& S, const SteinerTripleSystem& T) {
  std::vector<Triple> both;
  std::set_intersection(S.triples.begin(), S.triples.end(), T.triples.begin(), T.triples.end(), std::back_inserter(both));
  if (both.empty()) return std::nullopt;
  return both.front();
}

inline std::string triple_string(const Triple& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
}

}  // namespace detail

/// Pairwise form: for {u,v,a}, {x,y,a} in S, the completions of {u,v} and
/// {x,y} in T must differ.
inline SuperOrthogonality super_orthogonal_by_pairs(const SteinerTripleSystem& S, const SteinerTripleSystem& T) {
  const auto third_s = completion_table(S);
  const auto third_t = completion_table(T);
  if (S.v != T.v) throw Error(Errc::vertex_set_mismatch, "STS of different orders");
  SuperOrthogonality r;
  if (auto t = detail::common_triple(S, T)) {
    r.witness = "common triple " + detail::triple_string(*t);
    return r;
  }
  r.disjoint = true;
  const std::uint32_t v = S.v;
  for (std::uint32_t a = 0; a < v; ++a) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t u = 0; u < v; ++u)
      if (u != a && third_s[a * v + u] > u) pairs.push_back({u, third_s[a * v + u]});
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const auto w = third_t[pairs[i].first * v + pairs[i].second];
        const auto z = third_t[pairs[j].first * v + pairs[j].second];
        if (w == z) {
          r.witness = "pairs {" + std::to_string(pairs[i].first) + "," + std::to_string(pairs[i].second) + "} and {" +
                      std::to_string(pairs[j].first) + "," + std::to_string(pairs[j].second) + "} meet " +
                      std::to_string(a) + " in S and " + std::to_string(w) + " in T";
          return r;
        }
      }
  }
  r.super_orthogonal = true;
  return r;
}

/// Near-1-factor form: disjoint, and N_S(a), N_T(c) share at most one pair.
inline SuperOrthogonality super_orthogonal_by_factors(const SteinerTripleSystem& S, const SteinerTripleSystem& T) {
  const auto NS = near_one_factorization(S);
  const auto NT = near_one_factorization(T);
  if (S.v != T.v) throw Error(Errc::vertex_set_mismatch, "STS of different orders");
  SuperOrthogonality r;
  if (auto t = detail::common_triple(S, T)) {
    r.witness = "common triple " + detail::triple_string(*t);
    return r;
  }
  r.disjoint = true;
  for (std::uint32_t a = 0; a < S.v; ++a)
    for (std::uint32_t c = 0; c < T.v; ++c) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> shared;
      std::set_intersection(NS[a].begin(), NS[a].end(), NT[c].begin(), NT[c].end(), std::back_inserter(shared));
      if (shared.size() > 1) {
        r.witness = "N_S(" + std::to_string(a) + ") and N_T(" + std::to_string(c) + ") share " +
                    std::to_string(shared.size()) + " pairs";
        return r;
      }
    }
  r.super_orthogonal = true;
  return r;
}

/// Both formulations; throws logic_error if they disagree.
inline SuperOrthogonality sts_super_orthogonal(const SteinerTripleSystem& S, const SteinerTripleSystem& T) {
  auto a = super_orthogonal_by_pairs(S, T);
  const auto b = super_orthogonal_by_factors(S, T);
  if (a.super_orthogonal != b.super_orthogonal || a.disjoint != b.disjoint)
    throw std::logic_error("super-orthogonality formulations disagree");
  return a;
}

/// Random STS(v) by Stinson's hill-climbing.
template <class Rng>
SteinerTripleSystem random_sts(std::uint32_t v, Rng& rng) {
  if (!sts_order_admissible(v) || v < 3) throw Error(Errc::not_an_sts, "no STS of order " + std::to_string(v));
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> third(std::uint64_t{v} * v, none);
  std::vector<std::uint32_t> live_degree(v, v - 1);
  const std::uint64_t target = std::uint64_t{v} * (v - 1) / 6;
  std::uint64_t count = 0;
  auto set_triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, bool add) {
    const std::uint32_t pts[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t x = pts[i], y = pts[(i + 1) % 3], z = pts[(i + 2) % 3];
      third[x * v + y] = third[y * v + x] = add ? z : none;
    }
    for (auto x : pts) live_degree[x] = add ? live_degree[x] - 2 : live_degree[x] + 2;
    count = add ? count + 1 : count - 1;
  };
  std::vector<std::uint32_t> live, free_nbrs;
  while (count < target) {
    live.clear();
    for (std::uint32_t x = 0; x < v; ++x)
      if (live_degree[x] > 0) live.push_back(x);
    const std::uint32_t x = live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)];
    free_nbrs.clear();
    for (std::uint32_t y = 0; y < v; ++y)
      if (y != x && third[x * v + y] == none) free_nbrs.push_back(y);
    std::shuffle(free_nbrs.begin(), free_nbrs.end(), rng);
    const std::uint32_t y = free_nbrs[0], z = free_nbrs[1];
    const std::uint32_t w = third[y * v + z];
    if (w != none) set_triple(y, z, w, false);
    set_triple(x, y, z, true);
  }
  std::vector<Triple> triples;
  for (std::uint32_t a = 0; a < v; ++a)
    for (std::uint32_t b = a + 1; b < v; ++b) {
      const auto c = third[a * v + b];
      if (c > b) triples.push_back({a, b, c});
    }
  auto S = normalize_sts(v, std::move(triples));
  validate_sts(S);
  return S;
}

/// Image of S under the point permutation perm.
inline SteinerTripleSystem relabel(const SteinerTripleSystem& S, const std::vector<std::uint32_t>& perm) {
  std::vector<Triple> t;
  t.reserve(S.triples.size());
  for (const auto& x : S.triples) t.push_back({perm[x[0]], perm[x[1]], perm[x[2]]});
  return normalize_sts(S.v, std::move(t));
}

/// Every STS on {0, ..., v-1}, by backtracking on the least uncovered pair.
/// Only practical for v <= 9 (840 systems at v = 9).
inline std::vector<SteinerTripleSystem> all_labelled_sts(std::uint32_t v) {
  if (!sts_order_admissible(v) || v > 9) throw Error(Errc::invalid_argument, "enumeration supports v in {3, 7, 9}");
  std::vector<char> covered(v * v, 0);
  std::vector<Triple> current;
  std::vector<SteinerTripleSystem> out;
  auto rec = [&](auto&& self) -> void {
    std::uint32_t a = v, b = v;
    for (std::uint32_t i = 0; i < v && a == v; ++i)
      for (std::uint32_t j = i + 1; j < v; ++j)
        if (!covered[i * v + j]) {
          a = i;
          b = j;
          break;
        }
    if (a == v) {
      out.push_back(normalize_sts(v, current));
      return;
    }
    for (std::uint32_t c = b + 1; c < v; ++c) {
      if (covered[a * v + c] || covered[b * v + c]) continue;
      for (auto [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) covered[x * v + y] = covered[y * v + x] = 1;
      current.push_back({a, b, c});
      self(self);
      current.pop_back();
      for (auto [x, y] : {std::pair{a, b}, std::pair{a, c}, std::pair{b, c}}) covered[x * v + y] = covered[y * v + x] = 0;
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.triples < y.triples; });
  return out;
}

/// A random cyclic STS(v) (invariant under x -> x + 1 mod v), built from
/// base triples {0, a, b} chosen by randomized backtracking over the
/// differences 1..(v-1)/2. For v = 3 (mod 6) the short orbit of
/// {0, v/3, 2v/3} is included. nullopt when none exists (v = 9).
template <class Rng>
std::optional<SteinerTripleSystem> random_cyclic_sts(std::uint32_t v, Rng& rng) {
  if (!sts_order_admissible(v) || v < 7) throw Error(Errc::not_an_sts, "no cyclic STS search for v = " + std::to_string(v));
  const std::uint32_t half = (v - 1) / 2;
  std::vector<char> used(half + 1, 0);
  auto dist = [&](std::uint32_t x) { x %= v; return std::min(x, v - x); };
  if (v % 6 == 3) used[v / 3] = 1;
  std::vector<Triple> base;
  std::vector<std::uint32_t> order(v - 1);
  std::iota(order.begin(), order.end(), 1);
  auto rec = [&](auto&& self) -> bool {
    std::uint32_t d = 1;
    while (d <= half && used[d]) ++d;
    if (d > half) return true;
    std::vector<std::uint32_t> cand = order;
    std::shuffle(cand.begin(), cand.end(), rng);
    for (std::uint32_t b : cand) {
      const std::uint32_t d1 = dist(b), d2 = dist(b + v - d);
      if (b == d || d1 == d || d2 == d || d1 == d2 || d1 == 0 || d2 == 0 || used[d1] || used[d2]) continue;
      used[d] = used[d1] = used[d2] = 1;
      base.push_back({0, d, b});
      if (self(self)) return true;
      base.pop_back();
      used[d] = used[d1] = used[d2] = 0;
    }
    return false;
  };
  if (!rec(rec)) return std::nullopt;
  std::vector<Triple> triples;
  for (const auto& t : base)
    for (std::uint32_t g = 0; g < v; ++g) triples.push_back({(t[0] + g) % v, (t[1] + g) % v, (t[2] + g) % v});
  if (v % 6 == 3)
    for (std::uint32_t g = 0; g < v / 3; ++g) triples.push_back({g, g + v / 3, g + 2 * v / 3});
  auto S = normalize_sts(v, std::move(triples));
  validate_sts(S);
  return S;
}

struct SuperOrthogonalSearch {
  std::optional<std::pair<SteinerTripleSystem, SteinerTripleSystem>> pair;
  std::uint64_t attempts = 0;
};

/// Randomized search for a super-orthogonal pair among random cyclic
/// STS(v); any pair returned has passed sts_super_orthogonal.
inline SuperOrthogonalSearch find_super_orthogonal_pair(std::uint32_t v, std::uint64_t seed,
                                                        std::uint64_t max_attempts = 100'000) {
  std::mt19937_64 rng(seed);
  SuperOrthogonalSearch out;
  while (out.attempts < max_attempts) {
    ++out.attempts;
    auto S = random_cyclic_sts(v, rng);
    auto T = random_cyclic_sts(v, rng);
    if (!S || !T) return out;
    if (sts_super_orthogonal(*S, *T).super_orthogonal) {
      out.pair = std::pair{std::move(*S), std::move(*T)};
      return out;
    }
  }
  return out;
}

}  // namespace heffter
