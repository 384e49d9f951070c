#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "heffter/field.hpp"
#include "heffter/group.hpp"

namespace heffter {

/// Checks that V contains exactly one of {x, -x} for every nonzero x of an
/// odd-order group. Returns a description of the first problem, if any.
template <AdditiveGroup G>
std::optional<std::string> half_set_problem(const G& grp, std::span<const Elem> V) {
  const std::uint64_t order = grp.order();
  if (order % 2 == 0 || order < 7)
    return "group order " + std::to_string(order) + " is not odd and at least 7";
  std::vector<char> seen(order, 0);
  for (Elem x : V) {
    if (x.code >= order) return "element " + std::to_string(x.code) + " is outside the group";
    if (x.code == 0) return "the identity 0 cannot belong to a half-set";
    const Elem minus = grp.neg(x);
    if (seen[x.code]) return "element " + std::to_string(x.code) + " is repeated";
    if (seen[minus.code])
      return "both " + std::to_string(minus.code) + " and " + std::to_string(x.code) + " = -" +
             std::to_string(minus.code) + " are present";
    seen[x.code] = 1;
  }
  for (std::uint32_t c = 1; c < order; ++c) {
    const Elem minus = grp.neg(Elem{c});
    if (!seen[c] && !seen[minus.code])
      return "neither " + std::to_string(c) + " nor " + std::to_string(minus.code) + " is present";
  }
  return std::nullopt;
}

template <AdditiveGroup G>
bool is_half_set(const G& grp, std::span<const Elem> V) {
  return !half_set_problem(grp, V).has_value();
}

/// Throws NotAHalfSet naming the offending pair.
template <AdditiveGroup G>
void validate_half_set(const G& grp, std::span<const Elem> V) {
  if (auto problem = half_set_problem(grp, V)) throw Error(Errc::not_a_half_set, *problem);
}

/// The nonzero squares of F_q, sorted by code. Requires q = 3 (mod 4).
inline std::vector<Elem> squares_half_set(const Field& f) {
  if (f.order() % 4 != 3)
    throw Error(Errc::wrong_congruence,
                "squares form a half-set only when q = 3 (mod 4); q = " + std::to_string(f.order()));
  std::vector<Elem> out;
  out.reserve((f.order() - 1) / 2);
  for (std::uint32_t m = 0; m < (f.order() - 1) / 2; ++m) out.push_back(f.exp(2 * static_cast<std::int64_t>(m)));
  std::sort(out.begin(), out.end());
  validate_half_set(f, out);
  return out;
}

}  // namespace heffter
