#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "heffter/designs.hpp"
#include "heffter/field.hpp"

namespace heffter {

/// A family of rulers over one field.
using DifferencePacking = std::vector<OrderedBlock>;

/// Checks the shared preconditions of ruler work: q = 3 (mod 4) and k | v.
inline std::uint32_t ruler_order(const Field& F, std::uint32_t k) {
  if (F.order() % 4 != 3)
    throw Error(Errc::wrong_congruence, "q = " + std::to_string(F.order()) + " is not 3 mod 4");
  const std::uint32_t v = (F.order() - 1) / 2;
  if (k < 3 || v % k != 0)
    throw Error(Errc::no_divisibility, "k = " + std::to_string(k) + " does not divide v = " + std::to_string(v));
  return v;
}

/// The isomorphism from the nonzero squares onto Z_v with g^(2m) -> m.
inline std::uint32_t phi(const Field& F, Elem x) {
  if (!F.is_square(x)) throw Error(Errc::element_not_square, std::to_string(x.code) + " is not a nonzero square");
  return F.dlog(x) / 2;
}

/// phi-differences phi(a) - phi(b) over ordered pairs of distinct positions.
inline std::vector<std::uint32_t> phi_differences(const Field& F, std::span<const Elem> B) {
  const std::uint32_t v = (F.order() - 1) / 2;
  std::vector<std::uint32_t> ph;
  for (Elem x : B) ph.push_back(phi(F, x));
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < ph.size(); ++i)
    for (std::size_t j = 0; j < ph.size(); ++j)
      if (i != j) out.push_back((ph[i] + v - ph[j]) % v);
  return out;
}

namespace detail {

/// Appends H1-H3 and simplicity failures of one ruler.
inline void check_ruler(const Field& F, std::uint32_t k, std::span<const Elem> B, const std::string& prefix,
                        std::vector<std::string>& out) {
  const std::uint32_t v = (F.order() - 1) / 2;
  for (Elem x : B)
    if (x.code >= F.order() || !F.is_square(x))
      throw Error(Errc::element_not_square, std::to_string(x.code) + " is not a nonzero square");
  if (B.size() != k)
    out.push_back(prefix + "ruler has " + std::to_string(B.size()) + " elements, expected " + std::to_string(k));

  std::vector<char> seen(v, 0);
  for (auto d : phi_differences(F, B)) {
    if (d == 0) {
      out.push_back(prefix + "H1: repeated element");
      continue;
    }
    if (seen[d]) out.push_back(prefix + "H1: phi-difference " + std::to_string(d) + " is repeated");
    seen[d] = 1;
  }

  std::vector<char> residue(k, 0);
  for (Elem x : B) residue[phi(F, x) % k] = 1;
  for (std::uint32_t r = 0; r < k; ++r)
    if (!residue[r]) out.push_back(prefix + "H2: no element with phi = " + std::to_string(r) + " mod " + std::to_string(k));

  const Elem s = sum_of(F, B);
  if (s.code != 0) out.push_back(prefix + "H3: elements sum to " + std::to_string(s.code) + ", not 0");
  else if (!is_simple_ordering(F, B))
    out.push_back(prefix + "ordering " + format_block(B) + " is not simple");
}

}  // namespace detail

/// Checks H1 (repeat-free phi-differences), H2 (phi(B) complete mod k),
/// H3 (zero-sum) and simplicity of the given order.
inline DesignReport verify_ruler(const Field& F, std::uint32_t k, std::span<const Elem> B) {
  const std::uint32_t v = ruler_order(F, k);
  DesignReport rep;
  rep.kind = DesignKind::ruler;
  rep.v = v;
  rep.sizes = {k};
  rep.r = k;
  detail::check_ruler(F, k, B, "", rep.violations);
  if (rep.valid()) rep.density = Rational(std::int64_t{k} * (k - 1), v - 1);
  return rep;
}

/// Every ruler valid and the phi-difference lists pairwise disjoint. The
/// reported density is that of the developed configuration.
inline DesignReport verify_packing(const Field& F, std::uint32_t k, const DifferencePacking& rulers) {
  const std::uint32_t v = ruler_order(F, k);
  DesignReport rep;
  rep.kind = DesignKind::packing;
  rep.v = v;
  rep.r = std::size_t{k} * rulers.size();
  std::vector<std::int64_t> owner(v, -1);
  for (std::size_t i = 0; i < rulers.size(); ++i) {
    rep.sizes.push_back(k);
    const std::string prefix = "ruler " + std::to_string(i) + ": ";
    detail::check_ruler(F, k, rulers[i], prefix, rep.violations);
    for (auto d : phi_differences(F, rulers[i])) {
      if (d == 0) continue;
      if (owner[d] >= 0 && owner[d] != static_cast<std::int64_t>(i))
        rep.violations.push_back(prefix + "phi-difference " + std::to_string(d) + " also occurs in ruler " +
                                 std::to_string(owner[d]));
      owner[d] = static_cast<std::int64_t>(i);
    }
  }
  if (rep.valid() && !rulers.empty())
    rep.density = Rational(static_cast<std::int64_t>(rulers.size()) * k * (k - 1), v - 1);
  return rep;
}

/// Orbit representative under multiplication by squares: the least sorted
/// code sequence among B * b^-1 over b in B.
inline std::vector<Elem> ruler_canonical_form(const Field& F, std::span<const Elem> B) {
  std::vector<Elem> best;
  for (Elem b : B) {
    const Elem t = F.inv(b);
    std::vector<Elem> scaled;
    for (Elem x : B) scaled.push_back(F.mul(x, t));
    std::sort(scaled.begin(), scaled.end());
    if (best.empty() || scaled < best) best = std::move(scaled);
  }
  return best;
}

}  // namespace heffter
