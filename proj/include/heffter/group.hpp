#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "heffter/error.hpp"

namespace heffter {

/// A group or field element, identified by its canonical code in [0, order).
/// Code 0 is always the additive identity.
struct Elem {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
  friend std::ostream& operator<<(std::ostream& os, Elem e) { return os << e.code; }
};

using OrderedBlock = std::vector<Elem>;

inline OrderedBlock make_block(std::initializer_list<std::uint32_t> codes) {
  OrderedBlock b;
  b.reserve(codes.size());
  for (auto c : codes) b.push_back(Elem{c});
  return b;
}

inline OrderedBlock make_block(std::span<const std::uint32_t> codes) {
  OrderedBlock b;
  b.reserve(codes.size());
  for (auto c : codes) b.push_back(Elem{c});
  return b;
}

/// Any finite abelian group whose elements are encoded as Elem codes.
template <class G>
concept AdditiveGroup = requires(const G& g, Elem a, Elem b) {
  { g.add(a, b) } -> std::same_as<Elem>;
  { g.neg(a) } -> std::same_as<Elem>;
  { g.order() } -> std::convertible_to<std::uint64_t>;
};

/// Z_n with the residue as code.
class CyclicGroup {
 public:
  explicit CyclicGroup(std::uint32_t n) : n_(n) {
    if (n == 0) throw Error(Errc::invalid_argument, "cyclic group of order 0");
  }

  std::uint32_t order() const noexcept { return n_; }
  Elem zero() const noexcept { return {}; }
  Elem add(Elem a, Elem b) const noexcept {
    return Elem{static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % n_)};
  }
  Elem neg(Elem a) const noexcept { return Elem{a.code == 0 ? 0 : n_ - a.code}; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

 private:
  std::uint32_t n_;
};

template <AdditiveGroup G>
Elem group_sub(const G& g, Elem a, Elem b) {
  return g.add(a, g.neg(b));
}

template <AdditiveGroup G>
Elem sum_of(const G& g, std::span<const Elem> xs) {
  Elem s{};
  for (Elem x : xs) s = g.add(s, x);
  return s;
}

template <AdditiveGroup G>
std::vector<Elem> partial_sums(const G& g, std::span<const Elem> xs) {
  std::vector<Elem> out;
  out.reserve(xs.size());
  Elem s{};
  for (Elem x : xs) {
    s = g.add(s, x);
    out.push_back(s);
  }
  return out;
}

/// True iff the running partial sums of the ordered block are pairwise distinct.
template <AdditiveGroup G>
bool is_simple_ordering(const G& g, std::span<const Elem> xs) {
  std::vector<Elem> sums = partial_sums(g, xs);
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

}  // namespace heffter

template <>
struct std::hash<heffter::Elem> {
  std::size_t operator()(heffter::Elem e) const noexcept { return std::hash<std::uint32_t>{}(e.code); }
};
