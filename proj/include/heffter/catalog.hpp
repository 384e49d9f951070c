#pragma once

#include <cstdint>
#include <vector>

#include "heffter/construct.hpp"
#include "heffter/designs.hpp"
#include "heffter/field.hpp"

/// Built-in reference objects.
namespace heffter::catalog {

inline HeffterSystem make_system(const std::vector<std::uint32_t>& halfset,
                                 const std::vector<std::vector<std::uint32_t>>& blocks) {
  HeffterSystem s;
  s.halfset = make_block(std::span<const std::uint32_t>(halfset));
  for (const auto& b : blocks) s.blocks.push_back(make_block(std::span<const std::uint32_t>(b)));
  return s;
}

inline const std::vector<std::uint32_t>& z41_halfset() {
  static const std::vector<std::uint32_t> v{1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 15, 19, 21, 23, 24, 25, 27, 29, 33};
  return v;
}

/// Three mutually orthogonal (20,4) systems over Z_41.
inline std::vector<HeffterSystem> z41_systems() {
  return {
      make_system(z41_halfset(), {{1, 3, 4, 33}, {2, 5, 13, 21}, {6, 23, 24, 29}, {7, 9, 10, 15}, {11, 19, 25, 27}}),
      make_system(z41_halfset(), {{1, 2, 9, 29}, {3, 6, 13, 19}, {4, 5, 7, 25}, {10, 21, 24, 27}, {11, 15, 23, 33}}),
      make_system(z41_halfset(), {{1, 6, 7, 27}, {2, 4, 11, 24}, {3, 5, 10, 23}, {9, 19, 21, 33}, {13, 15, 25, 29}}),
  };
}

/// The (F_71, 5) ruler {3^0, 3^21, 3^27, 3^18, 3^34}.
inline OrderedBlock ruler71() { return make_block({1, 25, 49, 43, 24}); }

struct RulerEntry {
  std::uint32_t k;
  std::uint32_t q;
  std::vector<std::uint32_t> ruler;
};

/// Smallest-q simple rulers for k = 3..13.
inline const std::vector<RulerEntry>& minimal_rulers() {
  static const std::vector<RulerEntry> table{
      {3, 67, {1, 10, 56}},
      {5, 71, {1, 25, 49, 43, 24}},
      {7, 211, {1, 4, 82, 64, 154, 59, 58}},
      {9, 271, {1, 36, 110, 44, 179, 56, 224, 156, 7}},
      {11, 419, {1, 4, 148, 64, 388, 45, 226, 363, 48, 73, 316}},
      {13, 599, {1, 49, 515, 245, 181, 526, 117, 34, 332, 432, 130, 424, 9}},
  };
  return table;
}

/// A (F_151, 5; 2) packing.
inline std::vector<OrderedBlock> packing151() {
  return {make_block({1, 36, 58, 110, 97}), make_block({1, 78, 22, 139, 62})};
}

/// Net seeds for q = 163, 883, 1459 (n = 3, 7, 9).
inline NetSeed net_seed(std::uint32_t q) {
  NetSeed seed;
  std::vector<std::uint32_t> Y;
  auto powers = [&](std::uint32_t base, std::uint32_t count) {
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < count; ++i) {
      Y.push_back(x);
      x = x * base % q;
    }
  };
  switch (q) {
    case 163:
      seed.n = 3;
      seed.x = Elem{40};
      Y = {1, 2, 160, 142, 119, 84, 36, 128, 143};
      break;
    case 883:
      seed.n = 7;
      seed.x = Elem{729};
      powers(2, 14);
      Y.insert(Y.end(), {490, 97, 60, 72, 483, 680, 278});
      break;
    case 1459:
      seed.n = 9;
      seed.x = Elem{1080};
      powers(3, 20);
      Y.insert(Y.end(), {546, 597, 652, 1307, 1386, 467, 1338});
      break;
    default:
      throw Error(Errc::invalid_argument, "no built-in net seed for q = " + std::to_string(q));
  }
  seed.Y = make_block(std::span<const std::uint32_t>(Y));
  return seed;
}

/// GF(3^5) with modulus z^5 + 2z^4 + 1.
inline Field gf243() { return Field::build(3, 5, std::vector<std::uint32_t>{1, 0, 0, 0, 2, 1}); }

inline const std::vector<std::uint32_t>& ag211_exponents() {
  static const std::vector<std::uint32_t> e{0, 1, 18, 3, 81, 27, 54, 162, 6, 9, 2};
  return e;
}

inline const std::vector<Slope>& ag211_slopes() {
  static const std::vector<Slope> s{0, 1, 2, 3, 5, 7, 9, 10, slope_infinity};
  return s;
}

/// x = g^22, Y = powers of g with exponents ag211_exponents().
inline SlopeLabeling ag211_labeling(const Field& F) {
  SlopeLabeling L;
  L.x = F.exp(22);
  for (auto e : ag211_exponents()) L.Y.push_back(F.exp(e));
  L.slopes = ag211_slopes();
  return L;
}

}  // namespace heffter::catalog
