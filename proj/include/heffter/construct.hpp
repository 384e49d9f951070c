#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "heffter/designs.hpp"
#include "heffter/field.hpp"
#include "heffter/packing.hpp"

namespace heffter {

/// The nonzero squares, listed as powers h^0, h^1, ... of h = g^2.
inline std::vector<Elem> squares_by_power(const Field& F) {
  std::vector<Elem> out;
  for (std::uint32_t m = 0; m < (F.order() - 1) / 2; ++m) out.push_back(F.exp(2 * std::int64_t{m}));
  return out;
}

/// Cosets of the subgroup of order `size` of the squares. Block j is
/// h^j * (1, s, s^2, ...) where s = h^(v/size) generates the subgroup.
inline BlockClass square_subgroup_cosets(const Field& F, std::uint32_t size) {
  const std::uint32_t v = (F.order() - 1) / 2;
  if (size == 0 || v % size != 0)
    throw Error(Errc::not_a_divisor, std::to_string(size) + " does not divide v = " + std::to_string(v));
  const std::uint32_t index = v / size;
  BlockClass cls;
  for (std::uint32_t j = 0; j < index; ++j) {
    OrderedBlock b;
    for (std::uint32_t i = 0; i < size; ++i) b.push_back(F.exp(2 * (std::int64_t{j} + std::int64_t{index} * i)));
    cls.push_back(std::move(b));
  }
  return cls;
}

/// One class per size k_i: the cosets of the k_i-th roots of unity inside
/// the squares. Requires q = 3 (mod 4) and pairwise coprime odd sizes whose
/// product is (q-1)/2.
inline HeffterSpace partial_partition_space(const Field& F, const std::vector<std::uint64_t>& sizes) {
  if (F.order() % 4 != 3) throw Error(Errc::wrong_congruence, "q = " + std::to_string(F.order()) + " is not 3 mod 4");
  for (auto k : sizes)
    if (k < 3 || k % 2 == 0) throw Error(Errc::invalid_argument, "block size " + std::to_string(k) + " is not odd and >= 3");
  if (!pairwise_coprime(sizes)) throw Error(Errc::not_coprime, "block sizes are not pairwise coprime");
  std::uint64_t product = 1;
  for (auto k : sizes) product *= k;
  const std::uint64_t v = (F.order() - 1) / 2;
  if (product != v)
    throw Error(Errc::wrong_product,
                "product of sizes is " + std::to_string(product) + ", expected (q-1)/2 = " + std::to_string(v));
  HeffterSpace S;
  S.halfset = squares_by_power(F);
  std::sort(S.halfset.begin(), S.halfset.end());
  for (auto k : sizes) S.classes.push_back(square_subgroup_cosets(F, static_cast<std::uint32_t>(k)));
  return S;
}

/// Develops a verified packing. For a ruler B of size k, with h = g^2 and
/// s = h^k, the classes are { B h^j s^i : i } for j = 0..k-1. Rulers are
/// taken in input order and each block keeps the order of its ruler.
inline HeffterSpace develop_packing(const Field& F, const DifferencePacking& rulers) {
  HeffterSpace S;
  S.halfset = squares_by_power(F);
  std::sort(S.halfset.begin(), S.halfset.end());
  if (rulers.empty()) return S;
  const std::uint32_t k = static_cast<std::uint32_t>(rulers[0].size());
  for (const auto& B : rulers)
    if (B.size() != k) throw Error(Errc::invalid_packing, "rulers have different sizes");
  const DesignReport rep = verify_packing(F, k, rulers);
  if (!rep.valid()) throw Error(Errc::invalid_packing, rep.violations.front());

  const std::uint32_t v = (F.order() - 1) / 2;
  for (const auto& B : rulers) {
    for (std::uint32_t j = 0; j < k; ++j) {
      BlockClass cls;
      for (std::uint32_t i = 0; i < v / k; ++i) {
        const Elem t = F.exp(2 * (std::int64_t{j} + std::int64_t{k} * i));
        OrderedBlock b;
        for (Elem x : B) b.push_back(F.mul(x, t));
        cls.push_back(std::move(b));
      }
      S.classes.push_back(std::move(cls));
    }
  }
  return S;
}

/// Appends the class of cosets of the index-k subgroup of the squares to a
/// developed configuration with constant block size k.
inline HeffterSpace extend_with_cosets(const Field& F, HeffterSpace S) {
  if (S.classes.empty() || S.classes[0].empty())
    throw Error(Errc::not_constant_block_size, "space has no blocks");
  const std::size_t k = S.classes[0][0].size();
  for (const auto& cls : S.classes)
    for (const auto& b : cls)
      if (b.size() != k) throw Error(Errc::not_constant_block_size, "block sizes are not constant");
  const std::uint32_t v = (F.order() - 1) / 2;
  if (v % k != 0) throw Error(Errc::no_divisibility, "k does not divide v");
  S.classes.push_back(square_subgroup_cosets(F, static_cast<std::uint32_t>(v / k)));
  return S;
}

/// Slope of a line class in Z_m x Z_m; -1 stands for infinity.
using Slope = std::int32_t;
inline constexpr Slope slope_infinity = -1;

/// Labeled net over Z_m x Z_m with f(i,j) = x^i y_j.
struct LabeledNet {
  HeffterSpace space;
  /// matrix[i][j] = x^i y_j.
  std::vector<std::vector<Elem>> matrix;
};

/// Lines {(i, s i + j) : i} for each j, or {i} x Z_m for slope infinity.
inline LabeledNet net_from_labeling(const Field& F, Elem x, const std::vector<Elem>& Y, const std::vector<Slope>& slopes) {
  const std::size_t m = Y.size();
  LabeledNet out;
  out.matrix.assign(m, std::vector<Elem>(m));
  Elem xi = F.one();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.matrix[i][j] = F.mul(xi, Y[j]);
    xi = F.mul(xi, x);
  }
  for (const auto& row : out.matrix) out.space.halfset.insert(out.space.halfset.end(), row.begin(), row.end());
  std::sort(out.space.halfset.begin(), out.space.halfset.end());
  for (Slope s : slopes) {
    BlockClass cls;
    for (std::size_t j = 0; j < m; ++j) {
      OrderedBlock b;
      for (std::size_t i = 0; i < m; ++i) {
        if (s == slope_infinity) b.push_back(out.matrix[j][i]);
        else b.push_back(out.matrix[i][(static_cast<std::size_t>(s) * i + j) % m]);
      }
      cls.push_back(std::move(b));
    }
    out.space.classes.push_back(std::move(cls));
  }
  return out;
}

/// Data for the (9n^2, 3n; 4) net over a field of order 18n^2 + 1.
struct NetSeed {
  std::uint32_t n = 0;
  Elem x;
  std::vector<Elem> Y;
};

/// n with q = 18n^2 + 1, n odd and n > 1.
inline std::uint32_t net_parameter(std::uint64_t q) {
  if (q < 19 || (q - 1) % 18 != 0) throw Error(Errc::wrong_form, "q = " + std::to_string(q) + " is not 18n^2+1");
  const std::uint64_t n2 = (q - 1) / 18;
  const auto n = static_cast<std::uint64_t>(isqrt(n2));
  if (n * n != n2) throw Error(Errc::wrong_form, "q = " + std::to_string(q) + " is not 18n^2+1");
  if (n % 2 == 0) throw Error(Errc::wrong_form, "n = " + std::to_string(n) + " is even");
  if (n == 1) throw Error(Errc::wrong_form, "n = 1 is excluded");
  return static_cast<std::uint32_t>(n);
}

inline Elem twisted_sum(const Field& F, Elem x, const std::vector<Elem>& Y, bool inverse) {
  const Elem step = inverse ? F.inv(x) : x;
  Elem xi = F.one(), s = F.zero();
  for (Elem y : Y) {
    s = F.add(s, F.mul(xi, y));
    xi = F.mul(xi, step);
  }
  return s;
}

/// Throws SeedInvariantViolated naming the first failed condition.
inline void check_net_seed(const Field& F, const NetSeed& seed) {
  const std::uint32_t n = net_parameter(F.order());
  if (seed.n != n) throw Error(Errc::seed_invariant_violated, "seed n does not match the field");
  const std::uint32_t m = 3 * n;
  auto fail = [](const std::string& what) { throw Error(Errc::seed_invariant_violated, what); };
  if (seed.x.code == 0 || seed.x.code >= F.order() || F.multiplicative_order(seed.x) != m)
    fail("x is not a primitive " + std::to_string(m) + "-th root of unity");
  if (seed.Y.size() != m) fail("Y does not have " + std::to_string(m) + " entries");
  std::vector<char> hit(m, 0);
  for (Elem y : seed.Y) {
    if (y.code == 0 || y.code >= F.order()) fail("coset coverage: Y contains 0 or an invalid code");
    hit[F.dlog(y) % m] = 1;
  }
  if (std::count(hit.begin(), hit.end(), 1) != m) fail("coset coverage: Y misses a coset of the " + std::to_string(m) + "-th powers");
  if (sum_of(F, std::span<const Elem>(seed.Y)).code != 0) fail("sum of Y is not zero");
  if (twisted_sum(F, seed.x, seed.Y, false).code != 0) fail("sigma is not zero");
  if (twisted_sum(F, seed.x, seed.Y, true).code != 0) fail("sigma' is not zero");
}

/// Four classes of the (9n^2, 3n; 4) net: columns (i, j) with j fixed, right
/// diagonals (i, j+i), left diagonals (i, j-i), and rows {i} x Z_3n.
inline LabeledNet net_via_roots(const Field& F, const NetSeed& seed) {
  check_net_seed(F, seed);
  const Slope m = static_cast<Slope>(3 * seed.n);
  return net_from_labeling(F, seed.x, seed.Y, {0, 1, m - 1, slope_infinity});
}

/// Labeling of AG(2,11) lines by the field of order 3^5.
struct SlopeLabeling {
  Elem x;
  std::vector<Elem> Y;
  std::vector<Slope> slopes;
};

/// Sum of x^i y_(s i) over i, or of Y itself for slope infinity.
inline Elem slope_sum(const Field& F, Elem x, const std::vector<Elem>& Y, Slope s) {
  if (s == slope_infinity) return sum_of(F, std::span<const Elem>(Y));
  const std::size_t m = Y.size();
  Elem xi = F.one(), sum = F.zero();
  for (std::size_t i = 0; i < m; ++i) {
    sum = F.add(sum, F.mul(xi, Y[(static_cast<std::size_t>(s) * i) % m]));
    xi = F.mul(xi, x);
  }
  return sum;
}

inline void check_slope_labeling(const Field& F, const SlopeLabeling& L) {
  const std::size_t m = L.Y.size();
  if (m < 3 || (F.order() - 1) % (2 * m) != 0)
    throw Error(Errc::invalid_argument, "labeling size does not match the field");
  if (F.multiplicative_order(L.x) != m)
    throw Error(Errc::invalid_argument, "x is not a primitive " + std::to_string(m) + "-th root of unity");
  std::vector<char> hit(m, 0);
  for (Elem y : L.Y) hit[F.dlog(y) % m] = 1;
  if (std::count(hit.begin(), hit.end(), 1) != static_cast<std::ptrdiff_t>(m))
    throw Error(Errc::invalid_argument, "dlogs of Y are not distinct mod " + std::to_string(m));
  for (Slope s : L.slopes) {
    if (s != slope_infinity && (s < 0 || static_cast<std::size_t>(s) >= m))
      throw Error(Errc::invalid_argument, "slope " + std::to_string(s) + " out of range");
    if (slope_sum(F, L.x, L.Y, s).code != 0)
      throw Error(Errc::identity_violated,
                  "slope " + (s == slope_infinity ? std::string("inf") : std::to_string(s)) + ": sum is not zero");
  }
}

/// Net whose classes are the lines of AG(2, |Y|) with the given slopes.
inline LabeledNet net_ag2_11(const Field& F, const SlopeLabeling& L) {
  check_slope_labeling(F, L);
  return net_from_labeling(F, L.x, L.Y, L.slopes);
}

}  // namespace heffter
