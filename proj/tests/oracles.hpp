#pragma once

// Reference implementations used as independent oracles in tests.

#include <cstdint>
#include <vector>

namespace oracle {

// Naive reference arithmetic for GF(p)[z] modulo a monic polynomial, used as
// an oracle independent of the table-driven Field.
struct NaivePoly {
  std::uint32_t p;
  std::vector<std::uint32_t> mod;  // monic, constant term first

  std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    const std::size_t n = mod.size() - 1;
    std::vector<std::uint64_t> prod(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) prod[i + j] += std::uint64_t{a[i]} * b[j];
    for (auto& c : prod) c %= p;
    for (std::size_t d = 2 * n - 1; d >= n; --d) {
      const std::uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::size_t i = 0; i < n; ++i) prod[d - n + i] = (prod[d - n + i] + (p - mod[i]) * c) % p;
    }
    return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n)};
  }

  std::uint64_t order_of_z() const {
    const std::size_t n = mod.size() - 1;
    std::vector<std::uint32_t> one(n, 0), z(n, 0), x(n, 0);
    one[0] = 1;
    z[1 % n] = (n == 1) ? (p - mod[0]) % p : 1;
    x = z;
    std::uint64_t k = 1;
    while (x != one) {
      x = mulmod(x, z);
      ++k;
      if (k > 100000) return 0;
    }
    return k;
  }

  std::vector<std::uint32_t> add(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
    return out;
  }

  std::vector<std::uint32_t> pow_z(std::uint64_t e) const {
    const std::size_t n = mod.size() - 1;
    std::vector<std::uint32_t> x(n, 0), z(n, 0);
    x[0] = 1;
    z[1] = 1;
    for (std::uint64_t i = 0; i < e; ++i) x = mulmod(x, z);
    return x;
  }
};

}  // namespace oracle
