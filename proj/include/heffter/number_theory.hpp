#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace heffter {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Returns (p, n) with q = p^n, or nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint64_t, std::uint32_t>> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto primes = prime_divisors(q);
  if (primes.size() != 1) return std::nullopt;
  std::uint32_t n = 0;
  for (std::uint64_t r = q; r > 1; r /= primes[0]) ++n;
  return std::make_pair(primes[0], n);
}

inline bool is_prime_power(std::uint64_t q) { return as_prime_power(q).has_value(); }

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 result = 1 % m;
  unsigned __int128 b = base % m;
  while (e) {
    if (e & 1) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

/// floor(sqrt(n)) for 128-bit n.
inline unsigned __int128 isqrt(unsigned __int128 n) {
  if (n < 2) return n;
  unsigned __int128 lo = 1, hi = n;
  if (hi > (static_cast<unsigned __int128>(1) << 64)) hi = static_cast<unsigned __int128>(1) << 64;
  while (lo < hi) {
    unsigned __int128 mid = lo + (hi - lo + 1) / 2;
    if (mid <= n / mid)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline bool pairwise_coprime(const std::vector<std::uint64_t>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (std::gcd(xs[i], xs[j]) != 1) return false;
  return true;
}

}  // namespace heffter
