#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/group.hpp"
#include "heffter/number_theory.hpp"

namespace heffter {

/// The finite field GF(p^n) with a fixed primitive element and a full
/// discrete-log table.
///
/// Elements are coded as sum(c_i * p^i) where (c_0, ..., c_{n-1}) are the
/// coefficients in the basis {1, z, ..., z^{n-1}} and z is a root of the
/// modulus. For prime fields the code is the residue itself.
///
/// A Field is immutable after construction and safe for concurrent reads.
class Field {
 public:
  /// Builds GF(p^n). `modulus` is given constant term first and must be monic
  /// of degree n; when omitted the lexicographically least primitive
  /// polynomial is used (coefficients compared constant term first). The
  /// generator defaults to the least primitive element by code.
  ///
  /// For n = 1 the modulus is z - g; a supplied linear modulus fixes g as its
  /// root.
  static Field build(std::uint32_t p, std::uint32_t n,
                     std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                     std::optional<std::uint32_t> generator = std::nullopt) {
    if (!is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
    if (n == 0) throw Error(Errc::invalid_argument, "extension degree must be at least 1");
    const std::uint64_t q64 = ipow(p, n);
    if (q64 > (1u << 26)) throw Error(Errc::invalid_argument, "field order too large for table arithmetic");

    Field f;
    f.p_ = p;
    f.n_ = n;
    f.q_ = static_cast<std::uint32_t>(q64);
    f.pow_p_.resize(n + 1, 1);
    for (std::uint32_t i = 1; i <= n; ++i) f.pow_p_[i] = f.pow_p_[i - 1] * p;

    if (n == 1) {
      std::optional<std::uint32_t> g = generator;
      if (modulus) {
        if (modulus->size() != 2 || (*modulus)[1] != 1 || (*modulus)[0] >= p)
          throw Error(Errc::invalid_argument, "linear modulus must be z + c0 with c0 < p");
        std::uint32_t root = ((*modulus)[0] == 0) ? 0 : p - (*modulus)[0];
        if (!f.is_primitive_prime(root))
          throw Error(Errc::not_primitive_polynomial, "root " + std::to_string(root) + " is not primitive");
        if (g && *g != root)
          throw Error(Errc::invalid_argument, "generator does not match the root of the modulus");
        g = root;
      }
      if (g) {
        if (*g >= p || !f.is_primitive_prime(*g))
          throw Error(Errc::not_primitive_element,
                      std::to_string(*g) + " is not a primitive element of GF(" + std::to_string(p) + ")");
      } else {
        for (std::uint32_t c = 1; c < p; ++c)
          if (f.is_primitive_prime(c)) {
            g = c;
            break;
          }
      }
      f.gen_ = *g;
      f.modulus_ = {(p - *g) % p, 1};
    } else {
      if (modulus) {
        const auto& m = *modulus;
        if (m.size() != n + 1 || m[n] != 1)
          throw Error(Errc::invalid_argument, "modulus must be monic of degree " + std::to_string(n));
        for (auto c : m)
          if (c >= p) throw Error(Errc::invalid_argument, "modulus coefficient out of range");
        if (!poly_irreducible(m, p)) throw Error(Errc::not_irreducible, "modulus is reducible over GF(p)");
        f.modulus_ = m;
        if (!f.is_primitive_slow(p))  // p is the code of z
          throw Error(Errc::not_primitive_polynomial, "root of the modulus is not a primitive element");
      } else {
        f.modulus_ = f.least_primitive_polynomial();
      }
      if (generator) {
        if (*generator >= f.q_ || !f.is_primitive_slow(*generator))
          throw Error(Errc::not_primitive_element, std::to_string(*generator) + " is not a primitive element");
        f.gen_ = *generator;
      } else {
        for (std::uint32_t c = 1; c < f.q_; ++c)
          if (f.is_primitive_slow(c)) {
            f.gen_ = c;
            break;
          }
      }
    }
    f.build_tables();
    return f;
  }

  static Field prime(std::uint32_t p, std::optional<std::uint32_t> generator = std::nullopt) {
    return build(p, 1, std::nullopt, generator);
  }

  /// Field of order q (must be a prime power) with default modulus and generator.
  static Field of_order(std::uint64_t q) {
    auto pp = as_prime_power(q);
    if (!pp) throw Error(Errc::not_prime, std::to_string(q) + " is not a prime power");
    return build(static_cast<std::uint32_t>(pp->first), pp->second);
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return n_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Elem generator() const noexcept { return Elem{gen_}; }
  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }

  Elem element(std::uint32_t code) const {
    if (code >= q_) throw Error(Errc::index_out_of_range, "code " + std::to_string(code) + " outside field");
    return Elem{code};
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (n_ == 1) return Elem{(a.code + b.code) % p_};
    std::uint32_t r = 0;
    std::uint32_t x = a.code, y = b.code;
    for (std::uint32_t i = 0; i < n_; ++i) {
      r += ((x % p_ + y % p_) % p_) * pow_p_[i];
      x /= p_;
      y /= p_;
    }
    return Elem{r};
  }

  Elem neg(Elem a) const noexcept {
    if (n_ == 1) return Elem{a.code == 0 ? 0 : p_ - a.code};
    std::uint32_t r = 0, x = a.code;
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t d = x % p_;
      r += ((p_ - d) % p_) * pow_p_[i];
      x /= p_;
    }
    return Elem{r};
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a.code == 0 || b.code == 0) return Elem{0};
    return Elem{exp_[log_[a.code] + log_[b.code]]};
  }

  Elem inv(Elem a) const {
    if (a.code == 0) throw Error(Errc::division_by_zero, "inverse of zero");
    const std::uint32_t l = log_[a.code];
    return Elem{exp_[l == 0 ? 0 : (q_ - 1) - l]};
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::int64_t e) const {
    if (a.code == 0) {
      if (e < 0) throw Error(Errc::division_by_zero, "negative power of zero");
      return Elem{e == 0 ? 1u : 0u};
    }
    return exp(static_cast<std::int64_t>(log_[a.code]) * (e % static_cast<std::int64_t>(q_ - 1)));
  }

  /// g^m for any integer m.
  Elem exp(std::int64_t m) const noexcept {
    const std::int64_t period = q_ - 1;
    std::int64_t r = m % period;
    if (r < 0) r += period;
    return Elem{exp_[static_cast<std::size_t>(r)]};
  }

  /// Exponent of x with respect to the generator, in [0, q-1).
  std::uint32_t dlog(Elem x) const {
    if (x.code == 0) throw Error(Errc::zero_argument, "discrete log of zero");
    if (x.code >= q_) throw Error(Errc::index_out_of_range, "code outside field");
    return log_[x.code];
  }

  bool is_square(Elem x) const noexcept {
    if (x.code == 0) return false;
    if (p_ == 2) return true;
    return log_[x.code] % 2 == 0;
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(Elem x) const {
    const std::uint64_t l = dlog(x);
    return (q_ - 1) / std::gcd<std::uint64_t, std::uint64_t>(l, q_ - 1);
  }

  /// C^e_i = { g^(i + e j) : 0 <= j < (q-1)/e }, listed by increasing j.
  std::vector<Elem> cyclotomic_class(std::uint32_t e, std::uint32_t i) const {
    if (e == 0 || (q_ - 1) % e != 0)
      throw Error(Errc::not_a_divisor, std::to_string(e) + " does not divide q-1 = " + std::to_string(q_ - 1));
    if (i >= e) throw Error(Errc::index_out_of_range, "class index " + std::to_string(i) + " >= " + std::to_string(e));
    std::vector<Elem> out;
    out.reserve((q_ - 1) / e);
    for (std::uint32_t j = 0; j < (q_ - 1) / e; ++j) out.push_back(exp(static_cast<std::int64_t>(i) + std::int64_t{e} * j));
    return out;
  }

  /// Index i of the class C^e_i containing x.
  std::uint32_t cyclotomic_index(Elem x, std::uint32_t e) const { return dlog(x) % e; }

  /// Coefficient vector (c_0, ..., c_{n-1}) of an element.
  std::vector<std::uint32_t> digits(Elem x) const {
    std::vector<std::uint32_t> d(n_);
    std::uint32_t c = x.code;
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = c % p_;
      c /= p_;
    }
    return d;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    if (d.size() != n_) throw Error(Errc::invalid_argument, "wrong number of coefficients");
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (d[i] >= p_) throw Error(Errc::invalid_argument, "coefficient out of range");
      c += d[i] * pow_p_[i];
    }
    return Elem{c};
  }

  /// Concatenated coefficient digits, constant term first (p < 10 only).
  std::string coefficient_string(Elem x) const {
    std::string s;
    for (auto d : digits(x)) s += std::to_string(d);
    return s;
  }

  /// The header line used in certificate files.
  std::string header() const {
    std::ostringstream os;
    os << "field p=" << p_ << " n=" << n_ << " q=" << q_ << " modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << " generator=" << gen_;
    return os.str();
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.modulus_ == b.modulus_ && a.gen_ == b.gen_;
  }

  // Polynomial helpers over GF(p), coefficient vectors constant term first.
  using Poly = std::vector<std::uint32_t>;

  static void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  static Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    poly_trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = static_cast<std::uint32_t>(powmod(b.back(), p - 2, p));
    while (a.size() >= b.size()) {
      const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        const std::uint64_t sub = factor * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
      poly_trim(a);
    }
    return a;
  }

  /// Irreducibility by trial division with every monic polynomial of degree <= deg/2.
  static bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
      const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
      for (std::uint64_t t = 0; t < count; ++t) {
        Poly g(d + 1);
        std::uint64_t x = t;
        for (std::size_t i = 0; i < d; ++i) {
          g[i] = static_cast<std::uint32_t>(x % p);
          x /= p;
        }
        g[d] = 1;
        if (poly_rem(f, g, p).empty()) return false;
      }
    }
    return true;
  }

 private:
  Field() = default;

  bool is_primitive_prime(std::uint32_t c) const {
    if (c == 0 || c >= p_) return false;
    if (p_ == 2) return c == 1;
    for (auto r : prime_divisors(p_ - 1))
      if (powmod(c, (p_ - 1) / r, p_) == 1) return false;
    return true;
  }

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    Poly pa(n_), pb(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      pa[i] = a % p_;
      a /= p_;
      pb[i] = b % p_;
      b /= p_;
    }
    Poly prod(2 * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % p_);
    Poly r = poly_rem(prod, modulus_, p_);
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < r.size(); ++i) code += r[i] * pow_p_[i];
    return code;
  }

  std::uint32_t pow_slow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1;
    while (e) {
      if (e & 1) result = mul_slow(result, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return result;
  }

  bool is_primitive_slow(std::uint32_t c) const {
    if (c == 0) return false;
    const std::uint64_t m = q_ - 1;
    if (pow_slow(c, m) != 1) return false;
    for (auto r : prime_divisors(m))
      if (pow_slow(c, m / r) == 1) return false;
    return true;
  }

  Poly least_primitive_polynomial() {
    const std::uint64_t count = ipow(p_, n_);
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly m(n_ + 1);
      // c_0 is the most significant digit of t.
      std::uint64_t x = t;
      for (std::uint32_t i = n_; i-- > 0;) {
        m[i] = static_cast<std::uint32_t>(x % p_);
        x /= p_;
      }
      m[n_] = 1;
      if (m[0] == 0 || !poly_irreducible(m, p_)) continue;
      modulus_ = m;
      if (is_primitive_slow(p_)) return m;
    }
    throw Error(Errc::not_primitive_polynomial, "no primitive polynomial found");
  }

  void build_tables() {
    const std::uint32_t m = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(m), 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = (n_ == 1) ? static_cast<std::uint32_t>(std::uint64_t{x} * gen_ % p_) : mul_slow(x, gen_);
    }
    for (std::uint32_t i = 0; i < m; ++i) exp_[m + i] = exp_[i];
  }

  std::uint32_t p_ = 0, n_ = 0, q_ = 0, gen_ = 0;
  std::vector<std::uint32_t> pow_p_;
  Poly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace heffter
