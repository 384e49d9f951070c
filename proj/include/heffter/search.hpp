#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heffter/construct.hpp"
#include "heffter/designs.hpp"
#include "heffter/field.hpp"
#include "heffter/packing.hpp"
#include "heffter/parallel.hpp"

namespace heffter {

enum class SearchMode { first, all };

struct SearchOptions {
  unsigned threads = 1;
  /// Stop after this many results (0 = no limit). Applies to mode all.
  std::size_t limit = 0;
};

namespace detail {

/// Depth-first enumeration of normalized rulers in phi coordinates: phi_0 = 0
/// and phi_i = i (mod k), candidates in increasing phi. The last element is
/// forced by the zero-sum condition.
class RulerEnumerator {
 public:
  RulerEnumerator(const Field& F, std::uint32_t k) : F_(F), k_(k), v_((F.order() - 1) / 2), used_(v_, 0) {}

  /// Runs the subtree with phi_1 = 1 + k * t1, calling emit(ruler) for each
  /// ruler found; emit returns false to stop.
  void run_subtree(std::uint32_t t1, const std::function<bool(const OrderedBlock&)>& emit,
                   const std::function<bool()>& stop = {}) {
    emit_ = &emit;
    stop_ = stop ? &stop : nullptr;
    halted_ = false;
    phis_ = {0};
    elems_ = {F_.one()};
    sum_ = F_.one();
    std::fill(used_.begin(), used_.end(), 0);
    if (k_ == 3) {
      // The second element is fixed by t1 and the third is forced.
      place_last_after(1 + k_ * t1);
      return;
    }
    if (try_push(1 + k_ * t1)) {
      descend();
      pop();
    }
  }

  std::uint32_t branch_count() const { return v_ / k_; }

 private:
  bool try_push(std::uint32_t phi) {
    std::vector<std::uint32_t> added;
    added.reserve(2 * phis_.size());
    for (auto p : phis_) {
      const std::uint32_t d1 = (phi + v_ - p) % v_, d2 = (p + v_ - phi) % v_;
      if (d1 == d2 || used_[d1] || used_[d2]) {
        for (auto a : added) used_[a] = 0;
        return false;
      }
      used_[d1] = used_[d2] = 1;
      added.push_back(d1);
      added.push_back(d2);
    }
    const Elem x = F_.exp(2 * std::int64_t{phi});
    phis_.push_back(phi);
    elems_.push_back(x);
    sum_ = F_.add(sum_, x);
    return true;
  }

  void pop() {
    const std::uint32_t phi = phis_.back();
    phis_.pop_back();
    sum_ = F_.sub(sum_, elems_.back());
    elems_.pop_back();
    for (auto p : phis_) {
      used_[(phi + v_ - p) % v_] = 0;
      used_[(p + v_ - phi) % v_] = 0;
    }
  }

  void descend() {
    if (halted_) return;
    if (stop_ && (*stop_)()) {
      halted_ = true;
      return;
    }
    const std::uint32_t i = static_cast<std::uint32_t>(phis_.size());
    if (i == k_ - 1) {
      finish();
      return;
    }
    for (std::uint32_t t = 0; t < v_ / k_ && !halted_; ++t) {
      if (try_push(i + k_ * t)) {
        descend();
        pop();
      }
    }
  }

  void place_last_after(std::uint32_t phi1) {
    if (try_push(phi1)) {
      finish();
      pop();
    }
  }

  void finish() {
    const Elem last = F_.neg(sum_);
    if (last.code == 0 || !F_.is_square(last)) return;
    const std::uint32_t phi = F_.dlog(last) / 2;
    if (phi % k_ != k_ - 1) return;
    if (!try_push(phi)) return;
    auto ordered = order_for_simplicity(F_, std::span<const Elem>(elems_));
    pop();
    if (!ordered) return;
    if (!(*emit_)(*ordered)) halted_ = true;
  }

  const Field& F_;
  std::uint32_t k_, v_;
  std::vector<char> used_;
  std::vector<std::uint32_t> phis_;
  std::vector<Elem> elems_;
  Elem sum_;
  const std::function<bool(const OrderedBlock&)>* emit_ = nullptr;
  const std::function<bool()>* stop_ = nullptr;
  bool halted_ = false;
};

}  // namespace detail

/// Simple rulers normalized to contain 1, one element per coset of the
/// index-k subgroup of the squares, in increasing phi order of the coset
/// representatives. Each ruler is stored in its least simple ordering.
inline std::vector<OrderedBlock> search_rulers(const Field& F, std::uint32_t k, SearchMode mode,
                                               const SearchOptions& opt = {}) {
  const std::uint32_t v = ruler_order(F, k);
  if (std::uint64_t{k} * (k - 1) > v - 1) return {};
  const std::uint32_t branches = v / k;
  if (mode == SearchMode::first) {
    auto found = parallel_first<OrderedBlock>(branches, opt.threads, [&](std::size_t t, auto&& stop) {
      std::optional<OrderedBlock> out;
      detail::RulerEnumerator en(F, k);
      std::function<bool()> stopper = stop;
      en.run_subtree(static_cast<std::uint32_t>(t), [&](const OrderedBlock& b) {
        out = b;
        return false;
      }, stopper);
      return out;
    });
    if (!found) return {};
    return {*found};
  }
  auto parts = parallel_map<std::vector<OrderedBlock>>(branches, opt.threads, [&](std::size_t t) {
    std::vector<OrderedBlock> out;
    detail::RulerEnumerator en(F, k);
    en.run_subtree(static_cast<std::uint32_t>(t), [&](const OrderedBlock& b) {
      out.push_back(b);
      return opt.limit == 0 || out.size() < opt.limit;
    });
    return out;
  });
  std::vector<OrderedBlock> all;
  for (auto& p : parts)
    for (auto& b : p) {
      if (opt.limit && all.size() >= opt.limit) break;
      all.push_back(std::move(b));
    }
  return all;
}

struct InequivalentRulers {
  std::size_t count = 0;
  /// Canonical representatives (sorted codes, least orbit member), ascending.
  std::vector<std::vector<Elem>> representatives;
  /// Number of normalized rulers found.
  std::size_t rulers = 0;
};

inline InequivalentRulers enumerate_inequivalent_rulers(const Field& F, std::uint32_t k, const SearchOptions& opt = {}) {
  SearchOptions all = opt;
  all.limit = 0;
  const auto rulers = search_rulers(F, k, SearchMode::all, all);
  InequivalentRulers out;
  out.rulers = rulers.size();
  for (const auto& r : rulers) out.representatives.push_back(ruler_canonical_form(F, std::span<const Elem>(r)));
  std::sort(out.representatives.begin(), out.representatives.end());
  out.representatives.erase(std::unique(out.representatives.begin(), out.representatives.end()), out.representatives.end());
  out.count = out.representatives.size();
  return out;
}

/// Admissible q for k-rulers: prime powers q = 2k+1 (mod 4k) in [lo, hi].
inline std::vector<std::uint64_t> admissible_orders(std::uint32_t k, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  const std::uint64_t m = 4 * std::uint64_t{k}, r = 2 * std::uint64_t{k} + 1;
  for (std::uint64_t q = r; q <= hi; q += m)
    if (q >= lo && is_prime_power(q)) out.push_back(q);
  return out;
}

enum class PackingMode { exhaustive, greedy };

namespace detail {

inline std::vector<std::uint64_t> difference_bits(const Field& F, std::span<const Elem> B) {
  const std::uint32_t v = (F.order() - 1) / 2;
  std::vector<std::uint64_t> bits((v + 63) / 64, 0);
  for (auto d : phi_differences(F, B)) bits[d / 64] |= std::uint64_t{1} << (d % 64);
  return bits;
}

inline bool disjoint_bits(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

}  // namespace detail

/// n orbit representatives with pairwise disjoint difference lists, found by
/// a complete clique search in canonical-form order.
inline std::optional<DifferencePacking> exhaustive_packing(const Field& F, std::uint32_t k, std::uint32_t n,
                                                           const SearchOptions& opt = {}) {
  ruler_order(F, k);
  if (n == 0) return DifferencePacking{};
  const auto reps = enumerate_inequivalent_rulers(F, k, opt).representatives;
  std::vector<std::vector<std::uint64_t>> bits;
  for (const auto& r : reps) bits.push_back(detail::difference_bits(F, std::span<const Elem>(r)));

  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> bool {
    if (chosen.size() == n) return true;
    for (std::size_t i = from; i < reps.size(); ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && detail::disjoint_bits(bits[c], bits[i]);
      if (!ok) continue;
      chosen.push_back(i);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  DifferencePacking out;
  for (auto c : chosen) out.push_back(*order_for_simplicity(F, std::span<const Elem>(reps[c])));
  return out;
}

struct GreedyOutcome {
  std::optional<DifferencePacking> packing;
  /// Candidates x that met (R4)-(R6) but failed the final verification.
  std::size_t r6_gaps = 0;
  /// Candidates x examined over all rulers.
  std::size_t candidates_examined = 0;
};

namespace detail {

class GreedyBuilder {
 public:
  GreedyBuilder(const Field& F, std::uint32_t k, std::optional<std::uint64_t> seed)
      : F_(F), k_(k), v_((F.order() - 1) / 2), in_delta_f_(F.order(), 0) {
    if (seed) rng_.emplace(*seed);
  }

  std::optional<OrderedBlock> next_ruler(GreedyOutcome& stats) {
    std::vector<Elem> bstar{pick_first()};
    for (std::uint32_t j = 1; j + 2 < k_; ++j) {
      auto b = pick_b(bstar, j);
      if (!b) return std::nullopt;
      bstar.push_back(*b);
    }
    const Elem s = sum_of(F_, std::span<const Elem>(bstar));
    std::vector<Elem> delta = delta_union(bstar);
    for (Elem x : ordered(coset(2 * k_ - 4))) {
      const Elem xs = F_.add(x, s);
      if (xs.code == 0 || F_.cyclotomic_index(xs, 2 * k_) != k_ - 2) continue;
      ++stats.candidates_examined;
      if (!r6_holds(bstar, delta, x, s)) continue;
      OrderedBlock B = bstar;
      B.push_back(x);
      B.push_back(F_.neg(xs));
      DifferencePacking with = accepted_;
      with.push_back(B);
      if (!verify_packing(F_, k_, with).valid()) {
        ++stats.r6_gaps;
        continue;
      }
      accept(B);
      return B;
    }
    return std::nullopt;
  }

 private:
  std::vector<Elem> coset(std::uint32_t index) const {
    std::vector<Elem> out;
    for (std::uint32_t t = 0; t < v_ / k_; ++t) out.push_back(F_.exp(std::int64_t{index} + 2 * std::int64_t{k_} * t));
    return out;
  }

  std::vector<Elem> ordered(std::vector<Elem> c) {
    if (rng_) std::shuffle(c.begin(), c.end(), *rng_);
    return c;
  }

  Elem pick_first() { return ordered(coset(0)).front(); }

  Elem ratio(Elem a, Elem b) const { return F_.div(a, b); }

  std::optional<Elem> pick_b(const std::vector<Elem>& bstar, std::uint32_t j) {
    std::vector<char> forbidden(F_.order(), 0);
    for (std::size_t a = 0; a < bstar.size(); ++a)
      for (std::size_t b = 0; b < bstar.size(); ++b)
        if (a != b) forbidden[ratio(bstar[a], bstar[b]).code] = 1;
    // S_{j-1}: negatives of the contiguous sums b_alpha + ... + b_{j-1}.
    Elem tail = F_.zero();
    for (std::size_t a = bstar.size(); a-- > 0;) {
      tail = F_.add(tail, bstar[a]);
      forbidden[F_.neg(tail).code] = 1;
    }
    for (Elem b : ordered(coset(2 * j))) {
      if (forbidden[b.code] || in_delta_f_[b.code]) continue;
      // Exact (R2) check for the new differences.
      std::vector<char> seen = forbidden;
      for (std::size_t a = 0; a < bstar.size(); ++a)
        for (std::size_t c = 0; c < bstar.size(); ++c)
          if (a != c) seen[ratio(bstar[a], bstar[c]).code] = 2;
      bool ok = true;
      for (Elem e : bstar) {
        for (Elem d : {ratio(b, e), ratio(e, b)}) {
          if (seen[d.code] == 2 || in_delta_f_[d.code] || seen[d.code] == 3) ok = false;
          seen[d.code] = 3;
        }
      }
      if (ok) return b;
    }
    return std::nullopt;
  }

  std::vector<Elem> delta_union(const std::vector<Elem>& bstar) const {
    std::vector<Elem> out = delta_f_;
    for (std::size_t a = 0; a < bstar.size(); ++a)
      for (std::size_t b = 0; b < bstar.size(); ++b)
        if (a != b) out.push_back(ratio(bstar[a], bstar[b]));
    return out;
  }

  /// The inequalities (R6,1)-(R6,10) evaluated directly.
  bool r6_holds(const std::vector<Elem>& b, const std::vector<Elem>& delta, Elem x, Elem s) const {
    const Elem xs = F_.add(x, s);
    const std::size_t m = b.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (F_.mul(b[i], x) == F_.neg(F_.mul(b[j], xs))) return false;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        const Elem bb = F_.mul(b[i], b[j]);
        if (F_.mul(x, xs) == F_.neg(bb)) return false;
        if (F_.mul(x, x) == bb) return false;
        if (F_.mul(xs, xs) == bb) return false;
      }
    for (std::size_t i = 0; i < m; ++i) {
      if (F_.mul(x, x) == F_.neg(F_.mul(b[i], xs))) return false;
      if (F_.mul(xs, xs) == F_.mul(b[i], x)) return false;
    }
    for (Elem d : delta) {
      for (std::size_t i = 0; i < m; ++i) {
        if (x == F_.mul(b[i], d)) return false;
        if (xs == F_.neg(F_.mul(b[i], d))) return false;
      }
      if (xs == F_.neg(F_.mul(d, x))) return false;
    }
    Elem c = F_.zero();
    for (std::size_t i = 0; i < m; ++i) {
      c = F_.add(c, b[i]);
      if (xs == c) return false;
    }
    return true;
  }

  void accept(const OrderedBlock& B) {
    accepted_.push_back(B);
    for (std::size_t a = 0; a < B.size(); ++a)
      for (std::size_t b = 0; b < B.size(); ++b)
        if (a != b) {
          const Elem d = ratio(B[a], B[b]);
          in_delta_f_[d.code] = 1;
          delta_f_.push_back(d);
        }
  }

  const Field& F_;
  std::uint32_t k_, v_;
  std::optional<std::mt19937_64> rng_;
  std::vector<char> in_delta_f_;
  std::vector<Elem> delta_f_;
  DifferencePacking accepted_;
};

}  // namespace detail

/// Builds n rulers one at a time following the (R1)-(R6) strategy. Candidates
/// are taken in dlog order, or shuffled when a seed is given.
inline GreedyOutcome greedy_packing(const Field& F, std::uint32_t k, std::uint32_t n,
                                    std::optional<std::uint64_t> seed = std::nullopt) {
  ruler_order(F, k);
  GreedyOutcome out;
  detail::GreedyBuilder builder(F, k, seed);
  DifferencePacking packing;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto B = builder.next_ruler(out);
    if (!B) return out;
    packing.push_back(*B);
  }
  out.packing = std::move(packing);
  return out;
}

inline std::optional<DifferencePacking> search_packing(const Field& F, std::uint32_t k, std::uint32_t n, PackingMode mode,
                                                       std::optional<std::uint64_t> seed = std::nullopt,
                                                       const SearchOptions& opt = {}) {
  std::optional<DifferencePacking> result =
      mode == PackingMode::exhaustive ? exhaustive_packing(F, k, n, opt) : greedy_packing(F, k, n, seed).packing;
  if (result) {
    const DesignReport rep = verify_packing(F, k, *result);
    if (!rep.valid()) throw std::logic_error("search produced an invalid packing: " + rep.violations.front());
  }
  return result;
}

/// Exact test of Q(e,t) < M where
/// Q(e,t) = ((e-1)^2 + sqrt((e-1)^4 + 4e(et+2)))^2 / 4.
inline bool weil_q_below(std::uint64_t e, std::uint64_t t, std::uint64_t M) {
  using i128 = __int128;
  const i128 A = i128(e - 1) * (e - 1);
  const i128 D = A * A + i128(4) * e * (i128(e) * t + 2);
  // Q < M  <=>  sqrt(D) < 2 sqrt(M) - A.
  // Need 2 sqrt(M) > A, i.e. 4M > A^2.
  if (i128(4) * M <= A * A) return false;
  // Square: D < 4M - 4A sqrt(M) + A^2  <=>  4A sqrt(M) < 4M + A^2 - D.
  const i128 rhs = i128(4) * M + A * A - D;
  if (rhs <= 0) return false;
  return i128(16) * A * A * M < rhs * rhs;
}

struct WeilBound {
  std::uint64_t e = 0, t = 0;
  /// Floor of Q(e,t), found by exact bisection on weil_q_below.
  std::uint64_t q_floor = 0;
  /// Q(e,t) in floating point, for display.
  double q_value = 0;
  /// 8 k^5 n.
  std::uint64_t simple_bound = 0;
  /// Exact verdict Q(e,t) < 8 k^5 n.
  bool q_below_simple = false;
};

/// Q(2k, k^2 (k-1) n) and the bound 8 k^5 n.
inline WeilBound weil_threshold(std::uint32_t k, std::uint32_t n) {
  if (k < 3 || k % 2 == 0 || n < 1) throw Error(Errc::invalid_argument, "need odd k >= 3 and n >= 1");
  WeilBound w;
  w.e = 2 * std::uint64_t{k};
  w.t = std::uint64_t{k} * k * (k - 1) * n;
  w.simple_bound = 8 * ipow(k, 5) * n;
  w.q_below_simple = weil_q_below(w.e, w.t, w.simple_bound);
  const long double A = (long double)(w.e - 1) * (w.e - 1);
  const long double D = A * A + 4.0L * w.e * ((long double)w.e * w.t + 2);
  const long double root = A + std::sqrt(D);
  w.q_value = static_cast<double>(root * root / 4);
  // Smallest M with Q < M, then floor(Q) = M - 1 (Q is never an integer here
  // unless M - 1 = Q, which weil_q_below treats as not below).
  std::uint64_t lo = 0, hi = 1;
  while (!weil_q_below(w.e, w.t, hi)) hi *= 2;
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (weil_q_below(w.e, w.t, mid) ? hi : lo) = mid;
  }
  w.q_floor = hi - 1;
  return w;
}

/// Smallest prime power q > 8 k^5 n with q = 2k+1 (mod 4k).
inline std::uint64_t smallest_guaranteed_order(std::uint32_t k, std::uint32_t n) {
  const std::uint64_t bound = 8 * ipow(k, 5) * n, m = 4 * std::uint64_t{k};
  std::uint64_t q = bound + 1;
  q += (2 * std::uint64_t{k} + 1 + m - q % m) % m;
  while (!is_prime_power(q)) q += m;
  return q;
}

enum class SeedStrategy { backtrack, randomized };

struct NetSearchOptions {
  SeedStrategy strategy = SeedStrategy::backtrack;
  std::uint64_t seed = 0;
  /// Random trials for the randomized strategy.
  std::uint64_t max_trials = 20'000'000;
  unsigned threads = 1;
};

namespace detail {

/// Fixed-position solver: y_i in the coset C^m_i, y_0 = 1, and the last three
/// entries solved from the three linear conditions.
class SeedSolver {
 public:
  SeedSolver(const Field& F, std::uint32_t n) : F_(F), n_(n), m_(3 * n), x_(F.exp((F.order() - 1) / m_)) {
    xpow_.resize(m_);
    xinv_.resize(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
      xpow_[i] = F.exp(std::int64_t{(F.order() - 1) / m_} * i);
      xinv_[i] = F.inv(xpow_[i]);
    }
    // Rows: sum, sigma, sigma'. Columns: positions m-3, m-2, m-1.
    Elem M[3][3];
    for (int c = 0; c < 3; ++c) {
      M[0][c] = F.one();
      M[1][c] = xpow_[m_ - 3 + c];
      M[2][c] = xinv_[m_ - 3 + c];
    }
    auto det2 = [&](Elem a, Elem b, Elem c, Elem d) { return F.sub(F.mul(a, d), F.mul(b, c)); };
    Elem cof[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        cof[r][c] = det2(M[r1][c1], M[r1][c2], M[r2][c1], M[r2][c2]);
      }
    Elem det = F.zero();
    for (int c = 0; c < 3; ++c) det = F.add(det, F.mul(M[0][c], cof[0][c]));
    const Elem dinv = F.inv(det);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) inv_[r][c] = F.mul(cof[c][r], dinv);
  }

  std::uint32_t choices() const { return 6 * n_; }
  std::uint32_t free_positions() const { return m_ - 4; }
  Elem x() const { return x_; }

  /// y_i for choice t at position i.
  Elem candidate(std::uint32_t i, std::uint32_t t) const { return F_.exp(std::int64_t{i} + std::int64_t{m_} * t); }

  /// Completes a partial seed given the running sums; nullopt if the solved
  /// entries fall outside their cosets.
  std::optional<std::array<Elem, 3>> complete(Elem s0, Elem s1, Elem s2) const {
    const Elem r[3] = {F_.neg(s0), F_.neg(s1), F_.neg(s2)};
    std::array<Elem, 3> out;
    for (int c = 0; c < 3; ++c) {
      Elem val = F_.zero();
      for (int j = 0; j < 3; ++j) val = F_.add(val, F_.mul(inv_[c][j], r[j]));
      if (val.code == 0 || F_.dlog(val) % m_ != m_ - 3 + c) return std::nullopt;
      out[c] = val;
    }
    return out;
  }

  const std::vector<Elem>& xpow() const { return xpow_; }
  const std::vector<Elem>& xinv() const { return xinv_; }

 private:
  const Field& F_;
  std::uint32_t n_, m_;
  Elem x_;
  std::vector<Elem> xpow_, xinv_;
  Elem inv_[3][3];
};

}  // namespace detail

/// Searches Y with y_0 = 1 and y_i in C^{3n}_i meeting the three zero-sum
/// conditions, with x = g^((q-1)/3n). The result is re-verified.
inline std::optional<NetSeed> search_net_seed(const Field& F, const NetSearchOptions& opt = {}) {
  const std::uint32_t n = net_parameter(F.order());
  const detail::SeedSolver solver(F, n);
  const std::uint32_t m = 3 * n, free = solver.free_positions();
  const auto& xp = solver.xpow();
  const auto& xi = solver.xinv();

  auto assemble = [&](const std::vector<Elem>& prefix, const std::array<Elem, 3>& tail) {
    NetSeed seed;
    seed.n = n;
    seed.x = solver.x();
    seed.Y = prefix;
    seed.Y.insert(seed.Y.end(), tail.begin(), tail.end());
    return seed;
  };

  std::optional<NetSeed> found;
  if (opt.strategy == SeedStrategy::backtrack) {
    // Split on the choice at position 1.
    found = parallel_first<NetSeed>(solver.choices(), opt.threads, [&](std::size_t t1, auto&& stop) {
      std::optional<NetSeed> out;
      std::vector<Elem> Y{F.one()};
      std::vector<std::array<Elem, 3>> sums{{F.one(), F.one(), F.one()}};
      std::uint64_t nodes = 0;
      auto rec = [&](auto&& self, std::uint32_t pos) -> bool {
        if ((++nodes & 0xFFFF) == 0 && stop()) return true;
        const auto& s = sums.back();
        if (pos == 1 + free) {
          if (auto tail = solver.complete(s[0], s[1], s[2])) {
            out = assemble(Y, *tail);
            return true;
          }
          return false;
        }
        const std::uint32_t lo = pos == 1 ? static_cast<std::uint32_t>(t1) : 0;
        const std::uint32_t hi = pos == 1 ? lo + 1 : solver.choices();
        for (std::uint32_t t = lo; t < hi; ++t) {
          const Elem y = solver.candidate(pos, t);
          Y.push_back(y);
          sums.push_back({F.add(s[0], y), F.add(s[1], F.mul(xp[pos], y)), F.add(s[2], F.mul(xi[pos], y))});
          if (self(self, pos + 1)) return true;
          sums.pop_back();
          Y.pop_back();
        }
        return false;
      };
      rec(rec, 1);
      return out;
    });
  } else {
    // Trials are split into blocks, each with its own engine seeded from
    // (seed, block); the lowest successful block wins.
    const std::uint64_t block = 1 << 16;
    const std::size_t blocks = static_cast<std::size_t>((opt.max_trials + block - 1) / block);
    found = parallel_first<NetSeed>(blocks, opt.threads, [&](std::size_t b, auto&& stop) {
      std::optional<NetSeed> out;
      std::seed_seq sq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(std::uint64_t(b) >> 32)};
      std::mt19937_64 rng(sq);
      std::uniform_int_distribution<std::uint32_t> pick(0, solver.choices() - 1);
      std::vector<Elem> Y;
      for (std::uint64_t trial = 0; trial < block; ++trial) {
        if ((trial & 0xFFF) == 0 && stop()) return out;
        Y.assign(1, F.one());
        Elem s0 = F.one(), s1 = F.one(), s2 = F.one();
        for (std::uint32_t pos = 1; pos <= free; ++pos) {
          const Elem y = solver.candidate(pos, pick(rng));
          Y.push_back(y);
          s0 = F.add(s0, y);
          s1 = F.add(s1, F.mul(xp[pos], y));
          s2 = F.add(s2, F.mul(xi[pos], y));
        }
        if (auto tail = solver.complete(s0, s1, s2)) {
          out = assemble(Y, *tail);
          return out;
        }
      }
      return out;
    });
  }
  if (found) check_net_seed(F, *found);
  (void)m;
  return found;
}

}  // namespace heffter
