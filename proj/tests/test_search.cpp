#include <gtest/gtest.h>

#include <map>
#include <set>

#include "heffter/catalog.hpp"
#include "heffter/search.hpp"
#include "printed_tables.hpp"

using namespace heffter;

namespace {

/// Brute-force k = 3 orbit count over a prime field using plain integers:
/// every 3-subset {1, b, -1-b} of squares with one element per cubic class
/// of the squares and distinct phi-differences, grouped by scaling.
std::size_t oracle_k3_orbits(std::uint32_t q) {
  std::uint32_t g = 2;
  for (;; ++g) {
    std::uint64_t x = 1, ord = 0;
    do {
      x = x * g % q;
      ++ord;
    } while (x != 1);
    if (ord == q - 1) break;
  }
  std::vector<std::int64_t> log(q, -1);
  std::uint64_t x = 1;
  for (std::uint32_t e = 0; e < q - 1; ++e, x = x * g % q) log[x] = e;
  const std::uint32_t v = (q - 1) / 2;
  auto phi = [&](std::uint32_t a) { return static_cast<std::uint32_t>(log[a] / 2); };
  auto sq = [&](std::uint32_t a) { return a != 0 && log[a] % 2 == 0; };
  std::set<std::vector<std::uint32_t>> orbits;
  for (std::uint32_t b = 2; b < q; ++b) {
    const std::uint32_t c = (2 * q - 1 - b) % q;
    if (!sq(b) || !sq(c) || c == b || c == 1) continue;
    std::vector<std::uint32_t> ph{0, phi(b), phi(c)};
    std::set<std::uint32_t> res, diffs;
    for (auto p : ph) res.insert(p % 3);
    if (res.size() != 3) continue;
    bool golomb = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) golomb = golomb && diffs.insert((ph[i] + v - ph[j]) % v).second;
    if (!golomb) continue;
    // Canonical: least sorted triple among all square multiples.
    std::vector<std::uint32_t> best;
    for (std::uint32_t t = 1; t < q; ++t) {
      if (!sq(t)) continue;
      std::vector<std::uint32_t> m{t, static_cast<std::uint32_t>(std::uint64_t(b) * t % q),
                                   static_cast<std::uint32_t>(std::uint64_t(c) * t % q)};
      std::sort(m.begin(), m.end());
      if (best.empty() || m < best) best = m;
    }
    orbits.insert(best);
  }
  return orbits.size();
}

bool differences_disjoint(const Field& F, std::span<const Elem> A, std::span<const Elem> B) {
  auto da = phi_differences(F, A), db = phi_differences(F, B);
  std::set<std::uint32_t> sa(da.begin(), da.end());
  for (auto d : db)
    if (sa.count(d)) return false;
  return true;
}

}  // namespace

TEST(Search, NoK3RulerBelow67) {
  for (std::uint32_t q : {19u, 31u, 43u}) {
    const Field F = Field::of_order(q);
    EXPECT_TRUE(search_rulers(F, 3, SearchMode::all).empty()) << q;
  }
}

TEST(Search, K3At67) {
  const Field F = Field::prime(67);
  auto all = search_rulers(F, 3, SearchMode::all);
  ASSERT_FALSE(all.empty());
  std::set<std::vector<Elem>> canon;
  for (auto& B : all) canon.insert(ruler_canonical_form(F, std::span<const Elem>(B)));
  EXPECT_EQ(canon.size(), 1u);
  const auto printed = make_block({1, 10, 56});
  EXPECT_TRUE(canon.count(ruler_canonical_form(F, std::span<const Elem>(printed))));
}

TEST(Search, K5MinimalIs71) {
  for (std::uint32_t q : {11u, 31u}) {
    const Field F = Field::of_order(q);
    EXPECT_TRUE(search_rulers(F, 5, SearchMode::all).empty()) << q;
  }
  const Field F = Field::prime(71);
  auto all = search_rulers(F, 5, SearchMode::all);
  ASSERT_FALSE(all.empty());
  const auto printed = catalog::ruler71();
  const auto target = ruler_canonical_form(F, std::span<const Elem>(printed));
  bool seen = false;
  for (auto& B : all) seen = seen || ruler_canonical_form(F, std::span<const Elem>(B)) == target;
  EXPECT_TRUE(seen);
}

TEST(Search, FirstModeMatchesHeadOfAll) {
  for (std::uint32_t q : {67u, 127u, 199u}) {
    const Field F = Field::prime(q);
    auto all = search_rulers(F, 3, SearchMode::all);
    auto first = search_rulers(F, 3, SearchMode::first);
    ASSERT_EQ(first.size(), 1u);
    EXPECT_EQ(first.front(), all.front());
    EXPECT_EQ(search_rulers(F, 3, SearchMode::first, {.threads = 3}), first);
  }
}

TEST(Search, ThreadCountDoesNotChangeOutput) {
  const Field F = Field::prime(151);
  auto one = search_rulers(F, 5, SearchMode::all, {.threads = 1});
  auto four = search_rulers(F, 5, SearchMode::all, {.threads = 4});
  EXPECT_EQ(one, four);
  auto limited = search_rulers(F, 5, SearchMode::all, {.threads = 4, .limit = 7});
  ASSERT_EQ(limited.size(), 7u);
  EXPECT_TRUE(std::equal(limited.begin(), limited.end(), one.begin()));
}

TEST(Search, NoDivisibility) {
  const Field F = Field::prime(23);
  EXPECT_THROW(search_rulers(F, 5, SearchMode::first), Error);
}

TEST(Search, InequivalentK3TableAgainstPrintedAndOracle) {
  for (auto [q, r] : printed::inequivalent_k3) {
    const Field F = Field::of_order(q);
    const auto res = enumerate_inequivalent_rulers(F, 3);
    EXPECT_EQ(res.count, r) << "q=" << q;
    EXPECT_EQ(res.count, oracle_k3_orbits(q)) << "q=" << q;
  }
}

TEST(Search, K3AdmissibleOrdersBelow500) {
  const auto qs = admissible_orders(3, 1, 499);
  std::vector<std::uint64_t> printed;
  for (auto [q, r] : printed::inequivalent_k3) printed.push_back(q);
  // The printed table lists primes only; the extra admissible orders are
  // checked against the oracle.
  for (auto q : qs) {
    if (std::find(printed.begin(), printed.end(), q) != printed.end()) continue;
    const Field F = Field::of_order(q);
    const auto res = enumerate_inequivalent_rulers(F, 3);
    if (as_prime_power(q)->second == 1) {
      EXPECT_EQ(res.count, oracle_k3_orbits(q)) << q;
    }
  }
}

TEST(Search, K3InequivalenceIffDisjointDifferences) {
  for (std::uint32_t q : {151u, 163u, 199u, 211u, 271u, 307u, 367u}) {
    const Field F = Field::prime(q);
    const auto all = search_rulers(F, 3, SearchMode::all);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        const bool equiv = ruler_canonical_form(F, std::span<const Elem>(all[i])) ==
                           ruler_canonical_form(F, std::span<const Elem>(all[j]));
        EXPECT_EQ(!equiv, differences_disjoint(F, all[i], all[j])) << q;
      }
  }
}

TEST(Search, Orbits151K5) {
  const Field F = Field::prime(151);
  const auto res = enumerate_inequivalent_rulers(F, 5);
  EXPECT_EQ(res.count, 26u);
  // Orbits partition the normalized list: each orbit contributes k members.
  EXPECT_EQ(res.rulers, 5 * res.count);
  for (const auto& B : catalog::packing151()) {
    const auto c = ruler_canonical_form(F, std::span<const Elem>(B));
    EXPECT_TRUE(std::binary_search(res.representatives.begin(), res.representatives.end(), c));
  }
}

TEST(Search, Packing151) {
  const Field F = Field::prime(151);
  auto two = search_packing(F, 5, 2, PackingMode::exhaustive);
  ASSERT_TRUE(two);
  EXPECT_TRUE(verify_packing(F, 5, *two).valid());
  EXPECT_TRUE(verify_packing(F, 5, catalog::packing151()).valid());
  EXPECT_FALSE(search_packing(F, 5, 3, PackingMode::exhaustive));
}

TEST(Search, WeilValues) {
  const auto w5 = weil_threshold(5, 1);
  EXPECT_EQ(w5.simple_bound, 25000u);
  EXPECT_EQ(w5.q_floor, 22047u);
  EXPECT_NEAR(w5.q_value, std::pow(81 + std::sqrt(6561.0 + 40 * 1002), 2) / 4, 1e-6);
  EXPECT_TRUE(w5.q_below_simple);
  EXPECT_EQ(weil_threshold(3, 1).simple_bound, 1944u);
  EXPECT_EQ(smallest_guaranteed_order(5, 1), 25031u);
  EXPECT_THROW(weil_threshold(4, 1), Error);
}

TEST(Search, WeilBelowSimpleBoundEverywhere) {
  for (std::uint32_t k = 3; k <= 13; k += 2)
    for (std::uint32_t n = 1; n <= 10; ++n) {
      const auto w = weil_threshold(k, n);
      EXPECT_TRUE(w.q_below_simple) << k << "," << n;
      EXPECT_LT(w.q_floor, w.simple_bound);
      // Floating point agrees with the exact floor.
      EXPECT_NEAR(w.q_value, static_cast<double>(w.q_floor) + 0.5, 0.5 + 1e-6);
    }
}

TEST(Search, WeilPredicateAgainstLongDouble) {
  // Random (e, t, M) away from the boundary agree with a floating evaluation.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t e = 2 + rng() % 40, t = rng() % 100000, M = rng() % 50'000'000;
    const long double A = (long double)(e - 1) * (e - 1);
    const long double Q = std::pow(A + std::sqrt(A * A + 4.0L * e * (e * (long double)t + 2)), 2) / 4;
    if (std::fabs(Q - M) < 1e-3L * (1 + M)) continue;
    EXPECT_EQ(weil_q_below(e, t, M), Q < M) << e << " " << t << " " << M;
  }
}

TEST(Search, GreedyAboveGuaranteeK3) {
  const std::uint64_t q = smallest_guaranteed_order(3, 1);
  EXPECT_GT(q, 1944u);
  const Field F = Field::of_order(q);
  const auto out = greedy_packing(F, 3, 1);
  ASSERT_TRUE(out.packing);
  EXPECT_TRUE(verify_packing(F, 3, *out.packing).valid());
  EXPECT_EQ(out.r6_gaps, 0u);
}

TEST(Search, GreedyManyRulersAndSeeds) {
  const Field F = Field::prime(1951);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto a = greedy_packing(F, 3, 4, seed), b = greedy_packing(F, 3, 4, seed);
    ASSERT_TRUE(a.packing) << seed;
    EXPECT_EQ(*a.packing, *b.packing);
    EXPECT_TRUE(verify_packing(F, 3, *a.packing).valid());
  }
  const Field G = Field::prime(3011);
  const auto five = greedy_packing(G, 5, 1);
  if (five.packing) {
    EXPECT_TRUE(verify_packing(G, 5, *five.packing).valid());
  }
}

TEST(Search, FuzzRulersVerifyAndGeneratorIndependence) {
  for (std::uint32_t k : {3u, 5u, 7u})
    for (auto q : admissible_orders(k, 1, 500)) {
      const Field F = Field::of_order(q);
      const auto all = search_rulers(F, k, SearchMode::all, {.limit = 40});
      for (const auto& B : all) {
        const auto rep = verify_ruler(F, k, B);
        EXPECT_TRUE(rep.valid()) << q << " " << rep.summary();
      }
      if (as_prime_power(q)->second != 1) continue;
      // Another primitive element g^e with e coprime to q-1.
      std::uint64_t e = 5;
      while (std::gcd(e, q - 1) != 1) ++e;
      const Field G = Field::prime(static_cast<std::uint32_t>(q), F.exp(e).code);
      for (const auto& B : all) EXPECT_EQ(verify_ruler(G, k, B).valid(), true) << q;
    }
}

TEST(Search, NetSeed163) {
  const Field F = Field::prime(163);
  const auto printed = catalog::net_seed(163);
  EXPECT_NO_THROW(check_net_seed(F, printed));
  auto found = search_net_seed(F);
  ASSERT_TRUE(found);
  EXPECT_NO_THROW(check_net_seed(F, *found));
  EXPECT_EQ(found->Y.front(), F.one());
  for (std::uint32_t i = 0; i < 9; ++i) EXPECT_EQ(F.dlog(found->Y[i]) % 9, i);
  auto parallel = search_net_seed(F, {.threads = 3});
  ASSERT_TRUE(parallel);
  EXPECT_EQ(parallel->Y, found->Y);
  auto rnd = search_net_seed(F, {.strategy = SeedStrategy::randomized, .seed = 11});
  ASSERT_TRUE(rnd);
  auto rnd2 = search_net_seed(F, {.strategy = SeedStrategy::randomized, .seed = 11, .threads = 4});
  ASSERT_TRUE(rnd2);
  EXPECT_EQ(rnd->Y, rnd2->Y);
  EXPECT_TRUE(verify_heffter_space(F, net_via_roots(F, *rnd).space).valid());
}

TEST(Search, NetSeedWrongForm) {
  EXPECT_THROW(search_net_seed(Field::prime(19)), Error);
  EXPECT_THROW(search_net_seed(Field::prime(73)), Error);
}
