#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fermatgaps/gapsets.hpp"

using namespace fermatgaps;

namespace {

// independent sieve: gaps of the semigroup generated by gens
std::vector<std::uint32_t> sieve_gaps(const std::vector<std::uint32_t>& gens,
                                      std::uint32_t bound) {
  std::vector<bool> in_sg(bound + 1, false);
  in_sg[0] = true;
  for (std::uint32_t v = 1; v <= bound; ++v)
    for (std::uint32_t g : gens)
      if (v >= g && in_sg[v - g]) {
        in_sg[v] = true;
        break;
      }
  std::vector<std::uint32_t> gaps;
  for (std::uint32_t v = 1; v <= bound; ++v)
    if (!in_sg[v]) gaps.push_back(v);
  return gaps;
}

std::vector<std::uint32_t> ints(std::initializer_list<std::uint32_t> v) { return v; }

}  // namespace

TEST_CASE("gaps of <m-1, m> at the places of O") {
  CHECK(gaps_O_for_m(4).gaps == ints({1, 2, 5}));
  CHECK(gaps_O_for_m(5).gaps == ints({1, 2, 3, 6, 7, 11}));
  CHECK(gaps_O_for_m(3).gaps == ints({1}));
  CHECK(gaps_O_for_m(2).gaps.empty());
  for (std::uint32_t m = 3; m <= 24; ++m) {
    GapSet g = gaps_O_for_m(m);
    CHECK(g.genus == (m - 1) * (m - 2) / 2);
    CHECK(g.gaps == sieve_gaps({m - 1, m}, 2 * g.genus + 2));
  }
}

TEST_CASE("half-branch gap sets") {
  CHECK(gaps_half_for(4, 8).gaps == ints({1, 2, 3}));          // q = 7 rational
  CHECK(gaps_half_for(5, 10).gaps == ints({1, 2, 3, 4, 5, 11}));  // q = 9 rational
  CHECK(gaps_half_for(5, 9).gaps == ints({1, 2, 3, 4, 5, 10}));   // q = 9 non-rational
  for (std::uint32_t m = 4; m <= 40; ++m)
    for (std::uint64_t stride : {2ull * m - 1, 2ull * m})
      CHECK(gaps_half_for(m, stride).genus == (m - 1) * (m - 2) / 2);
}

TEST_CASE("third-branch gap sets") {
  CHECK(gaps_third_for(6, 18, POrder::inf()).gaps ==
        ints({1, 2, 3, 4, 5, 6, 7, 8, 9, 19}));                    // q = 17 rational, generic
  CHECK(gaps_third_for(6, 18, POrder::finite(5)).gaps ==
        ints({1, 2, 3, 4, 5, 6, 7, 8, 9, 19}));                    // i > m-2 joins the generic branch
  CHECK(gaps_third_for(6, 18, POrder::finite(2)).gaps ==
        ints({1, 2, 3, 4, 5, 6, 7, 8, 10, 19}));                   // q = 17, P-order 2
  CHECK(gaps_third_for(4, 12, POrder::inf()).gaps == ints({1, 2, 3}));       // q = 11
  CHECK(gaps_third_for(4, 12, POrder::finite(1)).gaps == ints({1, 2, 3}));
  CHECK(gaps_third_for(4, 11, POrder::finite(2)).gaps == ints({1, 2, 3}));
  // boundary: any finite order above m-2 equals the infinite branch
  for (std::uint64_t i : {7ull, 8ull, 20ull})
    CHECK(gaps_third_for(9, 27, POrder::finite(i)) == gaps_third_for(9, 27, POrder::inf()));
  CHECK_THROWS_AS(gaps_third_for(6, 18, POrder::finite(0)), std::invalid_argument);
}

TEST_CASE("third-branch cardinality sweep (small)") {
  for (std::uint32_t m = 4; m <= 22; ++m) {
    std::uint32_t g = (m - 1) * (m - 2) / 2;
    for (std::uint64_t stride : {3ull * m - 1, 3ull * m}) {
      CHECK(gaps_third_for(m, stride, POrder::inf()).genus == g);
      for (std::uint64_t i = 1; i <= m; ++i)
        CHECK(gaps_third_for(m, stride, POrder::finite(i)).genus == g);
    }
  }
}

TEST_CASE("semigroup data from gap sets") {
  NumericalSemigroup sg = semigroup_from_gaps(gap_set_from({1, 2, 5}));
  CHECK(sg.min_generators == ints({3, 4}));
  CHECK(sg.frobenius == 5);
  CHECK(sg.conductor == 6);
  CHECK(sg.multiplicity == 3);
  CHECK(sg.apery == ints({0, 4, 8}));

  NumericalSemigroup all = semigroup_from_gaps(GapSet{});
  CHECK(all.min_generators == ints({1}));
  CHECK(all.frobenius == -1);
  CHECK(all.conductor == 0);

  NumericalSemigroup sg2 = semigroup_from_gaps(gap_set_from({1, 2, 3}));
  CHECK(sg2.min_generators == ints({4, 5, 6, 7}));
  CHECK(sg2.frobenius == 3);

  CHECK_THROWS_AS(semigroup_from_gaps(gap_set_from({2})), std::invalid_argument);
  CHECK_THROWS_AS(semigroup_from_gaps(gap_set_from({1, 4})), std::invalid_argument);
}

TEST_CASE("semigroup round trip: generators regenerate the gaps") {
  for (GapSet g : {gaps_O_for_m(7), gaps_half_for(6, 12), gaps_half_for(6, 11),
                   gaps_third_for(8, 24, POrder::finite(3)), gaps_third_for(11, 32, POrder::inf())}) {
    NumericalSemigroup sg = semigroup_from_gaps(g);
    std::uint32_t bound = std::uint32_t(sg.frobenius) + sg.multiplicity + 2;
    CHECK(sieve_gaps(sg.min_generators, bound) == g.gaps);
  }
}

TEST_CASE("pq polynomials: the frozen small cases over F_{17^2}") {
  CurveCtx ctx = make_curve(17, 1, 6);
  const FieldLayer& L = ctx.base();
  auto poly = [&](std::initializer_list<std::int64_t> cs) {
    std::vector<Fe> out;
    for (std::int64_t c : cs) out.push_back(L.from_int(c));
    return out;
  };
  PQPair pq1 = pq_polynomials(ctx, 1);
  CHECK(pq1.p_poly == poly({1}));          // P_1 = 1
  CHECK(pq1.q_num == poly({1, 1}));        // Q_1 = s + 1
  PQPair pq2 = pq_polynomials(ctx, 2);
  CHECK(pq2.p_poly == poly({2, -3, -3, 2}));        // P_2 = 2s^3 - 3s^2 - 3s + 2
  CHECK(pq2.q_num == poly({1, 1, -9, 1, 1}));       // Q_2 = s^4 + s^3 - 9s^2 + s + 1
  PQPair pq0 = pq_polynomials(ctx, 0);
  CHECK(pq0.p_poly.empty());
  CHECK(pq0.q_den == poly({1, -1, 1}));    // Q_0 = 1/(s^2 - s + 1)

  for (std::uint32_t i = 1; i <= 10; ++i) {
    PQPair pq = pq_polynomials(ctx, i);
    CHECK(!pq.p_poly.empty());
    CHECK(pq.p_poly.size() <= 3 * i - 2);  // deg <= 3i-3
    CHECK(pq.q_num.size() == 3 * i - 1);   // deg == 3i-2
    CHECK(pq_coprime(ctx, pq));
  }
}

TEST_CASE("pq polynomials in characteristic 2") {
  CurveCtx ctx = make_curve(2, 5, 11);  // q = 32, 3 | 33
  for (std::uint32_t i = 1; i <= 10; ++i) {
    PQPair pq = pq_polynomials(ctx, i);
    CHECK(!pq.p_poly.empty());
    CHECK(pq.p_poly.size() <= 3 * i - 2);
    CHECK(pq.q_num.size() == 3 * i - 1);
    CHECK(pq_coprime(ctx, pq));
  }
}

TEST_CASE("pq polynomials need a cube root of unity") {
  CurveCtx ctx = make_curve(7, 1, 4);  // 3 does not divide 8
  CHECK_THROWS_AS(pq_polynomials(ctx, 1), std::invalid_argument);
}

TEST_CASE("p_order: roots of P_2, the exceptional quadratic, and consistency") {
  CurveCtx ctx = make_curve(17, 1, 6);
  const FieldLayer& L = ctx.base();
  CHECK(p_order(ctx, L.from_int(2)) == POrder::finite(1));   // P_2(2) = 16-12-6+2 = 0
  CHECK(p_order(ctx, L.from_int(-1)) == POrder::finite(1));  // P_2(-1) = -2-3+3+2 = 0
  Fe exceptional = L.neg(*ctx.zeta3);                        // root of s^2 - s + 1
  CHECK(p_order(ctx, exceptional) == POrder::inf());
  CHECK_THROWS_AS(p_order(ctx, L.zero()), std::invalid_argument);
  CHECK_THROWS_AS(p_order(ctx, L.one()), std::invalid_argument);

  // order i means P_{i+1}(alpha) = 0, P_j(alpha) != 0 for 2 <= j <= i,
  // and Q_{i+1}(alpha) != 0
  std::mt19937_64 rng(31);
  int verified = 0;
  for (int it = 0; it < 400 && verified < 25; ++it) {
    Fe alpha = L.elem(2 + rng() % (L.order() - 2));
    if (alpha == L.one()) continue;
    Fe disc = L.add(L.sub(L.mul(alpha, alpha), alpha), L.one());
    if (disc.is_zero()) continue;
    POrder o = p_order(ctx, alpha);
    if (o.infinite || o.value > 9) continue;
    std::uint32_t i = std::uint32_t(o.value);
    CHECK(eval_poly(L, pq_polynomials(ctx, i + 1).p_poly, alpha).is_zero());
    CHECK(!eval_poly(L, pq_polynomials(ctx, i + 1).q_num, alpha).is_zero());
    for (std::uint32_t j = 2; j <= i; ++j)
      CHECK(!eval_poly(L, pq_polynomials(ctx, j).p_poly, alpha).is_zero());
    ++verified;
  }
  CHECK(verified > 0);
}

TEST_CASE("integer counting identities") {
  for (std::int64_t n = 0; n <= 2000; ++n) CHECK(floor_sum_brute(n) == floor_sum_closed(n));
  for (std::int64_t q = 7; q <= 101; q += 2) CHECK(half_index_card(q) == (q - 1) * (q - 3) / 8);
  // sum_{j=3}^{i+3} S(j) = floor((m-i-1)(m-i-2)/6) in the 2i < m-5, i <= m-7 range
  for (std::int64_t m = 8; m <= 40; ++m)
    for (std::int64_t i = 1; i <= m - 7; ++i)
      if (2 * i < m - 5) CHECK(s_of_j_sum(m, i) == claimjtilde_closed(m, i));
}
