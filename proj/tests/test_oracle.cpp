#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fermatgaps/classify.hpp"
#include "fermatgaps/oracle.hpp"

using namespace fermatgaps;

TEST_CASE("holomorphic basis size equals the genus") {
  CHECK(holomorphic_basis(4) ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(holomorphic_basis(5).size() == 6);
  CHECK(holomorphic_basis(3) ==
        std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}});
  for (std::uint32_t m = 3; m <= 12; ++m)
    CHECK(holomorphic_basis(m).size() == (m - 1) * (m - 2) / 2);
}

TEST_CASE("oracle at O places reproduces the gaps of <m-1, m>") {
  for (auto [p, e, m] : {std::array<std::uint32_t, 3>{7, 1, 4}, {3, 2, 5}, {11, 1, 4}}) {
    CurveCtx ctx = make_curve(p, e, m);
    GapSet want = gaps_O(ctx);
    for (std::uint32_t i = 1; i <= ctx.m; ++i) {
      CHECK(gap_set_oracle(ctx, axis_x_place(ctx, i)) == want);
      CHECK(gap_set_oracle(ctx, axis_y_place(ctx, i)) == want);
      CHECK(gap_set_oracle(ctx, infinity_place(ctx, i)) == want);
    }
  }
}

TEST_CASE("oracle at rational affine places: q = 7, m = 4 gives {1, 2, 3}") {
  CurveCtx ctx = make_curve(7, 1, 4);
  GapSet want = gap_set_from({1, 2, 3});
  CHECK(gaps_half(ctx, true) == want);
  int n = 0;
  for (const Place& pl : enumerate_places(ctx, 1)) {
    if (pl.kind != Place::Kind::affine) continue;
    CHECK(gap_set_oracle(ctx, pl) == want);
    ++n;
  }
  CHECK(n == 80);
}

TEST_CASE("oracle on the m = q+1 covering curve (no closed form away from O)") {
  CurveCtx ctx = make_curve(7, 1, 8);
  GapSet at_o = gap_set_oracle(ctx, axis_x_place(ctx, 1));
  CHECK(at_o == gaps_O(ctx));  // gaps of <7, 8>
  Place pl = enumerate_places(ctx, 1)[3 * ctx.m];
  PlaceGapReport row = gaps_at_place(ctx, pl);
  CHECK(row.method == GapMethod::oracle);
  CHECK(row.gaps.genus == ctx.genus);
  // x_series of the trivial lift is T itself
  auto [xs, ys] = hermitian_expand(ctx, pl.a, pl.b, 6);
  CHECK(xs.valuation() == 1);
  CHECK(xs.coeff(1) == ctx.base().one());
  for (int i = 2; i < 6; ++i) CHECK(xs.coeff(i).is_zero());
  CHECK(ys.coeff(1) == ctx.base().neg(ctx.base().mul(
                           ctx.base().pow(pl.a, ctx.q + 1),
                           ctx.base().inv(ctx.base().pow(pl.b, ctx.q + 1)))));
}

TEST_CASE("oracle at genus-1 places") {
  CurveCtx ctx = make_curve(5, 1, 3);
  GapSet want = gap_set_from({1});
  CHECK(gap_set_oracle(ctx, axis_x_place(ctx, 1)) == want);
  for (const Place& pl : enumerate_places(ctx, 1)) CHECK(gap_set_oracle(ctx, pl) == want);
}

TEST_CASE("oracle invariances: precision, transport word, orbit, conjugates") {
  CurveCtx ctx = make_curve(11, 1, 4);
  std::vector<Place> places = enumerate_places(ctx, 2);
  std::mt19937_64 rng(77);
  int affine_checked = 0;
  for (int it = 0; it < 200 && affine_checked < 8; ++it) {
    const Place& pl = places[rng() % places.size()];
    if (pl.kind != Place::Kind::affine) continue;
    ++affine_checked;
    GapSet g = gap_set_oracle(ctx, pl);
    CHECK(gap_set_oracle(ctx, pl, ctx.default_precision() + 9) == g);
    // same gap set across the automorphism orbit
    AutWord w{{AutGen::A(std::uint32_t(rng() % 4), std::uint32_t(rng() % 4)), AutGen::S()}};
    CHECK(gap_set_oracle(ctx, apply_automorphism(ctx, w, pl)) == g);
    if (pl.degree == 2) CHECK(gap_set_oracle(ctx, frobenius_place(ctx, pl)) == g);
  }
  CHECK(affine_checked == 8);
}

TEST_CASE("theorem vs oracle across a whole small survey") {
  // q = 11, m = 4: the third branch; every place of degree <= 2
  CurveCtx ctx = make_curve(11, 1, 4);
  for (const Place& pl : enumerate_places(ctx, 2)) {
    PlaceGapReport row = gaps_at_place(ctx, pl);
    CHECK(row.gaps == gap_set_oracle(ctx, pl));
  }
}

TEST_CASE("rr valuation spectra and the small-order functions (q = 17, m = 6)") {
  CurveCtx ctx = make_curve(17, 1, 6);
  std::vector<Place> places = enumerate_places(ctx, 1);
  bool saw_small_order = false;
  int checked = 0;
  for (const Place& pl : places) {
    if (pl.kind != Place::Kind::affine) continue;
    if (++checked > 40) break;
    CHECK(rr_valuation_spectrum(ctx, pl, 0) == std::set<int>{0});
    POrder o = p_order(ctx, alpha_invariant(ctx, pl));
    std::uint64_t i_bound = o.infinite ? ctx.m - 2 : std::min<std::uint64_t>(o.value - 1, ctx.m - 2);
    std::set<int> prev;
    for (std::uint32_t n = 0; n + 3 <= ctx.m; ++n) {
      std::set<int> spec = rr_valuation_spectrum(ctx, pl, n);
      CHECK(spec.size() == (std::size_t(n) + 1) * (n + 2) / 2);
      CHECK(std::includes(spec.begin(), spec.end(), prev.begin(), prev.end()));
      prev = spec;
      // f_j with v(f_j) = 3j+2 lives in L((j+1) D_inf)
      std::uint64_t j = n >= 1 ? n - 1 : 0;
      if (n >= 1 && j <= i_bound) CHECK(spec.count(int(3 * j + 2)) == 1);
    }
    if (!o.infinite && o.value <= ctx.m - 2 && o.value + 1 <= ctx.m - 3) {
      saw_small_order = true;
      std::set<int> spec = rr_valuation_spectrum(ctx, pl, std::uint32_t(o.value + 1));
      CHECK(spec.count(int(3 * o.value + 3)) == 1);
    }
  }
  CHECK(saw_small_order);
  // out of the monomial-basis regime
  Place some_affine = places[3 * ctx.m];
  CHECK_THROWS_AS(rr_valuation_spectrum(ctx, some_affine, ctx.m - 2), std::invalid_argument);
}

TEST_CASE("theorem vs oracle at q = 17 small-order places") {
  CurveCtx ctx = make_curve(17, 1, 6);
  int seen_small = 0, seen_generic = 0;
  for (const Place& pl : enumerate_places(ctx, 1)) {
    if (pl.kind != Place::Kind::affine) continue;
    POrder o = p_order(ctx, alpha_invariant(ctx, pl));
    bool small = !o.infinite && o.value <= ctx.m - 2;
    if (small && seen_small >= 4) continue;
    if (!small && seen_generic >= 4) continue;
    CHECK(gaps_third(ctx, true, o) == gap_set_oracle(ctx, pl));
    (small ? seen_small : seen_generic)++;
    if (seen_small >= 4 && seen_generic >= 4) break;
  }
  CHECK(seen_small > 0);
  CHECK(seen_generic > 0);
}

TEST_CASE("classification survey: q = 7, m = 4, rational places") {
  CurveCtx ctx = make_curve(7, 1, 4);
  ClassificationReport rep = classify_weierstrass(ctx, 1, 2);
  CHECK(rep.total_places == 92);
  CHECK(rep.generic_gaps == gap_set_from({1, 2, 3}));
  // partitions are exhaustive and disjoint
  std::size_t total = 0;
  for (const GapBucket& b : rep.buckets) total += b.count;
  CHECK(total == rep.total_places);
  CHECK(rep.buckets.size() == 2);  // generic + O
  CHECK(rep.buckets[0].weierstrass == false);
  CHECK(rep.buckets[0].count == 80);
  CHECK(rep.buckets[1].gaps == gap_set_from({1, 2, 5}));
  CHECK(rep.buckets[1].o_count == 12);
  CHECK(rep.buckets[1].weierstrass == true);
  // deterministic under different worker counts
  ClassificationReport rep1 = classify_weierstrass(ctx, 1, 1);
  CHECK(rep1.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    CHECK(rep1.rows[i].gaps == rep.rows[i].gaps);
}

TEST_CASE("classification survey: q = 17, m = 6 isolates the P-order-2 places") {
  CurveCtx ctx = make_curve(17, 1, 6);
  ClassificationReport rep = classify_weierstrass(ctx, 1, 2);
  CHECK(rep.total_places == 630);
  CHECK(rep.generic_gaps == gap_set_from({1, 2, 3, 4, 5, 6, 7, 8, 9, 19}));
  bool found_order2_bucket = false;
  for (const GapBucket& b : rep.buckets) {
    if (b.gaps == gap_set_from({1, 2, 3, 4, 5, 6, 7, 8, 10, 19})) {
      found_order2_bucket = true;
      CHECK(b.weierstrass);
      CHECK(b.p_order_histogram.size() == 1);
      CHECK(b.p_order_histogram.count("2") == 1);
    }
  }
  CHECK(found_order2_bucket);
}

TEST_CASE("oracle precision guardrails") {
  CurveCtx ctx = make_curve(7, 1, 4);
  Place pl = enumerate_places(ctx, 1)[12];
  CHECK_THROWS_AS(gap_set_oracle(ctx, pl, 3), std::invalid_argument);  // 3 <= 2g-2 = 4
}

TEST_CASE("case labels for the small-order analysis") {
  CHECK(case_label(20, POrder::finite(15)) == "case1");   // i >= m-6
  CHECK(case_label(20, POrder::finite(10)) == "case2");   // 2i > m-5
  CHECK(case_label(21, POrder::finite(8)) == "case3");    // 2i = m-5
  CHECK(case_label(20, POrder::finite(3)) == "case4");
  CHECK(case_label(20, POrder::inf()).empty());
  CHECK(case_label(20, POrder::finite(19)).empty());      // above m-2
}
