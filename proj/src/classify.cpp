#include "fermatgaps/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "fermatgaps/oracle.hpp"

namespace fermatgaps {

std::string to_string(GapMethod m) {
  switch (m) {
    case GapMethod::closed_form_O: return "closed_form_O";
    case GapMethod::closed_form_half: return "closed_form_half";
    case GapMethod::closed_form_third: return "closed_form_third";
    case GapMethod::oracle: return "oracle";
  }
  return "?";
}

PlaceGapReport gaps_at_place(const CurveCtx& ctx, const Place& pl, std::size_t index,
                             bool force_oracle, std::optional<int> precision) {
  PlaceGapReport out;
  out.place_index = index;
  out.place = pl;
  bool third_regime = 3ull * ctx.m == ctx.q + 1 && ctx.m >= 4;
  if (pl.kind == Place::Kind::affine && third_regime)
    out.order = p_order(ctx, alpha_invariant(ctx, pl));
  if (force_oracle) {
    out.gaps = gap_set_oracle(ctx, pl, precision);
    out.method = GapMethod::oracle;
    return out;
  }
  if (is_in_O(pl)) {
    out.gaps = gaps_O(ctx);
    out.method = GapMethod::closed_form_O;
    return out;
  }
  if (2ull * ctx.m == ctx.q + 1 && ctx.m >= 4) {
    out.gaps = gaps_half(ctx, is_rational(pl));
    out.method = GapMethod::closed_form_half;
    return out;
  }
  if (third_regime) {
    out.gaps = gaps_third(ctx, is_rational(pl), *out.order);
    out.method = GapMethod::closed_form_third;
    return out;
  }
  out.gaps = gap_set_oracle(ctx, pl, precision);
  out.method = GapMethod::oracle;
  return out;
}

void parallel_for_indexed(std::size_t n, unsigned threads,
                          const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string case_label(std::uint32_t m, const POrder& order) {
  if (order.infinite || m < 2 || order.value > m - 2) return "";
  std::int64_t i = std::int64_t(order.value), mm = std::int64_t(m);
  if (i >= mm - 6) return "case1";
  if (2 * i > mm - 5) return "case2";
  if (2 * i == mm - 5) return "case3";
  return "case4";
}

ClassificationReport classify_weierstrass(const CurveCtx& ctx, std::uint32_t d_max,
                                          unsigned threads, bool force_oracle,
                                          std::optional<int> precision) {
  ClassificationReport rep;
  rep.d_max = d_max;
  std::vector<Place> places = enumerate_places(ctx, d_max);
  rep.total_places = places.size();
  rep.rows.resize(places.size());
  parallel_for_indexed(places.size(), threads, [&](std::size_t i) {
    rep.rows[i] = gaps_at_place(ctx, places[i], i, force_oracle, precision);
  });

  // bucket by gap list
  std::map<std::vector<std::uint32_t>, GapBucket> buckets;
  std::map<std::vector<std::uint32_t>, std::size_t> generic_votes;
  constexpr std::size_t kSampleCap = 25;
  for (const PlaceGapReport& row : rep.rows) {
    GapBucket& b = buckets[row.gaps.gaps];
    if (b.count == 0) b.gaps = row.gaps;
    b.count++;
    if (is_rational(row.place)) b.rational_count++;
    if (is_in_O(row.place)) b.o_count++;
    if (row.order)
      b.p_order_histogram[row.order->infinite ? "infinite" : std::to_string(row.order->value)]++;
    if (b.sample_indices.size() < kSampleCap) b.sample_indices.push_back(row.place_index);
    if (!is_in_O(row.place)) generic_votes[row.gaps.gaps]++;
  }
  if (!generic_votes.empty()) {
    auto best = generic_votes.begin();
    for (auto it = generic_votes.begin(); it != generic_votes.end(); ++it)
      if (it->second > best->second) best = it;  // ties keep the smaller gap list
    rep.generic_gaps = gap_set_from(std::vector<std::uint32_t>(best->first));
  }
  for (auto& [key, bucket] : buckets) {
    bucket.weierstrass = key != rep.generic_gaps.gaps;
    rep.buckets.push_back(std::move(bucket));
  }
  std::sort(rep.buckets.begin(), rep.buckets.end(), [&](const GapBucket& x, const GapBucket& y) {
    bool gx = x.gaps.gaps == rep.generic_gaps.gaps;
    bool gy = y.gaps.gaps == rep.generic_gaps.gaps;
    if (gx != gy) return gx;
    if (x.count != y.count) return x.count > y.count;
    return x.gaps.gaps < y.gaps.gaps;
  });
  return rep;
}

}  // namespace fermatgaps
