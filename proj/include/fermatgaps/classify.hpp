#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermatgaps/curve.hpp"
#include "fermatgaps/gapsets.hpp"

namespace fermatgaps {

enum class GapMethod { closed_form_O, closed_form_half, closed_form_third, oracle };
std::string to_string(GapMethod);

struct PlaceGapReport {
  std::size_t place_index = 0;  // position in the enumeration order
  Place place;
  GapSet gaps;
  GapMethod method = GapMethod::oracle;
  std::optional<POrder> order;  // set for affine places when m = (q+1)/3
};

/// Gap set through the applicable closed form, falling back to the oracle
/// when no theorem branch covers the place.
PlaceGapReport gaps_at_place(const CurveCtx&, const Place&, std::size_t index = 0,
                             bool force_oracle = false, std::optional<int> precision = {});

struct GapBucket {
  GapSet gaps;
  std::size_t count = 0;
  std::size_t rational_count = 0;
  std::size_t o_count = 0;
  bool weierstrass = false;  // gap set differs from the generic one
  std::map<std::string, std::size_t> p_order_histogram;
  std::vector<std::size_t> sample_indices;  // capped member list
};

struct ClassificationReport {
  std::uint32_t d_max = 1;
  std::size_t total_places = 0;
  GapSet generic_gaps;
  std::vector<GapBucket> buckets;    // generic bucket first
  std::vector<PlaceGapReport> rows;  // enumeration order
};

/// Surveys every place of degree <= d_max and groups them by gap set.
/// "Generic" is operational: the most frequent gap set among non-O affine
/// places of the sample; ties break to the lexicographically smallest list.
/// threads = 0 uses the hardware count; the merge order is deterministic
/// either way.
ClassificationReport classify_weierstrass(const CurveCtx&, std::uint32_t d_max,
                                          unsigned threads = 0, bool force_oracle = false,
                                          std::optional<int> precision = {});

/// Case 1..4 of the small-P-order analysis, for finite order i <= m-2 (and
/// m = (q+1)/3); empty string otherwise.
std::string case_label(std::uint32_t m, const POrder&);

/// Runs fn(0..n-1) on a worker pool; threads = 0 uses the hardware count.
void parallel_for_indexed(std::size_t n, unsigned threads,
                          const std::function<void(std::size_t)>& fn);

}  // namespace fermatgaps
