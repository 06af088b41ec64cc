#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermatgaps/curve.hpp"

namespace fermatgaps {

/// Sorted gap list of a numerical semigroup; genus = number of gaps.
struct GapSet {
  std::vector<std::uint32_t> gaps;
  std::uint32_t genus = 0;

  friend bool operator==(const GapSet&, const GapSet&) = default;
};

/// Sorts, deduplicates and wraps a list of gap values.
GapSet gap_set_from(std::vector<std::uint32_t> values);

struct NumericalSemigroup {
  GapSet gap_set;
  std::uint32_t multiplicity = 1;  // smallest nonzero element
  std::vector<std::uint32_t> min_generators;
  std::int64_t frobenius = -1;     // largest gap, -1 when there is none
  std::uint32_t conductor = 0;     // frobenius + 1
  std::vector<std::uint32_t> apery;  // least element per residue class mod multiplicity
};

/// Derives semigroup data; rejects gap lists whose complement is not closed
/// under addition.
NumericalSemigroup semigroup_from_gaps(const GapSet&);

// -- the alpha classification polynomials ------------------------------------

struct POrder {
  bool infinite = false;
  std::uint64_t value = 0;

  static POrder inf() { return {true, 0}; }
  static POrder finite(std::uint64_t i) { return {false, i}; }
  friend bool operator==(const POrder&, const POrder&) = default;
};

/// Least i >= 1 with P_{i+1}(alpha) = 0, Infinite for the two roots of
/// s^2 - s + 1.  alpha must avoid 0 and 1.
POrder p_order(const CurveCtx&, const Fe& alpha);

/// Coefficients over F_{q^2}, ascending degree.  q_den is {1} for i >= 1;
/// index 0 gives P_0 = 0 and the reciprocal Q_0 = 1/(s^2 - s + 1).
struct PQPair {
  std::uint32_t index = 0;
  std::vector<Fe> p_poly;
  std::vector<Fe> q_num;
  std::vector<Fe> q_den;
};

PQPair pq_polynomials(const CurveCtx&, std::uint32_t i);
bool pq_coprime(const CurveCtx&, const PQPair&);
Fe eval_poly(const FieldLayer&, const std::vector<Fe>& coeffs, const Fe& at);

// -- closed-form gap sets -----------------------------------------------------

/// Gaps of <m-1, m>: the gap set at every place of O, any m | q+1.
GapSet gaps_O_for_m(std::uint32_t m);
GapSet gaps_O(const CurveCtx&);

/// m = (q+1)/2 branch: {i + 2j + k*stride + 1 : i + j + 2k <= m-3},
/// stride q+1 at rational places and q otherwise.
GapSet gaps_half_for(std::uint32_t m, std::uint64_t stride);
GapSet gaps_half(const CurveCtx&, bool rational);

/// m = (q+1)/3 branch, selected by the P-order of alpha(P).
GapSet gaps_third_for(std::uint32_t m, std::uint64_t stride, const POrder& order);
GapSet gaps_third(const CurveCtx&, bool rational, const POrder& order);

// -- integer counting identities ----------------------------------------------

std::int64_t floor_sum_brute(std::int64_t n);   // sum_{t=0..n} floor(t/3)
std::int64_t floor_sum_closed(std::int64_t n);  // floor(n(n-1)/6)
/// |{(i,j,k) : i<=1, j<=(q-5)/2-i, k<=floor((q-5-2i-2j)/4)}|, odd q >= 7;
/// the closed form is (q-1)(q-3)/8.
std::int64_t half_index_card(std::int64_t q);
/// S(j) = sum_{l2=1..floor((m-j)/(i+1))} (floor((m-j-(i+1) l2)/3) + 1)
std::int64_t s_of_j(std::int64_t m, std::int64_t i, std::int64_t j);
std::int64_t s_of_j_sum(std::int64_t m, std::int64_t i);       // sum_{j=3}^{i+3} S(j)
std::int64_t claimjtilde_closed(std::int64_t m, std::int64_t i);  // floor((m-i-1)(m-i-2)/6)

}  // namespace fermatgaps
