#pragma once

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "fermatgaps/field.hpp"

namespace fermatgaps {

struct CurveCtx;
struct Place;

/// Power series truncated at t^precision.  Arithmetic never extends the
/// window of known coefficients: sums and products carry the smaller operand
/// precision, and shifting up drops the operand's top coefficients.
class TruncSeries {
 public:
  TruncSeries(const FieldLayer& layer, int precision);
  static TruncSeries constant(const Fe& value, int precision);
  /// coeff * t^k
  static TruncSeries monomial(const FieldLayer&, int k, const Fe& coeff, int precision);

  int precision() const { return int(c_.size()); }
  const FieldLayer& layer() const { return *layer_; }
  const Fe& coeff(int i) const { return c_.at(std::size_t(i)); }
  void set_coeff(int i, const Fe& v);

  /// Index of the first nonzero coefficient; nullopt when every stored
  /// coefficient vanishes (valuation above the precision window).
  std::optional<int> valuation() const;

  TruncSeries truncated(int new_precision) const;
  TruncSeries extended(int new_precision) const;  // zero-pads (use with care)

  friend TruncSeries operator+(const TruncSeries&, const TruncSeries&);
  friend TruncSeries operator-(const TruncSeries&, const TruncSeries&);
  friend TruncSeries operator*(const TruncSeries&, const TruncSeries&);
  friend TruncSeries operator-(const TruncSeries&);
  friend bool operator==(const TruncSeries&, const TruncSeries&);

 private:
  const FieldLayer* layer_;
  std::vector<Fe> c_;
};

TruncSeries scale(const TruncSeries&, const Fe&);
/// Multiplication by t^k exactly; the k top coefficients of the operand fall
/// outside the window and are dropped.
TruncSeries shift_up(const TruncSeries&, int k);
TruncSeries pow(const TruncSeries&, std::uint64_t k);
/// Inverse of a unit series (nonzero constant term), by Newton iteration.
TruncSeries inverse(const TruncSeries&);

/// z with z^m = rhs and z(0) = z0; requires z0^m = rhs(0), z0 a unit and
/// gcd(m, p) = 1.  Newton iteration with precision doubling.
TruncSeries series_mth_root(const TruncSeries& rhs, std::uint64_t m, const Fe& z0);

/// Pivot columns <= cap of the row-echelon form of the family's coefficient
/// matrix: exactly the valuations <= cap attained by nonzero linear
/// combinations.  All series must share layer and have precision > cap.
std::set<int> valuation_spectrum(std::span<const TruncSeries> family, int cap);

/// y(t) with (a+t)^m + y(t)^m + 1 = 0 and y(0) = b, local parameter t = X-a
/// at an affine place (a, b).
TruncSeries newton_expand_y(const CurveCtx&, const Place&, int precision);

/// x(t) with x(t)^m + t^m + 1 = 0 and x(0) = alpha_i, local parameter t = Y
/// at the place P_(alpha_i, 0).
TruncSeries newton_expand_x_at_axis(const CurveCtx&, std::uint32_t index, int precision);

/// Expansions of (X-a)/a and (Y-b)/b at a Hermitian place Q = (A, B) above
/// an affine place, in the local parameter T = (U-A)/A.  The first component
/// is the exact polynomial (1+T)^{(q+1)/m} - 1.
std::pair<TruncSeries, TruncSeries> hermitian_expand(const CurveCtx&, const Fe& A, const Fe& B,
                                                     int precision);

}  // namespace fermatgaps
