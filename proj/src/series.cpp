#include "fermatgaps/series.hpp"

#include <algorithm>

#include "fermatgaps/curve.hpp"

namespace fermatgaps {

TruncSeries::TruncSeries(const FieldLayer& layer, int precision) : layer_(&layer) {
  if (precision < 1) throw std::invalid_argument("series precision must be positive");
  c_.assign(std::size_t(precision), layer.zero());
}

TruncSeries TruncSeries::constant(const Fe& value, int precision) {
  if (value.layer == nullptr) throw std::invalid_argument("unbound field element");
  TruncSeries s(*value.layer, precision);
  s.c_[0] = value;
  return s;
}

TruncSeries TruncSeries::monomial(const FieldLayer& layer, int k, const Fe& coeff,
                                  int precision) {
  TruncSeries s(layer, precision);
  if (k < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
  if (k < precision) {
    layer.digits(coeff);  // layer check
    s.c_[std::size_t(k)] = coeff;
  }
  return s;
}

void TruncSeries::set_coeff(int i, const Fe& v) {
  if (v.layer != layer_) throw std::invalid_argument("mixed field layers");
  c_.at(std::size_t(i)) = v;
}

std::optional<int> TruncSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return int(i);
  return std::nullopt;
}

TruncSeries TruncSeries::truncated(int new_precision) const {
  TruncSeries out(*layer_, new_precision);
  for (int i = 0; i < std::min(new_precision, precision()); ++i) out.c_[std::size_t(i)] = c_[std::size_t(i)];
  return out;
}

TruncSeries TruncSeries::extended(int new_precision) const {
  if (new_precision < precision()) return truncated(new_precision);
  TruncSeries out(*layer_, new_precision);
  std::copy(c_.begin(), c_.end(), out.c_.begin());
  return out;
}

static const FieldLayer& series_common_layer(const TruncSeries& a, const TruncSeries& b) {
  if (&a.layer() != &b.layer()) throw std::invalid_argument("mixed field layers");
  return a.layer();
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  const FieldLayer& L = series_common_layer(a, b);
  int n = std::min(a.precision(), b.precision());
  TruncSeries out(L, n);
  for (int i = 0; i < n; ++i) out.c_[std::size_t(i)] = L.add(a.c_[std::size_t(i)], b.c_[std::size_t(i)]);
  return out;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  const FieldLayer& L = series_common_layer(a, b);
  int n = std::min(a.precision(), b.precision());
  TruncSeries out(L, n);
  for (int i = 0; i < n; ++i) out.c_[std::size_t(i)] = L.sub(a.c_[std::size_t(i)], b.c_[std::size_t(i)]);
  return out;
}

TruncSeries operator-(const TruncSeries& a) {
  TruncSeries out(a.layer(), a.precision());
  for (int i = 0; i < a.precision(); ++i) out.c_[std::size_t(i)] = a.layer().neg(a.c_[std::size_t(i)]);
  return out;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  const FieldLayer& L = series_common_layer(a, b);
  int n = std::min(a.precision(), b.precision());
  TruncSeries out(L, n);
  for (int i = 0; i < n; ++i) {
    if (a.c_[std::size_t(i)].is_zero()) continue;
    for (int j = 0; j + i < n; ++j) {
      if (b.c_[std::size_t(j)].is_zero()) continue;
      out.c_[std::size_t(i + j)] =
          L.add(out.c_[std::size_t(i + j)], L.mul(a.c_[std::size_t(i)], b.c_[std::size_t(j)]));
    }
  }
  return out;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  if (&a.layer() != &b.layer() || a.precision() != b.precision()) return false;
  return a.c_ == b.c_;
}

TruncSeries scale(const TruncSeries& s, const Fe& f) {
  TruncSeries out(s.layer(), s.precision());
  for (int i = 0; i < s.precision(); ++i) out.set_coeff(i, s.layer().mul(s.coeff(i), f));
  return out;
}

TruncSeries shift_up(const TruncSeries& s, int k) {
  if (k < 0) throw std::invalid_argument("shift amount must be nonnegative");
  TruncSeries out(s.layer(), s.precision());
  for (int i = 0; i + k < s.precision(); ++i) out.set_coeff(i + k, s.coeff(i));
  return out;
}

TruncSeries pow(const TruncSeries& s, std::uint64_t k) {
  TruncSeries r = TruncSeries::constant(s.layer().one(), s.precision());
  TruncSeries b = s;
  while (k) {
    if (k & 1) r = r * b;
    if (k >>= 1) b = b * b;
  }
  return r;
}

TruncSeries inverse(const TruncSeries& s) {
  const FieldLayer& L = s.layer();
  if (s.coeff(0).is_zero()) throw std::invalid_argument("inverse of a non-unit series");
  int target = s.precision();
  TruncSeries z = TruncSeries::constant(L.inv(s.coeff(0)), 1);
  int cur = 1;
  TruncSeries two = TruncSeries::constant(L.from_int(2), target);
  while (cur < target) {
    cur = std::min(2 * cur, target);
    TruncSeries zc = z.extended(cur);
    z = zc * (two.truncated(cur) - s.truncated(cur) * zc);
  }
  return z;
}

TruncSeries series_mth_root(const TruncSeries& rhs, std::uint64_t m, const Fe& z0) {
  const FieldLayer& L = rhs.layer();
  if (z0.layer != &L) throw std::invalid_argument("mixed field layers");
  Fe m_scalar = L.from_int(std::int64_t(m % L.p()));
  if (m_scalar.is_zero())
    throw std::invalid_argument("series_mth_root: exponent divisible by the characteristic");
  if (L.pow(z0, m) != rhs.coeff(0))
    throw std::invalid_argument("series_mth_root: initial value does not match rhs(0)");
  if (z0.is_zero()) throw std::invalid_argument("series_mth_root: initial value must be a unit");
  int target = rhs.precision();
  TruncSeries z = TruncSeries::constant(z0, 1);
  int cur = 1;
  while (cur < target) {
    cur = std::min(2 * cur, target);
    TruncSeries zc = z.extended(cur);
    TruncSeries zm1 = pow(zc, m - 1);
    TruncSeries num = zm1 * zc - rhs.truncated(cur);
    TruncSeries den = scale(zm1, m_scalar);
    z = zc - num * inverse(den);
  }
  return z;
}

std::set<int> valuation_spectrum(std::span<const TruncSeries> family, int cap) {
  std::set<int> pivots;
  if (cap < 0) throw std::invalid_argument("spectrum cap must be nonnegative");
  if (family.empty()) return pivots;
  const FieldLayer& L = family[0].layer();
  for (const TruncSeries& s : family) {
    if (&s.layer() != &L) throw std::invalid_argument("mixed field layers in family");
    if (s.precision() <= cap)
      throw std::invalid_argument("series precision must exceed the spectrum cap");
  }
  int cols = cap + 1;
  std::vector<std::vector<Fe>> rows;
  rows.reserve(family.size());
  for (const TruncSeries& s : family) {
    std::vector<Fe> r(std::size_t(cols), L.zero());
    for (int i = 0; i < cols; ++i) r[std::size_t(i)] = s.coeff(i);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (int col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][std::size_t(col)].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    Fe inv_p = L.inv(rows[rank][std::size_t(col)]);
    for (int j = col; j < cols; ++j)
      rows[rank][std::size_t(j)] = L.mul(rows[rank][std::size_t(j)], inv_p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][std::size_t(col)].is_zero()) continue;
      Fe f = rows[r][std::size_t(col)];
      for (int j = col; j < cols; ++j)
        rows[r][std::size_t(j)] = L.sub(rows[r][std::size_t(j)], L.mul(f, rows[rank][std::size_t(j)]));
    }
    pivots.insert(col);
    ++rank;
  }
  return pivots;
}

TruncSeries newton_expand_y(const CurveCtx& ctx, const Place& pl, int precision) {
  if (pl.kind != Place::Kind::affine)
    throw std::invalid_argument("newton_expand_y needs an affine place; transport O places first");
  const FieldLayer& L = *pl.a.layer;
  TruncSeries x = TruncSeries::monomial(L, 1, L.one(), precision) +
                  TruncSeries::constant(pl.a, precision);
  TruncSeries rhs = -(TruncSeries::constant(L.one(), precision) + pow(x, ctx.m));
  return series_mth_root(rhs, ctx.m, pl.b);
}

TruncSeries newton_expand_x_at_axis(const CurveCtx& ctx, std::uint32_t index, int precision) {
  const FieldLayer& L = ctx.base();
  if (index < 1 || index > ctx.m) throw std::invalid_argument("axis index out of range");
  TruncSeries t = TruncSeries::monomial(L, 1, L.one(), precision);
  TruncSeries rhs = -(TruncSeries::constant(L.one(), precision) + pow(t, ctx.m));
  return series_mth_root(rhs, ctx.m, ctx.alpha_roots[index - 1]);
}

std::pair<TruncSeries, TruncSeries> hermitian_expand(const CurveCtx& ctx, const Fe& A,
                                                     const Fe& B, int precision) {
  const FieldLayer& L = common_layer(A, B);
  if (A.is_zero() || B.is_zero())
    throw std::invalid_argument("hermitian place must have nonzero coordinates");
  std::uint64_t qp1 = ctx.q + 1;
  Fe Aq1 = L.pow(A, qp1), Bq1 = L.pow(B, qp1);
  if (!L.add(L.add(Aq1, Bq1), L.one()).is_zero())
    throw std::invalid_argument("point is not on the Hermitian curve");
  std::uint64_t n = qp1 / ctx.m;
  TruncSeries one_plus_T = TruncSeries::constant(L.one(), precision) +
                           TruncSeries::monomial(L, 1, L.one(), precision);
  TruncSeries x_series = pow(one_plus_T, n) - TruncSeries::constant(L.one(), precision);
  // (1+v)^{q+1} = -(1 + A^{q+1} (1+T)^{q+1}) / B^{q+1}, v = (V-B)/B, v(0) = 0
  TruncSeries rhs = scale(-(TruncSeries::constant(L.one(), precision) +
                            scale(pow(one_plus_T, qp1), Aq1)),
                          L.inv(Bq1));
  TruncSeries v_plus_1 = series_mth_root(rhs, qp1, L.one());
  TruncSeries y_series = pow(v_plus_1, n) - TruncSeries::constant(L.one(), precision);
  return {x_series, y_series};
}

}  // namespace fermatgaps
