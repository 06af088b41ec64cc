#include "fermatgaps/oracle.hpp"

#include <string>

namespace fermatgaps {

std::vector<std::pair<std::uint32_t, std::uint32_t>> holomorphic_basis(std::uint32_t m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (m < 3) return out;
  for (std::uint32_t i = 0; i + 3 <= m; ++i)
    for (std::uint32_t j = 0; i + j + 3 <= m; ++j) out.emplace_back(i, j);
  return out;
}

namespace {

GapSet gaps_from_family(const CurveCtx& ctx, const std::vector<TruncSeries>& family,
                        const Place& pl) {
  int cap = ctx.genus >= 1 ? int(2 * ctx.genus - 2) : 0;
  std::set<int> spectrum = valuation_spectrum(family, cap);
  std::vector<std::uint32_t> gaps;
  for (int v : spectrum) gaps.push_back(std::uint32_t(v) + 1);
  GapSet out = gap_set_from(std::move(gaps));
  if (out.genus != ctx.genus)
    throw std::runtime_error(
        "gap oracle found " + std::to_string(out.genus) + " gaps instead of " +
        std::to_string(ctx.genus) + " at " + place_brief(ctx, pl) +
        "; the differential family lost rank inside the precision window - retry with a "
        "larger precision override");
  return out;
}

GapSet oracle_at_axis_x(const CurveCtx& ctx, std::uint32_t index, int precision) {
  // local parameter t = Y, differentials X^i Y^j dY / X^{m-1}
  const FieldLayer& L = ctx.base();
  TruncSeries x = newton_expand_x_at_axis(ctx, index, precision);
  TruncSeries xinv = inverse(x);
  std::uint32_t m = ctx.m;
  std::vector<TruncSeries> xinv_pows;
  xinv_pows.reserve(m);
  TruncSeries acc = TruncSeries::constant(L.one(), precision);
  for (std::uint32_t k = 0; k + 1 < m; ++k) {
    xinv_pows.push_back(acc);
    acc = acc * xinv;
  }
  xinv_pows.push_back(acc);  // xinv^{m-1}
  std::vector<TruncSeries> family;
  for (auto [i, j] : holomorphic_basis(m)) family.push_back(shift_up(xinv_pows[m - 1 - i], int(j)));
  return gaps_from_family(ctx, family, axis_x_place(ctx, index));
}

}  // namespace

GapSet gap_set_oracle(const CurveCtx& ctx, const Place& pl, std::optional<int> precision) {
  if (ctx.genus == 0) return GapSet{};
  int N = precision.value_or(ctx.default_precision());
  if (N <= int(2 * ctx.genus - 2))
    throw std::invalid_argument("oracle precision must exceed 2g-2");
  switch (pl.kind) {
    case Place::Kind::axis_x:
      return oracle_at_axis_x(ctx, pl.index, N);
    case Place::Kind::infinity:
      // S carries (1 : alpha_i : 0) to (alpha_i : 0 : 1)
      return gap_set_oracle(ctx, apply_automorphism(ctx, AutWord{{AutGen::S()}}, pl), precision);
    case Place::Kind::axis_y:
      // S^2 carries (0 : alpha_i : 1) to an axis-X place
      return gap_set_oracle(
          ctx, apply_automorphism(ctx, AutWord{{AutGen::S(), AutGen::S()}}, pl), precision);
    case Place::Kind::affine:
      break;
  }
  // local parameter t = X-a, differentials X^i Y^j dX / Y^{m-1}
  const FieldLayer& L = *pl.a.layer;
  TruncSeries x = TruncSeries::monomial(L, 1, L.one(), N) + TruncSeries::constant(pl.a, N);
  TruncSeries y = newton_expand_y(ctx, pl, N);
  TruncSeries w = pow(inverse(y), ctx.m - 1);
  std::uint32_t span = ctx.m >= 3 ? ctx.m - 2 : 0;
  std::vector<TruncSeries> x_pows, y_pows;
  TruncSeries acc = TruncSeries::constant(L.one(), N);
  for (std::uint32_t i = 0; i < span; ++i) {
    x_pows.push_back(acc);
    acc = acc * x;
  }
  acc = TruncSeries::constant(L.one(), N);
  for (std::uint32_t j = 0; j < span; ++j) {
    y_pows.push_back(acc);
    acc = acc * y;
  }
  std::vector<TruncSeries> family;
  for (auto [i, j] : holomorphic_basis(ctx.m)) family.push_back(x_pows[i] * y_pows[j] * w);
  return gaps_from_family(ctx, family, pl);
}

std::set<int> rr_valuation_spectrum(const CurveCtx& ctx, const Place& pl, std::uint32_t n,
                                    std::optional<int> precision) {
  if (pl.kind != Place::Kind::affine)
    throw std::invalid_argument("rr_valuation_spectrum needs an affine place outside O");
  if (ctx.m < 3 || n > ctx.m - 3)
    throw std::invalid_argument(
        "rr_valuation_spectrum: the monomial basis covers L(n D_inf) for n <= m-3 only");
  int N = precision.value_or(ctx.default_precision());
  const FieldLayer& L = *pl.a.layer;
  TruncSeries x = TruncSeries::monomial(L, 1, L.one(), N) + TruncSeries::constant(pl.a, N);
  TruncSeries y = newton_expand_y(ctx, pl, N);
  std::vector<TruncSeries> x_pows, y_pows;
  TruncSeries acc = TruncSeries::constant(L.one(), N);
  for (std::uint32_t i = 0; i <= n; ++i) {
    x_pows.push_back(acc);
    acc = acc * x;
  }
  acc = TruncSeries::constant(L.one(), N);
  for (std::uint32_t j = 0; j <= n; ++j) {
    y_pows.push_back(acc);
    acc = acc * y;
  }
  std::vector<TruncSeries> family;
  for (std::uint32_t i = 0; i <= n; ++i)
    for (std::uint32_t j = 0; i + j <= n; ++j) family.push_back(x_pows[i] * y_pows[j]);
  int cap = ctx.genus >= 1 ? int(2 * ctx.genus - 2) : 0;
  std::set<int> spectrum = valuation_spectrum(family, cap);
  if (spectrum.size() != (std::size_t(n) + 1) * (n + 2) / 2)
    throw std::logic_error("L(n D_inf) spectrum size differs from (n+1)(n+2)/2 at " +
                           place_brief(ctx, pl));
  return spectrum;
}

TruncSeries f0_tilde_series(const CurveCtx& ctx, const Fe& A, const Fe& B, int precision) {
  const FieldLayer& L = common_layer(A, B);
  auto [x_series, y_series] = hermitian_expand(ctx, A, B, precision);
  Fe am = L.pow(A, ctx.q + 1);  // = a^m
  Fe bm = L.pow(B, ctx.q + 1);  // = b^m
  return scale(x_series, am) + scale(y_series, bm);
}

}  // namespace fermatgaps
