#include "fermatgaps/curve.hpp"

#include <algorithm>
#include <numeric>

namespace fermatgaps {

namespace {

std::uint32_t orbit_degree(const FieldLayer& L, const Fe& a, const Fe& b) {
  Fe na = L.frobenius_q2(a), nb = L.frobenius_q2(b);
  std::uint32_t k = 1;
  while (!(na == a && nb == b)) {
    na = L.frobenius_q2(na);
    nb = L.frobenius_q2(nb);
    if (++k > L.d()) throw std::logic_error("frobenius orbit exceeds layer degree");
  }
  return k;
}

std::uint32_t alpha_index(const CurveCtx& ctx, const Fe& v) {
  for (std::uint32_t i = 0; i < ctx.alpha_roots.size(); ++i)
    if (ctx.alpha_roots[i] == v) return i + 1;
  throw std::logic_error("value is not a root of Z^m + 1");
}

}  // namespace

CurveCtx make_curve(std::uint32_t p, std::uint32_t e, std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  CurveCtx ctx;
  ctx.tower = make_field_tower(p, e, 1);
  ctx.p = p;
  ctx.e = e;
  ctx.m = m;
  ctx.q = ctx.tower->q();
  if ((ctx.q + 1) % m != 0) throw std::invalid_argument("m does not divide q+1");
  if (std::gcd(std::uint64_t(m), std::uint64_t(p)) != 1)
    throw std::invalid_argument("m shares a factor with the characteristic");
  ctx.genus = (m - 1) * (m - 2) / 2;
  const FieldLayer& L = ctx.base();
  ctx.zeta_m = L.primitive_root_of_unity(m);
  ctx.xi = L.primitive_root_of_unity((ctx.q + 1) / m);
  if ((ctx.q + 1) % 3 == 0) ctx.zeta3 = L.primitive_root_of_unity(3);
  Fe minus_one = L.neg(L.one());
  for (std::uint64_t c = 1; c < L.order(); ++c) {
    Fe z = L.elem(c);
    if (L.pow(z, m) == minus_one) ctx.alpha_roots.push_back(z);
  }
  if (ctx.alpha_roots.size() != m)
    throw std::logic_error("Z^m + 1 does not split into m roots over F_{q^2}");
  return ctx;
}

Place infinity_place(const CurveCtx& ctx, std::uint32_t index) {
  if (index < 1 || index > ctx.m) throw std::invalid_argument("place index out of range 1..m");
  return {Place::Kind::infinity, index, ctx.base().one(), ctx.alpha_roots[index - 1], 1};
}

Place axis_x_place(const CurveCtx& ctx, std::uint32_t index) {
  if (index < 1 || index > ctx.m) throw std::invalid_argument("place index out of range 1..m");
  return {Place::Kind::axis_x, index, ctx.alpha_roots[index - 1], ctx.base().zero(), 1};
}

Place axis_y_place(const CurveCtx& ctx, std::uint32_t index) {
  if (index < 1 || index > ctx.m) throw std::invalid_argument("place index out of range 1..m");
  return {Place::Kind::axis_y, index, ctx.base().zero(), ctx.alpha_roots[index - 1], 1};
}

Place affine_place(const CurveCtx& ctx, const Fe& a, const Fe& b) {
  const FieldLayer& L = common_layer(a, b);
  if (L.p() != ctx.p || L.e() != ctx.e)
    throw std::invalid_argument("coordinates from a foreign tower");
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("affine place needs nonzero coordinates (zeros are axis places)");
  Fe lhs = L.add(L.add(L.pow(a, ctx.m), L.pow(b, ctx.m)), L.one());
  if (!lhs.is_zero()) throw std::invalid_argument("point is not on the curve");
  std::uint32_t deg = orbit_degree(L, a, b);
  if (deg != L.d())
    throw std::invalid_argument("coordinates lie in a proper sublayer; supply them there");
  return {Place::Kind::affine, 0, a, b, deg};
}

bool is_in_O(const Place& pl) { return pl.kind != Place::Kind::affine; }

Place canonical_rep(const CurveCtx&, const Place& pl) {
  if (is_in_O(pl)) return pl;
  const FieldLayer& L = *pl.a.layer;
  Fe best_a = pl.a, best_b = pl.b;
  Fe na = pl.a, nb = pl.b;
  for (std::uint32_t k = 1; k < pl.degree; ++k) {
    na = L.frobenius_q2(na);
    nb = L.frobenius_q2(nb);
    if (na.code < best_a.code || (na.code == best_a.code && nb.code < best_b.code)) {
      best_a = na;
      best_b = nb;
    }
  }
  Place out = pl;
  out.a = best_a;
  out.b = best_b;
  return out;
}

bool same_place(const CurveCtx& ctx, const Place& x, const Place& y) {
  if (x.kind != y.kind) return false;
  if (x.kind != Place::Kind::affine) return x.index == y.index;
  if (x.degree != y.degree || x.a.layer != y.a.layer) return false;
  Place cx = canonical_rep(ctx, x), cy = canonical_rep(ctx, y);
  return cx.a == cy.a && cx.b == cy.b;
}

std::string place_brief(const CurveCtx&, const Place& pl) {
  switch (pl.kind) {
    case Place::Kind::infinity: return "infinity:" + std::to_string(pl.index);
    case Place::Kind::axis_x: return "axis_x:" + std::to_string(pl.index);
    case Place::Kind::axis_y: return "axis_y:" + std::to_string(pl.index);
    case Place::Kind::affine:
      return "affine(deg " + std::to_string(pl.degree) + ", a#" + std::to_string(pl.a.code) +
             ", b#" + std::to_string(pl.b.code) + ")";
  }
  return "?";
}

std::vector<Place> enumerate_places(const CurveCtx& ctx, std::uint32_t d_max) {
  if (d_max < 1) throw std::invalid_argument("d_max must be at least 1");
  std::vector<Place> out;
  for (std::uint32_t i = 1; i <= ctx.m; ++i) out.push_back(axis_x_place(ctx, i));
  for (std::uint32_t i = 1; i <= ctx.m; ++i) out.push_back(axis_y_place(ctx, i));
  for (std::uint32_t i = 1; i <= ctx.m; ++i) out.push_back(infinity_place(ctx, i));

  for (std::uint32_t d = 1; d <= d_max; ++d) {
    const FieldLayer& L = ctx.layer(d);
    if (!L.has_tables())
      throw std::invalid_argument("enumeration needs a table-backed layer: " + L.describe() +
                                  " is too large");
    const std::uint64_t N = L.group_order();
    const std::uint64_t sub = N / ctx.m;
    const std::uint64_t q2 = (ctx.q * ctx.q) % N;
    std::vector<Place> found;
    std::uint64_t oa[64], ob[64];
    for (std::uint64_t t = 0; t < sub; ++t) {
      Fe s = L.exp_element(std::uint64_t(ctx.m) * t % N);
      Fe c = L.neg(L.add(L.one(), s));
      if (c.is_zero()) continue;  // s = -1: axis solutions
      std::uint64_t lc = L.log_of(c);
      if (lc % ctx.m) continue;
      for (std::uint32_t ja = 0; ja < ctx.m; ++ja) {
        std::uint64_t la = (t + std::uint64_t(ja) * sub) % N;
        for (std::uint32_t jb = 0; jb < ctx.m; ++jb) {
          std::uint64_t lb = (lc / ctx.m + std::uint64_t(jb) * sub) % N;
          // Frobenius orbit in log space
          std::uint32_t deg = 0;
          std::uint64_t ca = la, cb = lb;
          bool rep = true;
          std::uint64_t a0 = L.exp_element(la).code, b0 = L.exp_element(lb).code;
          do {
            oa[deg] = ca;
            ob[deg] = cb;
            ++deg;
            ca = mul_mod_u64(ca, q2, N);
            cb = mul_mod_u64(cb, q2, N);
          } while (!(ca == la && cb == lb) && deg <= L.d());
          if (deg != d) continue;
          for (std::uint32_t k = 1; k < deg && rep; ++k) {
            std::uint64_t ak = L.exp_element(oa[k]).code, bk = L.exp_element(ob[k]).code;
            if (ak < a0 || (ak == a0 && bk < b0)) rep = false;
          }
          if (!rep) continue;
          found.push_back(Place{Place::Kind::affine, 0, L.exp_element(la), L.exp_element(lb), d});
        }
      }
    }
    std::sort(found.begin(), found.end(), [](const Place& x, const Place& y) {
      return x.a.code != y.a.code ? x.a.code < y.a.code : x.b.code < y.b.code;
    });
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::uint64_t rational_place_census(const CurveCtx& ctx) {
  const FieldLayer& L = ctx.base();
  Fe minus_one = L.neg(L.one());
  std::uint64_t count = 3ull * ctx.m;
  for (std::uint64_t c = 1; c < L.order(); ++c) {
    Fe a = L.elem(c);
    Fe am = L.pow(a, ctx.m);
    if (am == minus_one) continue;  // b would be 0
    Fe rhs = L.neg(L.add(L.one(), am));
    if (L.is_nth_power(rhs, ctx.m)) count += ctx.m;  // m distinct b per solvable a
  }
  return count;
}

Place frobenius_place(const CurveCtx&, const Place& pl) {
  if (is_in_O(pl)) return pl;
  const FieldLayer& L = *pl.a.layer;
  Place out = pl;
  out.a = L.frobenius_q2(pl.a);
  out.b = L.frobenius_q2(pl.b);
  return out;
}

Fe alpha_invariant(const CurveCtx& ctx, const Place& pl) {
  if (pl.kind != Place::Kind::affine)
    throw std::invalid_argument("alpha invariant is defined for affine places outside O");
  const FieldLayer& L = *pl.a.layer;
  Fe am = L.pow(pl.a, ctx.m);
  Fe denom = L.add(L.one(), am);
  if (denom.is_zero()) throw std::invalid_argument("a^m = -1: place is in O");
  return L.mul(am, L.inv(denom));
}

Place apply_automorphism(const CurveCtx& ctx, const AutWord& word, const Place& pl) {
  const FieldLayer& L = pl.kind == Place::Kind::affine ? *pl.a.layer : ctx.base();
  // projective triple of the point
  Fe x = L.zero(), y = L.zero(), z = L.zero();
  switch (pl.kind) {
    case Place::Kind::infinity:
      x = L.one();
      y = L.embed_from_base(ctx.alpha_roots[pl.index - 1]);
      break;
    case Place::Kind::axis_x:
      x = L.embed_from_base(ctx.alpha_roots[pl.index - 1]);
      z = L.one();
      break;
    case Place::Kind::axis_y:
      y = L.embed_from_base(ctx.alpha_roots[pl.index - 1]);
      z = L.one();
      break;
    case Place::Kind::affine:
      x = pl.a;
      y = pl.b;
      z = L.one();
      break;
  }
  for (const AutGen& g : word.gens) {
    switch (g.type) {
      case AutGen::Type::scale: {
        Fe za = L.embed_from_base(ctx.base().pow(ctx.zeta_m, g.za % ctx.m));
        Fe zb = L.embed_from_base(ctx.base().pow(ctx.zeta_m, g.zb % ctx.m));
        x = L.mul(x, za);
        y = L.mul(y, zb);
        break;
      }
      case AutGen::Type::s: {
        Fe t = x;
        x = y;
        y = z;
        z = t;
        break;
      }
      case AutGen::Type::t:
        std::swap(x, z);
        break;
    }
  }
  if (z.is_zero()) {
    if (x.is_zero()) throw std::logic_error("automorphism image (0:y:0) is not on the curve");
    Fe eta = L.mul(y, L.inv(x));
    return infinity_place(ctx, alpha_index(ctx, eta));
  }
  Fe xx = L.mul(x, L.inv(z)), yy = L.mul(y, L.inv(z));
  if (xx.is_zero()) return axis_y_place(ctx, alpha_index(ctx, yy));
  if (yy.is_zero()) return axis_x_place(ctx, alpha_index(ctx, xx));
  Place out{Place::Kind::affine, 0, xx, yy, pl.degree};
  if (orbit_degree(L, xx, yy) != pl.degree)
    throw std::logic_error("automorphism changed the degree of a place");
  return out;
}

HermitianLift hermitian_lift(const CurveCtx& ctx, const Place& pl) {
  if (pl.kind != Place::Kind::affine)
    throw std::invalid_argument("hermitian lift needs an affine place");
  std::uint64_t n = (ctx.q + 1) / ctx.m;
  const FieldLayer& L = *pl.a.layer;
  if (n == 1) return {pl.a, pl.b, pl.degree};
  if (!is_prime_u64(n))
    throw std::invalid_argument("hermitian lift implemented for prime (q+1)/m only");
  std::uint32_t nn = std::uint32_t(n);
  if (L.is_nth_power(pl.a, n) && L.is_nth_power(pl.b, n))
    return {L.nth_root(pl.a, nn), L.nth_root(pl.b, nn), pl.degree};
  if (pl.degree != 1)
    throw std::invalid_argument(
        "hermitian lift of a higher-degree place needs roots in its own layer");
  const FieldLayer& Ln = ctx.layer(pl.degree * nn);
  Fe a = Ln.embed_from_base(pl.a), b = Ln.embed_from_base(pl.b);
  return {Ln.nth_root(a, nn), Ln.nth_root(b, nn), pl.degree * nn};
}

}  // namespace fermatgaps
