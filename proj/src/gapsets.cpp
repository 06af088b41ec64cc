#include "fermatgaps/gapsets.hpp"

#include <algorithm>
#include <set>

namespace fermatgaps {

GapSet gap_set_from(std::vector<std::uint32_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  GapSet g;
  g.gaps = std::move(values);
  g.genus = std::uint32_t(g.gaps.size());
  return g;
}

NumericalSemigroup semigroup_from_gaps(const GapSet& gs) {
  NumericalSemigroup out;
  out.gap_set = gs;
  if (!gs.gaps.empty() && gs.gaps.front() == 0)
    throw std::invalid_argument("0 cannot be a gap");
  if (gs.gaps.empty()) {
    out.multiplicity = 1;
    out.min_generators = {1};
    out.frobenius = -1;
    out.conductor = 0;
    out.apery = {0};
    return out;
  }
  std::uint32_t F = gs.gaps.back();
  std::vector<bool> gap(F + 1, false);
  for (std::uint32_t v : gs.gaps) gap[v] = true;
  auto in_sg = [&](std::uint64_t v) { return v > F || !gap[std::size_t(v)]; };

  // additive closure: a violation x + y (x, y in S) must itself be a gap <= F
  for (std::uint32_t x = 1; x <= F; ++x) {
    if (!in_sg(x)) continue;
    for (std::uint32_t y = x; x + y <= F; ++y) {
      if (in_sg(y) && !in_sg(x + y))
        throw std::invalid_argument("complement of the gap list is not closed under addition");
    }
  }

  std::uint32_t mult = 1;
  while (!in_sg(mult)) ++mult;
  out.multiplicity = mult;
  out.frobenius = F;
  out.conductor = F + 1;

  for (std::uint32_t s = 1; s <= F + mult; ++s) {
    if (!in_sg(s)) continue;
    bool decomposable = false;
    for (std::uint32_t x = 1; 2 * x <= s && !decomposable; ++x)
      if (in_sg(x) && in_sg(s - x)) decomposable = true;
    if (!decomposable) out.min_generators.push_back(s);
  }

  out.apery.assign(mult, 0);
  for (std::uint32_t r = 1; r < mult; ++r) {
    std::uint32_t s = r;
    while (!in_sg(s)) s += mult;
    out.apery[r] = s;
  }
  return out;
}

// -- polynomial helpers over one field layer (dense, ascending, trimmed) ------

namespace {

using FPoly = std::vector<Fe>;  // empty = zero polynomial

void trim(FPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

FPoly pmul(const FieldLayer& L, const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly out(a.size() + b.size() - 1, L.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = L.add(out[i + j], L.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

FPoly psub(const FieldLayer& L, const FPoly& a, const FPoly& b) {
  FPoly out(std::max(a.size(), b.size()), L.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Fe x = i < a.size() ? a[i] : L.zero();
    Fe y = i < b.size() ? b[i] : L.zero();
    out[i] = L.sub(x, y);
  }
  trim(out);
  return out;
}

FPoly padd(const FieldLayer& L, const FPoly& a, const FPoly& b) {
  FPoly out(std::max(a.size(), b.size()), L.zero());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Fe x = i < a.size() ? a[i] : L.zero();
    Fe y = i < b.size() ? b[i] : L.zero();
    out[i] = L.add(x, y);
  }
  trim(out);
  return out;
}

FPoly pscale(const FieldLayer& L, const FPoly& a, const Fe& c) {
  FPoly out = a;
  for (Fe& v : out) v = L.mul(v, c);
  trim(out);
  return out;
}

FPoly ppow(const FieldLayer& L, FPoly base, std::uint64_t k) {
  FPoly r{L.one()};
  while (k) {
    if (k & 1) r = pmul(L, r, base);
    if (k >>= 1) base = pmul(L, base, base);
  }
  return r;
}

/// quotient of a by monic-normalized b; throws when the division is not exact
FPoly pdiv_exact(const FieldLayer& L, FPoly a, const FPoly& b) {
  trim(a);
  if (b.empty()) throw std::invalid_argument("division by the zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("non-exact polynomial division");
  Fe lead_inv = L.inv(b.back());
  FPoly q(a.size() - b.size() + 1, L.zero());
  for (std::size_t k = q.size(); k-- > 0;) {
    Fe c = L.mul(a[k + b.size() - 1], lead_inv);
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[k + i] = L.sub(a[k + i], L.mul(c, b[i]));
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("non-exact polynomial division");
  return q;
}

FPoly pmod(const FieldLayer& L, FPoly a, const FPoly& b) {
  trim(a);
  Fe lead_inv = L.inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    Fe c = L.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = L.sub(a[shift + i], L.mul(c, b[i]));
    trim(a);
  }
  return a;
}

FPoly pgcd_monic(const FieldLayer& L, FPoly a, FPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FPoly r = pmod(L, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = pscale(L, a, L.inv(a.back()));
  return a;
}

}  // namespace

Fe eval_poly(const FieldLayer& L, const std::vector<Fe>& coeffs, const Fe& at) {
  Fe acc = L.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = L.add(L.mul(acc, at), coeffs[i]);
  return acc;
}

PQPair pq_polynomials(const CurveCtx& ctx, std::uint32_t i) {
  if (!ctx.zeta3)
    throw std::invalid_argument("pq_polynomials needs a cube root of unity (3 | q+1)");
  if (i > 300) throw std::invalid_argument("pq_polynomials: index beyond the degree cap");
  const FieldLayer& L = ctx.base();
  Fe z3 = *ctx.zeta3;
  Fe z3sq = L.mul(z3, z3);
  PQPair out;
  out.index = i;
  if (i == 0) {
    out.p_poly = {};                                       // P_0 = 0
    out.q_num = {L.one()};                                 // Q_0 = 1/(s^2 - s + 1)
    out.q_den = {L.one(), L.neg(L.one()), L.one()};
    return out;
  }
  FPoly s_plus_z3{z3, L.one()};
  FPoly s_plus_z3sq{z3sq, L.one()};
  FPoly s_minus_1{L.neg(L.one()), L.one()};

  FPoly p_num = psub(L, ppow(L, s_plus_z3, 3ull * i), ppow(L, s_plus_z3sq, 3ull * i));
  Fe denom_scalar = L.mul(L.from_int(3), L.sub(z3, z3sq));
  p_num = pscale(L, p_num, L.inv(denom_scalar));
  if (!p_num.empty() && !p_num.front().is_zero())
    throw std::logic_error("P numerator not divisible by s");
  if (!p_num.empty()) p_num.erase(p_num.begin());  // divide by s
  out.p_poly = pdiv_exact(L, p_num, s_minus_1);

  Fe third = L.inv(L.from_int(3));
  FPoly q_num = padd(L, pscale(L, ppow(L, s_plus_z3, 3ull * i - 1), L.mul(L.sub(L.one(), z3), third)),
                     pscale(L, ppow(L, s_plus_z3sq, 3ull * i - 1), L.mul(L.sub(L.one(), z3sq), third)));
  out.q_num = pdiv_exact(L, q_num, s_minus_1);
  out.q_den = {L.one()};

  if (out.p_poly.empty()) throw std::logic_error("P_i vanished for i >= 1");
  if (out.p_poly.size() > 3ull * i - 2)  // deg <= 3i-3
    throw std::logic_error("deg P_i exceeds 3i-3");
  if (out.q_num.size() != 3ull * i - 1)  // deg == 3i-2
    throw std::logic_error("deg Q_i differs from 3i-2");
  return out;
}

bool pq_coprime(const CurveCtx& ctx, const PQPair& pq) {
  const FieldLayer& L = ctx.base();
  if (pq.index == 0) return false;
  FPoly g = pgcd_monic(L, pq.p_poly, pq.q_num);
  return g.size() == 1;
}

POrder p_order(const CurveCtx& ctx, const Fe& alpha) {
  if (!ctx.zeta3) throw std::invalid_argument("p_order needs a cube root of unity (3 | q+1)");
  if (alpha.layer == nullptr) throw std::invalid_argument("unbound field element");
  const FieldLayer& L = *alpha.layer;
  if (alpha.is_zero() || alpha == L.one())
    throw std::invalid_argument("p_order is undefined at alpha in {0, 1}");
  // roots of s^2 - s + 1 (that is, -zeta_3 and -zeta_3^2) have no finite order
  Fe disc = L.add(L.sub(L.mul(alpha, alpha), alpha), L.one());
  if (disc.is_zero()) return POrder::inf();

  // P_j(alpha) = 0 iff rho^{3j} = 1 for rho = (alpha+zeta_3)/(alpha+zeta_3^2):
  // the least j >= 2 determines the order.  rho is well-defined and nonzero here.
  Fe z3 = L.embed_from_base(*ctx.zeta3);
  Fe z3sq = L.mul(z3, z3);
  Fe rho = L.mul(L.add(alpha, z3), L.inv(L.add(alpha, z3sq)));
  std::uint64_t r = L.mult_order(L.pow(rho, 3));
  std::uint64_t i = r >= 2 ? r - 1 : 1;
  std::uint64_t cap = L.order();  // q^{2d}, the orbit-size bound
  if (i > cap) throw std::runtime_error("p_order search exceeded its cap");
  return POrder::finite(i);
}

// -- closed-form gap sets -------------------------------------------------------

GapSet gaps_O_for_m(std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  std::uint32_t genus = (m - 1) * (m - 2) / 2;
  std::uint32_t bound = 2 * genus + 1;
  std::vector<bool> in_sg(bound + 1, false);
  in_sg[0] = true;
  for (std::uint32_t v = 1; v <= bound; ++v) {
    if (v >= m - 1 && in_sg[v - (m - 1)]) in_sg[v] = true;
    if (v >= m && in_sg[v - m]) in_sg[v] = true;
  }
  std::vector<std::uint32_t> gaps;
  for (std::uint32_t v = 1; v <= bound; ++v)
    if (!in_sg[v]) gaps.push_back(v);
  GapSet out = gap_set_from(std::move(gaps));
  if (out.genus != genus) throw std::logic_error("<m-1, m> gap count != (m-1)(m-2)/2");
  return out;
}

GapSet gaps_O(const CurveCtx& ctx) { return gaps_O_for_m(ctx.m); }

GapSet gaps_half_for(std::uint32_t m, std::uint64_t stride) {
  if (m < 4) throw std::invalid_argument("the half branch needs m >= 4");
  std::vector<std::uint32_t> vals;
  for (std::uint32_t i = 0; i + 3 <= m; ++i)
    for (std::uint32_t j = 0; i + j + 3 <= m; ++j)
      for (std::uint32_t k = 0; i + j + 2 * k + 3 <= m; ++k)
        vals.push_back(std::uint32_t(i + 2 * j + k * stride + 1));
  GapSet out = gap_set_from(std::move(vals));
  if (out.genus != (m - 1) * (m - 2) / 2)
    throw std::logic_error("half-branch gap count differs from the genus");
  return out;
}

GapSet gaps_half(const CurveCtx& ctx, bool rational) {
  if (2ull * ctx.m != ctx.q + 1)
    throw std::invalid_argument("gaps_half applies to m = (q+1)/2 only");
  return gaps_half_for(ctx.m, rational ? ctx.q + 1 : ctx.q);
}

namespace {

GapSet from_bitmap(const std::vector<bool>& hit) {
  std::vector<std::uint32_t> gaps;
  for (std::uint32_t v = 0; v < hit.size(); ++v)
    if (hit[v]) gaps.push_back(v);
  return gap_set_from(std::move(gaps));
}

// j contributes only through (3j+2) l1, so l1 = 0 tuples are emitted once.
GapSet gaps_third_large(std::uint32_t m, std::uint64_t stride) {
  std::vector<bool> hit(stride * ((m - 3) / 3) + 4 * m + 8, false);
  std::uint32_t j_cap = m - 2;
  for (std::uint32_t s = 0; s <= 1 && m >= s + 3; ++s) {
    std::uint32_t budget = m - 3 - s;
    for (std::uint32_t k = 0; 3 * k <= budget; ++k) {
      std::uint64_t base_k = k * stride + s + 1;
      for (std::uint32_t l0 = 0; 3 * k + l0 <= budget; ++l0) {
        std::uint32_t rem = budget - 3 * k - l0;
        std::uint64_t base = base_k + 2 * l0;
        hit[base] = true;  // l1 = 0
        for (std::uint32_t j = 0; j <= j_cap && j + 1 <= rem; ++j)
          for (std::uint32_t l1 = 1; (j + 1) * l1 <= rem; ++l1)
            hit[base + std::uint64_t(3 * j + 2) * l1] = true;
      }
    }
  }
  return from_bitmap(hit);
}

GapSet gaps_third_small(std::uint32_t m, std::uint64_t stride, std::uint64_t i) {
  std::vector<bool> hit(stride * ((m - 3) / 3) + (3 * i + 3) * (m / (i + 1) + 1) + 4 * m + 8,
                        false);
  for (std::uint32_t s = 0; s <= 1 && m >= s + 3; ++s) {
    std::uint32_t budget = m - 3 - s;
    for (std::uint32_t k = 0; 3 * k <= budget; ++k) {
      for (std::uint64_t l2 = 0; 3 * k + (i + 1) * l2 <= budget; ++l2) {
        std::uint64_t base_kl2 = k * stride + (3 * i + 3) * l2 + s + 1;
        std::uint64_t used = 3 * k + (i + 1) * l2;
        for (std::uint32_t l0 = 0; used + l0 <= budget; ++l0) {
          std::uint32_t rem = std::uint32_t(budget - used - l0);
          std::uint64_t base = base_kl2 + 2 * l0;
          hit[base] = true;  // l1 = 0
          for (std::uint64_t j = 0; j + 1 <= i && j + 1 <= rem; ++j)
            for (std::uint32_t l1 = 1; (j + 1) * l1 <= rem; ++l1)
              hit[base + (3 * j + 2) * l1] = true;
        }
      }
    }
  }
  return from_bitmap(hit);
}

}  // namespace

GapSet gaps_third_for(std::uint32_t m, std::uint64_t stride, const POrder& order) {
  if (m < 4) throw std::invalid_argument("the third branch needs m >= 4");
  if (!order.infinite && order.value < 1)
    throw std::invalid_argument("finite P-order must be at least 1");
  GapSet out;
  if (order.infinite || order.value > m - 2)
    out = gaps_third_large(m, stride);
  else
    out = gaps_third_small(m, stride, order.value);
  if (out.genus != (m - 1) * (m - 2) / 2)
    throw std::logic_error("third-branch gap count differs from the genus");
  return out;
}

GapSet gaps_third(const CurveCtx& ctx, bool rational, const POrder& order) {
  if (3ull * ctx.m != ctx.q + 1)
    throw std::invalid_argument("gaps_third applies to m = (q+1)/3 only");
  return gaps_third_for(ctx.m, rational ? ctx.q + 1 : ctx.q, order);
}

// -- integer counting identities ---------------------------------------------

std::int64_t floor_sum_brute(std::int64_t n) {
  std::int64_t acc = 0;
  for (std::int64_t t = 0; t <= n; ++t) acc += t / 3;
  return acc;
}

std::int64_t floor_sum_closed(std::int64_t n) {
  if (n < 0) return 0;
  return n * (n - 1) / 6;
}

std::int64_t half_index_card(std::int64_t q) {
  if (q < 7 || q % 2 == 0) throw std::invalid_argument("half_index_card needs odd q >= 7");
  std::int64_t count = 0;
  for (std::int64_t i = 0; i <= 1; ++i)
    for (std::int64_t j = 0; j <= (q - 5) / 2 - i; ++j) count += (q - 5 - 2 * i - 2 * j) / 4 + 1;
  return count;
}

std::int64_t s_of_j(std::int64_t m, std::int64_t i, std::int64_t j) {
  std::int64_t acc = 0;
  for (std::int64_t l2 = 1; l2 <= (m - j) / (i + 1); ++l2) acc += (m - j - (i + 1) * l2) / 3 + 1;
  return acc;
}

std::int64_t s_of_j_sum(std::int64_t m, std::int64_t i) {
  std::int64_t acc = 0;
  for (std::int64_t j = 3; j <= i + 3; ++j) acc += s_of_j(m, i, j);
  return acc;
}

std::int64_t claimjtilde_closed(std::int64_t m, std::int64_t i) {
  return (m - i - 1) * (m - i - 2) / 6;
}

}  // namespace fermatgaps
