#include "fermatgaps/field.hpp"

#include <algorithm>
#include <numeric>

namespace fermatgaps {

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t(1) << 22;
constexpr std::uint32_t kMaxDegree = 64;
constexpr int kMaxCodeBits = 62;

using Poly = std::vector<std::uint32_t>;  // over F_p, little-endian, trimmed

void ptrim(Poly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

bool pis_zero(const Poly& a) { return a.size() == 1 && a[0] == 0; }

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j)
        acc[i + j] += std::uint64_t(a[i]) * b[j];
  const std::size_t n = f.size() - 1;  // deg f
  for (std::size_t idx = acc.size(); idx-- > n;) {
    std::uint64_t c = acc[idx] % p;
    if (c) {
      // subtract c * f * x^{idx-n}: add c * (p - f_i) at the shifted spots
      for (std::size_t i = 0; i < n; ++i)
        acc[idx - n + i] += c * ((p - f[i] % p) % p);
    }
    acc[idx] = 0;
  }
  Poly out(n, 0);
  for (std::size_t i = 0; i < n && i < acc.size(); ++i) out[i] = std::uint32_t(acc[i] % p);
  ptrim(out);
  return out;
}

Poly ppow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly psub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t x = i < a.size() ? a[i] : 0;
    std::uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  ptrim(r);
  return r;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!pis_zero(b)) {
    // a mod b
    while (a.size() >= b.size() && !pis_zero(a)) {
      std::uint32_t lead = a.back();
      if (lead == 0) {
        a.pop_back();
        continue;
      }
      std::uint64_t binv = pow_mod_u64(b.back(), p - 2, p);
      std::uint32_t fct = std::uint32_t(lead * binv % p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = std::uint32_t((a[shift + i] + std::uint64_t(p - 1) * fct % p * b[i]) % p);
      ptrim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
    ptrim(b);
  }
  return a;
}

/// x -> x^(p^k) mod f, by k successive p-th powers.
Poly frobenius_iterate(Poly x, std::uint32_t k, const Poly& f, std::uint32_t p) {
  for (std::uint32_t i = 0; i < k; ++i) x = ppow_mod(x, p, f, p);
  return x;
}

/// Rabin irreducibility: x^{p^n} = x mod f and gcd(x^{p^{n/l}} - x, f) = 1
/// for every prime l | n.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = std::uint32_t(f.size() - 1);
  if (f[0] == 0) return n == 1;  // divisible by x
  Poly x{0, 1};
  Poly t = frobenius_iterate(x, n, f, p);
  if (!pis_zero(psub(t, x, p))) return false;
  for (const auto& [ell, _] : factorize_u64(n)) {
    Poly u = frobenius_iterate(x, n / std::uint32_t(ell), f, p);
    Poly g = pgcd(psub(u, x, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

// -- integer utilities -------------------------------------------------------

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return std::uint64_t((unsigned __int128)a * b % m);
}

std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = m > 1 ? 1 : 0;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod_u64(r, a, m);
    a = mul_mod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1;
  std::int64_t r = std::int64_t(m), nr = std::int64_t(a % m);
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw std::invalid_argument("inv_mod: arguments not coprime");
  return std::uint64_t(t < 0 ? t + std::int64_t(m) : t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod_u64(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[n]++;
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
  std::map<std::uint64_t, int> m;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % d == 0) {
      m[d]++;
      n /= d;
    }
  }
  factor_rec(n, m);
  return {m.begin(), m.end()};
}

// -- FieldLayer ---------------------------------------------------------------

FieldLayer::FieldLayer(std::uint32_t p, std::uint32_t e, std::uint32_t d,
                       const FieldLayer* base)
    : p_(p), e_(e), d_(d), deg_(2 * e * d), base_(base) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if (p >= (1u << 15)) throw std::invalid_argument("characteristic too large (p < 2^15)");
  if (e == 0 || d == 0) throw std::invalid_argument("e and d must be positive");
  if (deg_ > kMaxDegree) throw std::invalid_argument("field layer exceeds degree bound 2ed <= 64");

  q_ = 1;
  for (std::uint32_t i = 0; i < e_; ++i) q_ *= p_;
  order_ = 1;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    if (order_ > (std::uint64_t(1) << kMaxCodeBits) / p_)
      throw std::invalid_argument("field layer too large (p^(2ed) must fit in 62 bits)");
    order_ *= p_;
  }

  p_pows_.resize(deg_ + 1);
  p_pows_[0] = 1;
  for (std::uint32_t i = 0; i < deg_; ++i) p_pows_[i + 1] = p_pows_[i] * p_;

  // smallest-code monic irreducible of degree deg_
  for (std::uint64_t code = 0;; ++code) {
    Poly f(deg_ + 1, 0);
    std::uint64_t t = code;
    for (std::uint32_t i = 0; i < deg_; ++i) {
      f[i] = std::uint32_t(t % p_);
      t /= p_;
    }
    f[deg_] = 1;
    if (is_irreducible(f, p_)) {
      modulus_.assign(f.begin(), f.end() - 1);
      break;
    }
  }

  // x^{deg+k} mod f for k = 0 .. deg-2
  red_.resize(deg_ >= 1 ? deg_ - 1 : 0);
  if (!red_.empty()) {
    red_[0].resize(deg_);
    for (std::uint32_t i = 0; i < deg_; ++i) red_[0][i] = (p_ - modulus_[i] % p_) % p_;
    for (std::size_t k = 1; k < red_.size(); ++k) {
      red_[k].assign(deg_, 0);
      std::uint32_t top = red_[k - 1][deg_ - 1];
      for (std::uint32_t i = deg_ - 1; i >= 1; --i) red_[k][i] = red_[k - 1][i - 1];
      red_[k][0] = 0;
      if (top)
        for (std::uint32_t i = 0; i < deg_; ++i)
          red_[k][i] = std::uint32_t((red_[k][i] + std::uint64_t(top) * red_[0][i]) % p_);
    }
  }
  if (p_ == 2) {
    red_mask_.resize(red_.size());
    for (std::size_t k = 0; k < red_.size(); ++k) {
      std::uint64_t msk = 0;
      for (std::uint32_t i = 0; i < deg_; ++i)
        if (red_[k][i]) msk |= std::uint64_t(1) << i;
      red_mask_[k] = msk;
    }
  }

  group_factors_ = factorize_u64(order_ - 1);

  // smallest generator of the multiplicative group
  for (std::uint64_t cand = 2;; ++cand) {
    Fe g{cand, this};
    bool ok = true;
    for (const auto& [ell, _] : group_factors_) {
      if (pow(g, (order_ - 1) / ell).code == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator_ = cand;
      break;
    }
  }

  if (order_ <= kTableLimit) {
    exp_.resize(order_ - 1);
    log_.assign(order_, 0);
    Fe acc = one();
    Fe g{generator_, this};
    for (std::uint64_t i = 0; i < order_ - 1; ++i) {
      exp_[i] = std::uint32_t(acc.code);
      log_[acc.code] = std::uint32_t(i);
      acc = mul_slow(acc, g);
    }
    accel_ = true;
  }

  if (d_ >= 2) {
    if (base == nullptr || base->deg_ != 2 * e_)
      throw std::logic_error("tower layer built without its base layer");
    // roots of the base modulus lie in the q^2-subfield: scan it
    std::uint64_t sub_ord = base->order();
    std::uint64_t step = (order_ - 1) / (sub_ord - 1);
    Fe h = pow(Fe{generator_, this}, step);
    std::vector<std::uint64_t> roots;
    Fe s = one();
    for (std::uint64_t k = 0; k < sub_ord - 1; ++k) {
      // Horner evaluation of the base modulus (monic, degree 2e) at s
      Fe acc = one();
      for (std::uint32_t i = 2 * e_; i-- > 0;)
        acc = add(mul(acc, s), from_int(base->modulus_[i]));
      if (acc.is_zero()) roots.push_back(s.code);
      s = mul(s, h);
    }
    if (roots.size() != 2 * e_)
      throw std::logic_error("embedding: base modulus root count mismatch");
    std::uint64_t r = *std::min_element(roots.begin(), roots.end());
    embed_pows_.resize(2 * e_);
    Fe acc = one();
    for (std::uint32_t i = 0; i < 2 * e_; ++i) {
      embed_pows_[i] = acc.code;
      acc = mul(acc, Fe{r, this});
    }
  }
}

Fe FieldLayer::from_int(std::int64_t c) const {
  std::int64_t r = c % std::int64_t(p_);
  if (r < 0) r += p_;
  return {std::uint64_t(r), this};
}

Fe FieldLayer::elem(std::uint64_t code) const {
  if (code >= order_) throw std::invalid_argument("element code out of range");
  return {code, this};
}

Fe FieldLayer::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() > deg_) throw std::invalid_argument("too many digits for layer");
  std::uint64_t code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= p_) throw std::invalid_argument("digit out of range [0, p)");
    code = code * p_ + digits[i];
  }
  return {code, this};
}

std::vector<std::uint32_t> FieldLayer::digits(const Fe& x) const {
  check(x);
  std::vector<std::uint32_t> out(deg_);
  std::uint64_t t = x.code;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    out[i] = std::uint32_t(t % p_);
    t /= p_;
  }
  return out;
}

Fe FieldLayer::add(const Fe& a, const Fe& b) const {
  check(a);
  check(b);
  if (p_ == 2) return {a.code ^ b.code, this};
  std::uint64_t ta = a.code, tb = b.code, out = 0;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    std::uint64_t s = ta % p_ + tb % p_;
    if (s >= p_) s -= p_;
    out += s * p_pows_[i];
    ta /= p_;
    tb /= p_;
  }
  return {out, this};
}

Fe FieldLayer::neg(const Fe& a) const {
  check(a);
  if (p_ == 2) return a;
  std::uint64_t t = a.code, out = 0;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    std::uint64_t c = t % p_;
    if (c) out += (p_ - c) * p_pows_[i];
    t /= p_;
  }
  return {out, this};
}

Fe FieldLayer::sub(const Fe& a, const Fe& b) const {
  if (p_ == 2) {
    check(a);
    check(b);
    return {a.code ^ b.code, this};
  }
  return add(a, neg(b));
}

Fe FieldLayer::mul(const Fe& a, const Fe& b) const {
  check(a);
  check(b);
  if (accel_) {
    if (a.code == 0 || b.code == 0) return zero();
    std::uint64_t s = log_[a.code] + log_[b.code];
    if (s >= order_ - 1) s -= order_ - 1;
    return {exp_[s], this};
  }
  return mul_slow(a, b);
}

Fe FieldLayer::mul_slow(const Fe& a, const Fe& b) const {
  if (a.code == 0 || b.code == 0) return zero();
  if (p_ == 2) {
    unsigned __int128 acc = 0;
    std::uint64_t x = a.code;
    for (std::uint32_t i = 0; x; ++i, x >>= 1)
      if (x & 1) acc ^= (unsigned __int128)b.code << i;
    for (std::uint32_t idx = 2 * deg_ - 2; idx >= deg_; --idx) {
      if ((acc >> idx) & 1) {
        acc ^= (unsigned __int128)1 << idx;
        acc ^= red_mask_[idx - deg_];
      }
    }
    return {std::uint64_t(acc), this};
  }
  std::uint32_t da[kMaxDegree], db[kMaxDegree];
  std::uint64_t t = a.code;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    da[i] = std::uint32_t(t % p_);
    t /= p_;
  }
  t = b.code;
  for (std::uint32_t i = 0; i < deg_; ++i) {
    db[i] = std::uint32_t(t % p_);
    t /= p_;
  }
  std::uint64_t acc[2 * kMaxDegree] = {0};
  for (std::uint32_t i = 0; i < deg_; ++i)
    if (da[i])
      for (std::uint32_t j = 0; j < deg_; ++j) acc[i + j] += std::uint64_t(da[i]) * db[j];
  for (std::uint32_t idx = 2 * deg_ - 2; idx >= deg_; --idx) {
    std::uint64_t c = acc[idx] % p_;
    if (c) {
      const auto& row = red_[idx - deg_];  // x^idx mod f, absolute positions
      for (std::uint32_t i = 0; i < deg_; ++i) acc[i] += c * row[i];
    }
    acc[idx] = 0;
  }
  std::uint64_t out = 0;
  for (std::uint32_t i = deg_; i-- > 0;) out = out * p_ + acc[i] % p_;
  return {out, this};
}

Fe FieldLayer::pow(const Fe& a, std::uint64_t k) const {
  check(a);
  if (a.code == 0) return k == 0 ? one() : zero();
  if (accel_) {
    std::uint64_t n = order_ - 1;
    return {exp_[mul_mod_u64(log_[a.code], k % n, n)], this};
  }
  Fe r = one(), b = a;
  while (k) {
    if (k & 1) r = mul_slow(r, b);
    b = mul_slow(b, b);
    k >>= 1;
  }
  return r;
}

Fe FieldLayer::inv(const Fe& a) const {
  check(a);
  if (a.code == 0) throw std::domain_error("inverse of zero");
  if (accel_) {
    std::uint64_t n = order_ - 1;
    std::uint64_t l = log_[a.code];
    return {exp_[l == 0 ? 0 : n - l], this};
  }
  return pow(a, order_ - 2);
}

std::uint64_t FieldLayer::mult_order(const Fe& x) const {
  check(x);
  if (x.code == 0) throw std::domain_error("multiplicative order of zero");
  std::uint64_t o = order_ - 1;
  for (const auto& [ell, _] : group_factors_) {
    while (o % ell == 0 && pow(x, o / ell).code == 1) o /= ell;
  }
  return o;
}

Fe FieldLayer::primitive_root_of_unity(std::uint64_t n) const {
  if (n == 0 || (order_ - 1) % n != 0)
    throw std::invalid_argument("n does not divide the multiplicative group order");
  return pow(Fe{generator_, this}, (order_ - 1) / n);
}

bool FieldLayer::is_nth_power(const Fe& x, std::uint64_t n) const {
  check(x);
  if (x.code == 0) return true;
  std::uint64_t g = std::gcd(n, order_ - 1);
  return pow(x, (order_ - 1) / g).code == 1;
}

Fe FieldLayer::exp_element(std::uint64_t i) const {
  if (!accel_) throw std::logic_error("exp_element needs discrete-log tables");
  return {exp_[i % (order_ - 1)], this};
}

std::uint64_t FieldLayer::log_of(const Fe& x) const {
  check(x);
  if (!accel_) throw std::logic_error("log_of needs discrete-log tables");
  if (x.code == 0) throw std::domain_error("log of zero");
  return log_[x.code];
}

std::uint64_t FieldLayer::dlog_in_sylow(const Fe& h, const Fe& sylow_gen,
                                        std::uint32_t n, std::uint32_t s) const {
  // Pohlig-Hellman base-n digits inside the n-Sylow subgroup, order n^s.
  std::uint64_t ns = 1;
  for (std::uint32_t i = 0; i < s; ++i) ns *= n;
  std::uint64_t npow_top = ns / n;  // n^{s-1}
  Fe zeta = pow(sylow_gen, npow_top);
  std::vector<std::uint64_t> zpow(n);
  Fe z = one();
  for (std::uint32_t i = 0; i < n; ++i) {
    zpow[i] = z.code;
    z = mul(z, zeta);
  }
  std::uint64_t w = 0, nj = 1;
  for (std::uint32_t j = 0; j < s; ++j) {
    Fe cur = mul(h, pow(sylow_gen, ns - w % ns));
    Fe c = pow(cur, npow_top / nj);
    std::uint32_t digit = n;
    for (std::uint32_t i = 0; i < n; ++i)
      if (c.code == zpow[i]) {
        digit = i;
        break;
      }
    if (digit == n) throw std::logic_error("sylow dlog: digit not found");
    w += std::uint64_t(digit) * nj;
    nj *= n;
  }
  return w;
}

Fe FieldLayer::nth_root(const Fe& x, std::uint32_t n) const {
  check(x);
  if (n == 0) throw std::invalid_argument("0th root");
  if (n == 1 || x.code == 0) return x;
  if (!is_prime_u64(n)) throw std::invalid_argument("nth_root supports prime n only");
  std::uint64_t N = order_ - 1;
  if (N % n != 0) return pow(x, inv_mod_u64(n % N, N));
  if (!is_nth_power(x, n)) throw std::domain_error("element has no n-th root in this layer");

  std::uint32_t s = 0;
  std::uint64_t t = N;
  while (t % n == 0) {
    t /= n;
    ++s;
  }
  std::uint64_t ns = 1;
  for (std::uint32_t i = 0; i < s; ++i) ns *= n;

  std::uint64_t u = t == 1 ? 0 : inv_mod_u64(n % t, t);
  Fe x0 = pow(x, u);
  __int128 k = ((__int128)n * u - 1) / t;  // exact since n*u = 1 mod t; -1 when t = 1
  Fe h = pow(x, t);
  Fe G = pow(Fe{generator_, this}, t);
  std::uint64_t w = dlog_in_sylow(h, G, n, s);
  __int128 wk_s = ((__int128)(w % ns) * (k % (__int128)ns)) % (__int128)ns;
  if (wk_s < 0) wk_s += ns;
  std::uint64_t wk = std::uint64_t(wk_s);
  if (wk % n != 0) throw std::logic_error("nth_root: sylow component not an n-th power");
  Fe zcorr = pow(G, ((ns - wk) % ns) / n);
  Fe r = mul(x0, zcorr);
  if (pow(r, n) != x) throw std::logic_error("nth_root: verification failed");
  // smallest-code root for determinism
  Fe zeta = pow(G, ns / n);
  Fe best = r;
  for (std::uint32_t i = 1; i < n; ++i) {
    r = mul(r, zeta);
    if (r.code < best.code) best = r;
  }
  return best;
}

Fe FieldLayer::embed_from_base(const Fe& x) const {
  if (d_ == 1) {
    check(x);
    return x;
  }
  if (x.layer == nullptr || x.layer != base_)
    throw std::invalid_argument("embed_from_base expects a base-layer element");
  Fe out = zero();
  std::uint64_t t = x.code;
  for (std::uint32_t i = 0; i < 2 * e_ && t; ++i) {
    std::uint32_t c = std::uint32_t(t % p_);
    t /= p_;
    if (c) out = add(out, mul(from_int(c), Fe{embed_pows_[i], this}));
  }
  return out;
}

std::string FieldLayer::describe() const {
  return "F_{" + std::to_string(p_) + "^" + std::to_string(deg_) + "}";
}

// -- FieldTower ---------------------------------------------------------------

FieldTower::FieldTower(std::uint32_t p, std::uint32_t e) : p_(p), e_(e) {
  if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
  if (e == 0) throw std::invalid_argument("e must be positive");
  q_ = 1;
  for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
}

const FieldLayer& FieldTower::layer(std::uint32_t d) const {
  if (d == 0) throw std::invalid_argument("layer degree must be positive");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = layers_.find(d);
  if (it != layers_.end()) return *it->second;
  const FieldLayer* base = nullptr;
  if (d > 1) {
    auto bit = layers_.find(1);
    if (bit == layers_.end())
      bit = layers_.emplace(1, std::unique_ptr<FieldLayer>(new FieldLayer(p_, e_, 1, nullptr))).first;
    base = bit->second.get();
  }
  auto ins = layers_.emplace(d, std::unique_ptr<FieldLayer>(new FieldLayer(p_, e_, d, base)));
  return *ins.first->second;
}

std::shared_ptr<FieldTower> make_field_tower(std::uint32_t p, std::uint32_t e,
                                             std::uint32_t d) {
  auto tower = std::make_shared<FieldTower>(p, e);
  tower->layer(d);  // validates size bounds eagerly
  return tower;
}

}  // namespace fermatgaps
