#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fermatgaps {

class FieldLayer;

/// Element of a FieldLayer.  Plain value type: `code` packs the
/// polynomial-basis coordinates base p (coefficient of x^0 in the lowest
/// digit), so comparing codes compares coordinate vectors from the highest
/// power down.  All arithmetic goes through the owning layer.
struct Fe {
  std::uint64_t code = 0;
  const FieldLayer* layer = nullptr;

  bool is_zero() const { return code == 0; }
  friend bool operator==(const Fe& a, const Fe& b) {
    return a.code == b.code && a.layer == b.layer;
  }
  friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
  friend bool operator<(const Fe& a, const Fe& b) { return a.code < b.code; }
};

/// One layer F_{p^(2ed)} of a tower F_p ⊂ F_{q^2} ⊂ F_{q^(2d)}, q = p^e.
///
/// The defining modulus is the monic irreducible polynomial of degree 2ed
/// over F_p with the smallest packed code, so every layer is reproducible
/// bit for bit.  Layers with at most 2^22 elements carry discrete-log
/// tables (generator = smallest code of full multiplicative order); larger
/// layers fall back to direct polynomial arithmetic.
class FieldLayer {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t d() const { return d_; }
  std::uint32_t degree() const { return deg_; }      // 2*e*d over F_p
  std::uint64_t q() const { return q_; }             // p^e
  std::uint64_t order() const { return order_; }     // p^(2ed)
  std::uint64_t group_order() const { return order_ - 1; }
  bool has_tables() const { return accel_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fe zero() const { return {0, this}; }
  Fe one() const { return {1, this}; }
  /// Constant c mod p (codes < p are exactly the prime-subfield elements).
  Fe from_int(std::int64_t c) const;
  Fe elem(std::uint64_t code) const;
  Fe from_digits(std::span<const std::uint32_t> digits) const;
  std::vector<std::uint32_t> digits(const Fe& x) const;

  Fe add(const Fe& a, const Fe& b) const;
  Fe sub(const Fe& a, const Fe& b) const;
  Fe neg(const Fe& a) const;
  Fe mul(const Fe& a, const Fe& b) const;
  Fe inv(const Fe& a) const;   // throws on zero
  Fe pow(const Fe& a, std::uint64_t k) const;
  Fe frobenius_q2(const Fe& a) const { return pow(a, q_ * q_); }

  /// Multiplicative order; x must be nonzero.
  std::uint64_t mult_order(const Fe& x) const;
  /// Smallest-code generator of the multiplicative group.
  Fe generator() const { return {generator_, this}; }
  /// Deterministic element of multiplicative order exactly n (n | order-1).
  Fe primitive_root_of_unity(std::uint64_t n) const;
  /// True iff x is an n-th power (0 counts as one).
  bool is_nth_power(const Fe& x, std::uint64_t n) const;
  /// g^i from the discrete-log tables; requires has_tables().
  Fe exp_element(std::uint64_t i) const;
  /// log base g of a nonzero element; requires has_tables().
  std::uint64_t log_of(const Fe& x) const;
  /// Smallest-code y with y^n = x, for prime n.  Throws if none exists.
  Fe nth_root(const Fe& x, std::uint32_t n) const;

  /// Image of a base-layer (d = 1) element under the fixed embedding
  /// F_{q^2} -> this layer (identity when d = 1).
  Fe embed_from_base(const Fe& x) const;

  std::string describe() const;  // "F_{p^deg}"

 private:
  friend class FieldTower;
  FieldLayer(std::uint32_t p, std::uint32_t e, std::uint32_t d,
             const FieldLayer* base);

  void check(const Fe& x) const {
    if (x.layer != this) throw std::invalid_argument("mixed field layers");
  }
  Fe mul_slow(const Fe& a, const Fe& b) const;
  std::uint64_t dlog_in_sylow(const Fe& h, const Fe& sylow_gen,
                              std::uint32_t n, std::uint32_t s) const;

  std::uint32_t p_, e_, d_, deg_;
  std::uint64_t q_, order_;
  std::vector<std::uint32_t> modulus_;              // c0..c_{deg-1}, monic
  std::vector<std::uint64_t> p_pows_;               // p^i, i <= deg
  std::vector<std::vector<std::uint32_t>> red_;     // x^{deg+k} mod f, digits
  std::vector<std::uint64_t> red_mask_;             // same, packed (p = 2)
  std::vector<std::pair<std::uint64_t, int>> group_factors_;
  std::uint64_t generator_ = 0;
  bool accel_ = false;
  std::vector<std::uint32_t> exp_;                  // g^i, i < order-1
  std::vector<std::uint32_t> log_;                  // inverse of exp_
  std::vector<std::uint64_t> embed_pows_;           // r^i, i < 2e (d >= 2)
  const FieldLayer* base_ = nullptr;
};

/// Lazily built family of layers F_{q^(2d)} for fixed p, e.  Immutable from
/// the caller's point of view and safe to share across threads.
class FieldTower {
 public:
  FieldTower(std::uint32_t p, std::uint32_t e);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint64_t q() const { return q_; }

  const FieldLayer& layer(std::uint32_t d) const;
  const FieldLayer& base() const { return layer(1); }

 private:
  std::uint32_t p_, e_;
  std::uint64_t q_;
  mutable std::mutex mu_;
  mutable std::map<std::uint32_t, std::unique_ptr<FieldLayer>> layers_;
};

/// Validates (p, e, d) and returns a tower with layer d built.
std::shared_ptr<FieldTower> make_field_tower(std::uint32_t p, std::uint32_t e,
                                             std::uint32_t d);

// -- element operators ------------------------------------------------------

inline const FieldLayer& common_layer(const Fe& a, const Fe& b) {
  if (a.layer == nullptr || a.layer != b.layer)
    throw std::invalid_argument("mixed field layers");
  return *a.layer;
}

inline Fe operator+(const Fe& a, const Fe& b) { return common_layer(a, b).add(a, b); }
inline Fe operator-(const Fe& a, const Fe& b) { return common_layer(a, b).sub(a, b); }
inline Fe operator*(const Fe& a, const Fe& b) { return common_layer(a, b).mul(a, b); }
inline Fe operator/(const Fe& a, const Fe& b) {
  const FieldLayer& L = common_layer(a, b);
  return L.mul(a, L.inv(b));
}
inline Fe operator-(const Fe& a) {
  if (a.layer == nullptr) throw std::invalid_argument("unbound field element");
  return a.layer->neg(a);
}

// -- shared integer utilities ----------------------------------------------

bool is_prime_u64(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n);
std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t m);  // gcd(a,m) = 1

}  // namespace fermatgaps
