#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fermatgaps/field.hpp"

namespace fermatgaps {

/// Immutable parameters of the curve X^m + Y^m + 1 = 0 over F_{q^2}, m | q+1.
struct CurveCtx {
  std::shared_ptr<FieldTower> tower;
  std::uint32_t p = 0, e = 0, m = 0;
  std::uint64_t q = 0;
  std::uint32_t genus = 0;            // (m-1)(m-2)/2
  Fe zeta_m;                          // primitive m-th root of unity
  Fe xi;                              // primitive (q+1)/m-th root of unity
  std::optional<Fe> zeta3;            // primitive cube root, when 3 | q+1
  std::vector<Fe> alpha_roots;        // the m roots of Z^m + 1, ascending code

  const FieldLayer& base() const { return tower->base(); }
  const FieldLayer& layer(std::uint32_t d) const { return tower->layer(d); }
  /// Gap valuations are at most 2g-2; two guard coefficients on top.
  int default_precision() const { return int(2 * genus + 2); }
};

/// Validates p prime, q = p^e, m | q+1, m >= 2 (m = 2, 3 give genus 0 and 1
/// and are admitted for sanity runs only).
CurveCtx make_curve(std::uint32_t p, std::uint32_t e, std::uint32_t m);

/// A closed point of the curve.  The three O kinds are indexed 1..m by the
/// ascending-code order of the roots of Z^m + 1; infinity places are the
/// branches of Y/X, i.e. index i is the point (1 : alpha_i : 0).
struct Place {
  enum class Kind { infinity, axis_x, axis_y, affine };
  Kind kind = Kind::affine;
  std::uint32_t index = 0;   // 1..m for the O kinds, 0 for affine
  Fe a, b;                   // affine coords; for infinity: (a : b : 0)
  std::uint32_t degree = 1;  // size of the Frobenius orbit
};

Place infinity_place(const CurveCtx&, std::uint32_t index);
Place axis_x_place(const CurveCtx&, std::uint32_t index);
Place axis_y_place(const CurveCtx&, std::uint32_t index);
/// Affine place from coordinates; checks the curve equation, a*b != 0, and
/// that the coordinates do not live in a proper sublayer of their own layer.
Place affine_place(const CurveCtx&, const Fe& a, const Fe& b);

bool is_in_O(const Place&);
inline bool is_rational(const Place& pl) { return pl.degree == 1; }

/// Representative with the smallest (a, b) codes in the Frobenius orbit.
Place canonical_rep(const CurveCtx&, const Place&);
/// Equality as places (affine places compare as Frobenius orbits).
bool same_place(const CurveCtx&, const Place&, const Place&);
std::string place_brief(const CurveCtx&, const Place&);

/// All places of degree <= d_max, one representative per Frobenius orbit:
/// the 3m places of O first, then affine representatives per degree in
/// ascending (a, b) code order.  Needs table-backed layers.
std::vector<Place> enumerate_places(const CurveCtx&, std::uint32_t d_max);

/// Exact number of degree-one places (affine solutions with ab != 0 plus 3m).
std::uint64_t rational_place_census(const CurveCtx&);

/// Coordinate-wise q^2-power map.  O places are fixed; the result of an
/// affine place keeps its degree and is *not* re-canonicalized.
Place frobenius_place(const CurveCtx&, const Place&);

/// alpha(P) = a^m / (1 + a^m); requires an affine place.
Fe alpha_invariant(const CurveCtx&, const Place&);

// -- automorphisms -----------------------------------------------------------

/// Generators of Aut(F_m): coordinate scalings A_{a,b}: (X,Y) ->
/// (zeta^a X, zeta^b Y), the 3-cycle S: (X,Y) -> (Y/X, 1/X) and the
/// involution T: (X,Y) -> (1/X, Y/X).  On projective triples S rotates
/// (X:Y:Z) -> (Y:Z:X) and T swaps (X:Y:Z) -> (Z:Y:X).
struct AutGen {
  enum class Type { scale, s, t };
  Type type = Type::s;
  std::uint32_t za = 0, zb = 0;

  static AutGen S() { return {Type::s, 0, 0}; }
  static AutGen T() { return {Type::t, 0, 0}; }
  static AutGen A(std::uint32_t a, std::uint32_t b) { return {Type::scale, a, b}; }
};

/// Word of generators, applied to a place left to right; with that reading
/// the relations S^3 = T^2 = id, T^-1 S T = S^-1, S^-1 A_{a,b} S =
/// A_{b-a,-a} and T^-1 A_{a,b} T = A_{-a,b-a} hold as place permutations.
struct AutWord {
  std::vector<AutGen> gens;
};

Place apply_automorphism(const CurveCtx&, const AutWord&, const Place&);

// -- Hermitian lift -----------------------------------------------------------

/// Coordinates of a place of U^{q+1} + V^{q+1} + 1 = 0 above an affine place,
/// i.e. A^{(q+1)/m} = a and B^{(q+1)/m} = b, together with the layer the
/// roots live in.  Deterministic: smallest layer first, then smallest codes.
struct HermitianLift {
  Fe A, B;
  std::uint32_t layer_d = 1;
};

/// Supported for prime (q+1)/m (the two theorem regimes) and for places whose
/// coordinates lie in the base layer; larger-degree places lift only when the
/// roots already exist in their own layer.
HermitianLift hermitian_lift(const CurveCtx&, const Place&);

}  // namespace fermatgaps
