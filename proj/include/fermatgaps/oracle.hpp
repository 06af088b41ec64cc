#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fermatgaps/curve.hpp"
#include "fermatgaps/gapsets.hpp"
#include "fermatgaps/series.hpp"

namespace fermatgaps {

/// Exponent pairs (i, j) with i + j <= m-3, ascending lexicographic: the
/// monomial factors of the holomorphic differential basis
/// { X^i Y^j dX / Y^{m-1} }.  Exactly (m-1)(m-2)/2 pairs.
std::vector<std::pair<std::uint32_t, std::uint32_t>> holomorphic_basis(std::uint32_t m);

/// Gap set at a place, computed theorem-free from the valuations of the
/// holomorphic differentials.  Affine places expand in t = X-a with the
/// dX-form basis; axis-X places in t = Y with the dY-form basis (the two
/// bases span the same space); axis-Y and infinity places transport to an
/// axis-X place through S.  Enforces |gaps| = genus.
GapSet gap_set_oracle(const CurveCtx&, const Place&, std::optional<int> precision = {});

/// Valuations attained at P by the Riemann-Roch space L(n D_inf) =
/// span{ X^i Y^j : i + j <= n }, for 0 <= n <= m-3 and P affine outside O.
/// The spectrum size always equals dim = (n+1)(n+2)/2.
std::set<int> rr_valuation_spectrum(const CurveCtx&, const Place&, std::uint32_t n,
                                    std::optional<int> precision = {});

/// Series of a^{m-1}(X-a) + b^{m-1}(Y-b) at the Hermitian place (A, B) above
/// the affine place, in the parameter T = (U-A)/A.  Valuation is exactly 2
/// with leading coefficient -binom((q+1)/m, 2) A^{q+1}/B^{q+1}.
TruncSeries f0_tilde_series(const CurveCtx&, const Fe& A, const Fe& B, int precision);

}  // namespace fermatgaps
