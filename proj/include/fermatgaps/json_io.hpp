#pragma once

#include <json.hpp>
#include <string>

#include "fermatgaps/classify.hpp"
#include "fermatgaps/curve.hpp"
#include "fermatgaps/gapsets.hpp"
#include "fermatgaps/series.hpp"

namespace fermatgaps {

/// Curve header: parameters plus the layer moduli that pin the element
/// encoding, so outputs are reproducible bit for bit.  Moduli are listed
/// for every layer up to max_d.
nlohmann::json curve_json(const CurveCtx&, std::uint32_t max_d = 1);

/// {"kind", "index"?, "a", "b", "degree"} with coordinates as little-endian
/// digit vectors in the polynomial basis of their layer.
nlohmann::json place_json(const CurveCtx&, const Place&);

/// {"genus", "gaps", "generators", "frobenius"}
nlohmann::json gapset_json(const GapSet&);
nlohmann::json semigroup_json(const NumericalSemigroup&);

nlohmann::json porder_json(const POrder&);
nlohmann::json report_json(const CurveCtx&, const ClassificationReport&);
/// One place per row: index, kind, degree, rational flag, P-order, case
/// label, gap list joined by ';'.
std::string survey_csv(const CurveCtx&, const ClassificationReport&);

nlohmann::json series_json(const TruncSeries&);

}  // namespace fermatgaps
