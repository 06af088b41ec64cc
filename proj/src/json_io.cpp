#include "fermatgaps/json_io.hpp"

#include <sstream>

namespace fermatgaps {

using nlohmann::json;

json curve_json(const CurveCtx& ctx, std::uint32_t max_d) {
  json j;
  j["p"] = ctx.p;
  j["e"] = ctx.e;
  j["q"] = ctx.q;
  j["m"] = ctx.m;
  j["genus"] = ctx.genus;
  j["modulus"] = ctx.base().modulus();
  if (max_d > 1) {
    json layers;
    for (std::uint32_t d = 2; d <= max_d; ++d)
      layers[std::to_string(d)] = ctx.layer(d).modulus();
    j["layer_moduli"] = layers;
  }
  return j;
}

static json fe_json(const Fe& x) {
  if (x.layer == nullptr) return json::array();
  return json(x.layer->digits(x));
}

json place_json(const CurveCtx&, const Place& pl) {
  json j;
  switch (pl.kind) {
    case Place::Kind::infinity: j["kind"] = "infinity"; break;
    case Place::Kind::axis_x: j["kind"] = "axis_x"; break;
    case Place::Kind::axis_y: j["kind"] = "axis_y"; break;
    case Place::Kind::affine: j["kind"] = "affine"; break;
  }
  if (pl.kind != Place::Kind::affine) j["index"] = pl.index;
  j["a"] = fe_json(pl.a);
  j["b"] = fe_json(pl.b);
  j["degree"] = pl.degree;
  return j;
}

json gapset_json(const GapSet& g) {
  NumericalSemigroup sg = semigroup_from_gaps(g);
  json j;
  j["genus"] = g.genus;
  j["gaps"] = g.gaps;
  j["generators"] = sg.min_generators;
  j["frobenius"] = sg.frobenius;
  return j;
}

json semigroup_json(const NumericalSemigroup& sg) {
  json j;
  j["genus"] = sg.gap_set.genus;
  j["gaps"] = sg.gap_set.gaps;
  j["generators"] = sg.min_generators;
  j["frobenius"] = sg.frobenius;
  j["conductor"] = sg.conductor;
  j["multiplicity"] = sg.multiplicity;
  j["apery"] = sg.apery;
  return j;
}

json porder_json(const POrder& o) {
  if (o.infinite) return json("infinite");
  return json(o.value);
}

json report_json(const CurveCtx& ctx, const ClassificationReport& rep) {
  json j;
  j["d_max"] = rep.d_max;
  j["total_places"] = rep.total_places;
  j["generic_gaps"] = rep.generic_gaps.gaps;
  j["genericity_caveat"] =
      "generic means most frequent among the non-O affine places of this finite survey";
  json buckets = json::array();
  for (const GapBucket& b : rep.buckets) {
    json jb;
    jb["gaps"] = b.gaps.gaps;
    jb["count"] = b.count;
    jb["rational_count"] = b.rational_count;
    jb["nonrational_count"] = b.count - b.rational_count;
    jb["o_count"] = b.o_count;
    jb["weierstrass"] = b.weierstrass;
    if (!b.p_order_histogram.empty()) jb["p_order_histogram"] = b.p_order_histogram;
    json samples = json::array();
    for (std::size_t idx : b.sample_indices) samples.push_back(place_json(ctx, rep.rows[idx].place));
    jb["sample_places"] = samples;
    buckets.push_back(jb);
  }
  j["buckets"] = buckets;
  return j;
}

std::string survey_csv(const CurveCtx& ctx, const ClassificationReport& rep) {
  std::ostringstream out;
  out << "place_index,kind,degree,rational,p_order,case,method,gaps\n";
  for (const PlaceGapReport& row : rep.rows) {
    out << row.place_index << ',';
    switch (row.place.kind) {
      case Place::Kind::infinity: out << "infinity"; break;
      case Place::Kind::axis_x: out << "axis_x"; break;
      case Place::Kind::axis_y: out << "axis_y"; break;
      case Place::Kind::affine: out << "affine"; break;
    }
    out << ',' << row.place.degree << ',' << (is_rational(row.place) ? 1 : 0) << ',';
    if (row.order) {
      if (row.order->infinite)
        out << "infinite";
      else
        out << row.order->value;
    }
    out << ',' << (row.order ? case_label(ctx.m, *row.order) : "") << ','
        << to_string(row.method) << ',';
    for (std::size_t i = 0; i < row.gaps.gaps.size(); ++i) {
      if (i) out << ';';
      out << row.gaps.gaps[i];
    }
    out << '\n';
  }
  return out.str();
}

json series_json(const TruncSeries& s) {
  json coeffs = json::array();
  for (int i = 0; i < s.precision(); ++i) coeffs.push_back(s.layer().digits(s.coeff(i)));
  json j;
  j["precision"] = s.precision();
  j["coeffs"] = coeffs;
  return j;
}

}  // namespace fermatgaps
