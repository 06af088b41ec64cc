#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "fermatgaps/classify.hpp"
#include "fermatgaps/json_io.hpp"
#include "fermatgaps/oracle.hpp"

namespace py = pybind11;
using namespace fermatgaps;

namespace {

struct PyCurve;

/// Place handle keeping the curve context (and its field layers) alive.
struct PyPlace {
  std::shared_ptr<CurveCtx> ctx;
  Place place;

  std::string repr() const { return "<Place " + place_brief(*ctx, place) + ">"; }
  std::string kind() const {
    switch (place.kind) {
      case Place::Kind::infinity: return "infinity";
      case Place::Kind::axis_x: return "axis_x";
      case Place::Kind::axis_y: return "axis_y";
      case Place::Kind::affine: return "affine";
    }
    return "?";
  }
  std::string to_json() const { return place_json(*ctx, place).dump(); }
};

py::object porder_to_py(const POrder& o) {
  if (o.infinite) return py::none();
  return py::int_(o.value);
}

POrder porder_from_py(const py::object& o) {
  if (o.is_none()) return POrder::inf();
  return POrder::finite(o.cast<std::uint64_t>());
}

struct PyCurve {
  std::shared_ptr<CurveCtx> ctx;

  explicit PyCurve(std::uint32_t p, std::uint32_t e, std::uint32_t m)
      : ctx(std::make_shared<CurveCtx>(make_curve(p, e, m))) {}

  std::vector<PyPlace> places(std::uint32_t d_max) const {
    std::vector<PyPlace> out;
    for (const Place& pl : enumerate_places(*ctx, d_max)) out.push_back({ctx, pl});
    return out;
  }
  PyPlace place_at(const std::string& kind, std::uint32_t index) const {
    if (kind == "axis_x") return {ctx, axis_x_place(*ctx, index)};
    if (kind == "axis_y") return {ctx, axis_y_place(*ctx, index)};
    if (kind == "infinity") return {ctx, infinity_place(*ctx, index)};
    throw std::invalid_argument("kind must be axis_x, axis_y or infinity");
  }
  PyPlace affine(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    if (a.size() != b.size() || a.empty() || a.size() % (2 * ctx->e) != 0)
      throw std::invalid_argument("digit vectors must share a length divisible by 2e");
    const FieldLayer& L = ctx->layer(std::uint32_t(a.size() / (2 * ctx->e)));
    return {ctx, affine_place(*ctx, L.from_digits(a), L.from_digits(b))};
  }

  std::uint64_t census() const { return rational_place_census(*ctx); }

  std::vector<std::uint32_t> gap_set_oracle_py(const PyPlace& pl,
                                               std::optional<int> precision) const {
    return gap_set_oracle(*ctx, pl.place, precision).gaps;
  }
  py::dict gaps_at(const PyPlace& pl, bool force_oracle) const {
    PlaceGapReport row = gaps_at_place(*ctx, pl.place, 0, force_oracle);
    py::dict d;
    d["gaps"] = row.gaps.gaps;
    d["method"] = to_string(row.method);
    d["p_order"] = row.order ? porder_to_py(*row.order) : py::none();
    return d;
  }
  std::vector<std::uint32_t> gaps_O_py() const { return gaps_O(*ctx).gaps; }
  std::vector<std::uint32_t> gaps_half_py(bool rational) const {
    return gaps_half(*ctx, rational).gaps;
  }
  std::vector<std::uint32_t> gaps_third_py(bool rational, const py::object& order) const {
    return gaps_third(*ctx, rational, porder_from_py(order)).gaps;
  }
  py::object p_order_py(const PyPlace& pl) const {
    return porder_to_py(p_order(*ctx, alpha_invariant(*ctx, pl.place)));
  }
  std::vector<std::uint32_t> alpha_py(const PyPlace& pl) const {
    Fe a = alpha_invariant(*ctx, pl.place);
    return a.layer->digits(a);
  }
  std::vector<int> rr_spectrum(const PyPlace& pl, std::uint32_t n) const {
    auto spec = rr_valuation_spectrum(*ctx, pl.place, n);
    return {spec.begin(), spec.end()};
  }
  PyPlace frobenius(const PyPlace& pl) const { return {ctx, frobenius_place(*ctx, pl.place)}; }
  std::string classify_json(std::uint32_t d_max, unsigned threads, bool oracle_only) const {
    ClassificationReport rep = classify_weierstrass(*ctx, d_max, threads, oracle_only);
    nlohmann::json j;
    j["schema"] = 1;
    j["curve"] = curve_json(*ctx);
    j["report"] = report_json(*ctx, rep);
    return j.dump();
  }
  std::string pq_json(std::uint32_t i) const {
    PQPair pq = pq_polynomials(*ctx, i);
    const FieldLayer& L = ctx->base();
    auto coeffs = [&](const std::vector<Fe>& poly) {
      nlohmann::json arr = nlohmann::json::array();
      for (const Fe& c : poly) arr.push_back(L.digits(c));
      return arr;
    };
    nlohmann::json j;
    j["i"] = pq.index;
    j["p"] = coeffs(pq.p_poly);
    j["q_num"] = coeffs(pq.q_num);
    j["q_den"] = coeffs(pq.q_den);
    return j.dump();
  }
};

py::dict semigroup_py(const std::vector<std::uint32_t>& gaps) {
  NumericalSemigroup sg = semigroup_from_gaps(gap_set_from(gaps));
  py::dict d;
  d["gaps"] = sg.gap_set.gaps;
  d["genus"] = sg.gap_set.genus;
  d["generators"] = sg.min_generators;
  d["frobenius"] = sg.frobenius;
  d["conductor"] = sg.conductor;
  d["multiplicity"] = sg.multiplicity;
  d["apery"] = sg.apery;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weierstrass gap sequences of maximal Fermat curves X^m + Y^m + 1 = 0 over F_{q^2}";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<PyPlace>(m, "Place")
      .def("__repr__", &PyPlace::repr)
      .def_property_readonly("kind", &PyPlace::kind)
      .def_property_readonly("degree", [](const PyPlace& p) { return p.place.degree; })
      .def_property_readonly("index", [](const PyPlace& p) { return p.place.index; })
      .def_property_readonly("rational", [](const PyPlace& p) { return is_rational(p.place); })
      .def_property_readonly("in_O", [](const PyPlace& p) { return is_in_O(p.place); })
      .def("to_json", &PyPlace::to_json);

  py::class_<PyCurve>(m, "Curve")
      .def(py::init<std::uint32_t, std::uint32_t, std::uint32_t>(), py::arg("p"), py::arg("e"),
           py::arg("m"))
      .def_property_readonly("p", [](const PyCurve& c) { return c.ctx->p; })
      .def_property_readonly("e", [](const PyCurve& c) { return c.ctx->e; })
      .def_property_readonly("q", [](const PyCurve& c) { return c.ctx->q; })
      .def_property_readonly("m", [](const PyCurve& c) { return c.ctx->m; })
      .def_property_readonly("genus", [](const PyCurve& c) { return c.ctx->genus; })
      .def("places", &PyCurve::places, py::arg("d_max") = 1)
      .def("place", &PyCurve::place_at, py::arg("kind"), py::arg("index"))
      .def("affine_place", &PyCurve::affine, py::arg("a"), py::arg("b"))
      .def("census", &PyCurve::census)
      .def("gap_set_oracle", &PyCurve::gap_set_oracle_py, py::arg("place"),
           py::arg("precision") = py::none())
      .def("gaps_at", &PyCurve::gaps_at, py::arg("place"), py::arg("force_oracle") = false)
      .def("gaps_O", &PyCurve::gaps_O_py)
      .def("gaps_half", &PyCurve::gaps_half_py, py::arg("rational") = true)
      .def("gaps_third", &PyCurve::gaps_third_py, py::arg("rational") = true,
           py::arg("p_order") = py::none())
      .def("p_order", &PyCurve::p_order_py, py::arg("place"))
      .def("alpha", &PyCurve::alpha_py, py::arg("place"))
      .def("rr_spectrum", &PyCurve::rr_spectrum, py::arg("place"), py::arg("n"))
      .def("frobenius", &PyCurve::frobenius, py::arg("place"))
      .def("classify_json", &PyCurve::classify_json, py::arg("d_max") = 1, py::arg("threads") = 0,
           py::arg("oracle_only") = false)
      .def("pq_polynomials_json", &PyCurve::pq_json, py::arg("i"));

  m.def("semigroup_from_gaps", &semigroup_py, py::arg("gaps"),
        "Minimal generators, Frobenius number, conductor and Apery set of the "
        "numerical semigroup with the given gaps.");
}
