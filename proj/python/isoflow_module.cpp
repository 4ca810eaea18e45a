// Python bindings. Bodies cross the boundary as JSON text in the CLI input
// format; structured results come back as JSON text for the package layer
// to decode.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "isoflow/body_io.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/steiner_flow.hpp"
#include "isoflow/support_body.hpp"
#include "isoflow/variational.hpp"
#include "isoflow/verify.hpp"

namespace py = pybind11;
using namespace isoflow;

namespace {

SupportBody smooth(const FlowBody& body, std::optional<double> round, std::size_t grid) {
  if (const auto* p = std::get_if<ConvexPolygon>(&body)) {
    if (!round) throw InvalidArgument("polygon bodies need round=<r> for this operation");
    return from_polygon_rounded(*p, *round, grid);
  }
  if (const auto* f = std::get_if<FourierSupport>(&body)) return *f;
  return std::get<GridSupport>(body);
}

FlowBody load(const std::string& body, bool hull) { return realize(parse_body_spec(body), hull); }

py::dict summary_dict(const IsoperimetricSummary& s) {
  py::dict d;
  d["area"] = s.area;
  d["perimeter"] = s.perimeter;
  d["ratio"] = s.ratio;
  d["deficit"] = s.deficit;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Convex bodies, Steiner neighborhoods and isoperimetric variations";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error);
  py::register_exception<InvalidBody>(m, "InvalidBody", error);
  py::register_exception<DomainError>(m, "DomainError", error);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", error);
  py::register_exception<ParseError>(m, "ParseError", error);

  m.attr("DEFAULT_GRID") = kDefaultGridSize;

  m.def(
      "summary",
      [](const std::string& body, bool hull) { return summary_dict(summary(load(body, hull))); },
      py::arg("body"), py::arg("hull") = false, "Area, perimeter, ratio and deficit of a body.");

  m.def(
      "offset_summary",
      [](const std::string& body, double r, bool hull) {
        const FlowBody b = load(body, hull);
        if (const auto* p = std::get_if<ConvexPolygon>(&b)) return summary_dict(offset_summary(OffsetBody(*p, r)));
        return summary_dict(summary(offset(smooth(b, std::nullopt, kDefaultGridSize), r)));
      },
      py::arg("body"), py::arg("r"), py::arg("hull") = false, "Summary of the r-neighborhood.");

  m.def("ratio_of_neighborhood", &ratio_of_neighborhood, py::arg("area"), py::arg("perimeter"), py::arg("r"));
  m.def("flow_ratio", &flow_ratio, py::arg("area"), py::arg("perimeter"), py::arg("t"));
  m.def("flow_ratio_derivative", &flow_ratio_derivative, py::arg("area"), py::arg("perimeter"), py::arg("t"));
  m.def("flow_ratio_second_derivative", &flow_ratio_second_derivative, py::arg("area"), py::arg("perimeter"),
        py::arg("t"));
  m.def("flow_domain_radius", &flow_domain_radius, py::arg("area"), py::arg("perimeter"));

  m.def(
      "flow_report",
      [](const std::string& body, double t_max, int steps) { return to_json(flow_report(load(body, false), t_max, steps)); },
      py::arg("body"), py::arg("t_max") = 5.0, py::arg("steps") = 50);

  m.def(
      "variation",
      [](const std::string& body, std::optional<double> round, std::size_t grid) {
        const SupportBody b = smooth(load(body, false), round, grid);
        return to_json(variation_derivatives(build_neighborhood_variation(b)), summary(b).deficit);
      },
      py::arg("body"), py::arg("round") = py::none(), py::arg("grid") = kDefaultGridSize,
      "First and second variation of the ratio along the neighborhood flow started at a disk.");

  m.def(
      "recover",
      [](const std::string& body, std::optional<double> round, std::size_t grid, double tol) {
        return to_json(recover_disk_center(smooth(load(body, false), round, grid), tol));
      },
      py::arg("body"), py::arg("round") = py::none(), py::arg("grid") = kDefaultGridSize,
      py::arg("tol") = kEqualityTolerance);

  m.def(
      "wirtinger",
      [](const std::string& field) {
        const BodySpec spec = parse_body_spec(field);
        if (spec.kind == BodyKind::Fourier) return to_json(wirtinger_check(spec.series));
        if (spec.kind == BodyKind::Grid) return to_json(wirtinger_check(PeriodicGrid(spec.samples)));
        throw InvalidArgument("wirtinger expects a fourier or grid function, not a polygon");
      },
      py::arg("field"));

  m.def(
      "verify",
      [](std::size_t count, std::uint64_t seed, int max_vertices, int max_degree, double r_max, double tolerance_scale) {
        VerifyConfig cfg;
        cfg.count = count;
        cfg.seed = seed;
        cfg.max_vertices = max_vertices;
        cfg.max_degree = max_degree;
        cfg.r_max = r_max;
        cfg.tolerance_scale = tolerance_scale;
        VerifyReport report;
        {
          py::gil_scoped_release release;
          report = run_verify(cfg);
        }
        return py::make_tuple(to_json(report), to_text(report));
      },
      py::arg("count") = 1000, py::arg("seed") = 42, py::arg("max_vertices") = 12, py::arg("max_degree") = 8,
      py::arg("r_max") = 10.0, py::arg("tolerance_scale") = 1.0);

  m.def(
      "replay", [](const std::string& case_json, double scale) { return to_json(replay(case_json, scale)); },
      py::arg("case_json"), py::arg("tolerance_scale") = 1.0);
}
