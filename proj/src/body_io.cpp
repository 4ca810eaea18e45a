#include "isoflow/body_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "isoflow/errors.hpp"

namespace isoflow {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(key, "missing");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) field_error(path, std::string("expected a number, got ") + v.type_name());
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(path, "not finite");
  return x;
}

std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, std::string("expected an array, got ") + v.type_name());
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(number_at(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// 1-based line containing byte offset pos.
std::size_t line_of(std::string_view text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n'));
}

json to_pair(Point2 p) { return json::array({p.x, p.y}); }

json series_json(const TrigSeries& s) {
  json j;
  j["type"] = "fourier";
  j["a0"] = s.a0;
  j["cos"] = s.cos;
  j["sin"] = s.sin;
  return j;
}

json grid_json(const PeriodicGrid& g) {
  json j;
  j["type"] = "grid";
  j["samples"] = std::vector<double>(g.values().begin(), g.values().end());
  return j;
}

}  // namespace

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Polygon:
      return "polygon";
    case BodyKind::Fourier:
      return "fourier";
    case BodyKind::Grid:
      return "grid";
  }
  return "unknown";
}

BodySpec parse_body_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "line " << line_of(text, e.byte == 0 ? 0 : e.byte - 1) << ": " << e.what();
    throw ParseError(os.str());
  }
  if (!doc.is_object()) throw ParseError("body JSON must be an object");
  const json& type = member(doc, "type");
  if (!type.is_string()) field_error("type", "expected a string");
  const std::string kind = type.get<std::string>();

  BodySpec spec;
  if (kind == "polygon") {
    spec.kind = BodyKind::Polygon;
    const json& verts = member(doc, "vertices");
    if (!verts.is_array()) field_error("vertices", "expected an array of [x, y] pairs");
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const std::string path = "vertices[" + std::to_string(i) + "]";
      if (!verts[i].is_array() || verts[i].size() != 2) field_error(path, "expected an [x, y] pair");
      spec.vertices.push_back({number_at(verts[i][0], path + "[0]"), number_at(verts[i][1], path + "[1]")});
    }
  } else if (kind == "fourier") {
    spec.kind = BodyKind::Fourier;
    const double a0 = number_at(member(doc, "a0"), "a0");
    std::vector<double> c = doc.contains("cos") ? number_array(doc["cos"], "cos") : std::vector<double>{};
    std::vector<double> s = doc.contains("sin") ? number_array(doc["sin"], "sin") : std::vector<double>{};
    spec.series = TrigSeries(a0, std::move(c), std::move(s));
  } else if (kind == "grid") {
    spec.kind = BodyKind::Grid;
    spec.samples = number_array(member(doc, "samples"), "samples");
    if (spec.samples.size() < 8 || spec.samples.size() % 2 != 0) {
      field_error("samples", "need an even count of at least 8, got " + std::to_string(spec.samples.size()));
    }
  } else {
    field_error("type", "unknown body type '" + kind + "' (polygon, fourier or grid)");
  }
  return spec;
}

BodySpec load_body_spec(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_body_spec(source);
  std::ifstream in(source);
  if (!in) throw ParseError("cannot read body file '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_body_spec(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(source + ": " + e.what());
  }
}

FlowBody realize(const BodySpec& spec, bool hull) {
  switch (spec.kind) {
    case BodyKind::Polygon:
      return hull ? convex_hull(spec.vertices) : ConvexPolygon::from_vertices(spec.vertices);
    case BodyKind::Fourier:
      return FourierSupport(spec.series);
    case BodyKind::Grid:
      return GridSupport(PeriodicGrid(spec.samples));
  }
  throw InvalidArgument("unknown body kind");
}

std::string body_to_json(const FlowBody& body) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          json j;
          j["type"] = "polygon";
          j["vertices"] = json::array();
          for (const Point2& p : b.vertices()) j["vertices"].push_back(to_pair(p));
          return j.dump();
        } else if constexpr (std::is_same_v<T, FourierSupport>) {
          return series_json(b.series()).dump();
        } else {
          return grid_json(b.samples()).dump();
        }
      },
      body);
}

std::string body_to_json(const SupportBody& body) {
  if (const auto* f = std::get_if<FourierSupport>(&body)) return series_json(f->series()).dump();
  return grid_json(std::get<GridSupport>(body).samples()).dump();
}

}  // namespace isoflow
