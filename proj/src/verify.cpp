#include "isoflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "isoflow/body_io.hpp"
#include "isoflow/convex_poly.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/random_bodies.hpp"
#include "isoflow/steiner_flow.hpp"
#include "isoflow/support_body.hpp"
#include "isoflow/variational.hpp"

namespace isoflow {

namespace {

using Values = std::map<std::string, double>;
using Params = std::map<std::string, double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlowTMax = 5.0;
constexpr int kFlowSteps = 50;
constexpr std::size_t kKeptFailures = 3;

struct PropertySpec {
  const char* name;
  bool lower_bound;
  double bound;
};

// Report order. Bounds are the documented tolerances of each invariant.
constexpr PropertySpec kProperties[] = {
    {"steiner_identity", false, 1e-9},
    {"deficit_invariance", false, 1e-9},
    {"neighborhood_ratio", false, 1e-9},
    {"ratio_monotonicity", false, 1e-12},
    {"isoperimetric_ratio", true, 1.0 - 1e-12},
    {"polygon_deficit_gap", true, 1e-6},
    {"hull_perimeter", false, 1e-12},
    {"flow_identities", false, 1e-6},
    {"flow_geometric", false, 1e-9},
    {"fourier_deficit", false, 1e-9},
    {"criticality", false, 1e-7},
    {"stability", true, -1e-7},
    {"second_variation_bridge", false, 1e-5},
    {"first_variation_symmetry", false, 1e-9},
    {"variation_assembly_I1", false, 1e-6},
    {"variation_assembly_I2", false, 1e-5},
    {"rigid_families", false, 1e-7},
    {"rigid_field", false, 1e-6},
    {"wirtinger_slack", true, -1e-12},
    {"wirtinger_parseval", false, 1e-10},
    {"wirtinger_certificate", false, 1e-8},
    {"disk_recovery", false, 1e-9},
    {"equality_rejection", false, 0.0},
};

const PropertySpec* find_property(const std::string& name) {
  for (const auto& p : kProperties) {
    if (name == p.name) return &p;
  }
  return nullptr;
}

double effective_bound(const PropertySpec& p, double scale) {
  return p.lower_bound ? p.bound : p.bound * scale;
}

bool passes(const PropertySpec& p, double value, double scale) {
  const double b = effective_bound(p, scale);
  return p.lower_bound ? value >= b : value <= b;
}

// --- per-source evaluations -------------------------------------------------

Values polygon_values(const ConvexPolygon& P, const Params& params) {
  const double r = params.at("r");
  const double r1 = params.at("r1");
  const double r2 = params.at("r2");
  const IsoperimetricSummary base = summary(P);
  const IsoperimetricSummary off = offset_summary(OffsetBody(P, r));
  const SteinerPolynomial sp = SteinerPolynomial::of(base);

  Values v;
  v["steiner_identity"] = std::max(std::abs(off.area - sp(r)),
                                   std::abs(off.perimeter - (kTwoPi * r + base.perimeter)));
  v["deficit_invariance"] = std::abs(off.deficit - base.deficit);
  v["neighborhood_ratio"] =
      std::abs(ratio_of_neighborhood(base.area, base.perimeter, r) - off.ratio);
  const double i1 = offset_summary(OffsetBody(P, r1)).ratio;
  const double i2 = offset_summary(OffsetBody(P, r2)).ratio;
  v["ratio_monotonicity"] = std::max(i2 - i1, 1.0 - i2);
  v["isoperimetric_ratio"] = base.ratio;
  v["polygon_deficit_gap"] = base.deficit;
  const FlowReport flow = flow_report(P, kFlowTMax, kFlowSteps);
  v["flow_identities"] = flow.max_residual;
  v["flow_geometric"] = flow.max_geometric_residual;
  return v;
}

double star_perimeter(std::vector<Point2> pts) {
  Point2 c;
  for (const Point2& p : pts) c = c + p;
  c = (1.0 / static_cast<double>(pts.size())) * c;
  std::sort(pts.begin(), pts.end(), [c](Point2 a, Point2 b) {
    const double ta = std::atan2(a.y - c.y, a.x - c.x);
    const double tb = std::atan2(b.y - c.y, b.x - c.x);
    if (ta != tb) return ta < tb;
    return norm(a - c) < norm(b - c);
  });
  return closed_length(pts);
}

Values cloud_values(const std::vector<Point2>& pts) {
  const ConvexPolygon hull = convex_hull(pts);
  const IsoperimetricSummary s = summary(hull);
  Values v;
  // Angular order around the centroid gives a simple polygon through every
  // point; the hull can only be shorter.
  v["hull_perimeter"] = s.perimeter - star_perimeter(pts);
  v["isoperimetric_ratio"] = s.ratio;
  return v;
}

Values fourier_values(const FourierSupport& body) {
  const IsoperimetricSummary s = summary(SupportBody(body));
  Values v;
  v["fourier_deficit"] = std::abs(fourier_deficit(body) - s.deficit) / std::max(1.0, s.perimeter * s.perimeter);
  v["isoperimetric_ratio"] = s.ratio;
  try {
    const VariationDerivatives d = variation_derivatives(build_neighborhood_variation(body));
    v["criticality"] = std::abs(d.I1);
    v["stability"] = d.I2;
    v["second_variation_bridge"] =
        std::abs(2.0 * kPi * kPi * d.I2 - s.deficit) / std::max(1.0, s.perimeter * s.perimeter);
    v["first_variation_symmetry"] = std::abs(d.A1 - d.l1);
    v["variation_assembly_I1"] = std::abs(d.I1 - d.I1_direct);
    v["variation_assembly_I2"] = std::abs(d.I2 - d.I2_direct) / std::max(1.0, std::abs(d.I2));
    if (std::abs(d.I2) <= 1e-7) v["rigid_field"] = d.rigid_residual;
  } catch (const Error&) {
    for (const char* k : {"criticality", "second_variation_bridge", "first_variation_symmetry",
                          "variation_assembly_I1", "variation_assembly_I2"}) {
      v[k] = kInf;
    }
    v["stability"] = -kInf;
  }
  return v;
}

Values rigid_values(const Params& params) {
  Values v;
  try {
    const VariationFamily family = params.count("c") != 0
                                       ? build_scaling_variation(params.at("c"))
                                       : build_translation_variation(params.at("a0"), params.at("a1"));
    const VariationDerivatives d = variation_derivatives(family);
    v["rigid_families"] = std::max(std::abs(d.I1), std::abs(d.I2));
    v["first_variation_symmetry"] = std::abs(d.A1 - d.l1);
    v["stability"] = d.I2;
    if (std::abs(d.I2) <= 1e-7) v["rigid_field"] = d.rigid_residual;
  } catch (const Error&) {
    v["rigid_families"] = kInf;
  }
  return v;
}

Values series_values(const TrigSeries& phi) {
  Values v;
  try {
    const WirtingerReport r = wirtinger_check(phi);
    v["wirtinger_slack"] = r.slack;
    const std::size_t n = std::max<std::size_t>(64, 4 * (phi.degree() + 1));
    const WirtingerReport g = wirtinger_check(phi.sample(n + n % 2));
    v["wirtinger_parseval"] = std::abs(g.slack - wirtinger_slack_closed_form(phi));
    const bool equality = phi.weighted_energy(2, 0) <= 1e-12;
    v["wirtinger_certificate"] =
        (r.certificate.has_value() == equality) ? r.certificate_residual : kInf;
  } catch (const Error&) {
    v["wirtinger_slack"] = -kInf;
    v["wirtinger_certificate"] = kInf;
  }
  return v;
}

Values disk_values(const FourierSupport& body, const Params& params) {
  Values v;
  try {
    const DiskRecovery r = recover_disk_center(SupportBody(body));
    v["disk_recovery"] = r.accepted ? std::max(std::abs(r.center.x - params.at("cx")),
                                               std::abs(r.center.y - params.at("cy")))
                                    : kInf;
  } catch (const Error&) {
    v["disk_recovery"] = kInf;
  }
  return v;
}

Values near_disk_values(const FourierSupport& body) {
  Values v;
  bool accepted = false;
  try {
    accepted = recover_disk_center(SupportBody(body)).accepted;
  } catch (const ConsistencyError&) {
    // flagged as not a disk: a rejection
  }
  v["equality_rejection"] = accepted ? 1.0 : 0.0;
  return v;
}

FourierSupport near_disk(Rng& rng, int max_degree) {
  const PlantedDisk disk = random_disk(rng);
  const int k = rng.uniform_int(2, max_degree);
  const double target = std::pow(10.0, rng.uniform(-6.0, -3.0));
  // A single cos(k theta) mode of amplitude e contributes 2 pi^2 (k^2 - 1) e^2.
  const double e = std::sqrt(target / (2.0 * kPi * kPi * (k * k - 1)));
  TrigSeries s = disk.body.series();
  s.cos.resize(static_cast<std::size_t>(k), 0.0);
  s.sin.resize(static_cast<std::size_t>(k), 0.0);
  s.cos[static_cast<std::size_t>(k - 1)] = e;
  return FourierSupport(std::move(s));
}

// --- aggregation ------------------------------------------------------------

struct Aggregator {
  double scale = 1.0;
  std::vector<PropertyResult> results;

  explicit Aggregator(double s) : scale(s) {
    for (const auto& p : kProperties) {
      PropertyResult r;
      r.name = p.name;
      r.lower_bound = p.lower_bound;
      r.bound = effective_bound(p, scale);
      r.worst = p.lower_bound ? kInf : -kInf;
      results.push_back(std::move(r));
    }
  }

  void add(const Values& values, const char* source, std::size_t index,
           const std::function<std::string()>& body, const Params& params) {
    for (std::size_t i = 0; i < std::size(kProperties); ++i) {
      const auto it = values.find(kProperties[i].name);
      if (it == values.end()) continue;
      PropertyResult& r = results[i];
      const double value = it->second;
      ++r.checked;
      r.worst = r.lower_bound ? std::min(r.worst, value) : std::max(r.worst, value);
      if (passes(kProperties[i], value, scale)) {
        ++r.passed;
      } else if (r.failures.size() < kKeptFailures) {
        r.failures.push_back(ReplayCase{r.name, source, index, body(), params, value});
      }
    }
  }
};

Values evaluate(const std::string& source, const BodySpec* spec, const Params& params) {
  if (source == "polygon") return polygon_values(ConvexPolygon::from_vertices(spec->vertices), params);
  if (source == "cloud") return cloud_values(spec->vertices);
  if (source == "fourier") return fourier_values(FourierSupport(spec->series));
  if (source == "rigid") return rigid_values(params);
  if (source == "series") return series_values(spec->series);
  if (source == "disk") return disk_values(FourierSupport(spec->series), params);
  if (source == "near_disk") return near_disk_values(FourierSupport(spec->series));
  throw ParseError("field 'source': unknown generator '" + source + "'");
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// JSON has no infinities; they are written as strings.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

nlohmann::ordered_json case_json(const ReplayCase& c) {
  nlohmann::ordered_json j;
  j["property"] = c.property;
  j["source"] = c.source;
  j["index"] = c.index;
  j["body"] = c.body.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json::parse(c.body);
  j["params"] = c.params;
  j["value"] = number(c.value);
  return j;
}

}  // namespace

void VerifyConfig::validate() const {
  if (count == 0) throw InvalidArgument("count must be positive");
  if (max_vertices < 3) throw InvalidArgument("max_vertices must be at least 3");
  if (max_degree < 2) throw InvalidArgument("max_degree must be at least 2");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidArgument("r_max must be positive");
  if (!(tolerance_scale >= 0.0)) throw InvalidArgument("tolerance_scale must be >= 0");
}

bool VerifyReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  cfg.validate();
  Aggregator agg(cfg.tolerance_scale);
  enum Stream : std::uint64_t { kPolygon, kCloud, kFourier, kRigid, kSeries, kDisk, kNearDisk, kStreams };

  for (std::size_t i = 0; i < cfg.count; ++i) {
    const auto rng_for = [&](Stream s) { return Rng::stream(cfg.seed, i * kStreams + s); };
    {
      Rng rng = rng_for(kPolygon);
      const ConvexPolygon P = random_convex_polygon(rng, cfg.max_vertices);
      const double r = cfg.r_max * (1.0 - rng.uniform());
      double r1 = cfg.r_max * (1.0 - rng.uniform());
      double r2 = cfg.r_max * (1.0 - rng.uniform());
      if (r1 > r2) std::swap(r1, r2);
      const Params params{{"r", r}, {"r1", r1}, {"r2", r2}};
      agg.add(polygon_values(P, params), "polygon", i, [&] { return body_to_json(FlowBody(P)); }, params);
    }
    {
      Rng rng = rng_for(kCloud);
      const auto pts = random_point_cloud(rng, rng.uniform_int(3, 4 * cfg.max_vertices));
      try {
        agg.add(cloud_values(pts), "cloud", i,
                [&] {
                  nlohmann::json j;
                  j["type"] = "polygon";
                  j["vertices"] = nlohmann::json::array();
                  for (const Point2& p : pts) j["vertices"].push_back({p.x, p.y});
                  return j.dump();
                },
                {});
      } catch (const InvalidBody&) {
        // degenerate cloud (all collinear); nothing to check
      }
    }
    {
      Rng rng = rng_for(kFourier);
      const FourierSupport body = random_fourier_body(rng, cfg.max_degree);
      agg.add(fourier_values(body), "fourier", i, [&] { return body_to_json(FlowBody(body)); }, {});
    }
    {
      Rng rng = rng_for(kRigid);
      double a0 = rng.uniform(-1.0, 1.0);
      const double a1 = rng.uniform(-1.0, 1.0);
      if (a0 == 0.0 && a1 == 0.0) a0 = 1.0;
      const double c = rng.uniform(0.1, 2.0);
      const Params translation{{"a0", a0}, {"a1", a1}};
      const Params scaling{{"c", c}};
      agg.add(rigid_values(translation), "rigid", i, [] { return std::string(); }, translation);
      agg.add(rigid_values(scaling), "rigid", i, [] { return std::string(); }, scaling);
    }
    {
      Rng rng = rng_for(kSeries);
      const TrigSeries phi = random_zero_mean_series(rng, cfg.max_degree);
      agg.add(series_values(phi), "series", i,
              [&] {
                nlohmann::json j;
                j["type"] = "fourier";
                j["a0"] = phi.a0;
                j["cos"] = phi.cos;
                j["sin"] = phi.sin;
                return j.dump();
              },
              {});
    }
    {
      Rng rng = rng_for(kDisk);
      const PlantedDisk disk = random_disk(rng);
      const Params params{{"cx", disk.center.x}, {"cy", disk.center.y}};
      agg.add(disk_values(disk.body, params), "disk", i,
              [&] { return body_to_json(FlowBody(disk.body)); }, params);
    }
    {
      Rng rng = rng_for(kNearDisk);
      const FourierSupport body = near_disk(rng, cfg.max_degree);
      agg.add(near_disk_values(body), "near_disk", i, [&] { return body_to_json(FlowBody(body)); }, {});
    }
  }
  return VerifyReport{cfg, std::move(agg.results)};
}

std::string to_text(const VerifyReport& report) {
  const VerifyConfig& c = report.config;
  std::ostringstream os;
  os << "isoflow verify: seed " << c.seed << ", count " << c.count << ", max_vertices "
     << c.max_vertices << ", max_degree " << c.max_degree << ", r_max " << fmt("%.17g", c.r_max);
  if (c.tolerance_scale != 1.0) os << ", tolerance_scale " << fmt("%.17g", c.tolerance_scale);
  os << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%-26s %8s %8s  %-24s %s\n", "property", "checked", "passed",
                "worst", "bound");
  os << line;
  std::size_t failed = 0;
  for (const PropertyResult& p : report.properties) {
    const std::string bound = std::string(p.lower_bound ? ">= " : "<= ") + fmt("%.6g", p.bound);
    std::snprintf(line, sizeof line, "%-26s %8zu %8zu  %-24s %-14s %s\n", p.name.c_str(), p.checked,
                  p.passed, fmt("%.15e", p.worst).c_str(), bound.c_str(), p.ok() ? "ok" : "FAIL");
    os << line;
    if (!p.ok()) ++failed;
  }
  for (const PropertyResult& p : report.properties) {
    for (const ReplayCase& f : p.failures) os << "replay: " << to_json(f) << '\n';
  }
  os << "result: " << (failed == 0 ? "PASS" : "FAIL") << " (" << report.properties.size() - failed << "/"
     << report.properties.size() << " properties)\n";
  return os.str();
}

std::string to_json(const ReplayCase& c) { return case_json(c).dump(); }

std::string to_json(const VerifyReport& report) {
  const VerifyConfig& c = report.config;
  nlohmann::ordered_json j;
  j["config"] = {{"count", c.count},           {"seed", c.seed},   {"max_vertices", c.max_vertices},
                 {"max_degree", c.max_degree}, {"r_max", c.r_max}, {"tolerance_scale", c.tolerance_scale}};
  j["properties"] = nlohmann::ordered_json::array();
  for (const PropertyResult& p : report.properties) {
    nlohmann::ordered_json e;
    e["name"] = p.name;
    e["bound"] = p.bound;
    e["lower_bound"] = p.lower_bound;
    e["checked"] = p.checked;
    e["passed"] = p.passed;
    e["worst"] = number(p.worst);
    e["failures"] = nlohmann::ordered_json::array();
    for (const ReplayCase& f : p.failures) e["failures"].push_back(case_json(f));
    j["properties"].push_back(std::move(e));
  }
  j["passed"] = report.passed();
  return j.dump(2);
}

ReplayOutcome replay(const std::string& case_json_text, double tolerance_scale) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(case_json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("replay case: ") + e.what());
  }
  if (!j.is_object() || !j.contains("property") || !j["property"].is_string() || !j.contains("source") ||
      !j["source"].is_string()) {
    throw ParseError("replay case: fields 'property' and 'source' are required");
  }
  const std::string property = j["property"].get<std::string>();
  const PropertySpec* spec = find_property(property);
  if (spec == nullptr) throw ParseError("replay case: unknown property '" + property + "'");

  Params params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParseError("replay case: field 'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) throw ParseError("replay case: field 'params." + k + "' must be a number");
      params[k] = v.get<double>();
    }
  }
  std::optional<BodySpec> body;
  if (j.contains("body") && !j["body"].is_null()) body = parse_body_spec(j["body"].dump());

  const std::string source = j["source"].get<std::string>();
  if (source != "rigid" && !body) throw ParseError("replay case: field 'body' is required");
  Values values;
  try {
    values = evaluate(source, body ? &*body : nullptr, params);
  } catch (const std::out_of_range&) {
    throw ParseError("replay case: missing parameter for source '" + source + "'");
  }
  const auto it = values.find(property);
  if (it == values.end()) {
    throw ParseError("replay case: property '" + property + "' is not evaluated for this case");
  }
  ReplayOutcome out;
  out.property = property;
  out.value = it->second;
  out.bound = effective_bound(*spec, tolerance_scale);
  out.lower_bound = spec->lower_bound;
  out.passed = passes(*spec, out.value, tolerance_scale);
  return out;
}

std::string to_json(const ReplayOutcome& o) {
  nlohmann::ordered_json j;
  j["property"] = o.property;
  j["value"] = number(o.value);
  j["bound"] = o.bound;
  j["lower_bound"] = o.lower_bound;
  j["passed"] = o.passed;
  return j.dump(2);
}

}  // namespace isoflow
