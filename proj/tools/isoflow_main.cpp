// isoflow: command-line front end for the convex-geometry library.
//
// Exit codes: 0 success, 1 property or consistency failure, 2 usage or
// parse error, 3 invalid body.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoflow/body_io.hpp"
#include "isoflow/convex_poly.hpp"
#include "isoflow/errors.hpp"
#include "isoflow/steiner_flow.hpp"
#include "isoflow/support_body.hpp"
#include "isoflow/variational.hpp"
#include "isoflow/verify.hpp"

namespace {

using namespace isoflow;

enum ExitCode { kOk = 0, kPropertyFailure = 1, kUsage = 2, kInvalidBody = 3 };

struct BodyOptions {
  std::string source;
  bool hull = false;
  std::optional<double> round;
  std::size_t grid = kDefaultGridSize;
};

struct Options {
  BodyOptions body;
  double r_max = 10.0;
  int steps = 100;
  double t_max = 5.0;
  std::string out;
  bool json = false;
  double tol = kEqualityTolerance;
  std::string replay;
  VerifyConfig verify;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write output file '" + out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
  if (!f) throw InvalidArgument("failed writing output file '" + out + "'");
}

FlowBody load(const BodyOptions& o) { return realize(load_body_spec(o.source), o.hull); }

// Smooth representation for the support-function commands. Polygons only
// enter through a rounded offset.
SupportBody smooth(const FlowBody& body, const BodyOptions& o) {
  if (const auto* p = std::get_if<ConvexPolygon>(&body)) {
    if (!o.round) throw InvalidArgument("polygon bodies need --round <r> for this command");
    return from_polygon_rounded(*p, *o.round, o.grid);
  }
  if (const auto* f = std::get_if<FourierSupport>(&body)) return *f;
  return std::get<GridSupport>(body);
}

void put_summary(nlohmann::ordered_json& j, const IsoperimetricSummary& s) {
  j["area"] = s.area;
  j["perimeter"] = s.perimeter;
  j["ratio"] = s.ratio;
  j["deficit"] = s.deficit;
}

int cmd_info(const Options& o) {
  const BodySpec spec = load_body_spec(o.body.source);
  const FlowBody body = realize(spec, o.body.hull);
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(spec.kind));
  if (o.body.round && std::holds_alternative<ConvexPolygon>(body)) {
    const GridSupport g = std::get<GridSupport>(smooth(body, o.body));
    put_summary(j, summary(SupportBody(g)));
    j["round"] = *o.body.round;
    j["grid"] = g.size();
    j["quadrature"] = std::string(to_string(g.quadrature()));
    j["refinement_residual"] = g.refinement_residual();
  } else {
    put_summary(j, summary(body));
  }
  if (const auto* grid = std::get_if<GridSupport>(&body)) {
    j["quadrature"] = std::string(to_string(grid->quadrature()));
    j["refinement_residual"] = grid->refinement_residual();
  }
  if (o.body.hull && spec.kind == BodyKind::Polygon) {
    const auto& hull = std::get<ConvexPolygon>(body);
    nlohmann::ordered_json in;
    put_summary(in, simple_polygon_summary(spec.vertices));
    in["vertices"] = spec.vertices.size();
    j["input"] = in;
    j["hull_vertices"] = hull.size();
  }
  emit(j.dump(2), o.out);
  return kOk;
}

int cmd_sweep(const Options& o) {
  if (o.steps < 2) throw InvalidArgument("--steps must be at least 2");
  if (!(o.r_max > 0.0)) throw InvalidArgument("--r-max must be positive");
  const FlowBody body = load(o.body);
  std::optional<SupportBody> smooth_body;
  if (!std::holds_alternative<ConvexPolygon>(body) || o.body.round) smooth_body = smooth(body, o.body);

  std::string csv = "r,area,perimeter,ratio,deficit\n";
  for (int k = 0; k < o.steps; ++k) {
    const double r = o.r_max * static_cast<double>(k) / static_cast<double>(o.steps - 1);
    const IsoperimetricSummary s = smooth_body
                                       ? summary(offset(*smooth_body, r))
                                       : offset_summary(OffsetBody(std::get<ConvexPolygon>(body), r));
    csv += fmt17(r) + ',' + fmt17(s.area) + ',' + fmt17(s.perimeter) + ',' + fmt17(s.ratio) + ',' +
           fmt17(s.deficit) + '\n';
  }
  emit(csv, o.out);
  return kOk;
}

int cmd_flow(const Options& o) {
  if (o.steps < 2) throw InvalidArgument("--steps must be at least 2");
  FlowBody body = load(o.body);
  if (o.body.round && std::holds_alternative<ConvexPolygon>(body)) {
    body = std::get<GridSupport>(smooth(body, o.body));
  }
  const FlowReport report = flow_report(body, o.t_max, o.steps);
  emit(o.json ? to_json(report) : to_csv(report), o.out);
  return kOk;
}

int cmd_variation(const Options& o) {
  const SupportBody body = smooth(load(o.body), o.body);
  const VariationDerivatives d = variation_derivatives(build_neighborhood_variation(body));
  emit(to_json(d, summary(body).deficit), o.out);
  return kOk;
}

int cmd_recover(const Options& o) {
  const SupportBody body = smooth(load(o.body), o.body);
  emit(to_json(recover_disk_center(body, o.tol)), o.out);
  return kOk;
}

int cmd_wirtinger(const Options& o) {
  const BodySpec spec = load_body_spec(o.body.source);
  WirtingerReport r;
  if (spec.kind == BodyKind::Fourier) {
    r = wirtinger_check(spec.series);
  } else if (spec.kind == BodyKind::Grid) {
    r = wirtinger_check(PeriodicGrid(spec.samples));
  } else {
    throw InvalidArgument("wirtinger expects a fourier or grid function, not a polygon");
  }
  emit(to_json(r), o.out);
  return kOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read replay file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_verify(const Options& o) {
  if (!o.replay.empty()) {
    const ReplayOutcome r = replay(read_file(o.replay), o.verify.tolerance_scale);
    emit(to_json(r), o.out);
    return r.passed ? kOk : kPropertyFailure;
  }
  const VerifyReport report = run_verify(o.verify);
  emit(o.json ? to_json(report) : to_text(report), o.out);
  if (!report.passed()) {
    for (const PropertyResult& p : report.properties) {
      for (const ReplayCase& c : p.failures) std::cerr << to_json(c) << '\n';
    }
    return kPropertyFailure;
  }
  return kOk;
}

void add_body_options(CLI::App* cmd, BodyOptions& b, bool with_round = true) {
  cmd->add_option("body", b.source, "Body JSON: a file path or inline JSON")->required();
  cmd->add_flag("--hull", b.hull, "Replace polygon vertices by their convex hull");
  if (with_round) {
    cmd->add_option("--round", b.round, "Round a polygon by this offset radius (sampled support)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--grid", b.grid, "Sample count for rounded polygons")->check(CLI::Range(8, 1 << 20));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-body isoperimetry toolkit: Steiner flows, variations and checks"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "Area, perimeter, isoperimetric ratio and deficit");
  add_body_options(info, o.body);
  info->add_option("--out", o.out, "Write to this file instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Tabulate the r-neighborhoods as CSV");
  add_body_options(sweep, o.body);
  sweep->add_option("--r-max", o.r_max, "Largest offset radius")->required();
  sweep->add_option("--steps", o.steps, "Number of rows (at least 2)")->required();
  sweep->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* flow = app.add_subcommand("flow", "Ratio flow I(t) with closed-form and difference derivatives");
  add_body_options(flow, o.body);
  flow->add_option("--t-max", o.t_max, "Last flow parameter");
  flow->add_option("--steps", o.steps, "Number of intervals (at least 2)");
  flow->add_option("--out", o.out, "Output path (default stdout)");
  flow->add_flag("--json", o.json, "JSON instead of CSV");

  auto* variation = app.add_subcommand("variation", "First and second variation of the neighborhood flow");
  add_body_options(variation, o.body);
  variation->add_option("--out", o.out, "Write to this file instead of stdout");

  auto* recover = app.add_subcommand("recover", "Center of a zero-deficit body, or a rejection");
  add_body_options(recover, o.body);
  recover->add_option("--tol", o.tol, "Deficit tolerance relative to perimeter^2")->check(CLI::PositiveNumber);
  recover->add_option("--out", o.out, "Write to this file instead of stdout");

  auto* wirtinger = app.add_subcommand("wirtinger", "Wirtinger inequality for a zero-mean function");
  wirtinger->add_option("field", o.body.source, "Function JSON (fourier with a0 = 0, or grid samples)")
      ->required();
  wirtinger->add_option("--out", o.out, "Write to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Randomized invariant suite");
  verify->add_option("--count", o.verify.count, "Bodies per generator");
  verify->add_option("--seed", o.verify.seed, "Generator seed");
  verify->add_option("--max-vertices", o.verify.max_vertices, "Largest random polygon point count");
  verify->add_option("--max-degree", o.verify.max_degree, "Largest random Fourier degree");
  verify->add_option("--r-max", o.verify.r_max, "Largest random offset radius");
  verify->add_option("--tolerance-scale", o.verify.tolerance_scale,
                     "Scale every upper bound (diagnostics only)");
  verify->add_option("--replay", o.replay, "Re-run one serialized failing case");
  verify->add_flag("--json", o.json, "JSON report");
  verify->add_option("--out", o.out, "Write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*info) return cmd_info(o);
    if (*sweep) return cmd_sweep(o);
    if (*flow) return cmd_flow(o);
    if (*variation) return cmd_variation(o);
    if (*recover) return cmd_recover(o);
    if (*wirtinger) return cmd_wirtinger(o);
    if (*verify) {
      o.verify.validate();
      return cmd_verify(o);
    }
  } catch (const InvalidBody& e) {
    std::cerr << "isoflow: invalid body: " << e.what() << '\n';
    return kInvalidBody;
  } catch (const ParseError& e) {
    std::cerr << "isoflow: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "isoflow: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "isoflow: " << e.what() << '\n';
    return kPropertyFailure;
  }
  return kUsage;
}
