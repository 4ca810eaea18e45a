#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isoflow/convex_poly.hpp"
#include "isoflow/numerics.hpp"
#include "isoflow/steiner_flow.hpp"
#include "isoflow/support_body.hpp"

namespace isoflow {

enum class BodyKind { Polygon, Fourier, Grid };

std::string_view to_string(BodyKind kind);

/// Parsed but unvalidated body description. Only the members matching
/// kind are filled.
struct BodySpec {
  BodyKind kind = BodyKind::Polygon;
  std::vector<Point2> vertices;
  TrigSeries series;
  std::vector<double> samples;
};

/// Parses {"type": "polygon"|"fourier"|"grid", ...}. Throws ParseError with
/// the line for syntax errors and the field path for schema errors.
BodySpec parse_body_spec(std::string_view text);

/// source is inline JSON when its first non-blank character is '{',
/// otherwise a file path. Unreadable files raise ParseError.
BodySpec load_body_spec(const std::string& source);

/// Builds and validates the body (InvalidBody on failure). With hull set,
/// polygon vertices are replaced by their convex hull first.
FlowBody realize(const BodySpec& spec, bool hull = false);

/// Compact JSON in the input format; doubles round-trip exactly.
std::string body_to_json(const FlowBody& body);
std::string body_to_json(const SupportBody& body);

}  // namespace isoflow
