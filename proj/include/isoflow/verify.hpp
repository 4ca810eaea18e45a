#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace isoflow {

struct VerifyConfig {
  std::size_t count = 1000;
  std::uint64_t seed = 42;
  int max_vertices = 12;
  int max_degree = 8;
  double r_max = 10.0;
  /// Multiplies every upper bound. Only useful to force failures when
  /// exercising the replay path; 1 is the real suite.
  double tolerance_scale = 1.0;

  /// Throws InvalidArgument on count 0, max_vertices < 3, max_degree < 2 or
  /// r_max <= 0.
  void validate() const;
};

/// A single failing check, self-contained enough to be re-run.
struct ReplayCase {
  std::string property;
  /// Generator family the body came from (polygon, cloud, fourier, rigid,
  /// series, disk, near_disk).
  std::string source;
  std::size_t index = 0;
  /// Body JSON in the input format, or empty for parameter-only checks.
  std::string body;
  std::map<std::string, double> params;
  double value = 0.0;
};

struct PropertyResult {
  std::string name;
  /// Upper bounds pass when value <= bound, lower bounds when value >= bound.
  bool lower_bound = false;
  double bound = 0.0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  /// Largest value for upper bounds, smallest for lower bounds.
  double worst = 0.0;
  /// First few failures, in generation order.
  std::vector<ReplayCase> failures;

  bool ok() const { return checked == passed; }
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<PropertyResult> properties;

  bool passed() const;
};

/// Runs the randomized invariant suite. Bodies for item i come from
/// independent streams derived from (seed, i), so results do not depend on
/// evaluation order.
VerifyReport run_verify(const VerifyConfig& config);

std::string to_text(const VerifyReport& report);
std::string to_json(const VerifyReport& report);
std::string to_json(const ReplayCase& c);

struct ReplayOutcome {
  std::string property;
  double value = 0.0;
  double bound = 0.0;
  bool lower_bound = false;
  bool passed = false;
};

/// Re-evaluates a case serialized by to_json(ReplayCase). Throws ParseError
/// on malformed input or an unknown property.
ReplayOutcome replay(const std::string& case_json, double tolerance_scale = 1.0);
std::string to_json(const ReplayOutcome& outcome);

}  // namespace isoflow
