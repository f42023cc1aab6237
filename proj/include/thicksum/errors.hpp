#pragma once
// Error taxonomy. Exceptions carry enough structure for callers (and the CLI)
// to map failures onto distinct exit codes: input validation, malformed files,
// and certification/premise failures are different conditions.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thicksum {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument values, empty clouds, out-of-range parameters.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Points or directions of the wrong length for the ambient dimension.
struct DimensionMismatch : ValidationError {
  explicit DimensionMismatch(const std::string& msg) : ValidationError(msg) {}
};

// Cloud whose affine hull is lower-dimensional than the ambient space.
struct DegenerateInput : Error {
  DegenerateInput(const std::string& msg, int affine_dimension)
      : Error(msg), affine_dim(affine_dimension) {}
  int affine_dim;
};

// Enumeration would exceed a configured size cap.
struct CapExceeded : Error {
  CapExceeded(const std::string& msg, double requested_count, double cap_value)
      : Error(msg), requested(requested_count), cap(cap_value) {}
  double requested;
  double cap;
};

// A required witness ball could not be produced at (center, scale).
struct WitnessFailure : Error {
  WitnessFailure(const std::string& msg, std::vector<double> at, double scale_r,
                 double achieved_ratio)
      : Error(msg), center(std::move(at)), scale(scale_r), achieved(achieved_ratio) {}
  std::vector<double> center;
  double scale;     // the r at which the witness was requested
  double achieved;  // best ratio actually available (chebyshev radius / r)
};

// A verified-construction check failed; `path` localizes the failing vertex.
struct PremiseFailure : Error {
  PremiseFailure(const std::string& msg, std::string check_name,
                 std::string vertex_path, double margin_value)
      : Error(msg), check(std::move(check_name)), path(std::move(vertex_path)),
        margin(margin_value) {}
  std::string check;
  std::string path;
  double margin;
};

// Malformed input documents (JSON structure, ragged rows, non-finite numbers).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Internal solver breakdown; indicates a bug, not bad user input.
struct SolverFailure : Error {
  explicit SolverFailure(const std::string& msg) : Error(msg) {}
};

}  // namespace thicksum
