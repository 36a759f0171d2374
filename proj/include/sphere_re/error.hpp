#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphere_re {

enum class ErrorCode {
  invalid_argument,
  degenerate_shape,
  unrealizable_shape,
  singular_separation,
  coordinate_singularity,
  degenerate_normalization,
  reconstruction_out_of_range,
  degenerate_discriminant,
  inconsistent_ratios,
  excluded_angle,
  no_lre_for_repulsive,
  condition_not_satisfied,
  internal_error,
};

/// Stable machine-readable identifier, used in CLI error output.
std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by bad input rather than by the numerics.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by the integrators when a trajectory hits a singularity.
class IntegrationAborted : public Error {
 public:
  IntegrationAborted(ErrorCode cause, double time, const std::string& what)
      : Error(cause, what), time_(time) {}

  /// Simulation time of the last completed step before the blow-up.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace sphere_re
