#pragma once

// Command-line front end. Exit codes: 0 success, 2 invalid input,
// 3 numerical failure.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sphere_re::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct JobConfig {
  std::string mode;
  std::array<double, 3> masses{1.0, 1.0, 1.0};
  std::string potential = "cotangent";
  std::string output = "-";
  std::string format;  ///< empty picks the mode's default
  bool verify = false;
  double T = 10.0;
  double dt = 1e-3;

  int grid = 720;
  int sigma12_grid = 512;
  int sigma_grid = 4096;
  int resolution = 200;
  std::vector<double> shape;
  std::vector<double> config;
  std::string input;
  std::string orientation = "north";
  std::string dphi = "negative";
  bool polish = false;
  double epsilon = 1e-3;
  unsigned long long seed = 1;
};

/// Executes a parsed job, writing the artifact to `out`. Errors are
/// reported on `err` as one JSON object and mapped to exit codes.
int run(const JobConfig& job, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Output goes to --output (stdout for "-").
int main(int argc, char** argv);

}  // namespace sphere_re::cli
