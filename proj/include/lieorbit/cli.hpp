#pragma once

#include "lieorbit/numerics.hpp"
#include "lieorbit/orbit_sample.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lieorbit::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string algebra = "sl2c";
  std::string h_spec = "regular";
  std::vector<DeformationParameter> r_list{DeformationParameter::finite(1.0)};
  std::uint64_t seed = 1;
  int n_base = 20;
  int n_fiber = 5;
  Tolerance tol;
  std::filesystem::path output_dir = "lieorbit_out";
  bool output_dir_set = false;
};

/// Shortest decimal that parses back to the same double ("inf" for infinity).
std::string short_number(double v);
/// Parses items like "1", "10", "inf"; throws ConfigurationError / DomainError.
std::vector<DeformationParameter> parse_r_list(const std::vector<std::string>& items);
/// Writes via a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lieorbit::cli
