#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qotto::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

enum class OutputFormat { csv, json };

/// Parsed command-line configuration. Precedence: flags, then the
/// optional key = value config file, then these defaults.
struct RunConfig {
  double nu_cold = 2000.0;
  double nu_hot = 3600.0;
  double tau = 200e-6;
  std::size_t steps = 4096;
  double p_cold_plus = 0.261;
  std::optional<double> p_hot_plus;
  std::optional<std::vector<double>> tau_list;
  std::optional<std::vector<double>> ratio_list;
  std::optional<std::string> p_hot_range;  // "lo:hi:n"
  std::optional<std::string> xi_range;     // "lo:hi:n"
  std::optional<OutputFormat> format;
  std::string out_path = "-";
};

struct GridRange {
  double lo;
  double hi;
  std::size_t n;
};

/// Parses "lo:hi:n"; throws std::invalid_argument with the flag name.
GridRange parse_range(const std::string& text, const std::string& flag);

/// Reads "key = value" lines (# comments, blank lines ignored) and returns
/// them as "--key value" argument pairs.
std::vector<std::string> config_file_arguments(const std::string& path);

/// Entry point shared by the executable and the tests; args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qotto::cli
