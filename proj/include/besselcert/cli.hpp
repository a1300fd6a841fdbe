#pragma once

// Command-line front end. Parsing and execution live in the library so tests
// can drive them in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "besselcert/analysis.hpp"
#include "besselcert/corput.hpp"
#include "besselcert/kernels.hpp"

namespace besselcert {

enum class Command { Eval, Ratio, Zero, Scan, Critical, Corput, Suite };
enum class OutputFormat { Text, Json, Csv };

std::string_view to_string(Command command);
std::string_view to_string(OutputFormat format);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

struct RunConfig {
  Command command = Command::Suite;
  std::optional<double> nu;
  /// Shape for the gamma inequality family.
  std::optional<double> alpha;
  /// Grid bounds; unset ends take command-specific defaults.
  std::optional<double> lo;
  std::optional<double> hi;
  /// Single point, replacing the grid for eval and ratio.
  std::optional<double> x;
  int grid_points = 128;
  std::uint64_t seed = 12345;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> output_path;

  Family family = Family::I;
  int order = 0;
  int n = 1;
  int count = 1;
  Target target = Target::IPrime;
  std::optional<Sign> expect;
  std::optional<CriticalKind> kind;
  CorputFamily corput_family = CorputFamily::Hyperbolic;
  int pairs = 100;
  std::optional<double> a;
  std::optional<double> b;
};

/// Executes a parsed configuration. Data goes to `out` (or the output file),
/// diagnostics to `err`. Returns 0, 1 (usage or domain error) or 2 (violation).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and runs them.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace besselcert
