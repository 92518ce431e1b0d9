#pragma once

// Command-line driver: configuration, the four subcommands and their
// JSON/CSV renderings. Outputs are byte-identical for identical
// configurations; timings only ever go to the diagnostic stream.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zlab/linalg.hpp"
#include "zlab/suite.hpp"

namespace zlab::cli {

/// Bad flags, malformed configuration or inadmissible input; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  int n = 2;
  std::uint64_t seed = 42;
  int samples = 50;
  Tolerances tol;
  /// Per-check threshold overrides (--tol.<check name>).
  std::map<std::string, double> thresholds;
  /// Restricts `check` to one module.
  std::string module;
  /// Flow label for `flow`, 1-based.
  int flow_index = 1;
  std::vector<cplx> times{cplx(0.0), cplx(0.5), cplx(1.0)};
  /// Point literal for `flow` and `embed`; defaults to diag 0, roots 1.
  std::optional<CVector> diag;
  std::optional<CVector> roots;
  double fd_step = 1e-6;
  Format format = Format::Json;
  bool format_given = false;
  std::string out_path;

  SuiteConfig suite() const;
};

/// Parses "1", "-0.5", "2j", "1+2j", "1.5e-3-4e-2j" (also "i" for the unit).
cplx parse_complex(const std::string& text);
/// Comma-separated list of parse_complex values.
std::vector<cplx> parse_complex_list(const std::string& text);
/// "re+imj" with 17 significant digits.
std::string format_complex(cplx z);

/// Applies a `--tol.<name>` override: a field of Tolerances (eig, minor, exp,
/// chamber, kernel, fd_step) or the threshold of a named check.
void apply_tolerance(RunConfig& cfg, const std::string& name, double value);

/// Merges a JSON configuration document into cfg. Throws UsageError on
/// malformed JSON, unknown keys or ill-typed values.
void apply_json_config(RunConfig& cfg, const std::string& text);

/// Validates ranges (2 <= n <= 8, samples >= 1, fd_step in [1e-8, 1e-4] for
/// cjl, point dimensions).
void validate(const RunConfig& cfg);

/// Parses argv into a configuration. Throws UsageError.
RunConfig parse_args(int argc, const char* const* argv);

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_flow(const RunConfig& cfg);
CommandResult cmd_embed(const RunConfig& cfg);
CommandResult cmd_cjl(const RunConfig& cfg);

/// Renders a report as JSON or CSV.
std::string render_report(const Report& report, const std::string& command, Format format);

/// Full driver: parse, dispatch, write output (to --out or `out`), print a
/// timing summary to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zlab::cli
