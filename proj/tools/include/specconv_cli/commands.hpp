#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "specconv_cli/config.hpp"

namespace specconv::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kResourceCap = 3 };

/// A requested grid or sample larger than the configured cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOutput {
  int exit_code = kOk;
  std::string report;  ///< plain text
  std::string data;    ///< CSV or spectrum file; empty when the command has none
};

[[nodiscard]] CommandOutput cmd_check(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_spectrum(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_qscan(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_sample(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_equipos(const RunConfig& cfg);
[[nodiscard]] CommandOutput cmd_builtins();

/// Entry point behind main(); args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specconv::cli
