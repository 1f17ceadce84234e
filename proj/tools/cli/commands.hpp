#ifndef CENTRIC_CLI_COMMANDS_HPP
#define CENTRIC_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace centric::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitViolation = 2,
};

/// Entry point behind centric-kit. Never throws; errors become messages on `err` and exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Sidecar path recording how `output` was produced.
std::string provenance_path(const std::string& output);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace centric::cli

#endif
