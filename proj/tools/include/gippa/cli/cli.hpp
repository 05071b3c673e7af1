#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gippa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `gippa` tool. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flag, then config value, then $GIPPA_OUTPUT_DIR, then ".".
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const std::filesystem::path& from_config);

}  // namespace gippa::cli
