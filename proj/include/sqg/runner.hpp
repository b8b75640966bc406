#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sqg/config.hpp"

namespace sqg {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 validation error, 2 runtime abort (NaN),
// 3 acceptance failure.
struct RunResult {
    int exit_code = 0;
    std::string message;
    std::filesystem::path output_dir;
};

RunResult run_command(Command command, const RunConfig& cfg,
                      const std::optional<std::string>& output_override,
                      const std::optional<int>& threads_override);

} // namespace sqg
