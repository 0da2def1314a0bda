#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace polygen {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> epochs;
    // Adds wall_time_s to the run summary (breaks byte-identical reruns).
    bool record_wall_time = false;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,
    kExitConfig = 2,
    kExitRuntime = 3,
};

// Each command writes JSON lines and sends diagnostics to `err`. Run and
// scaling-study honour the configured output path; sample and validate write
// to --out or stdout.
int cmd_run(const std::string& config_path, const Overrides& ov, std::ostream& err);
int cmd_sample(const std::string& config_path, std::size_t count, const Overrides& ov, std::ostream& err);
int cmd_scaling_study(const std::string& config_path, const Overrides& ov, std::ostream& err);
// Checks every structure found in `input_path` (records holding "structure"
// or "population") against the configured domain. Exit 1 if any is invalid.
int cmd_validate(const std::string& config_path, const std::string& input_path, const Overrides& ov,
                 std::ostream& err);

}  // namespace polygen
