#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace epidiff {

enum class Mode { simulate, steady, verify, sweep };

struct RunSpec {
    Mode mode = Mode::simulate;
    std::string config_path;
    std::filesystem::path out_dir = ".";
    std::size_t cadence = 1;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalAbort = 3;

/// Executes one mode and writes its artifacts into spec.out_dir:
///   simulate  effective_config.ini, diagnostics.csv, snapshot_<step>.txt
///   steady    effective_config.ini, s_infinity.txt, steady_report.txt
///   verify    effective_config.ini, verdicts.txt
///   sweep     effective_config.ini, sweep.csv
/// Progress and errors go to `log`.
int run_cli(const RunSpec& spec, std::ostream& log);

/// Flag parsing (--mode --config --out --seed --threads --cadence) then run_cli.
int cli_main(int argc, char** argv);

}  // namespace epidiff
