#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "ringdelay/config.hpp"

namespace ringdelay {

/// Process exit codes of the CLI.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitIo = 3 };

/// Maps a library exception to its exit code.
[[nodiscard]] int exit_code_for(const std::exception& e) noexcept;

/// Creates `dir` and checks that a file can be written there; throws IoError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);

/// trajectory.csv, consensus_error.csv, consensus_error.svg, metadata.json.
/// Uses the delays in cfg.model.
void run_simulate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// phase_labels.csv, phase_diagram.ppm, boundary.csv, metadata.json.
void run_sweep(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// roots.csv for the requested modes (all modes when empty), metadata.json.
/// Returns kExitNumerical when every requested mode failed.
int run_roots(const RunConfig& cfg, const std::vector<int>& modes, const std::filesystem::path& out,
              std::ostream& log);

/// crossing_curves.csv for k = 1..n-1 inside the sweep window, optionally envelope.csv.
void run_boundary(const RunConfig& cfg, bool with_envelope, const std::filesystem::path& out, std::ostream& log);

/// modes.csv with the Fourier amplitudes of every row of a trajectory CSV, or
/// of the seeded initial state when no input is given.
void run_modes(const RunConfig& cfg, const std::optional<std::filesystem::path>& input,
               const std::filesystem::path& out, std::ostream& log);

}  // namespace ringdelay
