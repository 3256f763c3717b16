#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hammerstein/config.hpp"
#include "hammerstein/report.hpp"

namespace hammerstein {

struct CompareOutput {
    std::optional<SolveResult> ld;
    std::optional<SolveResult> dl;
    std::filesystem::path csv;
    std::filesystem::path script;
    std::filesystem::path config_echo;

    /// True if any solver stopped on a singular Newton matrix.
    bool fatal() const;
};

/// Runs the selected solver(s) on one problem and grid, then writes
/// `<prefix>.csv`, `<prefix>.gp` (gnuplot, log10(true_error) against k) and
/// `<prefix>_config.json` into out_dir.
CompareOutput run_compare(const RunConfig& cfg, const std::filesystem::path& out_dir,
                          const std::string& prefix = "compare");

struct SweepEntry {
    std::size_t n = 0;
    SolveReport report;
    std::optional<int> iterations_to_eps;
};

struct SweepOutput {
    std::vector<SweepEntry> entries;
    std::filesystem::path csv;      ///< n,k,true_error
    std::filesystem::path summary;  ///< n,iterations_to_eps,terminal_error,status
    std::filesystem::path script;

    bool fatal() const;
};

/// LD solver for each n (ascending, non-empty). Writes nsweep.csv,
/// nsweep_summary.csv and nsweep.gp.
SweepOutput run_nsweep(const RunConfig& cfg, std::span<const std::size_t> n_list,
                       const std::filesystem::path& out_dir);

/// First k with true_error <= eps, if any.
std::optional<int> iterations_to_reach(const SolveReport& report, double eps);

}  // namespace hammerstein
