#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qfl/accounting.hpp"

namespace qfl {

/// Trace deviation above which an ingested sample is rejected as not trace preserving.
inline constexpr double kFileTraceTolerance = 1e-8;

/// Column order of the ledger table; part of the file format.
inline constexpr std::string_view kLedgerHeader = "t,U,W,Q_cal,C,W_cl,Q_cl,S,l1_coherence,closure_defect";

/// JSON trajectory document:
///   { "units": {"hbar": 1, "k_B": 1},            (optional)
///     "samples": [ { "t": 0.0,
///                    "H":   {"re": [[..]], "im": [[..]]},
///                    "rho": {"re": [[..]], "im": [[..]]} }, ... ] }
/// "im" may be omitted for real matrices. Errors name the sample index and field.
Trajectory parse_trajectory(std::string_view text);
Trajectory read_trajectory_file(const std::filesystem::path& path);

/// Doubles are written with round-trip precision.
std::string format_trajectory(const Trajectory& traj);
void write_trajectory_file(const std::filesystem::path& path, const Trajectory& traj);

/// CSV with kLedgerHeader and one row per sample, 17 significant digits.
std::string format_ledger(const EnergyLedger& ledger);
void write_ledger_file(const std::filesystem::path& path, const EnergyLedger& ledger);

/// Writes to a sibling temporary and renames over `path`; nothing partial is
/// left behind on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace qfl
