#ifndef OSCFLUID_TRAJECTORY_IO_HPP_
#define OSCFLUID_TRAJECTORY_IO_HPP_

#include <string>

#include "oscfluid/config.hpp"
#include "oscfluid/integrator.hpp"

namespace oscfluid {

inline constexpr const char* kTrajectoryFormat = "oscfluid-trajectory v1";
inline constexpr const char* kFieldsFormat = "oscfluid-fields v1";
inline constexpr const char* kBuildId = "oscfluid 1.0.0";

/// Writes the trajectory CSV: a commented header with the format version,
/// build id and the full config echo, the ledger body (17 significant
/// digits, C locale), and a trailing status line.
void write_trajectory(const Trajectory& traj, const RunConfig& config,
                      const std::string& path);

/// Writes the companion field-snapshot CSV (rho and v_coeffs per output row).
void write_fields(const Trajectory& traj, const std::string& path);

struct LoadedTrajectory {
  RunConfig config;
  Trajectory traj;  // has_fields set only after read_fields
};

/// Parses a trajectory file; throws ConfigError with the offending location
/// on format or version mismatches.
LoadedTrajectory read_trajectory(const std::string& path);

/// Attaches field snapshots from a companion file; row count and grid sizes
/// must match the trajectory.
void read_fields(LoadedTrajectory& loaded, const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace oscfluid

#endif  // OSCFLUID_TRAJECTORY_IO_HPP_
