#ifndef STRMON_TOOLS_CASEGEN_HPP
#define STRMON_TOOLS_CASEGEN_HPP

#include <filesystem>

namespace strmon::cli {

/// Synthetic flight-path case: 3-D trace on [-50;1897] (a 50-step shift
/// buffer on both sides of the monitored window [0;1847]) plus a
/// three-conjunct specification: avoid a lateral no-fly box, keep clear of a
/// corridor box from a deadline onward, and climb through the 1600..1800 ft
/// band within a 300-step window. Writes signal.csv, spec.str, config.json.
void generate_f16like(const std::filesystem::path& dir);

/// Two straight-line agents on [-10;100] with a 1-unit separation
/// requirement over [0;90], encoded on the relative position, plus a
/// fixed-pedestrian variant over the vehicle trace alone. Writes
/// signal_rel.csv, spec_rel.str, signal_vehicle.csv, spec_fixed.str,
/// config.json.
void generate_robotaxi(const std::filesystem::path& dir);

}  // namespace strmon::cli

#endif  // STRMON_TOOLS_CASEGEN_HPP
