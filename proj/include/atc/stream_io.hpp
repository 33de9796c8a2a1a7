#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "atc/bounds.hpp"
#include "atc/sim.hpp"
#include "atc/tuning.hpp"
#include "atc/validation.hpp"

namespace atc {

/// First line of every output file: `# atc <command> version=... seed=...`
/// plus any extra `key=value` pairs.
std::string manifest_line(const std::string& command, uint64_t seed, const std::string& extra = "");

std::string truth_csv(std::span<const TruthFrame> frames, const std::string& manifest);

std::string sensors_csv(std::span<const SensorFrame> frames, SensorSet sensor_set,
                        const std::string& manifest);

/// Parses a sensors CSV produced by sensors_csv(); header-driven, so the
/// optional channels come back exactly when their columns are present.
std::vector<SensorFrame> read_sensors_csv(const std::string& text);

std::string profile_to_text(const BoundProfile& profile);
BoundProfile profile_from_text(const std::string& text);

std::string cloud_csv(const PointCloud& cloud, const std::string& manifest);
std::string envelope_csv(const Envelope& env, const std::string& manifest);
std::string hull_csv(std::span<const HullPoint> hull, const std::string& manifest);
std::string report_csv(std::span<const ErrorReport> reports, const std::string& manifest);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace atc
