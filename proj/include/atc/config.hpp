#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atc/controller.hpp"
#include "atc/road.hpp"
#include "atc/sim.hpp"
#include "atc/tuning.hpp"

namespace atc {

/// Sectioned key/value configuration text: `[section]` headers, `key = value`
/// lines, `#` or `;` comments. Repeated keys accumulate (used for road
/// segments and slip events); `get` returns the last occurrence.
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::filesystem::path& path);

    bool has_section(const std::string& section) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

private:
    // section -> ordered (key, value) pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
};

Gear gear_from_name(const std::string& name);
Load load_from_name(const std::string& name);
SensorSet sensor_set_from_name(const std::string& name);
std::string gear_name(Gear gear);
std::string load_name(Load load);
std::string sensor_set_name(SensorSet set);

/// [scenario], [geometry] and [noise] sections plus repeated
/// `event = wheel t_start t_end magnitude` lines.
ScenarioConfig scenario_from_config(const ConfigFile& cfg);

/// [road] section: ramp_rate, max_steering_deg and repeated
/// `segment = straight LENGTH` / `segment = arc LENGTH TARGET_DEG` lines.
/// Falls back to the default test road when the section is absent.
RoadProfile road_from_config(const ConfigFile& cfg);

/// [controller] section.
ControllerConfig controller_from_config(const ConfigFile& cfg);

/// [tuning] section.
TuneOptions tuning_from_config(const ConfigFile& cfg);

}  // namespace atc
