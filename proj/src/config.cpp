#include "atc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace atc {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": unterminated section header");
            }
            section = lower(trim(stripped.substr(1, stripped.size() - 2)));
            cfg.sections_.try_emplace(section);
            continue;
        }
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = lower(trim(stripped.substr(0, eq)));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        }
        cfg.sections_[section].emplace_back(key, value);
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(lower(section)) > 0;
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
    const auto it = sections_.find(lower(section));
    if (it == sections_.end()) return std::nullopt;
    std::optional<std::string> found;
    for (const auto& [k, v] : it->second) {
        if (k == lower(key)) found = v;
    }
    return found;
}

std::vector<std::string> ConfigFile::get_all(const std::string& section,
                                             const std::string& key) const {
    std::vector<std::string> out;
    const auto it = sections_.find(lower(section));
    if (it == sections_.end()) return out;
    for (const auto& [k, v] : it->second) {
        if (k == lower(key)) out.push_back(v);
    }
    return out;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw std::runtime_error("config value " + section + "." + key + " is not a number: " +
                                 *v);
    }
}

long ConfigFile::get_long(const std::string& section, const std::string& key,
                          long fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    try {
        return std::stol(*v);
    } catch (const std::exception&) {
        throw std::runtime_error("config value " + section + "." + key +
                                 " is not an integer: " + *v);
    }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    const std::string s = lower(*v);
    if (s == "on" || s == "true" || s == "yes" || s == "1") return true;
    if (s == "off" || s == "false" || s == "no" || s == "0") return false;
    throw std::runtime_error("config value " + section + "." + key + " is not a boolean: " + *v);
}

Gear gear_from_name(const std::string& name) {
    const std::string s = lower(name);
    if (s == "f1") return Gear::f1;
    if (s == "f2") return Gear::f2;
    if (s == "f3") return Gear::f3;
    throw std::runtime_error("unknown gear: " + name);
}

Load load_from_name(const std::string& name) {
    const std::string s = lower(name);
    if (s == "zero") return Load::zero;
    if (s == "half") return Load::half;
    if (s == "full") return Load::full;
    throw std::runtime_error("unknown load: " + name);
}

SensorSet sensor_set_from_name(const std::string& name) {
    const std::string s = lower(name);
    if (s == "basic") return SensorSet::basic;
    if (s == "ground_speed" || s == "ground") return SensorSet::ground_speed;
    if (s == "wheel_tach" || s == "wheeltach") return SensorSet::wheel_tach;
    throw std::runtime_error("unknown sensor set: " + name);
}

std::string gear_name(Gear gear) {
    switch (gear) {
        case Gear::f1: return "F1";
        case Gear::f2: return "F2";
        case Gear::f3: return "F3";
    }
    throw std::invalid_argument("unknown gear");
}

std::string load_name(Load load) {
    switch (load) {
        case Load::zero: return "zero";
        case Load::half: return "half";
        case Load::full: return "full";
    }
    throw std::invalid_argument("unknown load");
}

std::string sensor_set_name(SensorSet set) {
    switch (set) {
        case SensorSet::basic: return "basic";
        case SensorSet::ground_speed: return "ground_speed";
        case SensorSet::wheel_tach: return "wheel_tach";
    }
    throw std::invalid_argument("unknown sensor set");
}

ScenarioConfig scenario_from_config(const ConfigFile& cfg) {
    ScenarioConfig sc;
    sc.gear = gear_from_name(cfg.get_string("scenario", "gear", "F1"));
    sc.load = load_from_name(cfg.get_string("scenario", "load", "zero"));
    sc.sensor_set = sensor_set_from_name(cfg.get_string("scenario", "sensor_set", "basic"));
    sc.dt = cfg.get_double("scenario", "dt", sc.dt);
    sc.seed = static_cast<uint64_t>(cfg.get_long("scenario", "seed", 1));
    sc.slip_angles_on = cfg.get_bool("scenario", "slip_angles", sc.slip_angles_on);
    sc.k_alpha = cfg.get_double("scenario", "k_alpha", sc.k_alpha);
    sc.bogie_spacing = cfg.get_double("scenario", "bogie_spacing", sc.bogie_spacing);
    sc.gps_period = cfg.get_double("scenario", "gps_period", sc.gps_period);

    VehicleGeometry& g = sc.geometry;
    g.l1 = cfg.get_double("geometry", "l1", g.l1);
    g.l2 = cfg.get_double("geometry", "l2", g.l2);
    g.c = 0.5 * cfg.get_double("geometry", "axle_track", 2.0 * g.c);
    g.r = cfg.get_double("geometry", "tire_radius", g.r);
    g.i_diff = cfg.get_double("geometry", "i_diff", g.i_diff);
    g.i_hub = cfg.get_double("geometry", "i_hub", g.i_hub);
    if (!g.valid()) {
        throw std::runtime_error("geometry values must all be positive");
    }

    sc.noise.enabled = cfg.get_bool("noise", "enabled", sc.noise.enabled);
    sc.noise.tach_frac = cfg.get_double("noise", "tach_frac", sc.noise.tach_frac);
    sc.noise.ground_sigma = cfg.get_double("noise", "ground_sigma", sc.noise.ground_sigma);
    sc.noise.steering_sigma = deg_to_rad(cfg.get_double(
        "noise", "steering_sigma_deg", rad_to_deg(sc.noise.steering_sigma)));

    for (const std::string& line : cfg.get_all("scenario", "event")) {
        const auto tok = split_ws(line);
        if (tok.size() != 4) {
            throw std::runtime_error("event line needs: wheel t_start t_end magnitude");
        }
        SlipEvent ev;
        ev.wheel = std::stoi(tok[0]);
        ev.t_start = std::stod(tok[1]);
        ev.t_end = std::stod(tok[2]);
        ev.magnitude = std::stod(tok[3]);
        if (ev.wheel < 1 || ev.wheel > 6 || ev.t_end <= ev.t_start) {
            throw std::runtime_error("event line out of range: " + line);
        }
        sc.slip_events.push_back(ev);
    }
    return sc;
}

RoadProfile road_from_config(const ConfigFile& cfg) {
    if (!cfg.has_section("road")) {
        return default_test_road();
    }
    RoadProfile road;
    road.ramp_rate = cfg.get_double("road", "ramp_rate", road.ramp_rate);
    road.max_steering = deg_to_rad(cfg.get_double("road", "max_steering_deg", 45.0));
    for (const std::string& line : cfg.get_all("road", "segment")) {
        const auto tok = split_ws(line);
        RoadSegment seg;
        if (tok.size() == 2 && lower(tok[0]) == "straight") {
            seg.kind = SegmentKind::straight;
            seg.length = std::stod(tok[1]);
        } else if (tok.size() == 3 && lower(tok[0]) == "arc") {
            seg.kind = SegmentKind::arc;
            seg.length = std::stod(tok[1]);
            seg.steering_target = deg_to_rad(std::stod(tok[2]));
        } else {
            throw std::runtime_error("segment line needs: straight LENGTH | arc LENGTH DEG");
        }
        road.segments.push_back(seg);
    }
    if (road.segments.empty()) {
        throw std::runtime_error("[road] section has no segments");
    }
    return road;
}

ControllerConfig controller_from_config(const ConfigFile& cfg) {
    ControllerConfig cc;
    cc.delta_t = cfg.get_double("controller", "delta_t", cc.delta_t);
    cc.delta_d = cfg.get_double("controller", "delta_d", cc.delta_d);
    cc.omega_safe_rpm = cfg.get_double("controller", "omega_safe_rpm", cc.omega_safe_rpm);
    cc.brake_rate_rpm_s = cfg.get_double("controller", "brake_rate_rpm_s", cc.brake_rate_rpm_s);
    cc.engage_locks = cfg.get_string("controller", "engage_locks", cc.engage_locks);
    return cc;
}

TuneOptions tuning_from_config(const ConfigFile& cfg) {
    TuneOptions opt;
    opt.method = tune_method_from_name(cfg.get_string("tuning", "method", "envelope"));
    opt.bin_width = deg_to_rad(cfg.get_double("tuning", "bin_width_deg", 2.5));
    opt.with_intercept = cfg.get_bool("tuning", "intercept", opt.with_intercept);
    opt.headroom_sigma = cfg.get_double("tuning", "headroom_sigma", opt.headroom_sigma);
    return opt;
}

}  // namespace atc
