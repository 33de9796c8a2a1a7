#include "atc/stream_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "atc/config.hpp"
#include "atc/version.hpp"

namespace atc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string manifest_line(const std::string& command, uint64_t seed, const std::string& extra) {
    std::ostringstream out;
    out << "# " << kToolName << ' ' << command << " version=" << kToolVersion
        << " seed=" << seed;
    if (!extra.empty()) out << ' ' << extra;
    out << '\n';
    return out.str();
}

std::string truth_csv(std::span<const TruthFrame> frames, const std::string& manifest) {
    std::ostringstream out;
    out << manifest;
    out << "t,x,y,heading,gamma,gamma_dot,v12,v34,omega1,omega2,alpha12,alpha34";
    for (int w = 1; w <= 6; ++w) out << ",wheel_v_long_" << w;
    for (int w = 1; w <= 6; ++w) out << ",wheel_slip_" << w;
    for (int w = 1; w <= 6; ++w) out << ",wheel_omega_" << w;
    out << '\n';
    for (const TruthFrame& f : frames) {
        out << fmt(f.t) << ',' << fmt(f.x) << ',' << fmt(f.y) << ',' << fmt(f.heading) << ','
            << fmt(f.gamma) << ',' << fmt(f.gamma_dot) << ',' << fmt(f.v12) << ',' << fmt(f.v34)
            << ',' << fmt(f.omega1) << ',' << fmt(f.omega2) << ',' << fmt(f.alpha12) << ','
            << fmt(f.alpha34);
        for (double v : f.wheel_v_long) out << ',' << fmt(v);
        for (double v : f.wheel_slip) out << ',' << fmt(v);
        for (double v : f.wheel_omega) out << ',' << fmt(v);
        out << '\n';
    }
    return out.str();
}

std::string sensors_csv(std::span<const SensorFrame> frames, SensorSet sensor_set,
                        const std::string& manifest) {
    std::ostringstream out;
    out << manifest;
    out << "t,gamma,gamma_dot,omega_dbx_in,omega_dbx_out,omega_bg_in,omega_bg_out";
    if (has_ground_speed(sensor_set)) out << ",v_ground";
    if (has_wheel_tachs(sensor_set)) {
        for (int w = 1; w <= 6; ++w) out << ",omega_wheel_" << w;
    }
    out << '\n';
    for (const SensorFrame& f : frames) {
        out << fmt(f.t) << ',' << fmt(f.gamma) << ',' << fmt(f.gamma_dot) << ','
            << fmt(f.omega_dbx_in) << ',' << fmt(f.omega_dbx_out) << ',' << fmt(f.omega_bg_in)
            << ',' << fmt(f.omega_bg_out);
        if (has_ground_speed(sensor_set)) out << ',' << fmt(f.v_ground.value());
        if (has_wheel_tachs(sensor_set)) {
            for (double v : f.omega_wheel.value()) out << ',' << fmt(v);
        }
        out << '\n';
    }
    return out.str();
}

std::vector<SensorFrame> read_sensors_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv(line);
        break;
    }
    if (header.empty()) {
        throw std::runtime_error("sensor stream has no header line");
    }

    std::map<std::string, size_t> col;
    for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* required : {"t", "gamma", "gamma_dot", "omega_dbx_in", "omega_dbx_out",
                                 "omega_bg_in", "omega_bg_out"}) {
        if (!col.count(required)) {
            throw std::runtime_error(std::string("sensor stream is missing column ") + required);
        }
    }
    const bool has_ground = col.count("v_ground") > 0;
    bool has_wheels = true;
    for (int w = 1; w <= 6; ++w) {
        has_wheels = has_wheels && col.count("omega_wheel_" + std::to_string(w)) > 0;
    }

    std::vector<SensorFrame> frames;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("sensor stream row has wrong column count");
        }
        const auto value = [&](const std::string& name) { return std::stod(cells[col.at(name)]); };
        SensorFrame f;
        f.t = value("t");
        f.gamma = value("gamma");
        f.gamma_dot = value("gamma_dot");
        f.omega_dbx_in = value("omega_dbx_in");
        f.omega_dbx_out = value("omega_dbx_out");
        f.omega_bg_in = value("omega_bg_in");
        f.omega_bg_out = value("omega_bg_out");
        if (has_ground) f.v_ground = value("v_ground");
        if (has_wheels) {
            std::array<double, 6> w{};
            for (int i = 0; i < 6; ++i) w[i] = value("omega_wheel_" + std::to_string(i + 1));
            f.omega_wheel = w;
        }
        frames.push_back(f);
    }
    return frames;
}

std::string profile_to_text(const BoundProfile& profile) {
    std::ostringstream out;
    out << "# " << kToolName << " bound profile version=" << kToolVersion << '\n';
    out << "[profile]\n";
    out << "detector = " << detector_name(profile.detector) << '\n';
    out << "kind = "
        << (profile.kind == BoundKind::quadratic ? "quadratic" : "piecewise_linear") << '\n';
    out << "gamma_min = " << fmt(profile.gamma_min) << '\n';
    out << "gamma_max = " << fmt(profile.gamma_max) << '\n';
    out << "upper_margin = " << fmt(profile.upper_margin) << '\n';
    out << "lower_margin = " << fmt(profile.lower_margin) << '\n';
    out << "filtered = " << (profile.filtered ? "on" : "off") << '\n';
    if (profile.kind == BoundKind::quadratic) {
        out << "upper_coeffs = " << fmt(profile.upper_coeffs.c0) << ' '
            << fmt(profile.upper_coeffs.c1) << ' ' << fmt(profile.upper_coeffs.c2) << '\n';
        out << "lower_coeffs = " << fmt(profile.lower_coeffs.c0) << ' '
            << fmt(profile.lower_coeffs.c1) << ' ' << fmt(profile.lower_coeffs.c2) << '\n';
    } else {
        for (const Breakpoint& b : profile.upper_pts) {
            out << "upper_pt = " << fmt(b.gamma) << ' ' << fmt(b.value) << '\n';
        }
        for (const Breakpoint& b : profile.lower_pts) {
            out << "lower_pt = " << fmt(b.gamma) << ' ' << fmt(b.value) << '\n';
        }
    }
    out << "\n[provenance]\n";
    out << "note = " << profile.provenance << '\n';
    return out.str();
}

BoundProfile profile_from_text(const std::string& text) {
    const ConfigFile cfg = ConfigFile::parse(text);
    if (!cfg.has_section("profile")) {
        throw std::runtime_error("profile text has no [profile] section");
    }

    BoundProfile p;
    p.detector = detector_from_name(cfg.get_string("profile", "detector", "basic"));
    const std::string kind = cfg.get_string("profile", "kind", "piecewise_linear");
    if (kind == "quadratic") {
        p.kind = BoundKind::quadratic;
    } else if (kind == "piecewise_linear") {
        p.kind = BoundKind::piecewise_linear;
    } else {
        throw std::runtime_error("unknown profile kind: " + kind);
    }
    p.gamma_min = cfg.get_double("profile", "gamma_min", p.gamma_min);
    p.gamma_max = cfg.get_double("profile", "gamma_max", p.gamma_max);
    p.upper_margin = cfg.get_double("profile", "upper_margin", 0.0);
    p.lower_margin = cfg.get_double("profile", "lower_margin", 0.0);
    p.filtered = cfg.get_bool("profile", "filtered", false);
    p.provenance = cfg.get_string("provenance", "note", "");

    const auto parse_triplet = [&](const std::string& key, QuadCoeffs& c) {
        const auto v = cfg.get("profile", key);
        if (!v) throw std::runtime_error("quadratic profile is missing " + key);
        std::istringstream in(*v);
        if (!(in >> c.c0 >> c.c1 >> c.c2)) {
            throw std::runtime_error("cannot parse " + key + ": " + *v);
        }
    };
    const auto parse_points = [&](const std::string& key, std::vector<Breakpoint>& pts) {
        for (const std::string& line : cfg.get_all("profile", key)) {
            std::istringstream in(line);
            Breakpoint b;
            if (!(in >> b.gamma >> b.value)) {
                throw std::runtime_error("cannot parse " + key + ": " + line);
            }
            pts.push_back(b);
        }
        if (pts.empty()) {
            throw std::runtime_error("piecewise profile has no " + key + " entries");
        }
    };

    if (p.kind == BoundKind::quadratic) {
        parse_triplet("upper_coeffs", p.upper_coeffs);
        parse_triplet("lower_coeffs", p.lower_coeffs);
    } else {
        parse_points("upper_pt", p.upper_pts);
        parse_points("lower_pt", p.lower_pts);
    }
    return p;
}

std::string cloud_csv(const PointCloud& cloud, const std::string& manifest) {
    std::ostringstream out;
    out << manifest << "gamma,g,gear,load\n";
    for (const CloudPoint& p : cloud.points) {
        out << fmt(p.gamma) << ',' << fmt(p.g) << ',' << gear_name(p.gear) << ','
            << load_name(p.load) << '\n';
    }
    return out.str();
}

std::string envelope_csv(const Envelope& env, const std::string& manifest) {
    std::ostringstream out;
    out << manifest << "gamma_center,min_g,max_g,gamma_at_min,gamma_at_max,count\n";
    for (const EnvelopeBin& b : env.bins) {
        out << fmt(b.gamma_center) << ',' << fmt(b.min_g) << ',' << fmt(b.max_g) << ','
            << fmt(b.gamma_at_min) << ',' << fmt(b.gamma_at_max) << ',' << b.count << '\n';
    }
    return out.str();
}

std::string hull_csv(std::span<const HullPoint> hull, const std::string& manifest) {
    std::ostringstream out;
    out << manifest << "gamma,g\n";
    for (const HullPoint& p : hull) {
        out << fmt(p.gamma) << ',' << fmt(p.g) << '\n';
    }
    return out.str();
}

std::string report_csv(std::span<const ErrorReport> reports, const std::string& manifest) {
    // One row per grid cell, paired error columns per estimator variant.
    std::vector<std::string> variants;
    for (const ErrorReport& r : reports) {
        const std::string name = variant_name(r.variant);
        if (std::find(variants.begin(), variants.end(), name) == variants.end()) {
            variants.push_back(name);
        }
    }

    std::ostringstream out;
    out << manifest << "load,gear";
    for (const std::string& v : variants) out << ",d1_" << v << ",d_inf_" << v;
    out << ",n_samples\n";

    for (const ErrorReport& r : reports) {
        if (variant_name(r.variant) != variants.front()) continue;  // row anchor
        out << load_name(r.load) << ',' << gear_name(r.gear);
        for (const std::string& v : variants) {
            for (const ErrorReport& cell : reports) {
                if (cell.gear == r.gear && cell.load == r.load && variant_name(cell.variant) == v) {
                    out << ',' << fmt(cell.d1_cms) << ',' << fmt(cell.d_inf_cms);
                }
            }
        }
        out << ',' << r.n_samples << '\n';
    }
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace atc
