// Command-line front end: simulate / tune / detect / validate.
//
// Exit codes: 0 success, 1 invariant or trend-check failure, 2 usage or
// configuration/IO errors.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "atc/config.hpp"
#include "atc/errors.hpp"
#include "atc/pipeline.hpp"
#include "atc/stream_io.hpp"
#include "atc/version.hpp"

namespace {

using namespace atc;

struct CommonArgs {
    std::string config_path;
    std::string road_path;
    std::string out_path;
    std::string detector = "basic";
    std::string profile_path;
    std::string filter = "auto";  // on | off | auto
    std::optional<long> seed;
};

ConfigFile load_config_or_default(const std::string& path) {
    if (path.empty()) return ConfigFile::parse("");
    return ConfigFile::load(path);
}

RoadProfile load_road(const std::string& road_path, const ConfigFile& cfg) {
    if (!road_path.empty()) {
        if (!std::filesystem::exists(road_path)) {
            throw std::runtime_error("road file not found: " + road_path);
        }
        return road_from_config(ConfigFile::load(road_path));
    }
    return road_from_config(cfg);
}

bool resolve_filter(const std::string& flag, DetectorId detector, bool profile_filtered) {
    if (flag == "on") return true;
    if (flag == "off") return false;
    // auto: follow the profile when given one, else the detector convention
    // of filtering only the wheel-tachometer residual.
    if (profile_filtered) return true;
    return detector == DetectorId::wheel_tach;
}

int cmd_simulate(const CommonArgs& args) {
    const auto cfg = load_config_or_default(args.config_path);
    ScenarioConfig scenario = scenario_from_config(cfg);
    if (args.seed) scenario.seed = static_cast<uint64_t>(*args.seed);
    const RoadProfile road = load_road(args.road_path, cfg);

    const auto result = run_scenario(scenario, road);

    char extra[160];
    std::snprintf(extra, sizeof(extra), "sensor_set=%s dt=%g gear=%s load=%s",
                  sensor_set_name(scenario.sensor_set).c_str(), scenario.dt,
                  gear_name(scenario.gear).c_str(), load_name(scenario.load).c_str());
    const std::string truth_path = args.out_path + ".truth.csv";
    const std::string sensors_path = args.out_path + ".sensors.csv";
    write_file(truth_path, truth_csv(result.truth, manifest_line("simulate", scenario.seed, extra)));
    write_file(sensors_path, sensors_csv(result.sensors, scenario.sensor_set,
                                         manifest_line("simulate", scenario.seed, extra)));

    double max_gamma = 0.0;
    for (const auto& f : result.truth) max_gamma = std::max(max_gamma, std::abs(f.gamma));
    std::printf("simulate: %zu samples over %.1f s, max |gamma| %.1f deg\n", result.truth.size(),
                result.truth.back().t, rad_to_deg(max_gamma));
    std::printf("simulate: wrote %s and %s\n", truth_path.c_str(), sensors_path.c_str());
    return 0;
}

int cmd_tune(const CommonArgs& args) {
    const auto cfg = load_config_or_default(args.config_path);
    ScenarioConfig base = scenario_from_config(cfg);
    if (args.seed) base.seed = static_cast<uint64_t>(*args.seed);
    const RoadProfile road = load_road(args.road_path, cfg);
    const DetectorId detector = detector_from_name(args.detector);

    TuneOptions options = tuning_from_config(cfg);
    if (!cfg.get("tuning", "intercept") && detector == DetectorId::basic) {
        options.with_intercept = false;
    }
    const bool filter = resolve_filter(args.filter, detector, false);

    const auto grid = calibration_grid(base);
    const PointCloud cloud = collect(grid, road, detector, filter);
    if (cloud.points.empty()) {
        std::fprintf(stderr, "tune: calibration produced an empty point cloud\n");
        return 1;
    }

    BoundProfile profile = build_profile(cloud, options);
    char prov[256];
    std::snprintf(prov, sizeof(prov),
                  "grid=F1-F3 x zero-full; seed=%llu; road=%s; method=%s; filter=%s",
                  static_cast<unsigned long long>(base.seed),
                  args.road_path.empty() ? "default" : args.road_path.c_str(),
                  tune_method_name(options.method).c_str(), filter ? "ma5" : "none");
    profile.provenance = prov;

    char extra[128];
    std::snprintf(extra, sizeof(extra), "detector=%s method=%s filter=%s",
                  detector_name(detector).c_str(), tune_method_name(options.method).c_str(),
                  filter ? "ma5" : "none");
    const std::string manifest = manifest_line("tune", base.seed, extra);

    write_file(args.out_path + ".profile", profile_to_text(profile));
    write_file(args.out_path + ".cloud.csv", cloud_csv(cloud, manifest));
    write_file(args.out_path + ".envelope.csv",
               envelope_csv(envelope(cloud, options.bin_width), manifest));
    write_file(args.out_path + ".hull.csv", hull_csv(convex_hull(cloud.points), manifest));

    std::printf("tune: %s profile from %zu points, band at 0 deg [%.3f, %.3f] m/s\n",
                detector_name(detector).c_str(), cloud.points.size(), profile.lower_at(0.0),
                profile.upper_at(0.0));
    std::printf("tune: wrote %s.profile (+cloud/envelope/hull CSVs)\n", args.out_path.c_str());
    return 0;
}

int cmd_detect(const std::string& stream_path, const CommonArgs& args) {
    const auto cfg = load_config_or_default(args.config_path);
    if (!std::filesystem::exists(stream_path)) {
        throw std::runtime_error("sensor stream not found: " + stream_path);
    }
    const auto frames = read_sensors_csv(read_file(stream_path));
    const BoundProfile profile = profile_from_text(read_file(args.profile_path));

    if (!args.detector.empty() && args.detector != "auto" &&
        detector_from_name(args.detector) != profile.detector) {
        throw DetectorMismatch("profile is for " + detector_name(profile.detector) +
                               " but --detector asked for " + args.detector);
    }

    DetectOptions options;
    options.filter = resolve_filter(args.filter, profile.detector, profile.filtered);
    options.controller = controller_from_config(cfg);
    options.geometry = scenario_from_config(cfg).geometry;

    const DetectSummary summary = run_detector(frames, profile, options);

    const uint64_t seed = static_cast<uint64_t>(args.seed.value_or(0));
    if (!args.out_path.empty()) {
        write_file(args.out_path, detect_ndjson(summary, profile, seed));
    }

    std::printf("detect: %zu engagement(s), %zu disengagement(s) over %zu frames\n",
                summary.engagements, summary.disengagements, summary.trace.size());
    if (summary.first_outside_t) {
        std::printf("detect: first detection at t=%.3f s, first engagement at t=%s s\n",
                    *summary.first_outside_t,
                    summary.first_engage_t ? std::to_string(*summary.first_engage_t).c_str()
                                           : "-");
    } else {
        std::printf("detect: residual stayed inside the band\n");
    }
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    const auto cfg = load_config_or_default(args.config_path);
    ScenarioConfig base = scenario_from_config(cfg);
    if (args.seed) base.seed = static_cast<uint64_t>(*args.seed);
    const RoadProfile road = load_road(args.road_path, cfg);

    const std::vector<ModelVariant> variants = {{false, false}, {true, false}, {true, true}};
    const auto reports = table1_experiment(base, road, variants);
    if (!args.out_path.empty()) {
        write_file(args.out_path, report_csv(reports, manifest_line("validate", base.seed)));
    }

    const TrendCheck trends = check_trends(reports);
    std::printf("validate: steady-state error >= 2x transient error per cell: %s\n",
                trends.steady_vs_transient ? "PASS" : "FAIL");
    std::printf("validate: slip-angle-aware estimate never worse: %s\n",
                trends.slip_angles_help ? "PASS" : "FAIL");
    std::printf("validate: error grows with gear within each variant: %s\n",
                trends.monotone_in_gear ? "PASS" : "FAIL");
    if (!trends.all()) {
        std::fprintf(stderr, "validate: trend check details: %s\n", trends.detail.c_str());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(atc::kToolName) +
                 " - articulated hauler traction-control toolkit (v" + atc::kToolVersion + ")"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string stream_path;

    auto add_common = [&](CLI::App* sub, bool with_road) {
        sub->add_option("--config", args.config_path, "scenario/controller config file");
        if (with_road) sub->add_option("--road", args.road_path, "road profile file");
        sub->add_option("--seed", args.seed, "override the config seed");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario, write truth + sensors");
    add_common(simulate, true);
    simulate->add_option("--out", args.out_path, "output file prefix")->required();

    CLI::App* tune = app.add_subcommand("tune", "calibrate bound profiles from a slip-free grid");
    add_common(tune, true);
    tune->add_option("--detector", args.detector, "basic | ground | wheeltach")->required();
    tune->add_option("--out", args.out_path, "output file prefix")->required();
    tune->add_option("--filter", args.filter, "on | off | auto (default auto)");

    CLI::App* detect = app.add_subcommand("detect", "run a detector + controller over a stream");
    detect->add_option("stream", stream_path, "sensor stream CSV")->required();
    add_common(detect, false);
    detect->add_option("--profile", args.profile_path, "bound profile file")->required();
    detect->add_option("--detector", args.detector, "must match the profile")->default_val("auto");
    detect->add_option("--out", args.out_path, "event log (NDJSON)");
    detect->add_option("--filter", args.filter, "on | off | auto (default auto)");

    CLI::App* validate = app.add_subcommand("validate", "trailer-speed model comparison grid");
    add_common(validate, true);
    validate->add_option("--out", args.out_path, "report CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (tune->parsed()) return cmd_tune(args);
        if (detect->parsed()) return cmd_detect(stream_path, args);
        if (validate->parsed()) return cmd_validate(args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s: %s\n", argv[0], e.what());
        return 2;
    }
    return 2;
}
