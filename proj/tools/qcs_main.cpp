// qcs: compile | run | verify | scan | report
//
// Exit codes: 0 success, 1 parse error, 2 schedule error, 3 verification
// failure, 4 fit failure, 5 internal error (I/O, bad config).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcs/compare.hpp"
#include "qcs/device.hpp"
#include "qcs/errors.hpp"
#include "qcs/fixed.hpp"
#include "qcs/hal.hpp"
#include "qcs/latency.hpp"
#include "qcs/nco.hpp"
#include "qcs/pulse/parser.hpp"
#include "qcs/pulse/scheduler.hpp"
#include "qcs/pulse/stream_io.hpp"
#include "qcs/qubit/prng.hpp"
#include "qcs/qubit/rabi.hpp"
#include "qcs/report_json.hpp"
#include "qcs/siggen.hpp"
#include "qcs/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitSchedule = 2;
constexpr int kExitVerify = 3;
constexpr int kExitFit = 4;
constexpr int kExitInternal = 5;

struct RunConfig {
    qcs::DeviceConfig device;
    double comparator_tolerance = 4e-3;
    double spur_threshold_dbc = -60.0;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::vector<std::string> report_formats{"json", "csv"};
    int verify_cases = 24;
    std::size_t verify_samples = 4096;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qcs::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Write-then-rename so a crash never leaves a half-written file behind.
void write_atomic(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw qcs::Error("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw qcs::Error("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

RunConfig load_run_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    const json j = json::parse(slurp(path));
    if (j.contains("device")) {
        const auto& d = j.at("device");
        if (d.contains("sample_rate_hz")) cfg.device.sample_rate_hz = d.at("sample_rate_hz");
        if (d.contains("units")) cfg.device.units = d.at("units");
        if (d.contains("channels_per_unit")) cfg.device.channels_per_unit = d.at("channels_per_unit");
        if (d.contains("queue_depth")) cfg.device.queue_depth = d.at("queue_depth");
        if (d.contains("capture_memory")) cfg.device.capture_memory = d.at("capture_memory");
        if (d.contains("worker_count")) cfg.device.worker_count = d.at("worker_count");
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (t.contains("comparator")) cfg.comparator_tolerance = t.at("comparator");
        if (t.contains("spur_dbc")) cfg.spur_threshold_dbc = t.at("spur_dbc");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir");
    if (j.contains("report_formats")) {
        cfg.report_formats = j.at("report_formats").get<std::vector<std::string>>();
    }
    if (j.contains("verify_cases")) cfg.verify_cases = j.at("verify_cases");
    if (j.contains("verify_samples")) cfg.verify_samples = j.at("verify_samples");
    cfg.device.validate();
    return cfg;
}

bool wants_format(const RunConfig& cfg, const std::string& fmt) {
    for (const auto& f : cfg.report_formats) {
        if (f == fmt) return true;
    }
    return false;
}

std::uint64_t require_seed(const RunConfig& cfg) {
    if (!cfg.seed) {
        throw qcs::Error("no seed given: set --seed or the config's \"seed\" field "
                         "(runs must not depend on wall clock)");
    }
    return *cfg.seed;
}

int cmd_compile(const std::string& program_path, const RunConfig& cfg) {
    std::string text;
    try {
        text = slurp(program_path);
    } catch (const qcs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }

    qcs::pulse::PulseProgram program;
    try {
        program = qcs::pulse::parse_program(text);
    } catch (const qcs::ParseError& e) {
        std::cerr << program_path << ": parse error: " << e.what() << "\n";
        return kExitParse;
    }

    qcs::pulse::CompiledProgram compiled;
    try {
        compiled = qcs::pulse::schedule(program, cfg.device);
    } catch (const qcs::ScheduleError& e) {
        std::cerr << program_path << ": schedule error: " << e.what() << "\n";
        return kExitSchedule;
    }

    const std::string stem = fs::path(program_path).stem().string();
    const fs::path out_dir(cfg.out_dir);
    {
        std::ostringstream bytes;
        qcs::pulse::write_compiled(bytes, compiled);
        write_atomic(out_dir / (stem + ".qcis"), bytes.str());
    }
    write_atomic(out_dir / (stem + ".list.txt"), qcs::pulse::format_listing(compiled));

    std::size_t words = 0;
    for (const auto& s : compiled.streams) words += s.words.size();
    std::cout << "compiled " << words << " instruction words over " << compiled.streams.size()
              << " unit(s), " << compiled.total_ticks << " ticks\n";
    std::cout << "wrote " << (out_dir / (stem + ".qcis")).string() << "\n";
    return kExitOk;
}

int cmd_run(const std::string& streams_path, const RunConfig& cfg) {
    const auto compiled = qcs::pulse::read_compiled_file(streams_path);

    qcs::hal::Controller controller(cfg.device);
    controller.configure(compiled);
    controller.start();
    controller.run_to_end();

    const fs::path out_dir(cfg.out_dir);
    auto traces = controller.collect_traces();
    json summary;
    summary["ticks_run"] = compiled.total_ticks;
    std::uint64_t loaded = 0, fired = 0, remaining = 0;
    for (std::uint32_t u = 0; u < controller.cluster().size(); ++u) {
        auto& engine = controller.cluster().engine(u);
        loaded += engine.instructions_loaded();
        fired += engine.instructions_fired();
        remaining += engine.instructions_remaining();
    }
    summary["instructions"] = {{"loaded", loaded}, {"fired", fired}, {"remaining", remaining}};

    auto files = json::array();
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& trace = traces[i];
        const std::string base =
            "trace_ch" + std::to_string(trace.channel) + "_" + std::to_string(i);
        std::ostringstream bytes;
        qcs::write_trace(bytes, trace);
        write_atomic(out_dir / (base + ".qctr"), bytes.str());
        files.push_back(base + ".qctr");
        if (wants_format(cfg, "csv")) {
            write_atomic(out_dir / (base + ".csv"), qcs::trace_to_csv(trace));
            files.push_back(base + ".csv");
        }
    }
    summary["traces"] = std::move(files);
    write_atomic(out_dir / "run_summary.json", summary.dump(2) + "\n");

    std::cout << "ran " << compiled.total_ticks << " ticks, captured " << traces.size()
              << " trace(s) -> " << out_dir.string() << "\n";
    return kExitOk;
}

/// One verification case: a tone config checked by comparator and spectrum.
struct VerifyCase {
    std::string name;
    qcs::ChannelConfig config;
    qcs::EnvelopeSpec envelope;
};

std::vector<VerifyCase> build_matrix(const RunConfig& cfg, std::uint64_t seed) {
    std::vector<VerifyCase> cases;
    qcs::Prng rng(qcs::mix_seed(seed, 0xC0FFEE));
    const auto samples = static_cast<std::uint32_t>(cfg.verify_samples);
    for (int i = 0; i < cfg.verify_cases; ++i) {
        VerifyCase c;
        // Tone on an exact spectral bin: bin in [8, N/8), ftw = bin * 2^32/N.
        const std::uint32_t bin =
            8 + static_cast<std::uint32_t>(rng.next() % (cfg.verify_samples / 8 - 8));
        c.config.ftw = static_cast<std::uint32_t>((std::uint64_t{bin} << 32) / samples);
        c.config.amplitude =
            static_cast<std::int16_t>(8192 + rng.next() % (32767 - 8192));
        c.config.phase_offset = static_cast<std::uint16_t>(rng.next() & 0xFFFF);
        const int shape = i % 3;
        c.envelope.kind = shape == 0 ? qcs::EnvelopeKind::rect
                          : shape == 1 ? qcs::EnvelopeKind::gaussian
                                       : qcs::EnvelopeKind::blackman;
        c.envelope.length = static_cast<std::uint16_t>(cfg.verify_samples);
        c.config.envelope_len = c.envelope.length;
        c.name = "case_" + std::to_string(i) + "_" + to_string(c.envelope.kind) + "_bin" +
                 std::to_string(bin);
        cases.push_back(std::move(c));
    }
    return cases;
}

qcs::LatencyReport engine_latency_report(const RunConfig& cfg, const std::string& fault) {
    // Small four-pulse program on channel 0; the queue->fire path must hold
    // the zero-latency apply-before-generate contract for every pulse.
    const std::string text =
        "frame f0 ch=0 freq=50e6 phase=0;\n"
        "waveform w0 rect len=32;\n"
        "play f0 w0 amp=0.5;\n"
        "delay 16;\n"
        "play f0 w0 amp=0.25;\n"
        "play f0 w0;\n"
        "delay 100;\n"
        "play f0 w0 amp=0.75;\n";
    const auto compiled = qcs::pulse::schedule(qcs::pulse::parse_program(text), cfg.device);
    qcs::hal::Controller controller(cfg.device);
    controller.configure(compiled);
    controller.start();
    controller.run_to_end();
    auto in_events = controller.play_in_events(0);
    auto out_events = controller.play_out_events(0);
    if (fault == "latency") {
        for (auto& t : out_events) t += 1;
    }
    return qcs::assert_latency(in_events, out_events, 0);
}

int cmd_verify(const RunConfig& cfg, const std::string& fault) {
    const std::uint64_t seed = require_seed(cfg);
    const fs::path out_dir(cfg.out_dir);
    const auto n = static_cast<Eigen::Index>(cfg.verify_samples);

    const auto cases = build_matrix(cfg, seed);
    bool all_pass = true;
    json summary;
    summary["seed"] = seed;
    summary["fault"] = fault.empty() ? "none" : fault;
    auto case_entries = json::array();

    for (const auto& c : cases) {
        const auto fixed = qcs::render_fixed(c.config, c.envelope, cfg.verify_samples);
        Eigen::ArrayXd actual = qcs::to_real(fixed);
        const auto reference =
            qcs::render_reference(qcs::to_reference(c.config, c.envelope, cfg.device.sample_rate_hz), n);

        if (fault == "sample") {
            actual[static_cast<Eigen::Index>(c.config.phase_offset) % n] += 0.25;
        }

        const auto comparison =
            qcs::compare_traces(reference, actual, cfg.comparator_tolerance);

        // Spectral purity is checked on the steady tone (rect envelope);
        // shaped pulses have a wide spectrum of their own.
        qcs::ChannelConfig tone_cfg = c.config;
        qcs::EnvelopeSpec tone_env{qcs::EnvelopeKind::rect,
                                   static_cast<std::uint16_t>(cfg.verify_samples), std::nullopt};
        tone_cfg.envelope_len = tone_env.length;
        Eigen::ArrayXd tone =
            qcs::to_real(qcs::render_fixed(tone_cfg, tone_env, cfg.verify_samples));
        const double freq = std::ldexp(static_cast<double>(tone_cfg.ftw), -32) *
                            cfg.device.sample_rate_hz;
        if (fault == "harmonic") {
            const double carrier = qcs::fixed_to_float(tone_cfg.amplitude);
            const double spur_amp = carrier * std::pow(10.0, -40.0 / 20.0);
            const double w = 2.0 * M_PI * 3.0 * freq / cfg.device.sample_rate_hz;
            for (Eigen::Index k = 0; k < tone.size(); ++k) {
                tone[k] += spur_amp * std::sin(w * static_cast<double>(k));
            }
        }
        const auto spectral =
            qcs::spectral_check(tone, freq, cfg.device.sample_rate_hz, cfg.spur_threshold_dbc);

        const bool case_pass = comparison.pass && spectral.pass;
        all_pass = all_pass && case_pass;

        json case_json{{"name", c.name},
                       {"comparison", qcs::to_json(comparison)},
                       {"spectral", qcs::to_json(spectral)},
                       {"pass", case_pass}};
        write_atomic(out_dir / (c.name + ".json"), case_json.dump(2) + "\n");
        if (wants_format(cfg, "csv")) {
            const auto power = qcs::power_spectrum(tone, qcs::WindowKind::blackman);
            write_atomic(out_dir / (c.name + "_spectrum.csv"),
                         qcs::spectrum_to_csv(power, cfg.device.sample_rate_hz,
                                              spectral.fft_size));
        }
        case_entries.push_back(
            {{"name", c.name}, {"pass", case_pass},
             {"max_abs_error", comparison.max_abs_error},
             {"worst_spur_dbc", spectral.worst_spur_dbc}});
    }

    const auto latency = engine_latency_report(cfg, fault);
    all_pass = all_pass && latency.pass;
    write_atomic(out_dir / "latency.json", qcs::to_json(latency).dump(2) + "\n");

    summary["cases"] = std::move(case_entries);
    summary["latency_pass"] = latency.pass;
    summary["pass"] = all_pass;
    write_atomic(out_dir / "summary.json", summary.dump(2) + "\n");

    int failed = 0;
    for (const auto& entry : summary["cases"]) {
        if (!entry["pass"].get<bool>()) ++failed;
    }
    std::cout << (all_pass ? "PASS" : "FAIL") << ": " << cases.size() - failed << "/"
              << cases.size() << " cases, latency " << (latency.pass ? "ok" : "violated")
              << " -> " << (out_dir / "summary.json").string() << "\n";
    if (!all_pass) {
        for (const auto& entry : summary["cases"]) {
            if (!entry["pass"].get<bool>()) {
                std::cerr << "failed: " << entry["name"].get<std::string>() << "\n";
            }
        }
        return kExitVerify;
    }
    return kExitOk;
}

struct ScanSpec {
    qcs::ScanAxis axis = qcs::ScanAxis::duration;
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
    double depolarizing = 0.0;
    qcs::DriveTemplate drive;
    std::optional<double> calibrate_duration_s;
};

ScanSpec load_scan_spec(const std::string& path) {
    const json j = json::parse(slurp(path));
    ScanSpec spec;
    const auto axis = qcs::scan_axis_from_string(j.at("axis").get<std::string>());
    if (!axis) throw qcs::Error("unknown scan axis " + j.at("axis").get<std::string>());
    spec.axis = *axis;
    spec.start = j.at("start");
    spec.stop = j.at("stop");
    spec.points = j.at("points");
    spec.shots = j.at("shots");
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("depolarizing")) spec.depolarizing = j.at("depolarizing");
    const auto& d = j.at("drive");
    spec.drive.coupling = d.at("coupling");
    if (d.contains("amplitude")) spec.drive.amplitude = d.at("amplitude");
    if (d.contains("duration")) spec.drive.duration_s = d.at("duration");
    if (d.contains("detuning")) spec.drive.detuning = d.at("detuning");
    if (d.contains("phase")) spec.drive.phase_rad = d.at("phase");
    if (j.contains("calibrate") && j.at("calibrate").contains("duration")) {
        spec.calibrate_duration_s = j.at("calibrate").at("duration");
    }
    return spec;
}

int cmd_scan(const std::string& spec_path, const RunConfig& cfg) {
    const ScanSpec spec = load_scan_spec(spec_path);
    std::uint64_t seed = 0;
    if (cfg.seed) {
        seed = *cfg.seed;
    } else if (spec.seed) {
        seed = *spec.seed;
    } else {
        throw qcs::Error("no seed given: set --seed or the scan spec's \"seed\" field");
    }

    const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(spec.points, spec.start, spec.stop);
    const auto result = qcs::run_rabi_scan(spec.axis, xs, spec.drive, spec.shots, seed,
                                           spec.depolarizing, cfg.device.worker_count);

    const fs::path out_dir(cfg.out_dir);
    write_atomic(out_dir / "scan.json", qcs::to_json(result).dump(2) + "\n");
    if (wants_format(cfg, "csv")) {
        write_atomic(out_dir / "scan.csv", qcs::scan_to_csv(result));
    }

    if (!result.fit) {
        std::cerr << "fit failure: " << result.fit_error << "\n";
        return kExitFit;
    }
    std::printf("fitted oscillation frequency: %.6g cycles per x-unit (+/- %.2g)\n",
                result.fit->frequency, result.fit->uncertainty);
    if (result.pi_parameter) {
        std::printf("pi-pulse %s: %.6g\n", to_string(spec.axis).c_str(), *result.pi_parameter);
    }

    if (spec.axis == qcs::ScanAxis::amplitude && spec.calibrate_duration_s) {
        const auto table = qcs::calibrate_pi_pulse(result, *spec.calibrate_duration_s, seed);
        const auto& x = table.entries.at(qcs::GateName::x);
        json cal{{"coupling", table.coupling},
                 {"timestamp", table.timestamp},
                 {"pi_amplitude", x.amplitude},
                 {"pi_duration_s", x.duration_s}};
        write_atomic(out_dir / "calibration.json", cal.dump(2) + "\n");
        std::printf("pi-pulse amplitude at %g s: %.6g\n", x.duration_s, x.amplitude);
    }
    return kExitOk;
}

std::string render_scan_svg(const json& scan) {
    const auto& points = scan.at("points");
    if (points.empty()) return "<svg xmlns='http://www.w3.org/2000/svg'/>\n";
    double xmin = 1e300, xmax = -1e300;
    for (const auto& p : points) {
        xmin = std::min(xmin, p.at("x").get<double>());
        xmax = std::max(xmax, p.at("x").get<double>());
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    const double width = 640, height = 400, pad = 40;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (const auto& p : points) {
        const double x = pad + (p.at("x").get<double>() - xmin) / (xmax - xmin) * (width - 2 * pad);
        const double y = height - pad - p.at("p_estimate").get<double>() * (height - 2 * pad);
        svg << x << "," << y << " ";
    }
    svg << "'/>\n<text x='" << pad << "' y='20' font-size='13'>excited-state population vs "
        << scan.value("axis", "x") << "</text>\n</svg>\n";
    return svg.str();
}

int cmd_report(const std::string& in_path, const RunConfig& cfg, const std::string& format) {
    const json j = json::parse(slurp(in_path));
    const fs::path out_dir(cfg.out_dir);

    if (j.contains("points")) {  // scan result
        std::cout << "scan: axis=" << j.value("axis", "?") << " points=" << j.at("points").size()
                  << " shots=" << j.value("shots", 0) << "\n";
        if (j.contains("fit") && !j.at("fit").is_null()) {
            std::cout << "  fitted frequency: " << j.at("fit").at("frequency").get<double>()
                      << " cycles per x-unit\n";
        } else {
            std::cout << "  fit: FAILED (" << j.value("fit_error", "") << ")\n";
        }
        if (format == "csv") {
            std::string csv = "x,p_estimate,shots\n";
            char buf[96];
            for (const auto& p : j.at("points")) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%llu\n", p.at("x").get<double>(),
                              p.at("p_estimate").get<double>(),
                              static_cast<unsigned long long>(p.at("shots").get<std::uint64_t>()));
                csv += buf;
            }
            write_atomic(out_dir / "report.csv", csv);
            std::cout << "wrote " << (out_dir / "report.csv").string() << "\n";
        } else if (format == "svg") {
            write_atomic(out_dir / "report.svg", render_scan_svg(j));
            std::cout << "wrote " << (out_dir / "report.svg").string() << "\n";
        }
        return kExitOk;
    }
    if (j.contains("cases")) {  // verify summary
        std::cout << "verification summary: " << (j.value("pass", false) ? "PASS" : "FAIL")
                  << "\n";
        for (const auto& c : j.at("cases")) {
            std::cout << "  " << (c.value("pass", false) ? "pass" : "FAIL") << "  "
                      << c.value("name", "?") << "  max_err=" << c.value("max_abs_error", 0.0)
                      << "  worst_spur=" << c.value("worst_spur_dbc", 0.0) << " dBc\n";
        }
        std::cout << "  latency: " << (j.value("latency_pass", false) ? "pass" : "FAIL") << "\n";
        return j.value("pass", false) ? kExitOk : kExitVerify;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"software-simulated quantum control stack"};
    app.require_subcommand(1);

    std::string config_path, out_dir, program_path, streams_path, spec_path, in_path;
    std::string fault, format = "json";
    std::optional<std::uint64_t> seed;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run configuration (JSON)");
        cmd->add_option("--seed", seed, "PRNG seed (overrides config)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--format", format, "report format: json or csv")
            ->check(CLI::IsMember({"json", "csv", "svg"}));
    };

    auto* compile = app.add_subcommand("compile", "compile a pulse program to streams");
    compile->add_option("--program", program_path, "pulse program source")->required();
    add_common(compile);

    auto* run = app.add_subcommand("run", "execute compiled streams and write traces");
    run->add_option("--streams", streams_path, "compiled stream file (.qcis)")->required();
    add_common(run);

    auto* verify = app.add_subcommand("verify", "reference-vs-fixed config matrix checks");
    add_common(verify);
    verify->add_option("--fault", fault, "inject a fault: harmonic, sample or latency")
        ->check(CLI::IsMember({"harmonic", "sample", "latency"}));

    auto* scan = app.add_subcommand("scan", "run a calibration scan");
    scan->add_option("--spec", spec_path, "scan specification (JSON)")->required();
    add_common(scan);

    auto* report = app.add_subcommand("report", "render a report file");
    report->add_option("--in", in_path, "report JSON to render")->required();
    add_common(report);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_run_config(config_path);
        if (seed) cfg.seed = seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (format == "csv" && !wants_format(cfg, "csv")) cfg.report_formats.push_back("csv");

        if (compile->parsed()) return cmd_compile(program_path, cfg);
        if (run->parsed()) return cmd_run(streams_path, cfg);
        if (verify->parsed()) return cmd_verify(cfg, fault);
        if (scan->parsed()) return cmd_scan(spec_path, cfg);
        if (report->parsed()) return cmd_report(in_path, cfg, format);
    } catch (const qcs::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const qcs::ScheduleError& e) {
        std::cerr << "schedule error: " << e.what() << "\n";
        return kExitSchedule;
    } catch (const qcs::FitError& e) {
        std::cerr << "fit failure: " << e.what() << "\n";
        return kExitFit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
