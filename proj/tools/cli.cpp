#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "netra/alert.hpp"
#include "netra/error.hpp"
#include "netra/fixtures.hpp"
#include "netra/report.hpp"
#include "netra/scenario.hpp"
#include "netra/sim.hpp"

namespace netra::cli {

namespace fs = std::filesystem;

namespace {

/// Error raised by the front end itself, carrying its exit code.
struct CliFailure {
    int code;
    std::string message;
};

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

std::uint64_t parse_seed(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw CliFailure{kInvalidConfig, std::string(what) + ": not an unsigned integer: '" + s + "'"};
    }
    return v;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kMissingFile, "cannot open '" + path.string() + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require_file(const fs::path& path, const char* what) {
    if (!fs::is_regular_file(path)) throw CliFailure{kMissingFile, std::string(what) + " not found: " + path.string()};
}

void require_out_dir(const std::string& out) {
    if (out.empty() || out == "-") return;
    const fs::path parent = fs::path(out).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw CliFailure{kMissingFile, "output directory does not exist: " + parent.string()};
    }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw CliFailure{kMissingFile, "cannot write '" + out_path + "'"};
    f << text;
    if (!f) throw CliFailure{kMissingFile, "write failed for '" + out_path + "'"};
}

struct Common {
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string format = "machine";
};

Scenario load(const Common& c) {
    require_file(c.scenario, "scenario");
    Scenario sc = load_scenario(c.scenario);
    if (c.seed) {
        sc.seed = *c.seed;
    } else if (auto s = env("NETRA_SEED")) {
        sc.seed = parse_seed(*s, "NETRA_SEED");
    }
    spdlog::debug("scenario '{}' loaded, seed {}", sc.name, sc.seed);
    return sc;
}

std::vector<double> expand_range(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size()) {
            throw CliFailure{kInvalidConfig, "sweep.range: bad number '" + tok + "'"};
        }
        parts.push_back(v);
    }
    if (parts.size() != 3) throw CliFailure{kInvalidConfig, "sweep.range: expected lo:hi:step"};
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0)) throw CliFailure{kInvalidConfig, "sweep.range: step must be positive"};
    std::vector<double> taus;
    for (long k = 0;; ++k) {
        const double t = std::round((lo + double(k) * step) * 1e9) / 1e9;
        if (t > hi + 1e-12) break;
        taus.push_back(t);
    }
    return taus;
}

std::string field_dump(const Alert& a) {
    std::ostringstream o;
    o << "alert_id  " << std::hex << std::setw(16) << std::setfill('0') << a.alert_id << std::dec << std::setfill(' ')
      << '\n';
    o << "label     " << to_string(a.label) << '\n';
    o << "priority  " << to_string(a.priority) << '\n';
    o << "ips       " << std::fixed << std::setprecision(4) << a.ips << '\n';
    o << "lat       " << std::setprecision(5) << a.lat << '\n';
    o << "lon       " << a.lon << '\n';
    o << "timestamp " << a.timestamp_ms << '\n';
    return o.str();
}

void setup_logging(std::ostream& err, const std::string& level_opt) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
    auto logger = std::make_shared<spdlog::logger>("netra", sink);
    logger->set_pattern("[%l] %v");
    std::string level = level_opt;
    if (level.empty()) level = env("NETRA_LOG_LEVEL").value_or("warn");
    const auto parsed = spdlog::level::from_str(level);
    if (parsed == spdlog::level::off && level != "off") {
        throw CliFailure{kInvalidConfig, "log level: unknown value '" + level + "'"};
    }
    logger->set_level(parsed);
    spdlog::set_default_logger(logger);
}

int exit_code_for(const Error& e, bool decoding) {
    if (e.kind() == ErrorKind::NotFound) return kMissingFile;
    if (decoding) return kDecodeFailure;
    return kInvalidConfig;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"NETRA railway-intrusion pipeline simulator", "netra"};
    app.require_subcommand(1);
    std::string log_level;
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off (env NETRA_LOG_LEVEL)");

    auto add_common = [](CLI::App* sub, Common& c) {
        sub->add_option("--scenario,-s", c.scenario, "scenario file")->required();
        sub->add_option("--out,-o", c.out, "output path (default: stdout)");
        sub->add_option("--seed", c.seed, "seed override (env NETRA_SEED)");
        sub->add_option("--format,-f", c.format, "machine or table")->check(CLI::IsMember({"machine", "table"}));
    };

    Common run_opts;
    std::string events_path;
    auto* run_cmd = app.add_subcommand("run", "run one scenario and write its report");
    add_common(run_cmd, run_opts);
    run_cmd->add_option("--events", events_path, "also write the driver event log here");

    Common sweep_opts;
    std::vector<double> taus;
    std::string range;
    auto* sweep_cmd = app.add_subcommand("sweep", "probabilistic-mode threshold sweep");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--tau", taus, "threshold (repeatable)");
    sweep_cmd->add_option("--range", range, "lo:hi:step");

    auto* codec_cmd = app.add_subcommand("codec", "alert frame encode / decode");
    codec_cmd->require_subcommand(1);
    Alert enc;
    std::string enc_label = "human", enc_priority = "critical", enc_id;
    auto* encode_cmd = codec_cmd->add_subcommand("encode", "print the hex frame for an alert");
    encode_cmd->add_option("--label", enc_label);
    encode_cmd->add_option("--priority", enc_priority);
    encode_cmd->add_option("--ips", enc.ips)->required();
    encode_cmd->add_option("--lat", enc.lat)->required();
    encode_cmd->add_option("--lon", enc.lon)->required();
    encode_cmd->add_option("--timestamp", enc.timestamp_ms, "ms since Unix epoch")->required();
    encode_cmd->add_option("--id", enc_id, "16 hex digits (default: derived from timestamp and position)");
    std::string hex_in;
    auto* decode_cmd = codec_cmd->add_subcommand("decode", "print the fields of a hex frame");
    decode_cmd->add_option("hex", hex_in, "62 hex digits")->required();

    auto* fixture_cmd = app.add_subcommand("fixture", "fixture files");
    fixture_cmd->require_subcommand(1);
    std::vector<std::string> fixture_names;
    std::string fixture_dir = ".", gen_scenario, gen_out;
    auto* gen_cmd = fixture_cmd->add_subcommand("generate", "write built-in fixtures or a scenario's generated trace");
    gen_cmd->add_option("--name", fixture_names, "built-in fixture (repeatable; default: all)");
    gen_cmd->add_option("--dir", fixture_dir, "output directory for built-in fixtures");
    gen_cmd->add_option("--scenario", gen_scenario, "write this scenario's generated trace instead");
    gen_cmd->add_option("--out", gen_out, "trace output path with --scenario (default: stdout)");
    std::optional<std::uint64_t> gen_seed;
    gen_cmd->add_option("--seed", gen_seed, "seed override with --scenario");

    auto* report_cmd = app.add_subcommand("report", "report files");
    report_cmd->require_subcommand(1);
    std::string report_in, report_format = "table";
    auto* render_cmd = report_cmd->add_subcommand("render", "render a machine report as text");
    render_cmd->add_option("--in,-i", report_in)->required();
    render_cmd->add_option("--format,-f", report_format)->check(CLI::IsMember({"machine", "table"}));

    std::vector<std::string> argv_store{"netra"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "netra: " << e.what() << '\n';
        return kUsage;
    }

    bool decoding = false;
    try {
        setup_logging(err, log_level);

        if (*run_cmd) {
            require_out_dir(run_opts.out);
            require_out_dir(events_path);
            const Scenario sc = load(run_opts);
            const RunResult r = run(sc);
            spdlog::info("run '{}': {} events, {} activations, {} delivered", sc.name, r.report.n_events,
                         r.report.camera_activations, r.report.delivered);
            emit(run_opts.format == "table" ? render_table(r.report) : to_json(r.report), run_opts.out, out);
            if (!events_path.empty()) emit(format_event_log(r.driver_events), events_path, out);
            return kOk;
        }

        if (*sweep_cmd) {
            require_out_dir(sweep_opts.out);
            Scenario sc = load(sweep_opts);
            std::vector<double> points = taus;
            if (!range.empty()) {
                const auto more = expand_range(range);
                points.insert(points.end(), more.begin(), more.end());
            }
            if (taus.empty() && range.empty()) points = sc.sweep;
            if (points.empty()) throw CliFailure{kInvalidConfig, "sweep: empty threshold range"};
            const auto reports = sweep(sc, points);
            if (sweep_opts.format == "table") {
                emit(render_sweep_table(reports), sweep_opts.out, out);
            } else {
                emit(to_json(std::span<const MetricsReport>(reports)), sweep_opts.out, out);
                if (!sweep_opts.out.empty() && sweep_opts.out != "-") out << render_sweep_table(reports);
            }
            return kOk;
        }

        if (*encode_cmd) {
            const auto label = label_from(enc_label);
            if (!label) throw CliFailure{kInvalidConfig, "codec.label: unknown label '" + enc_label + "'"};
            const auto prio = priority_from(enc_priority);
            if (!prio) throw CliFailure{kInvalidConfig, "codec.priority: unknown priority '" + enc_priority + "'"};
            enc.label = *label;
            enc.priority = *prio;
            if (enc_id.empty()) {
                enc.alert_id = make_alert_id(enc.timestamp_ms, enc.lat, enc.lon);
            } else {
                const auto bytes = from_hex(enc_id);
                if (bytes.size() != 8) throw CliFailure{kInvalidConfig, "codec.id: expected 16 hex digits"};
                for (auto b : bytes) enc.alert_id = (enc.alert_id << 8) | b;
            }
            const AlertFrame frame = encode_payload(enc);
            out << to_hex(frame) << '\n';
            return kOk;
        }

        if (*decode_cmd) {
            decoding = true;
            const auto bytes = from_hex(hex_in);
            out << field_dump(decode_payload(bytes));
            return kOk;
        }

        if (*gen_cmd) {
            if (!gen_scenario.empty()) {
                require_out_dir(gen_out);
                Common c;
                c.scenario = gen_scenario;
                c.seed = gen_seed;
                const Scenario sc = load(c);
                if (!sc.trace.generator) throw CliFailure{kInvalidConfig, "trace.generate: scenario has no generator"};
                emit(format_trace(generate_trace(*sc.trace.generator, sc.seed)), gen_out, out);
                return kOk;
            }
            if (!fs::is_directory(fixture_dir)) throw CliFailure{kMissingFile, "directory not found: " + fixture_dir};
            std::vector<fixtures::FixtureFile> files;
            if (fixture_names.empty()) {
                files = fixtures::all();
            } else {
                for (const auto& n : fixture_names) {
                    try {
                        files.push_back(fixtures::by_name(n));
                    } catch (const Error&) {
                        throw CliFailure{kInvalidConfig, "fixture: unknown name '" + n + "'"};
                    }
                }
            }
            for (const auto& f : files) {
                emit(f.contents, (fs::path(fixture_dir) / f.file_name).string(), out);
                spdlog::info("wrote {}", f.file_name);
            }
            return kOk;
        }

        if (*render_cmd) {
            const std::string text = read_text(report_in);
            const auto reports = reports_from_json(text);
            if (report_format == "machine") {
                out << (reports.size() == 1 ? to_json(reports.front()) : to_json(std::span<const MetricsReport>(reports)));
            } else if (reports.size() == 1) {
                out << render_table(reports.front());
            } else {
                out << render_sweep_table(reports);
            }
            return kOk;
        }
    } catch (const CliFailure& f) {
        err << "netra: " << f.message << '\n';
        return f.code;
    } catch (const Error& e) {
        err << "netra: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e, decoding);
    } catch (const std::exception& e) {
        err << "netra: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace netra::cli
