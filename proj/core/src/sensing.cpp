#include "netra/sensing.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "netra/error.hpp"
#include "netra/random.hpp"
#include "text_util.hpp"

namespace netra {

std::string_view to_string(ThreatClass c) noexcept {
    switch (c) {
        case ThreatClass::Human: return "human";
        case ThreatClass::Cow: return "cow";
        case ThreatClass::Elephant: return "elephant";
        case ThreatClass::Obstruction: return "obstruction";
    }
    return "?";
}

std::string_view to_string(FalseTriggerKind k) noexcept {
    switch (k) {
        case FalseTriggerKind::Vegetation: return "vegetation";
        case FalseTriggerKind::Bird: return "bird";
        case FalseTriggerKind::Vehicle: return "vehicle";
        case FalseTriggerKind::Wind: return "wind";
    }
    return "?";
}

bool is_intrusion(const GroundTruth& gt) noexcept {
    return std::holds_alternative<truth::Intrusion>(gt);
}

bool is_false_trigger(const GroundTruth& gt) noexcept {
    return std::holds_alternative<truth::FalseTrigger>(gt);
}

bool is_calibration(const GroundTruth& gt) noexcept {
    return std::holds_alternative<truth::Calibration>(gt);
}

double tof_distance(double echo_time_s, double v_sound) {
    if (!(echo_time_s >= 0.0) || !std::isfinite(echo_time_s)) {
        throw Error(ErrorKind::InvalidSample, "echo time must be finite and non-negative");
    }
    if (!(v_sound > 0.0)) {
        throw Error(ErrorKind::Config, "speed of sound must be positive");
    }
    return v_sound * echo_time_s / 2.0;
}

double echo_time_for(double distance_m, double v_sound) {
    return 2.0 * distance_m / v_sound;
}

CalibrationState calibrate_background(std::span<const double> distances_m, double max_plausible_m) {
    if (distances_m.size() != static_cast<std::size_t>(CalibrationState::kRequiredSamples)) {
        throw Error(ErrorKind::CalibrationArity,
                    "background calibration needs exactly 5 measurements, got " +
                        std::to_string(distances_m.size()));
    }
    for (double d : distances_m) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw Error(ErrorKind::InvalidSample, "calibration distance must be positive");
        }
        if (d > max_plausible_m) {
            throw Error(ErrorKind::InvalidSample,
                        "calibration distance " + detail::format_double(d) + " m exceeds plausible maximum " +
                            detail::format_double(max_plausible_m) + " m");
        }
    }
    // Sort first so the mean is bit-identical under permutation of the inputs.
    std::array<double, CalibrationState::kRequiredSamples> sorted{};
    std::copy(distances_m.begin(), distances_m.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    const double sum = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    return CalibrationState{sum / CalibrationState::kRequiredSamples, CalibrationState::kRequiredSamples};
}

std::vector<double> EventTrace::calibration_distances(double v_sound) const {
    std::vector<double> out;
    for (const auto& s : samples) {
        if (is_calibration(s.truth) && s.echo_time_s) {
            out.push_back(tof_distance(*s.echo_time_s, v_sound));
        }
    }
    return out;
}

// --- truth tags ---------------------------------------------------------

namespace {

std::optional<ThreatClass> threat_from(std::string_view s) {
    if (s == "human") return ThreatClass::Human;
    if (s == "cow") return ThreatClass::Cow;
    if (s == "elephant") return ThreatClass::Elephant;
    if (s == "obstruction") return ThreatClass::Obstruction;
    return std::nullopt;
}

std::optional<FalseTriggerKind> trigger_from(std::string_view s) {
    if (s == "vegetation") return FalseTriggerKind::Vegetation;
    if (s == "bird") return FalseTriggerKind::Bird;
    if (s == "vehicle") return FalseTriggerKind::Vehicle;
    if (s == "wind") return FalseTriggerKind::Wind;
    return std::nullopt;
}

double parse_probability(std::string_view s, std::string_view what) {
    auto v = detail::parse_double(s);
    if (!v || *v < 0.0 || *v > 1.0) {
        throw Error(ErrorKind::Parse, std::string(what) + " must be a number in [0,1]: '" + std::string(s) + "'");
    }
    return *v;
}

}  // namespace

GroundTruth parse_truth(std::string_view tag) {
    if (tag == "quiet") return truth::Quiet{};
    if (tag == "calib") return truth::Calibration{};
    if (tag.starts_with("false:")) {
        if (auto k = trigger_from(tag.substr(6))) return truth::FalseTrigger{*k};
        throw Error(ErrorKind::Parse, "unknown false-trigger kind in '" + std::string(tag) + "'");
    }
    if (tag.starts_with("intrusion:")) {
        std::string_view rest = tag.substr(10);
        std::string_view scene;
        if (auto at = rest.find('@'); at != std::string_view::npos) {
            scene = rest.substr(at + 1);
            rest = rest.substr(0, at);
        }
        auto cls = threat_from(rest);
        if (!cls) throw Error(ErrorKind::Parse, "unknown intrusion class in '" + std::string(tag) + "'");
        truth::Intrusion in{*cls, std::nullopt, std::nullopt};
        if (!scene.empty()) {
            std::string_view conf = scene;
            if (auto slash = scene.find('/'); slash != std::string_view::npos) {
                conf = scene.substr(0, slash);
                double area = parse_probability(scene.substr(slash + 1), "scene area ratio");
                if (area <= 0.0) throw Error(ErrorKind::Parse, "scene area ratio must be positive");
                in.area_ratio = area;
            }
            in.confidence = parse_probability(conf, "scene confidence");
        }
        return in;
    }
    throw Error(ErrorKind::Parse, "unknown truth tag '" + std::string(tag) + "'");
}

std::string format_truth(const GroundTruth& gt) {
    struct Visitor {
        std::string operator()(const truth::Quiet&) const { return "quiet"; }
        std::string operator()(const truth::Calibration&) const { return "calib"; }
        std::string operator()(const truth::FalseTrigger& f) const {
            return "false:" + std::string(to_string(f.kind));
        }
        std::string operator()(const truth::Intrusion& in) const {
            std::string s = "intrusion:" + std::string(to_string(in.cls));
            if (in.confidence) {
                s += '@' + detail::format_double(*in.confidence);
                if (in.area_ratio) s += '/' + detail::format_double(*in.area_ratio);
            }
            return s;
        }
    };
    return std::visit(Visitor{}, gt);
}

// --- trace files --------------------------------------------------------

EventTrace parse_trace(std::string_view text) {
    EventTrace trace;
    std::optional<std::size_t> meta_true;
    std::optional<std::size_t> meta_false;
    bool have_header = false;
    std::size_t line_no = 0;

    auto fail = [&](const std::string& msg) -> Error {
        return Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
    };

    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        line = detail::trim(line);
        if (!have_header) {
            if (line.empty()) continue;
            if (line == kTraceHeader) {
                have_header = true;
                continue;
            }
            if (line.starts_with("#netra-trace")) {
                throw Error(ErrorKind::Version, "line " + std::to_string(line_no) +
                                                    ": unsupported trace version '" + std::string(line) + "'");
            }
            throw fail("missing '#netra-trace v1' header");
        }
        if (line.empty()) continue;
        if (line.starts_with("#@")) {
            auto body = line.substr(2);
            auto sp = body.find(' ');
            auto key = body.substr(0, sp);
            auto value = sp == std::string_view::npos ? std::string_view{} : detail::trim(body.substr(sp + 1));
            auto as_count = [&]() {
                auto v = detail::parse_uint(value);
                if (!v) throw fail("metadata '" + std::string(key) + "' needs an unsigned integer");
                return *v;
            };
            if (key == "name") trace.metadata.name = std::string(value);
            else if (key == "seed") trace.metadata.seed = as_count();
            else if (key == "true") meta_true = as_count();
            else if (key == "false") meta_false = as_count();
            else throw fail("unknown metadata key '" + std::string(key) + "'");
            continue;
        }
        if (line.starts_with('#')) {
            if (trace.samples.empty()) trace.header_comments.emplace_back(detail::trim(line.substr(1)));
            continue;
        }

        SensorSample s;
        std::string_view record = line;
        if (auto hash = record.find('#'); hash != std::string_view::npos) {
            s.note = std::string(detail::trim(record.substr(hash + 1)));
            record = detail::trim(record.substr(0, hash));
        }
        auto fields = detail::split(record, ',');
        if (fields.size() != 4) throw fail("expected 4 comma-separated fields, got " + std::to_string(fields.size()));

        auto t = detail::parse_int(detail::trim(fields[0]));
        if (!t || *t < 0) throw fail("bad timestamp '" + std::string(fields[0]) + "'");
        if (!trace.samples.empty() && *t < trace.samples.back().t_ms) throw fail("timestamps must be non-decreasing");
        s.t_ms = *t;

        auto pir = detail::trim(fields[1]);
        if (pir == "0") s.pir = false;
        else if (pir == "1") s.pir = true;
        else throw fail("pir must be 0 or 1, got '" + std::string(pir) + "'");

        auto echo = detail::trim(fields[2]);
        if (echo != "-") {
            auto v = detail::parse_double(echo);
            if (!v || !std::isfinite(*v)) throw fail("bad echo time '" + std::string(echo) + "'");
            if (*v < 0.0) throw fail("negative echo time");
            s.echo_time_s = *v;
        }

        try {
            s.truth = parse_truth(detail::trim(fields[3]));
        } catch (const Error& e) {
            throw fail(e.what());
        }
        trace.samples.push_back(std::move(s));
    }

    if (!have_header) throw Error(ErrorKind::Parse, "empty trace");

    const auto n_true = static_cast<std::size_t>(
        std::count_if(trace.samples.begin(), trace.samples.end(), [](auto& s) { return is_intrusion(s.truth); }));
    const auto n_false = static_cast<std::size_t>(
        std::count_if(trace.samples.begin(), trace.samples.end(), [](auto& s) { return is_false_trigger(s.truth); }));
    if (meta_true && *meta_true != n_true) {
        throw Error(ErrorKind::Parse, "metadata says " + std::to_string(*meta_true) + " intrusions, trace has " +
                                          std::to_string(n_true));
    }
    if (meta_false && *meta_false != n_false) {
        throw Error(ErrorKind::Parse, "metadata says " + std::to_string(*meta_false) + " false triggers, trace has " +
                                          std::to_string(n_false));
    }
    trace.metadata.true_intrusions = n_true;
    trace.metadata.false_triggers = n_false;
    return trace;
}

EventTrace load_trace(const std::filesystem::path& path) {
    return parse_trace(detail::read_file(path));
}

std::string format_trace(const EventTrace& trace) {
    std::string out;
    out += kTraceHeader;
    out += '\n';
    out += "#@name " + trace.metadata.name + '\n';
    out += "#@seed " + std::to_string(trace.metadata.seed) + '\n';
    out += "#@true " + std::to_string(trace.metadata.true_intrusions) + '\n';
    out += "#@false " + std::to_string(trace.metadata.false_triggers) + '\n';
    for (const auto& c : trace.header_comments) {
        out += c.empty() ? "#\n" : "# " + c + '\n';
    }
    for (const auto& s : trace.samples) {
        out += std::to_string(s.t_ms);
        out += s.pir ? ",1," : ",0,";
        out += s.echo_time_s ? detail::format_fixed(*s.echo_time_s, 9) : "-";
        out += ',';
        out += format_truth(s.truth);
        if (!s.note.empty()) out += "  # " + s.note;
        out += '\n';
    }
    return out;
}

void save_trace(const EventTrace& trace, const std::filesystem::path& path) {
    detail::write_file(path, format_trace(trace));
}

// --- generator ----------------------------------------------------------

namespace {

double quantized_echo(double distance_m, double v_sound) {
    // Round-trip through the file representation so in-memory and on-disk
    // traces replay identically.
    return *detail::parse_double(detail::format_fixed(echo_time_for(distance_m, v_sound), 9));
}

}  // namespace

EventTrace generate_trace(const GeneratorSpec& spec, std::uint64_t seed) {
    if (!(spec.d_bg_m > spec.gate_min_m) || !(spec.gate_min_m > 0.0) || spec.duration_ms < 20000) {
        throw Error(ErrorKind::Config, "generator spec needs 0 < gate_min < d_bg and duration >= 20 s");
    }
    Rng rng(seed);
    EventTrace trace;
    trace.metadata = {spec.name, seed, spec.n_true, spec.n_false};

    for (int i = 0; i < CalibrationState::kRequiredSamples; ++i) {
        SensorSample s;
        s.t_ms = 1000LL * i;
        s.echo_time_s = quantized_echo(spec.d_bg_m + rng.uniform(-0.05, 0.05), spec.v_sound);
        s.truth = truth::Calibration{};
        trace.samples.push_back(s);
    }

    std::vector<SensorSample> events;
    auto draw_time = [&] { return rng.uniform_int(10000, spec.duration_ms); };

    for (std::size_t i = 0; i < spec.n_true; ++i) {
        SensorSample s;
        s.t_ms = draw_time();
        s.pir = true;
        const double u = rng.uniform();
        truth::Intrusion in;
        double area_lo = 0.03, area_hi = 0.12;
        if (u < 0.5) {
            in.cls = ThreatClass::Human;
        } else if (u < 0.7) {
            in.cls = ThreatClass::Cow;
            area_lo = 0.06, area_hi = 0.22;
        } else if (u < 0.85) {
            in.cls = ThreatClass::Elephant;
            area_lo = 0.20, area_hi = 0.45;
        } else {
            in.cls = ThreatClass::Obstruction;
            area_lo = 0.02, area_hi = 0.10;
        }
        in.confidence = std::round(rng.uniform(0.55, 0.98) * 100.0) / 100.0;
        in.area_ratio = std::round(rng.uniform(area_lo, area_hi) * 100.0) / 100.0;
        const double d = rng.uniform(spec.gate_min_m + 0.2, spec.d_bg_m - 0.1);
        s.echo_time_s = quantized_echo(d, spec.v_sound);
        s.truth = in;
        events.push_back(std::move(s));
    }

    for (std::size_t i = 0; i < spec.n_false; ++i) {
        SensorSample s;
        s.t_ms = draw_time();
        s.pir = true;
        const auto kind = static_cast<FalseTriggerKind>(rng.uniform_int(0, 3));
        double d = spec.d_bg_m;
        bool echo = true;
        switch (kind) {
            case FalseTriggerKind::Vegetation: d = spec.d_bg_m + rng.uniform(-0.05, 0.4); break;
            case FalseTriggerKind::Bird: d = spec.d_bg_m - rng.uniform(0.0, 0.3); break;
            case FalseTriggerKind::Vehicle:
                d = rng.bernoulli(0.5) ? rng.uniform(1.0, spec.gate_min_m - 0.1)
                                       : spec.d_bg_m - rng.uniform(0.2, 1.0);
                break;
            case FalseTriggerKind::Wind:
                echo = rng.bernoulli(0.5);
                d = spec.d_bg_m + rng.uniform(-0.2, 0.05);
                break;
        }
        if (echo) s.echo_time_s = quantized_echo(d, spec.v_sound);
        s.truth = truth::FalseTrigger{kind};
        events.push_back(std::move(s));
    }

    for (std::size_t i = 0; i < spec.n_quiet; ++i) {
        SensorSample s;
        s.t_ms = draw_time();
        events.push_back(std::move(s));
    }

    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t_ms < b.t_ms; });
    trace.samples.insert(trace.samples.end(), events.begin(), events.end());
    return trace;
}

}  // namespace netra
