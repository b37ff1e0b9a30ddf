#include "netra/fixtures.hpp"

#include <cstdio>
#include <filesystem>

#include "netra/error.hpp"
#include "netra/random.hpp"
#include "text_util.hpp"

namespace netra::fixtures {

namespace {

constexpr std::int64_t kCalibStepMs = 1000;
constexpr std::int64_t kFirstEventMs = 600000;
constexpr std::int64_t kEventSpacingMs = 90LL * 60 * 1000;

/// Echo time as stored in a trace file (nanosecond resolution).
double echo(double distance_m) {
    return *detail::parse_double(detail::format_fixed(echo_time_for(distance_m), 9));
}

std::string metres(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f m", d);
    return buf;
}

SensorSample calib(std::int64_t t, double d) {
    SensorSample s;
    s.t_ms = t;
    s.pir = false;
    s.echo_time_s = echo(d);
    s.truth = truth::Calibration{};
    s.note = "empty track at " + metres(d);
    return s;
}

SensorSample intrusion(ThreatClass cls, double d, std::optional<double> conf, std::string note) {
    SensorSample s;
    s.pir = true;
    s.echo_time_s = echo(d);
    s.truth = truth::Intrusion{cls, conf, std::nullopt};
    s.note = std::move(note) + ", object at " + metres(d);
    return s;
}

SensorSample false_trigger(FalseTriggerKind kind, std::optional<double> d, std::string note) {
    SensorSample s;
    s.pir = true;
    if (d) s.echo_time_s = echo(*d);
    s.truth = truth::FalseTrigger{kind};
    s.note = d ? std::move(note) + ", return at " + metres(*d) : std::move(note) + ", no echo";
    return s;
}

/// Shuffles the events with a fixed seed, then spaces them evenly after the
/// calibration block.
EventTrace assemble(std::string name, std::uint64_t seed, std::vector<double> calib_d,
                    std::vector<SensorSample> events, std::vector<std::string> comments) {
    Rng rng(seed);
    for (std::size_t i = events.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(events[i - 1], events[j]);
    }
    EventTrace trace;
    trace.metadata.name = std::move(name);
    trace.metadata.seed = seed;
    trace.header_comments = std::move(comments);
    for (std::size_t i = 0; i < calib_d.size(); ++i) {
        trace.samples.push_back(calib(static_cast<std::int64_t>(i) * kCalibStepMs, calib_d[i]));
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        events[i].t_ms = kFirstEventMs + static_cast<std::int64_t>(i) * kEventSpacingMs;
        if (is_intrusion(events[i].truth)) ++trace.metadata.true_intrusions;
        if (is_false_trigger(events[i].truth)) ++trace.metadata.false_triggers;
        trace.samples.push_back(std::move(events[i]));
    }
    return trace;
}

}  // namespace

EventTrace activation_table() {
    std::vector<SensorSample> ev;
    const ThreatClass mix[] = {ThreatClass::Human, ThreatClass::Cow, ThreatClass::Elephant, ThreatClass::Human,
                               ThreatClass::Obstruction};
    for (int k = 0; k < 34; ++k) {
        const double d = 5.0 + 0.2 * (k % 33);
        ev.push_back(intrusion(mix[k % 5], d, 0.9, "clear intrusion, displacement >= 1.5 m: passes every mode"));
    }
    for (double d : {12.3, 12.1, 11.9, 11.7}) {
        ev.push_back(intrusion(ThreatClass::Human, d, 0.9,
                               "shallow intrusion, displacement 0.7-1.3 m: passes tau 0.65, fails binary"));
    }
    for (double d : {3.2, 3.6}) {
        ev.push_back(intrusion(ThreatClass::Obstruction, d, 0.9, "object inside 4 m: out of range, missed by all fusion modes"));
    }
    ev.push_back(false_trigger(FalseTriggerKind::Vehicle, 12.6, "fringe vehicle, P = 0.56: passes only tau 0.45"));
    ev.push_back(false_trigger(FalseTriggerKind::Bird, 12.75, "low bird, P = 0.50: passes only tau 0.45"));
    for (int k = 0; k < 12; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Vegetation, 13.0 + 0.05 * k,
                                   "swaying vegetation, displacement <= 0: rejected"));
    }
    for (int k = 0; k < 10; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Wind, std::nullopt, "wind-driven heat shimmer: rejected"));
    }
    for (int k = 0; k < 10; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Bird, 12.98 - 0.01 * k,
                                   "bird over the track, P < 0.45: rejected at every threshold"));
    }
    for (double d : {2.5, 2.8, 3.1, 3.4, 3.8}) {
        ev.push_back(false_trigger(FalseTriggerKind::Vehicle, d, "maintenance vehicle next to the sensor: out of range"));
    }
    return assemble("tableV_79events", 79, std::vector<double>(5, 13.0), std::move(ev),
                    {"Camera-activation fixture: 40 intrusions, 39 false triggers, every record with PIR motion.",
                     "Expected: binary 34/0, tau 0.65 38/0, tau 0.45 40/2, PIR only 79/39."});
}

EventTrace end_to_end() {
    std::vector<SensorSample> ev;
    const double day_conf[] = {0.78, 0.80, 0.82, 0.84, 0.86, 0.88, 0.90, 0.92, 0.94, 0.95};
    const double night_conf[] = {0.20, 0.23, 0.26, 0.29, 0.32, 0.35, 0.38, 0.41, 0.43, 0.45};
    for (int k = 0; k < 10; ++k) {
        ev.push_back(intrusion(ThreatClass::Human, 6.0 + 0.5 * k, day_conf[k],
                               "daylight person: passes fusion and the AI gate, critical"));
    }
    for (int k = 0; k < 10; ++k) {
        ev.push_back(intrusion(ThreatClass::Human, 6.0 + 0.5 * k, night_conf[k],
                               "low-light person: passes fusion, detector confidence < 0.5 fails the AI gate"));
    }
    for (int k = 0; k < 22; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Vehicle, 5.0 + 0.25 * k,
                                   "road vehicle inside the gate: passes fusion, frame shows no threat"));
    }
    for (int k = 0; k < 25; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Vegetation, 13.0 + 0.05 * k,
                                   "swaying vegetation, displacement <= 0: rejected"));
    }
    for (int k = 0; k < 20; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Wind, std::nullopt, "wind-driven heat shimmer: rejected"));
    }
    for (int k = 0; k < 16; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Bird, 12.98 - 0.005 * k,
                                   "bird over the track, P < 0.45: rejected"));
    }
    for (int k = 0; k < 10; ++k) {
        ev.push_back(false_trigger(FalseTriggerKind::Vehicle, 2.2 + 0.15 * k,
                                   "maintenance vehicle next to the sensor: out of range"));
    }
    return assemble("endToEnd_113events", 113, {12.0, 12.5, 13.0, 13.5, 14.0}, std::move(ev),
                    {"End-to-end fixture: 20 person intrusions, 93 false triggers over one week.",
                     "Expected funnel on a lossless link: 113 -> 42 -> 10 -> 10 -> 10."});
}

EventTrace single_alert() {
    std::vector<SensorSample> ev;
    ev.push_back(intrusion(ThreatClass::Human, 8.0, 0.9, "daylight person: one critical alert"));
    return assemble("single_alert", 1, std::vector<double>(5, 13.0), std::move(ev),
                    {"One alert through the whole pipeline; used for per-platform latency budgets."});
}

std::string low_cost_confusion_text() {
    return "#netra-confusion v1\n"
           "# Heuristic classifier (base detector + bounding-box size rule) on 165 frames:\n"
           "# 50 human, 47 cow, 49 elephant, 19 obstruction. Elephant recall 6/49.\n"
           "columns elephant animal human obstruction background\n"
           "elephant 6/49 28/49 4/49 11/49 0\n"
           "cow 26/47 18/47 2/47 1/47 0\n"
           "human 0 0 47/50 3/50 0\n"
           "obstruction 0 0 1/19 18/19 0\n"
           "background 0 0 0 0 1\n";
}

ConfusionSpec low_cost_confusion() {
    return parse_confusion(low_cost_confusion_text());
}

std::array<std::size_t, kSceneClassCount> low_cost_eval_counts() {
    std::array<std::size_t, kSceneClassCount> n{};
    n[static_cast<std::size_t>(SceneClass::Human)] = 50;
    n[static_cast<std::size_t>(SceneClass::Cow)] = 47;
    n[static_cast<std::size_t>(SceneClass::Elephant)] = 49;
    n[static_cast<std::size_t>(SceneClass::Obstruction)] = 19;
    return n;
}

std::vector<std::string_view> names() {
    return {"activation_table", "end_to_end", "single_alert", "low_cost_confusion"};
}

FixtureFile by_name(std::string_view name) {
    if (name == "activation_table") return {"tableV_79events.trace", format_trace(activation_table())};
    if (name == "end_to_end") return {"endToEnd_113events.trace", format_trace(end_to_end())};
    if (name == "single_alert") return {"single_alert.trace", format_trace(single_alert())};
    if (name == "low_cost_confusion") return {"heuristic_165frames.confusion", low_cost_confusion_text()};
    throw Error(ErrorKind::NotFound, "unknown fixture '" + std::string(name) + "'");
}

std::vector<FixtureFile> all() {
    std::vector<FixtureFile> out;
    for (auto n : names()) out.push_back(by_name(n));
    return out;
}

void write_all(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : all()) detail::write_file(dir / f.file_name, f.contents);
}

}  // namespace netra::fixtures
