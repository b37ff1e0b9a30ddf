#include "netra/report.hpp"

#include <json.hpp>

#include <cstdarg>
#include <cstdio>
#include <vector>

#include "netra/error.hpp"

namespace netra {

namespace {

using json = nlohmann::ordered_json;

json opt(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json counts(const std::map<std::string, std::size_t>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

json report_json(const MetricsReport& r) {
    json j;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["mode"] = std::string(to_string(r.mode));
    j["tau_c"] = r.tau_c;
    j["platform"] = r.platform;
    j["classifier"] = r.classifier;
    j["events"] = {
        {"n_events", r.n_events},
        {"pir_triggers", r.pir_triggers},
        {"ground_truth_intrusions", r.ground_truth_intrusions},
        {"ground_truth_false_triggers", r.ground_truth_false_triggers},
    };
    j["fusion"] = {
        {"camera_activations", r.camera_activations},
        {"camera_true", r.camera_true},
        {"camera_false", r.camera_false},
        {"reject_reasons", counts(r.reject_reasons)},
    };
    j["classify"] = {
        {"detections", counts(r.detections)},
        {"ai_confirmed", r.ai_confirmed},
        {"gate_suppressed", r.gate_suppressed},
        {"logged_medium", r.logged_medium},
    };
    j["radio"] = {
        {"transmitted", r.transmitted},
        {"transmitted_true", r.transmitted_true},
        {"delivered", r.delivered},
        {"buffered", r.buffered},
        {"dropped", r.dropped},
        {"frames_sent", r.frames_sent},
    };
    j["receiver"] = {
        {"driver_events", r.driver_events},
        {"duplicates", r.receiver_duplicates},
        {"decode_failures", r.receiver_decode_failures},
    };
    j["rates"] = {
        {"detection_rate", opt(r.detection_rate)},
        {"false_alarm_rate", opt(r.false_alarm_rate)},
        {"suppression_pct", opt(r.suppression_pct)},
        {"trigger_elimination_pct", opt(r.trigger_elimination_pct)},
        {"pdr_pct", opt(r.pdr_pct)},
        {"alert_detection_rate", opt(r.alert_detection_rate)},
        {"camera_savings_pct", opt(r.camera_savings_pct)},
    };
    j["latency"] = {
        {"count", r.latency.count},
        {"mean_ms", r.latency.mean_ms},
        {"p50_ms", r.latency.p50_ms},
        {"p95_ms", r.latency.p95_ms},
        {"max_ms", r.latency.max_ms},
    };
    j["energy"] = {
        {"camera_wh", r.energy.camera_wh},
        {"inference_wh", r.energy.inference_wh},
        {"idle_wh", r.energy.idle_wh},
        {"radio_wh", r.energy.radio_wh},
        {"total_wh", r.energy.total_wh()},
        {"activation_count", r.energy.activation_count},
        {"inference_count", r.energy.inference_count},
        {"camera_wh_pir_baseline", r.camera_wh_pir_baseline},
        {"duration_ms", r.duration_ms},
        {"battery_days", opt(r.battery_days)},
    };
    j["funnel"] = {
        {"pir_triggers", r.funnel.pir_triggers},
        {"fusion_passed", r.funnel.fusion_passed},
        {"ai_confirmed", r.funnel.ai_confirmed},
        {"transmitted", r.funnel.transmitted},
        {"delivered", r.funnel.delivered},
    };
    return j;
}

std::map<std::string, std::size_t> counts_from(const json& j) {
    std::map<std::string, std::size_t> m;
    for (const auto& [k, v] : j.items()) m[k] = v.get<std::size_t>();
    return m;
}

MetricsReport report_from(const json& j) {
    MetricsReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto mode = fusion_mode_from(j.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorKind::Parse, "report: unknown mode");
    r.mode = *mode;
    r.tau_c = j.at("tau_c").get<double>();
    r.platform = j.at("platform").get<std::string>();
    r.classifier = j.at("classifier").get<std::string>();

    const json& ev = j.at("events");
    r.n_events = ev.at("n_events");
    r.pir_triggers = ev.at("pir_triggers");
    r.ground_truth_intrusions = ev.at("ground_truth_intrusions");
    r.ground_truth_false_triggers = ev.at("ground_truth_false_triggers");

    const json& fu = j.at("fusion");
    r.camera_activations = fu.at("camera_activations");
    r.camera_true = fu.at("camera_true");
    r.camera_false = fu.at("camera_false");
    r.reject_reasons = counts_from(fu.at("reject_reasons"));

    const json& cl = j.at("classify");
    r.detections = counts_from(cl.at("detections"));
    r.ai_confirmed = cl.at("ai_confirmed");
    r.gate_suppressed = cl.at("gate_suppressed");
    r.logged_medium = cl.at("logged_medium");

    const json& ra = j.at("radio");
    r.transmitted = ra.at("transmitted");
    r.transmitted_true = ra.at("transmitted_true");
    r.delivered = ra.at("delivered");
    r.buffered = ra.at("buffered");
    r.dropped = ra.at("dropped");
    r.frames_sent = ra.at("frames_sent");

    const json& rx = j.at("receiver");
    r.driver_events = rx.at("driver_events");
    r.receiver_duplicates = rx.at("duplicates");
    r.receiver_decode_failures = rx.at("decode_failures");

    const json& rt = j.at("rates");
    r.detection_rate = opt_from(rt.at("detection_rate"));
    r.false_alarm_rate = opt_from(rt.at("false_alarm_rate"));
    r.suppression_pct = opt_from(rt.at("suppression_pct"));
    r.trigger_elimination_pct = opt_from(rt.at("trigger_elimination_pct"));
    r.pdr_pct = opt_from(rt.at("pdr_pct"));
    r.alert_detection_rate = opt_from(rt.at("alert_detection_rate"));
    r.camera_savings_pct = opt_from(rt.at("camera_savings_pct"));

    const json& la = j.at("latency");
    r.latency.count = la.at("count");
    r.latency.mean_ms = la.at("mean_ms");
    r.latency.p50_ms = la.at("p50_ms");
    r.latency.p95_ms = la.at("p95_ms");
    r.latency.max_ms = la.at("max_ms");

    const json& en = j.at("energy");
    r.energy.camera_wh = en.at("camera_wh");
    r.energy.inference_wh = en.at("inference_wh");
    r.energy.idle_wh = en.at("idle_wh");
    r.energy.radio_wh = en.at("radio_wh");
    r.energy.activation_count = en.at("activation_count");
    r.energy.inference_count = en.at("inference_count");
    r.camera_wh_pir_baseline = en.at("camera_wh_pir_baseline");
    r.duration_ms = en.at("duration_ms");
    r.battery_days = opt_from(en.at("battery_days"));

    const json& fn = j.at("funnel");
    r.funnel.pir_triggers = fn.at("pir_triggers");
    r.funnel.fusion_passed = fn.at("fusion_passed");
    r.funnel.ai_confirmed = fn.at("ai_confirmed");
    r.funnel.transmitted = fn.at("transmitted");
    r.funnel.delivered = fn.at("delivered");
    return r;
}

json envelope() {
    json j;
    j["format"] = kReportFormat;
    j["version"] = kReportVersion;
    return j;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

void appendf(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    const int n = std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    if (n > 0) out.append(buf, std::min<std::size_t>(static_cast<std::size_t>(n), sizeof buf - 1));
}

std::string pct_text(const std::optional<double>& v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *v);
    return buf;
}

}  // namespace

std::string to_json(const MetricsReport& report) {
    json j = envelope();
    j["report"] = report_json(report);
    return dump(j);
}

std::string to_json(std::span<const MetricsReport> reports) {
    json j = envelope();
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r));
    return dump(j);
}

std::vector<MetricsReport> reports_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != kReportFormat) {
        throw Error(ErrorKind::Version, "report: not a netra-report document");
    }
    if (j.value("version", 0) != kReportVersion) throw Error(ErrorKind::Version, "report: unsupported version");
    try {
        std::vector<MetricsReport> out;
        if (j.contains("report")) out.push_back(report_from(j.at("report")));
        if (j.contains("reports")) {
            for (const auto& r : j.at("reports")) out.push_back(report_from(r));
        }
        if (out.empty()) throw Error(ErrorKind::Parse, "report: no report body");
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("report: ") + e.what());
    }
}

MetricsReport report_from_json(std::string_view text) {
    auto all = reports_from_json(text);
    if (all.size() != 1) throw Error(ErrorKind::Parse, "report: expected exactly one report");
    return all.front();
}

std::string render_table(const MetricsReport& r) {
    std::string out;
    appendf(out, "NETRA run: %s  (mode %s, tau_c %.2f, platform %s, classifier %s, seed %llu)\n\n",
            r.scenario.c_str(), std::string(to_string(r.mode)).c_str(), r.tau_c, r.platform.c_str(),
            r.classifier.c_str(), static_cast<unsigned long long>(r.seed));

    out += "Camera activation\n";
    appendf(out, "  %-15s %11s %6s %6s %12s %14s\n", "Method", "Activations", "True", "False", "Detection %",
            "False alarm %");
    appendf(out, "  %-15s %11zu %6zu %6zu %12s %14s\n", std::string(to_string(r.mode)).c_str(), r.camera_activations,
            r.camera_true, r.camera_false, pct_text(r.detection_rate).c_str(), pct_text(r.false_alarm_rate).c_str());
    appendf(out, "  events %zu, PIR triggers %zu, intrusions %zu, false triggers %zu\n\n", r.n_events,
            r.pir_triggers, r.ground_truth_intrusions, r.ground_truth_false_triggers);

    out += "Event funnel\n";
    appendf(out, "  %-22s %6zu\n", "PIR triggers", r.funnel.pir_triggers);
    appendf(out, "  %-22s %6zu\n", "Fusion passed", r.funnel.fusion_passed);
    appendf(out, "  %-22s %6zu\n", "AI confirmed", r.funnel.ai_confirmed);
    appendf(out, "  %-22s %6zu\n", "Transmitted", r.funnel.transmitted);
    appendf(out, "  %-22s %6zu\n", "Delivered", r.funnel.delivered);
    appendf(out, "  %-22s %6s %%\n", "Trigger elimination", pct_text(r.trigger_elimination_pct).c_str());
    appendf(out, "  %-22s %6s %%\n\n", "Suppression", pct_text(r.suppression_pct).c_str());

    out += "Delivery\n";
    appendf(out, "  PDR %s %%, frames sent %zu, buffered %zu, dropped %zu, driver events %zu, duplicates %zu\n",
            pct_text(r.pdr_pct).c_str(), r.frames_sent, r.buffered, r.dropped, r.driver_events,
            r.receiver_duplicates);
    if (r.latency.count > 0) {
        appendf(out, "  latency ms: mean %.1f, p50 %lld, p95 %lld, max %lld (n=%zu)\n\n", r.latency.mean_ms,
                static_cast<long long>(r.latency.p50_ms), static_cast<long long>(r.latency.p95_ms),
                static_cast<long long>(r.latency.max_ms), r.latency.count);
    } else {
        out += "  latency ms: n/a\n\n";
    }

    out += "Energy (Wh)\n";
    appendf(out, "  camera %.4f, inference %.4f, idle %.4f, radio %.6f, total %.4f\n", r.energy.camera_wh,
            r.energy.inference_wh, r.energy.idle_wh, r.energy.radio_wh, r.energy.total_wh());
    appendf(out, "  PIR-only camera baseline %.4f, camera savings %s %%\n", r.camera_wh_pir_baseline,
            pct_text(r.camera_savings_pct).c_str());
    if (r.battery_days) appendf(out, "  battery days %.1f\n", *r.battery_days);
    return out;
}

std::string render_sweep_table(std::span<const MetricsReport> reports) {
    std::string out;
    appendf(out, "  %-15s %6s %11s %6s %12s\n", "Method", "tau_c", "Activations", "False", "Detection %");
    for (const auto& r : reports) {
        appendf(out, "  %-15s %6.2f %11zu %6zu %12s\n", std::string(to_string(r.mode)).c_str(), r.tau_c,
                r.camera_activations, r.camera_false, pct_text(r.detection_rate).c_str());
    }
    return out;
}

}  // namespace netra
