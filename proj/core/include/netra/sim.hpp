#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netra/classify.hpp"
#include "netra/energy.hpp"
#include "netra/fusion.hpp"
#include "netra/radio.hpp"
#include "netra/receiver.hpp"
#include "netra/scenario.hpp"

namespace netra {

/// Stage counts from raw PIR triggers down to delivered driver alerts.
struct Funnel {
    std::size_t pir_triggers = 0;
    std::size_t fusion_passed = 0;
    std::size_t ai_confirmed = 0;
    std::size_t transmitted = 0;
    std::size_t delivered = 0;

    bool operator==(const Funnel&) const = default;
};

struct LatencyStats {
    std::size_t count = 0;
    double mean_ms = 0.0;
    std::int64_t p50_ms = 0;
    std::int64_t p95_ms = 0;
    std::int64_t max_ms = 0;
};

struct MetricsReport {
    std::string scenario;
    std::uint64_t seed = 0;
    FusionMode mode = FusionMode::Probabilistic;
    double tau_c = 0.0;
    std::string platform;
    std::string classifier;

    std::size_t n_events = 0;
    std::size_t pir_triggers = 0;
    std::size_t ground_truth_intrusions = 0;
    std::size_t ground_truth_false_triggers = 0;

    std::size_t camera_activations = 0;
    std::size_t camera_true = 0;
    std::size_t camera_false = 0;
    std::map<std::string, std::size_t> reject_reasons;

    std::map<std::string, std::size_t> detections;  // classifier label -> count
    std::size_t gate_suppressed = 0;
    std::size_t ai_confirmed = 0;
    std::size_t logged_medium = 0;
    std::size_t transmitted = 0;
    std::size_t transmitted_true = 0;
    std::size_t delivered = 0;
    std::size_t buffered = 0;
    std::size_t dropped = 0;
    std::size_t frames_sent = 0;
    std::size_t receiver_duplicates = 0;
    std::size_t receiver_decode_failures = 0;
    std::size_t driver_events = 0;

    // Percentages; empty when the denominator is zero.
    std::optional<double> detection_rate;
    std::optional<double> false_alarm_rate;
    std::optional<double> suppression_pct;         // 1 - transmitted / PIR triggers
    std::optional<double> trigger_elimination_pct; // 1 - camera activations / PIR triggers
    std::optional<double> pdr_pct;
    std::optional<double> alert_detection_rate;
    std::optional<double> camera_savings_pct;

    LatencyStats latency;
    EnergyLedger energy;
    double camera_wh_pir_baseline = 0.0;
    std::int64_t duration_ms = 0;
    std::optional<double> battery_days;

    Funnel funnel;
};

/// Per-sample trace of what each stage decided.
struct EventRecord {
    std::size_t sample_index = 0;
    std::int64_t t_ms = 0;
    bool pir = false;
    bool truth_intrusion = false;
    bool truth_false_trigger = false;
    FusionDecision fusion;
    std::optional<Detection> detection;
    std::optional<GateResult> gate;
    std::optional<Dispatch> dispatch;
    std::optional<std::uint64_t> alert_id;
};

struct AlertRecord {
    Alert alert;
    std::size_t sample_index = 0;
    std::int64_t event_t_ms = 0;
    std::int64_t ready_ms = 0;     // handed to the radio queue
    TxStateKind state = TxStateKind::Idle;
    int retries_used = 0;
    int sf = kMinSf;
    std::optional<std::int64_t> acked_at_ms;
    std::optional<std::int64_t> latency_ms;  // event to ACK
};

struct RunResult {
    MetricsReport report;
    std::vector<EventRecord> events;
    std::vector<AlertRecord> alerts;
    std::vector<DriverAlertEvent> driver_events;
    std::vector<DropEvent> drops;
    bool conserved = true;
};

/// Discrete-event run of the full pipeline. Deterministic in (scenario, trace).
RunResult run(const Scenario& scenario, const EventTrace& trace);
RunResult run(const Scenario& scenario);

/// One probabilistic-mode report per threshold, in the given order.
std::vector<MetricsReport> sweep(const Scenario& scenario, std::span<const double> taus);
std::vector<MetricsReport> sweep(const Scenario& scenario, const EventTrace& trace, std::span<const double> taus);

Funnel funnel_report(const RunResult& result);

}  // namespace netra
