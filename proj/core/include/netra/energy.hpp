#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace netra {

/// Power draw and per-stage timing of an edge node. Stage durations are the
/// latency budget of one alert up to the radio; the radio leg is computed
/// from airtime.
struct PlatformProfile {
    std::string name = "pi4";
    double idle_w = 2.7;
    double inference_w = 7.5;
    double inference_s = 0.8;
    double camera_w = 2.0;
    double camera_activation_s = 5.0;
    double radio_tx_w = 0.4;  // SX1278 at 14 dBm

    std::int64_t sensing_poll_ms = 200;
    std::int64_t fusion_ms = 40;
    std::int64_t capture_ms = 1234;
    std::int64_t encode_ms = 10;

    std::int64_t inference_ms() const;
    /// Sensing poll through payload encode.
    std::int64_t pre_radio_ms() const;

    void validate() const;

    static PlatformProfile pi4();
    static PlatformProfile pi_zero();
    /// "pi4" or "pizero"; nullopt otherwise.
    static std::optional<PlatformProfile> builtin(const std::string& name);
};

struct EnergyLedger {
    double camera_wh = 0.0;
    double inference_wh = 0.0;
    double idle_wh = 0.0;
    double radio_wh = 0.0;
    std::size_t activation_count = 0;
    std::size_t inference_count = 0;

    double total_wh() const noexcept { return camera_wh + inference_wh + idle_wh + radio_wh; }
};

/// activations * camera_w * camera_activation_s / 3600
double camera_energy(std::size_t activations, const PlatformProfile& profile);

/// Percentage reduction of `actual` against `baseline`; throws
/// Error{Undefined} when baseline is not positive.
double savings(double baseline, double actual);

/// What a run consumed, as counted by the simulator.
struct EnergyUsage {
    std::size_t camera_activations = 0;
    std::size_t inferences = 0;
    std::int64_t duration_ms = 0;
    std::int64_t radio_airtime_ms = 0;
};

/// Idle draw runs for the whole duration; inference is charged only for its
/// draw above idle.
EnergyLedger run_ledger(const EnergyUsage& usage, const PlatformProfile& profile);

/// capacity / daily consumption at the run's average rate.
std::optional<double> battery_days(double capacity_wh, const EnergyLedger& ledger, std::int64_t duration_ms);

}  // namespace netra
