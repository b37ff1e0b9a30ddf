#include "netra/energy.hpp"

#include <cmath>

#include "netra/error.hpp"

namespace netra {

namespace {
constexpr double kSecondsPerHour = 3600.0;
constexpr double kMsPerDay = 86400000.0;
}  // namespace

std::int64_t PlatformProfile::inference_ms() const {
    return std::llround(inference_s * 1000.0);
}

std::int64_t PlatformProfile::pre_radio_ms() const {
    return sensing_poll_ms + fusion_ms + capture_ms + inference_ms() + encode_ms;
}

void PlatformProfile::validate() const {
    auto bad = [](const char* f, const char* why) {
        return Error(ErrorKind::Config, std::string("platform.") + f + ": " + why);
    };
    if (idle_w < 0) throw bad("idle_w", "must be non-negative");
    if (inference_w < idle_w) throw bad("inference_w", "must be at least idle_w");
    if (inference_s < 0) throw bad("inference_s", "must be non-negative");
    if (camera_w < 0) throw bad("camera_w", "must be non-negative");
    if (camera_activation_s < 0) throw bad("camera_activation_s", "must be non-negative");
    if (radio_tx_w < 0) throw bad("radio_tx_w", "must be non-negative");
    if (sensing_poll_ms < 0 || fusion_ms < 0 || capture_ms < 0 || encode_ms < 0) {
        throw bad("stages", "stage durations must be non-negative");
    }
}

// Stage budgets: with the SF7 radio round trip (72 ms frame, 42 ms ACK,
// 2 x 1 ms propagation) these total 2400 ms and 6500 ms per alert.
PlatformProfile PlatformProfile::pi4() {
    PlatformProfile p;
    p.name = "pi4";
    p.idle_w = 2.7;
    p.inference_w = 7.5;
    p.inference_s = 0.8;
    p.sensing_poll_ms = 200;
    p.fusion_ms = 40;
    p.capture_ms = 1234;
    p.encode_ms = 10;
    return p;
}

PlatformProfile PlatformProfile::pi_zero() {
    PlatformProfile p;
    p.name = "pizero";
    p.idle_w = 0.5;
    p.inference_w = 2.5;
    p.inference_s = 5.2;
    p.sensing_poll_ms = 200;
    p.fusion_ms = 180;
    p.capture_ms = 794;
    p.encode_ms = 10;
    return p;
}

std::optional<PlatformProfile> PlatformProfile::builtin(const std::string& name) {
    if (name == "pi4") return pi4();
    if (name == "pizero") return pi_zero();
    return std::nullopt;
}

double camera_energy(std::size_t activations, const PlatformProfile& profile) {
    return static_cast<double>(activations) * profile.camera_w * profile.camera_activation_s / kSecondsPerHour;
}

double savings(double baseline, double actual) {
    if (!(baseline > 0.0)) throw Error(ErrorKind::Undefined, "savings undefined for a non-positive baseline");
    return (1.0 - actual / baseline) * 100.0;
}

EnergyLedger run_ledger(const EnergyUsage& usage, const PlatformProfile& profile) {
    EnergyLedger l;
    l.activation_count = usage.camera_activations;
    l.inference_count = usage.inferences;
    l.camera_wh = camera_energy(usage.camera_activations, profile);
    l.inference_wh = static_cast<double>(usage.inferences) * (profile.inference_w - profile.idle_w) *
                     profile.inference_s / kSecondsPerHour;
    l.idle_wh = profile.idle_w * static_cast<double>(usage.duration_ms) / 1000.0 / kSecondsPerHour;
    l.radio_wh = profile.radio_tx_w * static_cast<double>(usage.radio_airtime_ms) / 1000.0 / kSecondsPerHour;
    return l;
}

std::optional<double> battery_days(double capacity_wh, const EnergyLedger& ledger, std::int64_t duration_ms) {
    if (duration_ms <= 0 || !(ledger.total_wh() > 0.0) || !(capacity_wh > 0.0)) return std::nullopt;
    const double daily = ledger.total_wh() * kMsPerDay / static_cast<double>(duration_ms);
    return capacity_wh / daily;
}

}  // namespace netra
