#pragma once

#include <optional>
#include <string_view>

#include "netra/sensing.hpp"

namespace netra {

enum class FusionMode {
    Binary,         // PIR AND saturated ultrasonic displacement
    Probabilistic,  // weighted fusion against tau_c
    PirOnly,        // baseline: every PIR trigger activates the camera
};

std::string_view to_string(FusionMode m) noexcept;
std::optional<FusionMode> fusion_mode_from(std::string_view s) noexcept;

struct FusionConfig {
    double w_pir = 0.4;
    double w_dist = 0.6;
    double d_max = 1.5;  // m, displacement at which the distance evidence saturates
    double tau_c = 0.65;
    double gate_min = 4.0;  // m
    double gate_max = 15.0; // m
    double v_sound = kSpeedOfSound;
    FusionMode mode = FusionMode::Probabilistic;

    /// Throws Error{Config} naming the first violated field.
    void validate() const;
};

enum class RejectReason { None, NoMotion, NonPositiveDelta, OutOfRange, BelowThreshold };

std::string_view to_string(RejectReason r) noexcept;

struct FusionDecision {
    double delta_d = 0.0;
    double d_current = 0.0;
    double p_dist = 0.0;
    double p_intrusion = 0.0;
    bool camera = false;
    RejectReason reject_reason = RejectReason::None;
};

/// d_bg - d_current; positive when something is closer than the background.
double distance_change(double d_bg, double d_current);

/// min(delta_d / d_max, 1), clamped at 0 from below.
double distance_probability(double delta_d, double d_max);

/// w_pir * pir + w_dist * p_dist.
double fuse(bool pir, double p_dist, const FusionConfig& cfg);

/// Inclusive threshold: ties activate.
bool camera_decision(double p_intrusion, double tau_c);

/// Event-driven camera activation for one sensing cycle. Early exits on no
/// motion, then gates on a positive displacement inside [gate_min, gate_max]
/// before any probability is computed.
FusionDecision activation_pipeline(const SensorSample& sample, const CalibrationState& calib,
                                   const FusionConfig& cfg);

}  // namespace netra
