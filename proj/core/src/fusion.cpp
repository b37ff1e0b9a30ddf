#include "netra/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netra/error.hpp"

namespace netra {

std::string_view to_string(FusionMode m) noexcept {
    switch (m) {
        case FusionMode::Binary: return "binary";
        case FusionMode::Probabilistic: return "probabilistic";
        case FusionMode::PirOnly: return "pir-only";
    }
    return "?";
}

std::optional<FusionMode> fusion_mode_from(std::string_view s) noexcept {
    for (auto m : {FusionMode::Binary, FusionMode::Probabilistic, FusionMode::PirOnly}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

std::string_view to_string(RejectReason r) noexcept {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::NoMotion: return "no-motion";
        case RejectReason::NonPositiveDelta: return "non-positive-delta";
        case RejectReason::OutOfRange: return "out-of-range";
        case RejectReason::BelowThreshold: return "below-threshold";
    }
    return "?";
}

void FusionConfig::validate() const {
    auto bad = [](const char* field, const std::string& why) {
        return Error(ErrorKind::Config, std::string("fusion.") + field + ": " + why);
    };
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(w_pir)) throw bad("w_pir", "must be in [0,1]");
    if (!in_unit(w_dist)) throw bad("w_dist", "must be in [0,1]");
    if (std::abs(w_pir + w_dist - 1.0) > 1e-12) throw bad("w_dist", "w_pir + w_dist must equal 1");
    if (!in_unit(tau_c)) throw bad("tau_c", "must be in [0,1]");
    if (!(d_max > 0.0)) throw bad("d_max", "must be positive");
    if (!(gate_min > 0.0)) throw bad("gate_min", "must be positive");
    if (!(gate_max > gate_min)) throw bad("gate_max", "must exceed gate_min");
    if (!(v_sound > 0.0)) throw bad("v_sound", "must be positive");
}

double distance_change(double d_bg, double d_current) {
    return d_bg - d_current;
}

double distance_probability(double delta_d, double d_max) {
    return std::clamp(delta_d / d_max, 0.0, 1.0);
}

double fuse(bool pir, double p_dist, const FusionConfig& cfg) {
    return cfg.w_pir * (pir ? 1.0 : 0.0) + cfg.w_dist * p_dist;
}

bool camera_decision(double p_intrusion, double tau_c) {
    return p_intrusion >= tau_c;
}

FusionDecision activation_pipeline(const SensorSample& sample, const CalibrationState& calib,
                                   const FusionConfig& cfg) {
    if (!calib.complete()) {
        throw Error(ErrorKind::CalibrationIncomplete, "background calibration has not completed");
    }
    FusionDecision d;
    if (!sample.pir) {
        d.reject_reason = RejectReason::NoMotion;
        return d;
    }
    if (cfg.mode == FusionMode::PirOnly) {
        d.p_intrusion = cfg.w_pir;
        d.camera = true;
        return d;
    }
    if (!sample.echo_time_s) {
        // No return inside the sensor window.
        d.reject_reason = RejectReason::OutOfRange;
        return d;
    }
    d.d_current = tof_distance(*sample.echo_time_s, cfg.v_sound);
    d.delta_d = distance_change(calib.d_bg_m, d.d_current);
    if (d.delta_d <= 0.0) {
        d.reject_reason = RejectReason::NonPositiveDelta;
        return d;
    }
    if (d.d_current < cfg.gate_min || d.d_current > cfg.gate_max) {
        d.reject_reason = RejectReason::OutOfRange;
        return d;
    }
    d.p_dist = distance_probability(d.delta_d, cfg.d_max);
    d.p_intrusion = fuse(true, d.p_dist, cfg);

    if (cfg.mode == FusionMode::Binary) {
        // Binary ultrasonic response: the displacement must saturate the
        // distance evidence.
        d.camera = d.delta_d >= cfg.d_max;
    } else {
        d.camera = camera_decision(d.p_intrusion, cfg.tau_c);
    }
    if (!d.camera) d.reject_reason = RejectReason::BelowThreshold;
    return d;
}

}  // namespace netra
