#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace netra {

inline constexpr double kSpeedOfSound = 343.0;  // m/s at 20 C

/// Physical object class of a genuine intrusion.
enum class ThreatClass { Human, Cow, Elephant, Obstruction };

enum class FalseTriggerKind { Vegetation, Bird, Vehicle, Wind };

std::string_view to_string(ThreatClass c) noexcept;
std::string_view to_string(FalseTriggerKind k) noexcept;

namespace truth {

struct Quiet {
    bool operator==(const Quiet&) const = default;
};

/// Empty-track reading used for background calibration.
struct Calibration {
    bool operator==(const Calibration&) const = default;
};

/// A genuine intrusion. The optional scene fields describe what the camera
/// would see: detector confidence and the bounding-box share of the frame.
struct Intrusion {
    ThreatClass cls = ThreatClass::Human;
    std::optional<double> confidence;
    std::optional<double> area_ratio;
    bool operator==(const Intrusion&) const = default;
};

struct FalseTrigger {
    FalseTriggerKind kind = FalseTriggerKind::Vegetation;
    bool operator==(const FalseTrigger&) const = default;
};

}  // namespace truth

/// Simulation-only annotation. The fusion and classification stages never
/// branch on it; only the scene renderer and the metrics do.
using GroundTruth = std::variant<truth::Quiet, truth::Calibration, truth::Intrusion, truth::FalseTrigger>;

bool is_intrusion(const GroundTruth& gt) noexcept;
bool is_false_trigger(const GroundTruth& gt) noexcept;
bool is_calibration(const GroundTruth& gt) noexcept;

struct SensorSample {
    std::int64_t t_ms = 0;
    bool pir = false;
    std::optional<double> echo_time_s;  // absent: no ping fired or no return
    GroundTruth truth = truth::Quiet{};
    std::string note;                   // free-text trailing comment in trace files

    bool operator==(const SensorSample&) const = default;
};

struct CalibrationState {
    double d_bg_m = 0.0;
    int sample_count = 0;

    static constexpr int kRequiredSamples = 5;
    bool complete() const noexcept { return sample_count == kRequiredSamples && d_bg_m > 0.0; }
};

struct TraceMetadata {
    std::string name;
    std::uint64_t seed = 0;
    std::size_t true_intrusions = 0;
    std::size_t false_triggers = 0;

    bool operator==(const TraceMetadata&) const = default;
};

struct EventTrace {
    TraceMetadata metadata;
    std::vector<std::string> header_comments;
    std::vector<SensorSample> samples;

    bool operator==(const EventTrace&) const = default;

    /// Calibration records in trace order.
    std::vector<double> calibration_distances(double v_sound = kSpeedOfSound) const;
};

/// Sensor hardware parameters of the environment model. The PIR field of
/// view appears as both 110 and 120 degrees in the source material; both are
/// carried and neither affects any gate.
struct SensorModelConfig {
    double pir_range_m = 7.0;
    double pir_fov_deg = 110.0;
    double pir_fov_datasheet_deg = 120.0;
    double v_sound = kSpeedOfSound;
    double ultrasonic_min_m = 0.02;
    double calibration_max_m = 20.0;
};

/// Time-of-flight distance: v * t / 2.
double tof_distance(double echo_time_s, double v_sound = kSpeedOfSound);

/// Inverse of tof_distance.
double echo_time_for(double distance_m, double v_sound = kSpeedOfSound);

/// Background distance from exactly five empty-track measurements.
CalibrationState calibrate_background(std::span<const double> distances_m,
                                      double max_plausible_m = SensorModelConfig{}.calibration_max_m);

// --- trace files --------------------------------------------------------

inline constexpr std::string_view kTraceHeader = "#netra-trace v1";

EventTrace parse_trace(std::string_view text);
EventTrace load_trace(const std::filesystem::path& path);
std::string format_trace(const EventTrace& trace);
void save_trace(const EventTrace& trace, const std::filesystem::path& path);

std::string format_truth(const GroundTruth& gt);
GroundTruth parse_truth(std::string_view tag);

// --- generator ----------------------------------------------------------

struct GeneratorSpec {
    std::string name = "generated";
    std::size_t n_true = 0;
    std::size_t n_false = 0;
    std::size_t n_quiet = 0;
    double d_bg_m = 13.0;
    std::int64_t duration_ms = 7LL * 24 * 3600 * 1000;
    double gate_min_m = 4.0;
    double gate_max_m = 15.0;
    double v_sound = kSpeedOfSound;
};

/// Random trace: five calibration readings followed by intrusions, false
/// triggers and quiet polls at uniformly random times. Pure in (spec, seed).
EventTrace generate_trace(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace netra
