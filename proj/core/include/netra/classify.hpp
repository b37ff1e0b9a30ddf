#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netra/sensing.hpp"

namespace netra {

/// Ground-truth content of a camera frame.
enum class SceneClass { Human, Cow, Elephant, Obstruction, Background };

/// Classes the pre-trained base detector can emit (PASCAL VOC subset).
enum class DetectorLabel { Person, Cow, Horse, Sheep, None };

/// Final threat label after classification.
enum class Label { Background = 0, Human = 1, Animal = 2, Elephant = 3, Obstruction = 4 };

enum class Priority { Critical = 0, High = 1, Medium = 2, Low = 3 };

inline constexpr std::size_t kSceneClassCount = 5;
inline constexpr std::size_t kLabelCount = 5;

std::string_view to_string(SceneClass c) noexcept;
std::string_view to_string(DetectorLabel l) noexcept;
std::string_view to_string(Label l) noexcept;
std::string_view to_string(Priority p) noexcept;

std::optional<SceneClass> scene_class_from(std::string_view s) noexcept;
std::optional<Label> label_from(std::string_view s) noexcept;
std::optional<Priority> priority_from(std::string_view s) noexcept;

/// Label a perfect classifier would assign to a scene class.
Label ideal_label(SceneClass c) noexcept;

struct BBox {
    int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
    bool operator==(const BBox&) const = default;
};

struct FrameObject {
    SceneClass true_class = SceneClass::Background;
    BBox bbox;
    DetectorLabel detector_label = DetectorLabel::None;
    double confidence = 0.0;
};

struct FrameDescriptor {
    int width = 300;
    int height = 300;
    std::vector<FrameObject> objects;

    /// Throws Error{InvalidDetection} if any bbox leaves the frame or a
    /// confidence falls outside [0,1].
    void validate() const;

    /// Object the classifiers report: highest confidence, then largest area.
    const FrameObject* principal() const;
};

struct ClassifyConfig {
    double tau_ai = 0.50;
    double tau_elephant = 0.25;
    double lambda = 0.6;
    double tau_alert = 0.60;

    void validate() const;
};

struct Detection {
    Label label = Label::Background;
    double p_ai = 0.0;
    BBox bbox;
    Priority priority = Priority::Low;
};

/// Bounding-box share of the frame.
double area_ratio(const BBox& bbox, int width, int height);

/// Size heuristic for detectors without an elephant class.
Label size_heuristic_label(DetectorLabel detector_label, double ratio, double p_ai, const ClassifyConfig& cfg);

/// lambda * p_ai + (1 - lambda) * p_intrusion
double intrusion_probability_score(double p_ai, double p_intrusion, double lambda);

Priority priority(Label label, double p_ai);

// --- alert gate ---------------------------------------------------------

enum class GateReason { None, Background, LowConfidence, LowScore };

std::string_view to_string(GateReason r) noexcept;

struct GateResult {
    bool alert = false;
    GateReason reason = GateReason::None;
    Label label = Label::Background;
    double ips = 0.0;
    Priority priority = Priority::Low;
};

GateResult alert_gate(const Detection& detection, double p_intrusion, const ClassifyConfig& cfg);

/// What happens to a gated alert candidate.
enum class Dispatch { Transmit, Log, Suppress };

Dispatch dispatch_for(Priority p) noexcept;

// --- confusion spec -----------------------------------------------------

/// Row-stochastic matrix: rows are scene classes, columns emitted labels.
struct ConfusionSpec {
    std::array<std::array<double, kLabelCount>, kSceneClassCount> rows{};
    /// Optional fixed emitted confidence per scene class; otherwise the
    /// frame's detector confidence passes through.
    std::array<std::optional<double>, kSceneClassCount> confidence{};

    static ConfusionSpec identity();
    void validate() const;

    /// Inverse-CDF lookup of row `c` at draw u in [0,1).
    Label sample(SceneClass c, double u) const;
};

inline constexpr std::string_view kConfusionHeader = "#netra-confusion v1";

ConfusionSpec parse_confusion(std::string_view text);
ConfusionSpec load_confusion(const std::filesystem::path& path);
std::string format_confusion(const ConfusionSpec& spec);

// --- classifiers --------------------------------------------------------

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::string_view name() const noexcept = 0;
    /// `frame_index` identifies the frame within a run; implementations that
    /// draw randomness derive it from (seed, frame_index) only.
    virtual Detection classify(const FrameDescriptor& frame, std::uint64_t frame_index) const = 0;
};

/// Base detector plus bounding-box size heuristic.
class HeuristicClassifier final : public Classifier {
public:
    explicit HeuristicClassifier(ClassifyConfig cfg) : cfg_(cfg) {}
    std::string_view name() const noexcept override { return "heuristic"; }
    Detection classify(const FrameDescriptor& frame, std::uint64_t frame_index) const override;

private:
    ClassifyConfig cfg_;
};

/// Replays a confusion matrix in place of a neural detector.
class OracleClassifier final : public Classifier {
public:
    OracleClassifier(ConfusionSpec spec, std::uint64_t seed);
    std::string_view name() const noexcept override { return "oracle"; }
    Detection classify(const FrameDescriptor& frame, std::uint64_t frame_index) const override;

    /// Classification with an explicit draw, for stratified evaluation.
    Detection classify_with_draw(const FrameDescriptor& frame, double u) const;

private:
    ConfusionSpec spec_;
    std::uint64_t seed_;
};

Detection oracle_classify(const FrameDescriptor& frame, const ConfusionSpec& spec, std::uint64_t seed,
                          std::uint64_t frame_index = 0);

/// Per-class precision / recall from a confusion count table.
struct ClassScores {
    std::size_t support = 0;
    std::size_t true_positive = 0;
    std::size_t predicted = 0;
    double precision() const { return predicted ? double(true_positive) / double(predicted) : 0.0; }
    double recall() const { return support ? double(true_positive) / double(support) : 0.0; }
    double f1() const {
        const double p = precision(), r = recall();
        return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    }
};

struct ConfusionEvaluation {
    std::array<std::array<std::size_t, kLabelCount>, kSceneClassCount> counts{};
    std::array<ClassScores, kLabelCount> scores{};  // indexed by Label
    double accuracy = 0.0;
};

/// Classifies `per_class[c]` single-object frames of each scene class with
/// stratified draws u_k = (k + 0.5) / N. When every row entry is a multiple
/// of 1/N the emitted counts are exact.
ConfusionEvaluation evaluate_confusion(const ConfusionSpec& spec,
                                       const std::array<std::size_t, kSceneClassCount>& per_class);

// --- scene rendering ----------------------------------------------------

SceneClass scene_of(const GroundTruth& gt) noexcept;

/// Default area ratio used when a trace does not annotate one.
double default_area_ratio(SceneClass c) noexcept;

/// Synthesises the camera frame for an event: a single centred object of the
/// annotated area and confidence, or an empty frame when nothing is there.
FrameDescriptor render_scene(const GroundTruth& gt, int width = 300, int height = 300);

}  // namespace netra
