#include "netra/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netra/error.hpp"
#include "netra/random.hpp"
#include "text_util.hpp"

namespace netra {

std::string_view to_string(SceneClass c) noexcept {
    switch (c) {
        case SceneClass::Human: return "human";
        case SceneClass::Cow: return "cow";
        case SceneClass::Elephant: return "elephant";
        case SceneClass::Obstruction: return "obstruction";
        case SceneClass::Background: return "background";
    }
    return "?";
}

std::string_view to_string(DetectorLabel l) noexcept {
    switch (l) {
        case DetectorLabel::Person: return "person";
        case DetectorLabel::Cow: return "cow";
        case DetectorLabel::Horse: return "horse";
        case DetectorLabel::Sheep: return "sheep";
        case DetectorLabel::None: return "none";
    }
    return "?";
}

std::string_view to_string(Label l) noexcept {
    switch (l) {
        case Label::Background: return "background";
        case Label::Human: return "human";
        case Label::Animal: return "animal";
        case Label::Elephant: return "elephant";
        case Label::Obstruction: return "obstruction";
    }
    return "?";
}

std::string_view to_string(Priority p) noexcept {
    switch (p) {
        case Priority::Critical: return "critical";
        case Priority::High: return "high";
        case Priority::Medium: return "medium";
        case Priority::Low: return "low";
    }
    return "?";
}

std::string_view to_string(GateReason r) noexcept {
    switch (r) {
        case GateReason::None: return "none";
        case GateReason::Background: return "background";
        case GateReason::LowConfidence: return "low-confidence";
        case GateReason::LowScore: return "low-score";
    }
    return "?";
}

std::optional<SceneClass> scene_class_from(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kSceneClassCount; ++i) {
        if (to_string(static_cast<SceneClass>(i)) == s) return static_cast<SceneClass>(i);
    }
    return std::nullopt;
}

std::optional<Label> label_from(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kLabelCount; ++i) {
        if (to_string(static_cast<Label>(i)) == s) return static_cast<Label>(i);
    }
    return std::nullopt;
}

std::optional<Priority> priority_from(std::string_view s) noexcept {
    for (int i = 0; i < 4; ++i) {
        if (to_string(static_cast<Priority>(i)) == s) return static_cast<Priority>(i);
    }
    return std::nullopt;
}

Label ideal_label(SceneClass c) noexcept {
    switch (c) {
        case SceneClass::Human: return Label::Human;
        case SceneClass::Cow: return Label::Animal;
        case SceneClass::Elephant: return Label::Elephant;
        case SceneClass::Obstruction: return Label::Obstruction;
        case SceneClass::Background: return Label::Background;
    }
    return Label::Background;
}

void FrameDescriptor::validate() const {
    if (width <= 0 || height <= 0) throw Error(ErrorKind::InvalidDetection, "frame dimensions must be positive");
    for (const auto& o : objects) {
        const auto& b = o.bbox;
        if (!(0 <= b.x1 && b.x1 < b.x2 && b.x2 <= width && 0 <= b.y1 && b.y1 < b.y2 && b.y2 <= height)) {
            throw Error(ErrorKind::InvalidDetection, "bounding box outside frame or degenerate");
        }
        if (!(o.confidence >= 0.0 && o.confidence <= 1.0)) {
            throw Error(ErrorKind::InvalidDetection, "detector confidence outside [0,1]");
        }
    }
}

const FrameObject* FrameDescriptor::principal() const {
    const FrameObject* best = nullptr;
    auto area = [](const BBox& b) { return static_cast<long>(b.x2 - b.x1) * (b.y2 - b.y1); };
    for (const auto& o : objects) {
        if (!best || o.confidence > best->confidence ||
            (o.confidence == best->confidence && area(o.bbox) > area(best->bbox))) {
            best = &o;
        }
    }
    return best;
}

void ClassifyConfig::validate() const {
    auto check = [](double v, const char* field) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::Config, std::string("classify.") + field + ": must be in [0,1]");
    };
    check(tau_ai, "tau_ai");
    check(tau_elephant, "tau_elephant");
    check(lambda, "lambda");
    check(tau_alert, "tau_alert");
}

double area_ratio(const BBox& b, int width, int height) {
    if (width <= 0 || height <= 0) throw Error(ErrorKind::InvalidDetection, "frame dimensions must be positive");
    if (!(0 <= b.x1 && b.x1 <= b.x2 && b.x2 <= width && 0 <= b.y1 && b.y1 <= b.y2 && b.y2 <= height)) {
        throw Error(ErrorKind::InvalidDetection, "bounding box outside frame");
    }
    if (b.x2 == b.x1 || b.y2 == b.y1) throw Error(ErrorKind::InvalidDetection, "degenerate bounding box");
    const double box = static_cast<double>(b.x2 - b.x1) * static_cast<double>(b.y2 - b.y1);
    return box / (static_cast<double>(width) * static_cast<double>(height));
}

Label size_heuristic_label(DetectorLabel detector_label, double ratio, double p_ai, const ClassifyConfig& cfg) {
    constexpr double kPersonConfidence = 0.5;
    switch (detector_label) {
        case DetectorLabel::Person:
            return p_ai >= kPersonConfidence ? Label::Human : Label::Background;
        case DetectorLabel::Cow:
        case DetectorLabel::Horse:
        case DetectorLabel::Sheep:
            return ratio >= cfg.tau_elephant ? Label::Elephant : Label::Animal;
        case DetectorLabel::None:
            return Label::Background;
    }
    return Label::Background;
}

double intrusion_probability_score(double p_ai, double p_intrusion, double lambda) {
    return lambda * p_ai + (1.0 - lambda) * p_intrusion;
}

Priority priority(Label label, double p_ai) {
    if ((label == Label::Elephant || label == Label::Human) && p_ai >= 0.7) return Priority::Critical;
    if (label == Label::Obstruction && p_ai >= 0.6) return Priority::High;
    if (label == Label::Animal && p_ai >= 0.5) return Priority::Medium;
    return Priority::Low;
}

GateResult alert_gate(const Detection& detection, double p_intrusion, const ClassifyConfig& cfg) {
    GateResult r;
    r.label = detection.label;
    if (detection.label == Label::Background) {
        r.reason = GateReason::Background;
        return r;
    }
    if (detection.p_ai < cfg.tau_ai) {
        r.reason = GateReason::LowConfidence;
        return r;
    }
    r.ips = intrusion_probability_score(detection.p_ai, p_intrusion, cfg.lambda);
    r.priority = priority(detection.label, detection.p_ai);
    if (r.ips < cfg.tau_alert) {
        r.reason = GateReason::LowScore;
        return r;
    }
    r.alert = true;
    return r;
}

Dispatch dispatch_for(Priority p) noexcept {
    switch (p) {
        case Priority::Critical:
        case Priority::High: return Dispatch::Transmit;
        case Priority::Medium: return Dispatch::Log;
        case Priority::Low: return Dispatch::Suppress;
    }
    return Dispatch::Suppress;
}

// --- confusion spec -----------------------------------------------------

ConfusionSpec ConfusionSpec::identity() {
    ConfusionSpec s;
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        s.rows[c][static_cast<std::size_t>(ideal_label(static_cast<SceneClass>(c)))] = 1.0;
    }
    return s;
}

void ConfusionSpec::validate() const {
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        double sum = 0.0;
        for (double p : rows[c]) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw Error(ErrorKind::Config, "confusion row '" + std::string(to_string(static_cast<SceneClass>(c))) +
                                                   "' has an entry outside [0,1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw Error(ErrorKind::Config, "confusion row '" + std::string(to_string(static_cast<SceneClass>(c))) +
                                               "' sums to " + detail::format_double(sum) + ", expected 1");
        }
        if (confidence[c] && !(*confidence[c] >= 0.0 && *confidence[c] <= 1.0)) {
            throw Error(ErrorKind::Config, "confusion confidence outside [0,1]");
        }
    }
}

Label ConfusionSpec::sample(SceneClass c, double u) const {
    const auto& row = rows[static_cast<std::size_t>(c)];
    double cum = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t j = 0; j < kLabelCount; ++j) {
        if (row[j] <= 0.0) continue;
        last_nonzero = j;
        cum += row[j];
        if (u < cum) return static_cast<Label>(j);
    }
    return static_cast<Label>(last_nonzero);
}

namespace {

double parse_entry(std::string_view tok, std::size_t line_no) {
    if (auto slash = tok.find('/'); slash != std::string_view::npos) {
        auto num = detail::parse_double(tok.substr(0, slash));
        auto den = detail::parse_double(tok.substr(slash + 1));
        if (num && den && *den > 0.0) return *num / *den;
    } else if (auto v = detail::parse_double(tok)) {
        return *v;
    }
    throw Error(ErrorKind::Config, "confusion line " + std::to_string(line_no) + ": bad entry '" + std::string(tok) + "'");
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    for (auto t : detail::split(line, ' ')) {
        t = detail::trim(t);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

ConfusionSpec parse_confusion(std::string_view text) {
    ConfusionSpec spec;
    std::vector<Label> columns;
    std::array<bool, kSceneClassCount> seen{};
    bool header = false;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& m) {
        return Error(ErrorKind::Config, "confusion line " + std::to_string(line_no) + ": " + m);
    };
    for (auto raw : detail::split_lines(text)) {
        ++line_no;
        auto line = detail::trim(raw);
        if (!header) {
            if (line.empty()) continue;
            if (line == kConfusionHeader) {
                header = true;
                continue;
            }
            if (line.starts_with("#netra-confusion")) throw Error(ErrorKind::Version, "unsupported confusion-spec version");
            throw fail("missing '#netra-confusion v1' header");
        }
        if (line.empty() || line.starts_with('#')) continue;
        auto tok = tokens(line);
        if (tok[0] == "columns") {
            if (!columns.empty()) throw fail("duplicate columns line");
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto l = label_from(tok[i]);
                if (!l) throw fail("unknown label '" + std::string(tok[i]) + "'");
                if (std::find(columns.begin(), columns.end(), *l) != columns.end()) throw fail("duplicate column");
                columns.push_back(*l);
            }
            if (columns.size() != kLabelCount) throw fail("columns must list all five labels");
            continue;
        }
        if (tok[0] == "confidence") {
            if (tok.size() != 3) throw fail("expected 'confidence <class> <value>'");
            auto c = scene_class_from(tok[1]);
            if (!c) throw fail("unknown scene class '" + std::string(tok[1]) + "'");
            spec.confidence[static_cast<std::size_t>(*c)] = parse_entry(tok[2], line_no);
            continue;
        }
        auto c = scene_class_from(tok[0]);
        if (!c) throw fail("unknown row '" + std::string(tok[0]) + "'");
        if (columns.empty()) throw fail("row before columns line");
        if (tok.size() != kLabelCount + 1) throw fail("row needs five entries");
        const auto ci = static_cast<std::size_t>(*c);
        if (seen[ci]) throw fail("duplicate row");
        seen[ci] = true;
        for (std::size_t j = 0; j < kLabelCount; ++j) {
            spec.rows[ci][static_cast<std::size_t>(columns[j])] = parse_entry(tok[j + 1], line_no);
        }
    }
    if (!header) throw Error(ErrorKind::Config, "empty confusion spec");
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        if (!seen[c]) {
            throw Error(ErrorKind::Config, "confusion spec missing row '" +
                                               std::string(to_string(static_cast<SceneClass>(c))) + "'");
        }
    }
    spec.validate();
    return spec;
}

ConfusionSpec load_confusion(const std::filesystem::path& path) {
    return parse_confusion(detail::read_file(path));
}

std::string format_confusion(const ConfusionSpec& spec) {
    std::string out(kConfusionHeader);
    out += "\ncolumns";
    for (std::size_t j = 0; j < kLabelCount; ++j) out += ' ' + std::string(to_string(static_cast<Label>(j)));
    out += '\n';
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        out += to_string(static_cast<SceneClass>(c));
        for (double p : spec.rows[c]) out += ' ' + detail::format_double(p);
        out += '\n';
    }
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        if (spec.confidence[c]) {
            out += "confidence " + std::string(to_string(static_cast<SceneClass>(c))) + ' ' +
                   detail::format_double(*spec.confidence[c]) + '\n';
        }
    }
    return out;
}

// --- classifiers --------------------------------------------------------

Detection HeuristicClassifier::classify(const FrameDescriptor& frame, std::uint64_t) const {
    frame.validate();
    Detection d;
    const FrameObject* obj = frame.principal();
    if (!obj) return d;
    d.p_ai = obj->confidence;
    d.bbox = obj->bbox;
    d.label = size_heuristic_label(obj->detector_label, area_ratio(obj->bbox, frame.width, frame.height), obj->confidence,
                                   cfg_);
    d.priority = priority(d.label, d.p_ai);
    return d;
}

OracleClassifier::OracleClassifier(ConfusionSpec spec, std::uint64_t seed) : spec_(spec), seed_(seed) {
    spec_.validate();
}

Detection OracleClassifier::classify(const FrameDescriptor& frame, std::uint64_t frame_index) const {
    return classify_with_draw(frame, to_unit(mix64(seed_ ^ mix64(frame_index))));
}

Detection OracleClassifier::classify_with_draw(const FrameDescriptor& frame, double u) const {
    frame.validate();
    Detection d;
    const FrameObject* obj = frame.principal();
    const SceneClass cls = obj ? obj->true_class : SceneClass::Background;
    d.label = spec_.sample(cls, u);
    const auto& fixed = spec_.confidence[static_cast<std::size_t>(cls)];
    d.p_ai = fixed ? *fixed : (obj ? obj->confidence : 0.0);
    if (obj) d.bbox = obj->bbox;
    d.priority = priority(d.label, d.p_ai);
    return d;
}

Detection oracle_classify(const FrameDescriptor& frame, const ConfusionSpec& spec, std::uint64_t seed,
                          std::uint64_t frame_index) {
    return OracleClassifier(spec, seed).classify(frame, frame_index);
}

ConfusionEvaluation evaluate_confusion(const ConfusionSpec& spec,
                                       const std::array<std::size_t, kSceneClassCount>& per_class) {
    const OracleClassifier oracle(spec, 0);
    ConfusionEvaluation ev;
    std::size_t total = 0, correct = 0;
    for (std::size_t c = 0; c < kSceneClassCount; ++c) {
        const auto cls = static_cast<SceneClass>(c);
        const std::size_t n = per_class[c];
        GroundTruth gt = truth::Quiet{};
        if (cls != SceneClass::Background) {
            gt = truth::Intrusion{static_cast<ThreatClass>(c), 1.0, std::nullopt};
        }
        const FrameDescriptor frame = render_scene(gt);
        for (std::size_t k = 0; k < n; ++k) {
            const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
            const Label l = oracle.classify_with_draw(frame, u).label;
            ++ev.counts[c][static_cast<std::size_t>(l)];
        }
        const auto ideal = static_cast<std::size_t>(ideal_label(cls));
        ev.scores[ideal].support += n;
        ev.scores[ideal].true_positive += ev.counts[c][ideal];
        total += n;
        correct += ev.counts[c][ideal];
    }
    for (std::size_t j = 0; j < kLabelCount; ++j) {
        for (std::size_t c = 0; c < kSceneClassCount; ++c) ev.scores[j].predicted += ev.counts[c][j];
    }
    ev.accuracy = total ? double(correct) / double(total) : 0.0;
    return ev;
}

// --- scene rendering ----------------------------------------------------

SceneClass scene_of(const GroundTruth& gt) noexcept {
    if (const auto* in = std::get_if<truth::Intrusion>(&gt)) return static_cast<SceneClass>(in->cls);
    return SceneClass::Background;
}

double default_area_ratio(SceneClass c) noexcept {
    switch (c) {
        case SceneClass::Human: return 0.06;
        case SceneClass::Cow: return 0.12;
        case SceneClass::Elephant: return 0.30;
        case SceneClass::Obstruction: return 0.05;
        case SceneClass::Background: return 0.0;
    }
    return 0.0;
}

FrameDescriptor render_scene(const GroundTruth& gt, int width, int height) {
    FrameDescriptor f{width, height, {}};
    const auto* in = std::get_if<truth::Intrusion>(&gt);
    if (!in) return f;
    const SceneClass cls = scene_of(gt);
    const double area = in->area_ratio.value_or(default_area_ratio(cls));
    const double side = std::sqrt(area);
    const int bw = std::clamp(static_cast<int>(std::lround(side * width)), 1, width);
    const int bh = std::clamp(static_cast<int>(std::lround(side * height)), 1, height);
    FrameObject o;
    o.true_class = cls;
    o.bbox.x1 = (width - bw) / 2;
    o.bbox.y1 = (height - bh) / 2;
    o.bbox.x2 = o.bbox.x1 + bw;
    o.bbox.y2 = o.bbox.y1 + bh;
    o.confidence = in->confidence.value_or(1.0);
    switch (cls) {
        case SceneClass::Human: o.detector_label = DetectorLabel::Person; break;
        // No elephant class in the base detector; the nearest class is cow.
        case SceneClass::Cow:
        case SceneClass::Elephant: o.detector_label = DetectorLabel::Cow; break;
        default: o.detector_label = DetectorLabel::None; break;
    }
    f.objects.push_back(o);
    return f;
}

}  // namespace netra
