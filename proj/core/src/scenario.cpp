#include "netra/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <initializer_list>
#include <set>

#include "netra/error.hpp"
#include "text_util.hpp"

namespace netra {

std::string_view to_string(ClassifierKind k) noexcept {
    return k == ClassifierKind::Oracle ? "oracle" : "heuristic";
}

namespace {

Error config_error(const std::string& path, const std::string& why) {
    return Error(ErrorKind::Config, path + ": " + why);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

/// Wraps a YAML mapping and tracks its dotted path for diagnostics.
class Section {
public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (!node_.IsMap()) throw config_error(path_.empty() ? "<root>" : path_, "expected a mapping");
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        const std::set<std::string_view> allowed(keys);
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.contains(key)) throw config_error(join(path_, key), "unknown key");
        }
    }

    bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }
    YAML::Node raw(const std::string& key) const { return node_[key]; }
    std::string path(const std::string& key) const { return join(path_, key); }

    Section section(const std::string& key) const { return Section(node_[key], join(path_, key)); }

    template <typename T>
    void read(const std::string& key, T& out) const {
        if (!has(key)) return;
        out = as<T>(key);
    }

    template <typename T>
    T as(const std::string& key) const {
        try {
            return node_[key].as<T>();
        } catch (const YAML::Exception&) {
            throw config_error(join(path_, key), "wrong type");
        }
    }

private:
    YAML::Node node_;
    std::string path_;
};

FusionMode parse_mode(const Section& s, const std::string& key) {
    if (auto m = fusion_mode_from(s.as<std::string>(key))) return *m;
    throw config_error(s.path(key), "expected binary, probabilistic or pir-only");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

void read_trace(const Section& s, const std::filesystem::path& base, Scenario& sc) {
    s.allow_only({"file", "generate"});
    if (s.has("file") == s.has("generate")) throw config_error("trace", "exactly one of file / generate is required");
    if (s.has("file")) {
        sc.trace.file = resolve(base, s.as<std::string>("file"));
        return;
    }
    const Section g = s.section("generate");
    g.allow_only({"name", "n_true", "n_false", "n_quiet", "d_bg", "duration_ms"});
    GeneratorSpec spec;
    spec.name = sc.name;
    g.read("name", spec.name);
    g.read("n_true", spec.n_true);
    g.read("n_false", spec.n_false);
    g.read("n_quiet", spec.n_quiet);
    g.read("d_bg", spec.d_bg_m);
    g.read("duration_ms", spec.duration_ms);
    sc.trace.generator = spec;
}

void read_platform(const YAML::Node& node, Scenario& sc) {
    if (node.IsScalar()) {
        const auto name = node.as<std::string>();
        auto p = PlatformProfile::builtin(name);
        if (!p) throw config_error("platform", "unknown built-in profile '" + name + "'");
        sc.platform = *p;
        return;
    }
    const Section s(node, "platform");
    s.allow_only({"base", "name", "idle_w", "inference_w", "inference_s", "camera_w", "camera_activation_s",
                  "radio_tx_w", "sensing_poll_ms", "fusion_ms", "capture_ms", "encode_ms"});
    if (s.has("base")) {
        auto p = PlatformProfile::builtin(s.as<std::string>("base"));
        if (!p) throw config_error("platform.base", "unknown built-in profile");
        sc.platform = *p;
    }
    auto& p = sc.platform;
    s.read("name", p.name);
    s.read("idle_w", p.idle_w);
    s.read("inference_w", p.inference_w);
    s.read("inference_s", p.inference_s);
    s.read("camera_w", p.camera_w);
    s.read("camera_activation_s", p.camera_activation_s);
    s.read("radio_tx_w", p.radio_tx_w);
    s.read("sensing_poll_ms", p.sensing_poll_ms);
    s.read("fusion_ms", p.fusion_ms);
    s.read("capture_ms", p.capture_ms);
    s.read("encode_ms", p.encode_ms);
}

void read_link(const Section& s, Scenario& sc) {
    s.allow_only({"snr_db", "delivery_prob", "ack_loss_prob", "propagation_ms"});
    if (s.has("snr_db")) sc.link.snr_margin_db = s.as<double>("snr_db");
    if (s.has("delivery_prob")) {
        const auto node = s.raw("delivery_prob");
        if (node.IsScalar()) {
            sc.link.delivery_prob.fill(s.as<double>("delivery_prob"));
        } else {
            const auto v = s.as<std::vector<double>>("delivery_prob");
            if (v.size() != sc.link.delivery_prob.size()) {
                throw config_error("link.delivery_prob", "needs one value or six (SF7..SF12)");
            }
            std::copy(v.begin(), v.end(), sc.link.delivery_prob.begin());
        }
    }
    s.read("ack_loss_prob", sc.link.ack_loss_prob);
    s.read("propagation_ms", sc.link.propagation_ms);
}

}  // namespace

Scenario parse_scenario(std::string_view yaml_text, const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw Error(ErrorKind::Config, std::string("scenario is not valid YAML: ") + e.what());
    }
    if (!root || root.IsNull()) throw Error(ErrorKind::Config, "empty scenario");
    const Section top(root, "");
    top.allow_only({"netra_scenario", "name", "seed", "trace", "fusion", "classify", "link", "tx", "platform", "node",
                    "receiver", "energy", "duration_ms", "sweep"});
    if (!top.has("netra_scenario")) throw config_error("netra_scenario", "missing version key");
    if (top.as<int>("netra_scenario") != kScenarioVersion) {
        throw Error(ErrorKind::Version, "netra_scenario: unsupported version");
    }

    Scenario sc;
    top.read("name", sc.name);
    top.read("seed", sc.seed);
    if (!top.has("trace")) throw config_error("trace", "missing");
    read_trace(top.section("trace"), base_dir, sc);

    if (top.has("fusion")) {
        const Section f = top.section("fusion");
        f.allow_only({"mode", "w_pir", "w_dist", "d_max", "tau_c", "gate_min", "gate_max", "v_sound"});
        if (f.has("mode")) sc.fusion.mode = parse_mode(f, "mode");
        f.read("w_pir", sc.fusion.w_pir);
        f.read("w_dist", sc.fusion.w_dist);
        f.read("d_max", sc.fusion.d_max);
        f.read("tau_c", sc.fusion.tau_c);
        f.read("gate_min", sc.fusion.gate_min);
        f.read("gate_max", sc.fusion.gate_max);
        f.read("v_sound", sc.fusion.v_sound);
    }
    if (top.has("classify")) {
        const Section c = top.section("classify");
        c.allow_only({"classifier", "confusion", "tau_ai", "tau_elephant", "lambda", "tau_alert"});
        if (c.has("classifier")) {
            const auto k = c.as<std::string>("classifier");
            if (k == "oracle") sc.classifier = ClassifierKind::Oracle;
            else if (k == "heuristic") sc.classifier = ClassifierKind::Heuristic;
            else throw config_error("classify.classifier", "expected oracle or heuristic");
        }
        if (c.has("confusion")) {
            const auto v = c.as<std::string>("confusion");
            if (v != "identity") sc.confusion = load_confusion(resolve(base_dir, v));
        }
        c.read("tau_ai", sc.classify.tau_ai);
        c.read("tau_elephant", sc.classify.tau_elephant);
        c.read("lambda", sc.classify.lambda);
        c.read("tau_alert", sc.classify.tau_alert);
    }
    if (top.has("link")) read_link(top.section("link"), sc);
    if (top.has("tx")) {
        const Section t = top.section("tx");
        t.allow_only({"max_retries", "backoff_base_ms", "ack_timeout_ms", "buffer_capacity", "bw_hz"});
        t.read("max_retries", sc.tx.max_retries);
        t.read("backoff_base_ms", sc.tx.backoff_base_ms);
        t.read("ack_timeout_ms", sc.tx.ack_timeout_ms);
        t.read("buffer_capacity", sc.tx.buffer_capacity);
        t.read("bw_hz", sc.tx.modem.bw_hz);
    }
    if (top.has("platform")) read_platform(root["platform"], sc);
    if (top.has("node")) {
        const Section n = top.section("node");
        n.allow_only({"lat", "lon", "epoch_ms"});
        n.read("lat", sc.lat);
        n.read("lon", sc.lon);
        n.read("epoch_ms", sc.epoch_ms);
    }
    if (top.has("receiver")) {
        const Section r = top.section("receiver");
        r.allow_only({"dedup_window_ms"});
        r.read("dedup_window_ms", sc.dedup_window_ms);
    }
    if (top.has("energy")) {
        const Section e = top.section("energy");
        e.allow_only({"battery_wh"});
        if (e.has("battery_wh")) sc.battery_wh = e.as<double>("battery_wh");
    }
    if (top.has("duration_ms")) sc.duration_ms = top.as<std::int64_t>("duration_ms");
    top.read("sweep", sc.sweep);

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    return parse_scenario(text, path.parent_path());
}

void Scenario::validate() const {
    fusion.validate();
    classify.validate();
    confusion.validate();
    link.validate();
    tx.validate();
    platform.validate();
    if (!(lat >= -90.0 && lat <= 90.0)) throw config_error("node.lat", "must be in [-90,90]");
    if (!(lon >= -180.0 && lon <= 180.0)) throw config_error("node.lon", "must be in [-180,180]");
    if (dedup_window_ms < 0) throw config_error("receiver.dedup_window_ms", "must be non-negative");
    if (battery_wh && !(*battery_wh > 0.0)) throw config_error("energy.battery_wh", "must be positive");
    if (duration_ms && *duration_ms < 0) throw config_error("duration_ms", "must be non-negative");
    for (double t : sweep) {
        if (!(t >= 0.0 && t <= 1.0)) throw config_error("sweep", "thresholds must be in [0,1]");
    }
    if (!trace.file && !trace.generator) throw config_error("trace", "no trace source");
}

EventTrace resolve_trace(const Scenario& sc) {
    if (sc.trace.file) return load_trace(*sc.trace.file);
    return generate_trace(*sc.trace.generator, sc.seed);
}

}  // namespace netra
