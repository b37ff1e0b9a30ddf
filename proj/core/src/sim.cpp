#include "netra/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "netra/error.hpp"

namespace netra {

namespace {

constexpr std::uint64_t kRadioStream = 0x6e6574726152584bULL;

enum class EvKind { Decision, NodeDone, RadioDone, RxTick };

struct Ev {
    std::int64_t t = 0;
    std::uint64_t seq = 0;
    EvKind kind = EvKind::Decision;
    std::size_t ref = 0;

    bool operator>(const Ev& o) const { return std::tie(t, seq) > std::tie(o.t, o.seq); }
};

struct Queued {
    Priority priority;
    std::int64_t ready_ms;
    std::size_t record;

    bool operator<(const Queued& o) const {
        return std::tie(priority, ready_ms, record) < std::tie(o.priority, o.ready_ms, o.record);
    }
};

std::unique_ptr<Classifier> make_classifier(const Scenario& sc) {
    if (sc.classifier == ClassifierKind::Heuristic) return std::make_unique<HeuristicClassifier>(sc.classify);
    return std::make_unique<OracleClassifier>(sc.confusion, sc.seed);
}

std::optional<double> pct(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return 100.0 * double(num) / double(den);
}

std::optional<double> reduction_pct(std::size_t kept, std::size_t total) {
    if (total == 0) return std::nullopt;
    return (1.0 - double(kept) / double(total)) * 100.0;
}

LatencyStats latency_stats(std::vector<std::int64_t> v) {
    LatencyStats s;
    s.count = v.size();
    if (v.empty()) return s;
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (auto x : v) sum += double(x);
    s.mean_ms = sum / double(v.size());
    auto rank = [&](double q) {
        auto k = static_cast<std::size_t>(std::ceil(q * double(v.size())));
        return v[std::max<std::size_t>(k, 1) - 1];
    };
    s.p50_ms = rank(0.50);
    s.p95_ms = rank(0.95);
    s.max_ms = v.back();
    return s;
}

/// Single-run state: one edge node, one radio, one receiver.
class Simulation {
public:
    Simulation(const Scenario& sc, const EventTrace& trace)
        : sc_(sc),
          trace_(trace),
          classifier_(make_classifier(sc)),
          rng_(mix64(sc.seed ^ kRadioStream)),
          tx_(sc.tx),
          rx_(sc.dedup_window_ms, static_cast<std::int64_t>(sc.epoch_ms)) {}

    RunResult run() {
        const auto calib_d = trace_.calibration_distances(sc_.fusion.v_sound);
        const CalibrationState calib = calibrate_background(calib_d);

        for (std::size_t i = 0; i < trace_.samples.size(); ++i) {
            const SensorSample& s = trace_.samples[i];
            if (is_calibration(s.truth)) continue;
            EventRecord rec;
            rec.sample_index = i;
            rec.t_ms = s.t_ms;
            rec.pir = s.pir;
            rec.truth_intrusion = is_intrusion(s.truth);
            rec.truth_false_trigger = is_false_trigger(s.truth);
            rec.fusion = activation_pipeline(s, calib, sc_.fusion);
            end_ms_ = std::max(end_ms_, s.t_ms);
            if (rec.fusion.camera) {
                push(s.t_ms + sc_.platform.sensing_poll_ms + sc_.platform.fusion_ms, EvKind::Decision,
                     result_.events.size());
            }
            result_.events.push_back(std::move(rec));
        }

        while (!queue_.empty()) {
            const Ev ev = queue_.top();
            queue_.pop();
            end_ms_ = std::max(end_ms_, ev.t);
            switch (ev.kind) {
                case EvKind::Decision:
                    node_queue_.push_back(ev.ref);
                    if (!node_busy_) start_node(ev.t);
                    break;
                case EvKind::NodeDone:
                    node_done(ev.t, ev.ref);
                    break;
                case EvKind::RadioDone:
                    radio_busy_ = false;
                    start_radio(ev.t);
                    break;
                case EvKind::RxTick:
                    rx_tick(ev.t);
                    break;
            }
        }
        finish();
        return std::move(result_);
    }

private:
    void push(std::int64_t t, EvKind kind, std::size_t ref) { queue_.push({t, seq_++, kind, ref}); }

    void start_node(std::int64_t now) {
        if (node_queue_.empty()) return;
        const std::size_t ref = node_queue_.front();
        node_queue_.pop_front();
        node_busy_ = true;
        const auto& p = sc_.platform;
        push(now + p.capture_ms + p.inference_ms() + p.encode_ms, EvKind::NodeDone, ref);
    }

    void node_done(std::int64_t now, std::size_t ref) {
        EventRecord& rec = result_.events[ref];
        const SensorSample& s = trace_.samples[rec.sample_index];
        ++inferences_;

        const FrameDescriptor frame = render_scene(s.truth);
        const Detection det = classifier_->classify(frame, rec.sample_index);
        const GateResult gate = alert_gate(det, rec.fusion.p_intrusion, sc_.classify);
        rec.detection = det;
        rec.gate = gate;
        if (gate.alert) {
            rec.dispatch = dispatch_for(gate.priority);
            if (*rec.dispatch == Dispatch::Transmit) enqueue_alert(now, rec, gate);
        }

        node_busy_ = false;
        start_node(now);
    }

    void enqueue_alert(std::int64_t now, EventRecord& rec, const GateResult& gate) {
        Alert a;
        a.timestamp_ms = sc_.epoch_ms + static_cast<std::uint64_t>(rec.t_ms);
        a.lat = sc_.lat;
        a.lon = sc_.lon;
        a.label = gate.label;
        a.priority = gate.priority;
        a.ips = gate.ips;
        a.alert_id = make_alert_id(a.timestamp_ms, a.lat, a.lon);
        a = quantize(a);
        rec.alert_id = a.alert_id;

        AlertRecord ar;
        ar.alert = a;
        ar.sample_index = rec.sample_index;
        ar.event_t_ms = rec.t_ms;
        ar.ready_ms = now;
        ar.state = TxStateKind::Idle;
        record_of_.emplace(a.alert_id, result_.alerts.size());
        radio_queue_.push_back({a.priority, now, result_.alerts.size()});
        std::push_heap(radio_queue_.begin(), radio_queue_.end(), heap_order);
        result_.alerts.push_back(ar);
        if (!radio_busy_) start_radio(now);
    }

    static bool heap_order(const Queued& x, const Queued& y) { return y < x; }

    void start_radio(std::int64_t now) {
        std::optional<TxOutcome> out;
        Alert sent;
        if (!radio_queue_.empty()) {
            std::pop_heap(radio_queue_.begin(), radio_queue_.end(), heap_order);
            const Queued q = radio_queue_.back();
            radio_queue_.pop_back();
            sent = result_.alerts[q.record].alert;
            out = tx_.send(sent, sc_.link, rng_, now);
        } else if (last_delivered_) {
            out = tx_.resend_buffered(sc_.link, rng_, now, &sent);
        }
        if (!out) return;

        radio_busy_ = true;
        last_delivered_ = out->state == TxStateKind::Delivered;
        radio_airtime_ms_ += out->tx_airtime_ms * static_cast<std::int64_t>(out->attempts.size());

        AlertRecord& ar = result_.alerts[record_of_.at(sent.alert_id)];
        ar.state = out->state;
        ar.retries_used = out->retries_used;
        ar.sf = out->sf;
        if (last_delivered_) {
            ar.acked_at_ms = now + out->latency_ms;
            ar.latency_ms = *ar.acked_at_ms - ar.event_t_ms;
        }

        const AlertFrame frame = encode_payload(sent);
        for (const TxAttempt& a : out->attempts) {
            if (!a.frame_delivered) continue;
            const std::int64_t at = now + a.arrival_ms;
            auto [it, fresh] = arrivals_.try_emplace(at);
            it->second.emplace_back(frame.begin(), frame.end());
            if (fresh) push(at, EvKind::RxTick, 0);
        }
        push(now + out->busy_ms, EvKind::RadioDone, 0);
    }

    void rx_tick(std::int64_t now) {
        auto it = arrivals_.find(now);
        if (it == arrivals_.end()) return;
        rx_.process_tick(now, it->second);
        arrivals_.erase(it);
    }

    void finish() {
        for (const DropEvent& d : tx_.drops()) {
            auto it = record_of_.find(d.alert.alert_id);
            if (it != record_of_.end()) result_.alerts[it->second].state = TxStateKind::Failed;
        }
        result_.driver_events = rx_.log();
        result_.drops = tx_.drops();
        result_.conserved = tx_.conserved();

        MetricsReport& r = result_.report;
        r.scenario = sc_.name;
        r.seed = sc_.seed;
        r.mode = sc_.fusion.mode;
        r.tau_c = sc_.fusion.tau_c;
        r.platform = sc_.platform.name;
        r.classifier = std::string(classifier_->name());

        std::vector<std::int64_t> latencies;
        for (const EventRecord& e : result_.events) {
            ++r.n_events;
            if (e.truth_intrusion) ++r.ground_truth_intrusions;
            if (e.truth_false_trigger) ++r.ground_truth_false_triggers;
            if (e.pir) ++r.pir_triggers;
            if (e.fusion.camera) {
                ++r.camera_activations;
                if (e.truth_intrusion) ++r.camera_true;
                else ++r.camera_false;
            } else {
                ++r.reject_reasons[std::string(to_string(e.fusion.reject_reason))];
            }
            if (e.detection) ++r.detections[std::string(to_string(e.detection->label))];
            if (e.gate) {
                if (e.gate->alert) ++r.ai_confirmed;
                else ++r.gate_suppressed;
            }
            if (e.dispatch == Dispatch::Log) ++r.logged_medium;
            if (e.dispatch == Dispatch::Transmit && e.truth_intrusion) ++r.transmitted_true;
        }
        for (const AlertRecord& a : result_.alerts) {
            if (a.latency_ms) latencies.push_back(*a.latency_ms);
        }

        r.transmitted = tx_.alerts_in();
        r.delivered = tx_.delivered();
        r.buffered = tx_.buffer().size();
        r.dropped = tx_.drops().size();
        r.frames_sent = tx_.frames_sent();
        r.receiver_duplicates = rx_.stats().duplicates;
        r.receiver_decode_failures = rx_.stats().decode_failures;
        r.driver_events = rx_.log().size();

        r.detection_rate = pct(r.camera_true, r.ground_truth_intrusions);
        r.false_alarm_rate = pct(r.camera_false, r.ground_truth_false_triggers);
        r.suppression_pct = reduction_pct(r.transmitted, r.pir_triggers);
        r.trigger_elimination_pct = reduction_pct(r.camera_activations, r.pir_triggers);
        r.pdr_pct = pct(r.delivered, r.transmitted);
        r.alert_detection_rate = pct(r.transmitted_true, r.ground_truth_intrusions);
        r.latency = latency_stats(std::move(latencies));

        r.duration_ms = sc_.duration_ms.value_or(end_ms_);
        EnergyUsage usage;
        usage.camera_activations = r.camera_activations;
        usage.inferences = inferences_;
        usage.duration_ms = r.duration_ms;
        usage.radio_airtime_ms = radio_airtime_ms_;
        r.energy = run_ledger(usage, sc_.platform);
        r.camera_wh_pir_baseline = camera_energy(r.pir_triggers, sc_.platform);
        if (r.camera_wh_pir_baseline > 0.0) r.camera_savings_pct = savings(r.camera_wh_pir_baseline, r.energy.camera_wh);
        if (sc_.battery_wh) r.battery_days = battery_days(*sc_.battery_wh, r.energy, r.duration_ms);

        r.funnel = {r.pir_triggers, r.camera_activations, r.ai_confirmed, r.transmitted, r.delivered};
    }

    const Scenario& sc_;
    const EventTrace& trace_;
    std::unique_ptr<Classifier> classifier_;
    Rng rng_;
    Transmitter tx_;
    Receiver rx_;

    std::priority_queue<Ev, std::vector<Ev>, std::greater<>> queue_;
    std::uint64_t seq_ = 0;
    std::deque<std::size_t> node_queue_;
    bool node_busy_ = false;
    std::vector<Queued> radio_queue_;
    bool radio_busy_ = false;
    bool last_delivered_ = false;
    std::map<std::int64_t, std::vector<std::vector<std::uint8_t>>> arrivals_;
    std::unordered_map<std::uint64_t, std::size_t> record_of_;

    std::size_t inferences_ = 0;
    std::int64_t radio_airtime_ms_ = 0;
    std::int64_t end_ms_ = 0;
    RunResult result_;
};

void check_taus(std::span<const double> taus) {
    if (taus.empty()) throw Error(ErrorKind::Config, "sweep: threshold list is empty");
    for (double t : taus) {
        if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::Config, "sweep: threshold outside [0,1]");
    }
}

}  // namespace

RunResult run(const Scenario& scenario, const EventTrace& trace) {
    scenario.validate();
    Simulation sim(scenario, trace);
    return sim.run();
}

RunResult run(const Scenario& scenario) {
    scenario.validate();
    const EventTrace trace = resolve_trace(scenario);
    return run(scenario, trace);
}

std::vector<MetricsReport> sweep(const Scenario& scenario, const EventTrace& trace, std::span<const double> taus) {
    check_taus(taus);
    std::vector<MetricsReport> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        Scenario point = scenario;
        point.fusion.mode = FusionMode::Probabilistic;
        point.fusion.tau_c = tau;
        out.push_back(run(point, trace).report);
    }
    return out;
}

std::vector<MetricsReport> sweep(const Scenario& scenario, std::span<const double> taus) {
    check_taus(taus);
    scenario.validate();
    const EventTrace trace = resolve_trace(scenario);
    return sweep(scenario, trace, taus);
}

Funnel funnel_report(const RunResult& result) {
    return result.report.funnel;
}

}  // namespace netra
