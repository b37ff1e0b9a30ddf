#include "netra/receiver.hpp"

#include <algorithm>
#include <cstdio>

namespace netra {

std::vector<DriverAlertEvent> Receiver::process_tick(std::int64_t now_ms,
                                                     std::span<const std::vector<std::uint8_t>> frames) {
    std::vector<DriverAlertEvent> fresh;
    for (const auto& bytes : frames) {
        ++stats_.frames;
        const DecodeResult r = try_decode(bytes);
        if (!r.ok()) {
            ++stats_.decode_failures;
            continue;
        }
        const Alert& a = *r.alert;
        if (auto it = last_seen_.find(a.alert_id);
            it != last_seen_.end() && now_ms - it->second.first_ms <= window_ms_) {
            ++stats_.duplicates;
            ++log_[it->second.log_index].dedup_count;
            continue;
        }
        // Duplicates within this same tick are caught via `fresh`.
        auto same_tick = std::find_if(fresh.begin(), fresh.end(), [&](auto& e) { return e.alert_id == a.alert_id; });
        if (same_tick != fresh.end()) {
            ++stats_.duplicates;
            ++same_tick->dedup_count;
            continue;
        }
        DriverAlertEvent e;
        e.t_ms = now_ms;
        e.alert_id = a.alert_id;
        e.label = a.label;
        e.priority = a.priority;
        e.alert_timestamp_ms = a.timestamp_ms;
        e.latency_ms = epoch_ms_ + now_ms - static_cast<std::int64_t>(a.timestamp_ms);
        fresh.push_back(e);
    }
    std::stable_sort(fresh.begin(), fresh.end(), [](const auto& x, const auto& y) {
        if (x.priority != y.priority) return x.priority < y.priority;
        return x.alert_timestamp_ms < y.alert_timestamp_ms;
    });
    for (const auto& e : fresh) {
        last_seen_[e.alert_id] = {now_ms, log_.size()};
        log_.push_back(e);
    }
    stats_.events += fresh.size();
    return fresh;
}

std::optional<DriverAlertEvent> Receiver::process(std::int64_t now_ms, std::span<const std::uint8_t> frame) {
    const std::vector<std::uint8_t> one(frame.begin(), frame.end());
    auto events = process_tick(now_ms, std::span(&one, 1));
    if (events.empty()) return std::nullopt;
    return events.front();
}

std::string format_event_log(std::span<const DriverAlertEvent> events) {
    std::string out;
    char id[17];
    for (const auto& e : events) {
        std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(e.alert_id));
        out += std::to_string(e.t_ms) + ',' + id + ',' + std::string(to_string(e.label)) + ',' +
               std::string(to_string(e.priority)) + ',' + std::to_string(e.latency_ms) + ',' +
               std::to_string(e.dedup_count) + '\n';
    }
    return out;
}

}  // namespace netra
