#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "netra/alert.hpp"

namespace netra {

struct DriverAlertEvent {
    std::int64_t t_ms = 0;  // arrival, scenario clock
    std::uint64_t alert_id = 0;
    Label label = Label::Background;
    Priority priority = Priority::Low;
    std::int64_t latency_ms = 0;  // arrival - alert timestamp
    std::size_t dedup_count = 0;
    std::uint64_t alert_timestamp_ms = 0;
};

struct ReceiverStats {
    std::size_t frames = 0;
    std::size_t decode_failures = 0;
    std::size_t duplicates = 0;
    std::size_t events = 0;
};

/// Train-side receiver. Emits one driver event per alert id; repeats inside
/// the dedup window only bump the original event's counter.
class Receiver {
public:
    explicit Receiver(std::int64_t dedup_window_ms = 60000, std::int64_t epoch_ms = 0)
        : window_ms_(dedup_window_ms), epoch_ms_(epoch_ms) {}

    /// Frames that arrive on the same tick; new events come back ordered by
    /// (priority, alert timestamp).
    std::vector<DriverAlertEvent> process_tick(std::int64_t now_ms,
                                               std::span<const std::vector<std::uint8_t>> frames);

    /// Single frame; returns the new event if one was emitted.
    std::optional<DriverAlertEvent> process(std::int64_t now_ms, std::span<const std::uint8_t> frame);

    const std::vector<DriverAlertEvent>& log() const noexcept { return log_; }
    const ReceiverStats& stats() const noexcept { return stats_; }
    bool seen(std::uint64_t alert_id) const { return last_seen_.contains(alert_id); }

private:
    struct Seen {
        std::int64_t first_ms;
        std::size_t log_index;
    };

    std::int64_t window_ms_;
    std::int64_t epoch_ms_;
    std::unordered_map<std::uint64_t, Seen> last_seen_;
    std::vector<DriverAlertEvent> log_;
    ReceiverStats stats_;
};

/// One line per event: t_ms,alert_id_hex,label,priority,latency_ms,dedup_count
std::string format_event_log(std::span<const DriverAlertEvent> events);

}  // namespace netra
