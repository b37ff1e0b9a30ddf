#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <vector>

#include "netra/alert.hpp"
#include "netra/random.hpp"

namespace netra {

inline constexpr int kMinSf = 7;
inline constexpr int kMaxSf = 12;
inline constexpr double kDefaultBandwidthHz = 125000.0;

/// LoRa modem settings. Coding rate is 4/(4 + coding_rate).
struct ModemConfig {
    double bw_hz = kDefaultBandwidthHz;
    int coding_rate = 1;  // 4/5
    int preamble_symbols = 8;
    bool explicit_header = true;
    bool crc_on = true;
};

/// Time on air in seconds. Low-data-rate optimisation is enabled when the
/// symbol time reaches 16 ms (SF11/SF12 at 125 kHz).
double airtime(std::size_t payload_len, int sf, const ModemConfig& modem = {});

/// Time on air rounded up to whole milliseconds.
std::int64_t airtime_ms(std::size_t payload_len, int sf, const ModemConfig& modem = {});

/// Minimum SNR at which `sf` demodulates: -7.5 dB at SF7, 2.5 dB lower per step.
double sf_snr_floor_db(int sf);

struct LinkModel {
    /// When set, drives the spreading-factor choice.
    std::optional<double> snr_margin_db;
    /// Per-attempt frame delivery probability for SF7..SF12.
    std::array<double, 6> delivery_prob{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    double ack_loss_prob = 0.0;
    std::int64_t propagation_ms = 1;

    double delivery_for(int sf) const;
    void validate() const;

    static LinkModel lossless() { return {}; }
    static LinkModel uniform(double p);
};

/// Smallest SF whose demodulation floor the link's SNR clears, else SF12.
/// Without an SNR figure, the smallest SF with the best delivery probability.
int adaptive_sf(const LinkModel& link);

struct TxPolicy {
    int max_retries = 3;
    std::int64_t backoff_base_ms = 1000;
    std::int64_t ack_timeout_ms = 3000;  // measured from end of transmission
    std::size_t buffer_capacity = 64;
    ModemConfig modem;

    void validate() const;
};

enum class TxStateKind { Idle, AwaitAck, Retrying, Buffered, Delivered, Failed };

std::string_view to_string(TxStateKind s) noexcept;

struct TxAttempt {
    int index = 0;
    std::int64_t start_ms = 0;   // relative to the first attempt
    bool frame_delivered = false;
    bool ack_delivered = false;
    std::int64_t arrival_ms = 0; // frame arrival at the receiver, if delivered
};

struct TxOutcome {
    TxStateKind state = TxStateKind::Idle;  // Delivered or Buffered
    int retries_used = 0;
    int sf = kMinSf;
    std::int64_t latency_ms = 0;  // first transmission start to ACK receipt
    std::int64_t busy_ms = 0;     // radio occupancy, including waits
    std::int64_t tx_airtime_ms = 0;
    std::int64_t ack_airtime_ms = 0;
    std::vector<TxAttempt> attempts;
};

/// Confirmed uplink with bounded retries and exponential backoff. Attempt k
/// (0-based) that fails is followed, after the ACK timeout, by a backoff of
/// backoff_base * 2^k before attempt k+1.
TxOutcome transmit_with_ack(const Alert& alert, const LinkModel& link, const TxPolicy& policy, Rng& rng);

struct DropEvent {
    Alert alert;
    std::int64_t t_ms = 0;
};

/// Sender side: wraps transmit_with_ack with the overflow buffer.
class Transmitter {
public:
    explicit Transmitter(TxPolicy policy);

    TxOutcome send(const Alert& alert, const LinkModel& link, Rng& rng, std::int64_t now_ms);

    /// Re-sends the oldest buffered alert; counted as a new attempt cycle, not
    /// a new alert.
    std::optional<TxOutcome> resend_buffered(const LinkModel& link, Rng& rng, std::int64_t now_ms,
                                             Alert* which = nullptr);

    const std::deque<Alert>& buffer() const noexcept { return buffer_; }
    const std::vector<DropEvent>& drops() const noexcept { return drops_; }
    std::size_t alerts_in() const noexcept { return alerts_in_; }
    std::size_t delivered() const noexcept { return delivered_; }
    std::size_t frames_sent() const noexcept { return frames_sent_; }
    const TxPolicy& policy() const noexcept { return policy_; }

    /// alerts_in == delivered + buffered + dropped
    bool conserved() const noexcept { return alerts_in_ == delivered_ + buffer_.size() + drops_.size(); }

private:
    TxOutcome attempt(const Alert& alert, const LinkModel& link, Rng& rng, std::int64_t now_ms);

    TxPolicy policy_;
    std::deque<Alert> buffer_;
    std::vector<DropEvent> drops_;
    std::size_t alerts_in_ = 0;
    std::size_t delivered_ = 0;
    std::size_t frames_sent_ = 0;
};

}  // namespace netra
