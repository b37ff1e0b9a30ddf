#include "netra/radio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netra {

namespace {

void check_sf(int sf) {
    if (sf < kMinSf || sf > kMaxSf) {
        throw Error(ErrorKind::Config, "spreading factor " + std::to_string(sf) + " outside SF7..SF12");
    }
}

}  // namespace

double airtime(std::size_t payload_len, int sf, const ModemConfig& m) {
    check_sf(sf);
    if (!(m.bw_hz > 0.0)) throw Error(ErrorKind::Config, "bandwidth must be positive");
    if (m.coding_rate < 1 || m.coding_rate > 4) throw Error(ErrorKind::Config, "coding rate must be 1..4");
    const double t_sym = std::ldexp(1.0, sf) / m.bw_hz;
    const int de = t_sym >= 0.016 ? 1 : 0;
    const int ih = m.explicit_header ? 0 : 1;
    const int crc = m.crc_on ? 1 : 0;
    const double num = 8.0 * static_cast<double>(payload_len) - 4.0 * sf + 28.0 + 16.0 * crc - 20.0 * ih;
    const double den = 4.0 * (sf - 2 * de);
    const double payload_symbols = 8.0 + std::max(std::ceil(num / den) * (m.coding_rate + 4), 0.0);
    const double preamble = (m.preamble_symbols + 4.25) * t_sym;
    return preamble + payload_symbols * t_sym;
}

std::int64_t airtime_ms(std::size_t payload_len, int sf, const ModemConfig& modem) {
    // Round away float noise before taking the ceiling.
    const double ms = std::round(airtime(payload_len, sf, modem) * 1e9) / 1e6;
    return static_cast<std::int64_t>(std::ceil(ms));
}

double sf_snr_floor_db(int sf) {
    check_sf(sf);
    return -7.5 - 2.5 * (sf - kMinSf);
}

double LinkModel::delivery_for(int sf) const {
    check_sf(sf);
    return delivery_prob[static_cast<std::size_t>(sf - kMinSf)];
}

void LinkModel::validate() const {
    for (double p : delivery_prob) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::Config, "link.delivery_prob: must be in [0,1]");
    }
    if (!(ack_loss_prob >= 0.0 && ack_loss_prob <= 1.0)) {
        throw Error(ErrorKind::Config, "link.ack_loss_prob: must be in [0,1]");
    }
    if (propagation_ms < 0) throw Error(ErrorKind::Config, "link.propagation_ms: must be non-negative");
    if (snr_margin_db && !std::isfinite(*snr_margin_db)) throw Error(ErrorKind::Config, "link.snr_db: must be finite");
}

LinkModel LinkModel::uniform(double p) {
    LinkModel l;
    l.delivery_prob.fill(p);
    return l;
}

int adaptive_sf(const LinkModel& link) {
    if (link.snr_margin_db) {
        for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
            if (*link.snr_margin_db >= sf_snr_floor_db(sf)) return sf;
        }
        return kMaxSf;
    }
    int best = kMinSf;
    for (int sf = kMinSf + 1; sf <= kMaxSf; ++sf) {
        if (link.delivery_for(sf) > link.delivery_for(best)) best = sf;
    }
    return best;
}

void TxPolicy::validate() const {
    if (max_retries < 0) throw Error(ErrorKind::Config, "tx.max_retries: must be non-negative");
    if (backoff_base_ms < 0) throw Error(ErrorKind::Config, "tx.backoff_base_ms: must be non-negative");
    if (ack_timeout_ms <= 0) throw Error(ErrorKind::Config, "tx.ack_timeout_ms: must be positive");
    if (buffer_capacity == 0) throw Error(ErrorKind::Config, "tx.buffer_capacity: must be positive");
}

std::string_view to_string(TxStateKind s) noexcept {
    switch (s) {
        case TxStateKind::Idle: return "idle";
        case TxStateKind::AwaitAck: return "await-ack";
        case TxStateKind::Retrying: return "retrying";
        case TxStateKind::Buffered: return "buffered";
        case TxStateKind::Delivered: return "delivered";
        case TxStateKind::Failed: return "failed";
    }
    return "?";
}

TxOutcome transmit_with_ack(const Alert& alert, const LinkModel& link, const TxPolicy& policy, Rng& rng) {
    (void)encode_payload(alert);  // rejects alerts that cannot go on the wire
    link.validate();
    policy.validate();

    TxOutcome out;
    out.sf = adaptive_sf(link);
    out.tx_airtime_ms = airtime_ms(kFrameSize, out.sf, policy.modem);
    out.ack_airtime_ms = airtime_ms(kAckSize, out.sf, policy.modem);
    const std::int64_t ack_round_trip = 2 * link.propagation_ms + out.ack_airtime_ms;
    if (ack_round_trip > policy.ack_timeout_ms) {
        throw Error(ErrorKind::Config, "tx.ack_timeout_ms: shorter than the ACK round trip at SF" +
                                           std::to_string(out.sf));
    }
    const double p = link.delivery_for(out.sf);

    std::int64_t start = 0;
    for (int k = 0; k <= policy.max_retries; ++k) {
        TxAttempt a;
        a.index = k;
        a.start_ms = start;
        a.frame_delivered = rng.bernoulli(p);
        if (a.frame_delivered) {
            a.arrival_ms = start + out.tx_airtime_ms + link.propagation_ms;
            a.ack_delivered = !rng.bernoulli(link.ack_loss_prob);
        }
        out.attempts.push_back(a);
        out.retries_used = k;
        if (a.ack_delivered) {
            out.state = TxStateKind::Delivered;
            out.latency_ms = start + out.tx_airtime_ms + ack_round_trip;
            out.busy_ms = out.latency_ms;
            return out;
        }
        const std::int64_t timeout_at = start + out.tx_airtime_ms + policy.ack_timeout_ms;
        if (k == policy.max_retries) {
            out.busy_ms = timeout_at;
            break;
        }
        start = timeout_at + (policy.backoff_base_ms << k);
    }
    out.state = TxStateKind::Buffered;
    return out;
}

Transmitter::Transmitter(TxPolicy policy) : policy_(policy) {
    policy_.validate();
}

TxOutcome Transmitter::attempt(const Alert& alert, const LinkModel& link, Rng& rng, std::int64_t now_ms) {
    TxOutcome out = transmit_with_ack(alert, link, policy_, rng);
    frames_sent_ += out.attempts.size();
    if (out.state == TxStateKind::Delivered) {
        ++delivered_;
        return out;
    }
    if (buffer_.size() == policy_.buffer_capacity) {
        drops_.push_back({buffer_.front(), now_ms + out.busy_ms});
        buffer_.pop_front();
    }
    buffer_.push_back(alert);
    return out;
}

TxOutcome Transmitter::send(const Alert& alert, const LinkModel& link, Rng& rng, std::int64_t now_ms) {
    ++alerts_in_;
    return attempt(alert, link, rng, now_ms);
}

std::optional<TxOutcome> Transmitter::resend_buffered(const LinkModel& link, Rng& rng, std::int64_t now_ms,
                                                      Alert* which) {
    if (buffer_.empty()) return std::nullopt;
    const Alert a = buffer_.front();
    buffer_.pop_front();
    if (which) *which = a;
    return attempt(a, link, rng, now_ms);
}

}  // namespace netra
