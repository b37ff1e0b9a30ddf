#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netra/classify.hpp"
#include "netra/error.hpp"

namespace netra {

struct Alert {
    std::uint64_t alert_id = 0;
    Label label = Label::Background;
    double ips = 0.0;
    double lat = 0.0;  // degrees
    double lon = 0.0;  // degrees
    std::uint64_t timestamp_ms = 0;  // ms since Unix epoch
    Priority priority = Priority::Low;

    bool operator==(const Alert&) const = default;
};

/// Rounds ips to 1e-4 and coordinates to 1e-5 degrees, as on the wire.
Alert quantize(const Alert& a);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// FNV-1a over timestamp (u64) || lat*1e5 (i48) || lon*1e5 (i48), big-endian.
std::uint64_t make_alert_id(std::uint64_t timestamp_ms, double lat, double lon);

/// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection.
std::uint16_t crc16_ccitt(std::span<const std::uint8_t> bytes) noexcept;

// Wire layout (big-endian):
//   0      version (0x01)
//   1..8   alert_id
//   9      label
//   10     priority
//   11..12 ips * 1e4
//   13..16 lat * 1e5 (signed)
//   17..20 lon * 1e5 (signed)
//   21..28 timestamp ms
//   29..30 CRC over bytes 0..28
inline constexpr std::size_t kFrameSize = 31;
inline constexpr std::uint8_t kFrameVersion = 0x01;
using AlertFrame = std::array<std::uint8_t, kFrameSize>;

/// Throws Error{InvalidField} for out-of-range fields.
AlertFrame encode_payload(const Alert& alert);

/// Throws Error{Length | Integrity | Version | InvalidField}.
Alert decode_payload(std::span<const std::uint8_t> bytes);

struct DecodeResult {
    std::optional<Alert> alert;
    std::optional<ErrorKind> error;
    bool ok() const noexcept { return alert.has_value(); }
};

/// Non-throwing decode: exactly one of alert / error is set.
DecodeResult try_decode(std::span<const std::uint8_t> bytes) noexcept;

// ACK: 0x81 || alert_id || CRC
inline constexpr std::size_t kAckSize = 11;
inline constexpr std::uint8_t kAckMarker = 0x81;
using AckFrame = std::array<std::uint8_t, kAckSize>;

AckFrame encode_ack(std::uint64_t alert_id);
std::uint64_t decode_ack(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Throws Error{Parse} on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace netra
