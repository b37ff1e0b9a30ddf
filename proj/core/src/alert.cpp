#include "netra/alert.hpp"

#include <cmath>

namespace netra {

namespace {

void put_be(std::uint8_t* out, std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>(v & 0xFF);
        v >>= 8;
    }
}

std::uint64_t get_be(const std::uint8_t* in, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | in[i];
    return v;
}

std::int64_t fixed_e5(double deg) { return std::llround(deg * 1e5); }

void check_fields(const Alert& a) {
    if (!(a.ips >= 0.0 && a.ips <= 1.0)) throw Error(ErrorKind::InvalidField, "ips outside [0,1]");
    if (!(a.lat >= -90.0 && a.lat <= 90.0)) throw Error(ErrorKind::InvalidField, "latitude outside [-90,90]");
    if (!(a.lon >= -180.0 && a.lon <= 180.0)) throw Error(ErrorKind::InvalidField, "longitude outside [-180,180]");
    if (static_cast<unsigned>(a.label) >= kLabelCount) throw Error(ErrorKind::InvalidField, "unknown label");
    if (static_cast<unsigned>(a.priority) > 3) throw Error(ErrorKind::InvalidField, "unknown priority");
}

constexpr std::array<std::uint16_t, 256> make_crc_table() {
    std::array<std::uint16_t, 256> t{};
    for (unsigned i = 0; i < 256; ++i) {
        std::uint16_t c = static_cast<std::uint16_t>(i << 8);
        for (int b = 0; b < 8; ++b) c = static_cast<std::uint16_t>((c & 0x8000) ? (c << 1) ^ 0x1021 : c << 1);
        t[i] = c;
    }
    return t;
}

constexpr auto kCrcTable = make_crc_table();

}  // namespace

Alert quantize(const Alert& a) {
    Alert q = a;
    q.ips = static_cast<double>(std::llround(a.ips * 1e4)) / 1e4;
    q.lat = static_cast<double>(fixed_e5(a.lat)) / 1e5;
    q.lon = static_cast<double>(fixed_e5(a.lon)) / 1e5;
    return q;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t make_alert_id(std::uint64_t timestamp_ms, double lat, double lon) {
    std::array<std::uint8_t, 20> buf{};
    put_be(buf.data(), timestamp_ms, 8);
    put_be(buf.data() + 8, static_cast<std::uint64_t>(fixed_e5(lat)), 6);
    put_be(buf.data() + 14, static_cast<std::uint64_t>(fixed_e5(lon)), 6);
    return fnv1a64(buf);
}

std::uint16_t crc16_ccitt(std::span<const std::uint8_t> bytes) noexcept {
    std::uint16_t crc = 0xFFFF;
    for (auto b : bytes) crc = static_cast<std::uint16_t>((crc << 8) ^ kCrcTable[((crc >> 8) ^ b) & 0xFF]);
    return crc;
}

AlertFrame encode_payload(const Alert& a) {
    check_fields(a);
    AlertFrame f{};
    f[0] = kFrameVersion;
    put_be(&f[1], a.alert_id, 8);
    f[9] = static_cast<std::uint8_t>(a.label);
    f[10] = static_cast<std::uint8_t>(a.priority);
    put_be(&f[11], static_cast<std::uint64_t>(std::llround(a.ips * 1e4)), 2);
    put_be(&f[13], static_cast<std::uint32_t>(static_cast<std::int32_t>(fixed_e5(a.lat))), 4);
    put_be(&f[17], static_cast<std::uint32_t>(static_cast<std::int32_t>(fixed_e5(a.lon))), 4);
    put_be(&f[21], a.timestamp_ms, 8);
    put_be(&f[29], crc16_ccitt(std::span(f).first(29)), 2);
    return f;
}

Alert decode_payload(std::span<const std::uint8_t> b) {
    if (b.size() != kFrameSize) {
        throw Error(ErrorKind::Length, "alert frame must be 31 bytes, got " + std::to_string(b.size()));
    }
    if (crc16_ccitt(b.first(29)) != get_be(&b[29], 2)) throw Error(ErrorKind::Integrity, "alert frame CRC mismatch");
    if (b[0] != kFrameVersion) throw Error(ErrorKind::Version, "unknown alert frame version " + std::to_string(b[0]));
    if (b[9] >= kLabelCount) throw Error(ErrorKind::InvalidField, "unknown label code");
    if (b[10] > 3) throw Error(ErrorKind::InvalidField, "unknown priority code");
    const auto ips_q = get_be(&b[11], 2);
    if (ips_q > 10000) throw Error(ErrorKind::InvalidField, "ips above 1");
    const auto lat_q = static_cast<std::int32_t>(static_cast<std::uint32_t>(get_be(&b[13], 4)));
    const auto lon_q = static_cast<std::int32_t>(static_cast<std::uint32_t>(get_be(&b[17], 4)));
    if (lat_q < -9000000 || lat_q > 9000000) throw Error(ErrorKind::InvalidField, "latitude out of range");
    if (lon_q < -18000000 || lon_q > 18000000) throw Error(ErrorKind::InvalidField, "longitude out of range");

    Alert a;
    a.alert_id = get_be(&b[1], 8);
    a.label = static_cast<Label>(b[9]);
    a.priority = static_cast<Priority>(b[10]);
    a.ips = static_cast<double>(ips_q) / 1e4;
    a.lat = static_cast<double>(lat_q) / 1e5;
    a.lon = static_cast<double>(lon_q) / 1e5;
    a.timestamp_ms = get_be(&b[21], 8);
    return a;
}

DecodeResult try_decode(std::span<const std::uint8_t> bytes) noexcept {
    try {
        return {decode_payload(bytes), std::nullopt};
    } catch (const Error& e) {
        return {std::nullopt, e.kind()};
    } catch (...) {
        return {std::nullopt, ErrorKind::InvalidField};
    }
}

AckFrame encode_ack(std::uint64_t alert_id) {
    AckFrame f{};
    f[0] = kAckMarker;
    put_be(&f[1], alert_id, 8);
    put_be(&f[9], crc16_ccitt(std::span(f).first(9)), 2);
    return f;
}

std::uint64_t decode_ack(std::span<const std::uint8_t> b) {
    if (b.size() != kAckSize) throw Error(ErrorKind::Length, "ack frame must be 11 bytes");
    if (crc16_ccitt(b.first(9)) != get_be(&b[9], 2)) throw Error(ErrorKind::Integrity, "ack frame CRC mismatch");
    if (b[0] != kAckMarker) throw Error(ErrorKind::Version, "not an ack frame");
    return get_be(&b[1], 8);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s += kDigits[b >> 4];
        s += kDigits[b & 0xF];
    }
    return s;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw Error(ErrorKind::Parse, "hex string has odd length");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorKind::Parse, "non-hex character in input");
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

}  // namespace netra
