#include <gtest/gtest.h>

#include <boost/crc.hpp>

#include <algorithm>
#include <set>

#include "netra/alert.hpp"
#include "netra/random.hpp"
#include "support.hpp"

namespace netra {
namespace {

using test::error_kind;

std::uint16_t boost_crc(std::span<const std::uint8_t> bytes) {
    boost::crc_optimal<16, 0x1021, 0xFFFF, 0, false, false> crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

std::span<const std::uint8_t> bytes_of(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

Alert golden_alert() {
    Alert a;
    a.timestamp_ms = 1772841600000ULL;
    a.lat = 26.74567;
    a.lon = 93.12345;
    a.alert_id = make_alert_id(a.timestamp_ms, a.lat, a.lon);
    a.label = Label::Human;
    a.priority = Priority::Critical;
    a.ips = 0.9;
    return a;
}

constexpr std::string_view kGoldenHex = "01328578035f197866010023280028cf87008e18590000019cc5980400ac3e";

Alert random_alert(Rng& rng) {
    Alert a;
    a.alert_id = rng.next_u64();
    a.label = static_cast<Label>(rng.uniform_int(0, 4));
    a.priority = static_cast<Priority>(rng.uniform_int(0, 3));
    a.ips = rng.uniform();
    a.lat = rng.uniform(-90.0, 90.0);
    a.lon = rng.uniform(-180.0, 180.0);
    a.timestamp_ms = rng.next_u64() >> 1;
    return a;
}

TEST(Crc16, CheckValue) {
    EXPECT_EQ(crc16_ccitt(bytes_of("123456789")), 0x29B1);
}

TEST(Crc16, MatchesBoostOnRandomInput) {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::uint8_t> buf(static_cast<std::size_t>(rng.uniform_int(0, 64)));
        for (auto& b : buf) b = static_cast<std::uint8_t>(rng.next_u64());
        ASSERT_EQ(crc16_ccitt(buf), boost_crc(buf));
    }
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(fnv1a64(bytes_of("")), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64(bytes_of("a")), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64(bytes_of("foobar")), 0x85944171f73967e8ULL);
}

TEST(AlertId, HashInputLayout) {
    // u64 timestamp, then lat and lon scaled by 1e5 as 48-bit signed, all big-endian.
    const std::uint8_t input[20] = {0x00, 0x00, 0x01, 0x9c, 0xc5, 0x98, 0x04, 0x00,  // 1772841600000
                                    0x00, 0x00, 0x00, 0x28, 0xcf, 0x87,              // 2674567
                                    0x00, 0x00, 0x00, 0x8e, 0x18, 0x59};             // 9312345
    EXPECT_EQ(make_alert_id(1772841600000ULL, 26.74567, 93.12345), fnv1a64(input));
    EXPECT_EQ(make_alert_id(1772841600000ULL, 26.74567, 93.12345), 0x328578035f197866ULL);
}

TEST(AlertId, NegativeCoordinatesSignExtend) {
    const std::uint8_t input[20] = {0, 0, 0, 0, 0, 0, 0, 1, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff,
                                    0xff, 0xff, 0xff, 0xff, 0xff, 0xfe};
    EXPECT_EQ(make_alert_id(1, -0.00001, -0.00002), fnv1a64(input));
}

TEST(AlertId, DeterministicAndCollisionFree) {
    EXPECT_EQ(make_alert_id(5, 1.0, 2.0), make_alert_id(5, 1.0, 2.0));
    std::set<std::uint64_t> ids;
    for (std::uint64_t t = 0; t < 10000; ++t) ids.insert(make_alert_id(1772841600000ULL + t, 26.74567, 93.12345));
    EXPECT_EQ(ids.size(), 10000u);
}

TEST(Codec, GoldenFrame) {
    const AlertFrame f = encode_payload(golden_alert());
    EXPECT_EQ(to_hex(f), kGoldenHex);
    EXPECT_EQ(boost_crc(std::span(f).first(29)), (f[29] << 8) | f[30]);
    EXPECT_EQ(decode_payload(from_hex(kGoldenHex)), quantize(golden_alert()));
}

TEST(Codec, RoundTripAfterQuantization) {
    Rng rng(12);
    for (int i = 0; i < 10000; ++i) {
        const Alert a = random_alert(rng);
        const Alert back = decode_payload(encode_payload(a));
        ASSERT_EQ(back, quantize(a));
        ASSERT_EQ(encode_payload(back), encode_payload(a));
    }
}

TEST(Codec, SingleBitFlipsRejected) {
    Rng rng(13);
    for (int i = 0; i < 10000; ++i) {
        AlertFrame f = encode_payload(random_alert(rng));
        const auto bit = rng.uniform_int(0, kFrameSize * 8 - 1);
        f[static_cast<std::size_t>(bit / 8)] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        const DecodeResult r = try_decode(f);
        ASSERT_FALSE(r.ok());
        ASSERT_EQ(r.error, ErrorKind::Integrity);
    }
}

TEST(Codec, TotalOnArbitraryBytes) {
    Rng rng(14);
    for (int i = 0; i < 10000; ++i) {
        std::vector<std::uint8_t> buf(static_cast<std::size_t>(rng.bernoulli(0.9) ? kFrameSize : rng.uniform_int(0, 40)));
        for (auto& b : buf) b = static_cast<std::uint8_t>(rng.next_u64());
        if (buf.size() == kFrameSize && rng.bernoulli(0.5)) {
            const auto c = crc16_ccitt(std::span(buf).first(29));
            buf[29] = static_cast<std::uint8_t>(c >> 8);
            buf[30] = static_cast<std::uint8_t>(c);
        }
        const DecodeResult r = try_decode(buf);
        ASSERT_NE(r.alert.has_value(), r.error.has_value());
        if (r.ok()) {
            const AlertFrame again = encode_payload(*r.alert);
            ASSERT_TRUE(std::equal(again.begin(), again.end(), buf.begin(), buf.end()));
        }
    }
}

TEST(Codec, TypedErrors) {
    std::vector<std::uint8_t> f(kFrameSize - 1, 0);
    EXPECT_EQ(error_kind([&] { decode_payload(f); }), ErrorKind::Length);

    AlertFrame v = encode_payload(golden_alert());
    v[0] = 0x02;
    const auto c = crc16_ccitt(std::span(v).first(29));
    v[29] = static_cast<std::uint8_t>(c >> 8);
    v[30] = static_cast<std::uint8_t>(c);
    EXPECT_EQ(error_kind([&] { decode_payload(v); }), ErrorKind::Version);

    Alert bad = golden_alert();
    bad.ips = 1.5;
    EXPECT_EQ(error_kind([&] { encode_payload(bad); }), ErrorKind::InvalidField);
    bad = golden_alert();
    bad.lat = 91.0;
    EXPECT_EQ(error_kind([&] { encode_payload(bad); }), ErrorKind::InvalidField);
}

TEST(Ack, RoundTripAndCrc) {
    const AckFrame a = encode_ack(0x0123456789abcdefULL);
    EXPECT_EQ(a[0], kAckMarker);
    EXPECT_EQ(decode_ack(a), 0x0123456789abcdefULL);
    AckFrame broken = a;
    broken[4] ^= 0x10;
    EXPECT_EQ(error_kind([&] { decode_ack(broken); }), ErrorKind::Integrity);
}

TEST(Hex, Errors) {
    EXPECT_EQ(error_kind([] { from_hex("abc"); }), ErrorKind::Parse);
    EXPECT_EQ(error_kind([] { from_hex("zz"); }), ErrorKind::Parse);
    EXPECT_EQ(from_hex("00ff").size(), 2u);
}

}  // namespace
}  // namespace netra
