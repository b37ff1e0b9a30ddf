#include <gtest/gtest.h>

#include <cstdio>

#include "netra/receiver.hpp"

namespace netra {
namespace {

Alert make(std::uint64_t ts, Priority p, Label l = Label::Human) {
    Alert a;
    a.timestamp_ms = ts;
    a.lat = 26.74567;
    a.lon = 93.12345;
    a.alert_id = make_alert_id(ts, a.lat, a.lon);
    a.label = l;
    a.priority = p;
    a.ips = 0.75;
    return a;
}

std::vector<std::uint8_t> wire(const Alert& a) {
    const AlertFrame f = encode_payload(a);
    return {f.begin(), f.end()};
}

TEST(Receiver, FirstSightingEmitsEvent) {
    Receiver rx;
    const auto e = rx.process(500, wire(make(100, Priority::Critical)));
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->latency_ms, 400);
    EXPECT_EQ(e->dedup_count, 0u);
    EXPECT_TRUE(rx.seen(e->alert_id));
}

TEST(Receiver, DuplicatesInsideWindowCollapse) {
    Receiver rx(60000);
    const auto bytes = wire(make(0, Priority::High, Label::Obstruction));
    ASSERT_TRUE(rx.process(1000, bytes));
    EXPECT_FALSE(rx.process(30000, bytes));
    EXPECT_FALSE(rx.process(61000, bytes));
    ASSERT_EQ(rx.log().size(), 1u);
    EXPECT_EQ(rx.log()[0].dedup_count, 2u);
    EXPECT_EQ(rx.stats().duplicates, 2u);
}

TEST(Receiver, WindowMeasuredFromFirstSighting) {
    Receiver rx(60000);
    const auto bytes = wire(make(0, Priority::High));
    rx.process(1000, bytes);
    rx.process(50000, bytes);
    EXPECT_TRUE(rx.process(61001, bytes).has_value());
    EXPECT_EQ(rx.log().size(), 2u);
}

TEST(Receiver, CriticalBeforeHighOnSameTick) {
    Receiver rx;
    const std::vector<std::vector<std::uint8_t>> frames = {
        wire(make(10, Priority::High, Label::Obstruction)),
        wire(make(20, Priority::Critical, Label::Elephant)),
        wire(make(5, Priority::High, Label::Obstruction)),
    };
    const auto ev = rx.process_tick(100, frames);
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_EQ(ev[0].priority, Priority::Critical);
    EXPECT_EQ(ev[1].alert_timestamp_ms, 5u);
    EXPECT_EQ(ev[2].alert_timestamp_ms, 10u);
}

TEST(Receiver, SameTickDuplicate) {
    Receiver rx;
    const auto bytes = wire(make(1, Priority::Critical));
    const std::vector<std::vector<std::uint8_t>> frames = {bytes, bytes};
    EXPECT_EQ(rx.process_tick(10, frames).size(), 1u);
    EXPECT_EQ(rx.log()[0].dedup_count, 1u);
}

TEST(Receiver, CorruptFramesCountedNotEmitted) {
    Receiver rx;
    auto bytes = wire(make(1, Priority::Critical));
    bytes[5] ^= 0x01;
    EXPECT_FALSE(rx.process(10, bytes));
    EXPECT_FALSE(rx.process(10, std::vector<std::uint8_t>{1, 2, 3}));
    EXPECT_EQ(rx.stats().decode_failures, 2u);
    EXPECT_EQ(rx.stats().frames, 2u);
    EXPECT_TRUE(rx.log().empty());
}

TEST(Receiver, EpochShiftsLatency) {
    Receiver rx(60000, 1000000);
    const auto e = rx.process(500, wire(make(1000100, Priority::Critical)));
    ASSERT_TRUE(e);
    EXPECT_EQ(e->latency_ms, 400);
}

TEST(EventLog, Format) {
    Receiver rx;
    rx.process(2400, wire(make(0, Priority::Critical, Label::Elephant)));
    const std::string log = format_event_log(rx.log());
    char id[17];
    std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(make(0, Priority::Critical).alert_id));
    EXPECT_EQ(log, std::string("2400,") + id + ",elephant,critical,2400,0\n");
}

}  // namespace
}  // namespace netra
