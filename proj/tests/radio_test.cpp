#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "netra/radio.hpp"
#include "support.hpp"

namespace netra {
namespace {

using test::error_kind;

/// Reference time-on-air from the SX127x datasheet, written out longhand.
double reference_airtime(int payload, int sf, double bw = 125000.0) {
    const double t_sym = std::pow(2.0, sf) / bw;
    const int de = t_sym >= 0.016 ? 1 : 0;
    const int ih = 0, crc = 1, cr = 1;
    const double t_preamble = (8 + 4.25) * t_sym;
    const double num = 8.0 * payload - 4.0 * sf + 28 + 16 * crc - 20 * ih;
    const double den = 4.0 * (sf - 2 * de);
    const double n_payload = 8 + std::max(std::ceil(num / den) * (cr + 4), 0.0);
    return t_preamble + n_payload * t_sym;
}

Alert sample_alert() {
    Alert a;
    a.alert_id = 7;
    a.label = Label::Elephant;
    a.priority = Priority::Critical;
    a.ips = 0.8;
    a.lat = 26.7;
    a.lon = 93.1;
    a.timestamp_ms = 1000;
    return a;
}

TEST(Airtime, MatchesReferenceFormula) {
    for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
        for (int len : {1, 11, 31, 51, 100, 255}) {
            EXPECT_DOUBLE_EQ(airtime(static_cast<std::size_t>(len), sf), reference_airtime(len, sf))
                << "sf " << sf << " len " << len;
        }
    }
}

TEST(Airtime, FrameSizesAtKnownPoints) {
    EXPECT_NEAR(airtime(31, 7), 0.0717, 0.0005);
    EXPECT_NEAR(airtime(31, 7), 0.071936, 1e-9);
    EXPECT_NEAR(airtime(31, 12), 1.81, 0.005);
    EXPECT_EQ(airtime_ms(31, 7), 72);
    EXPECT_EQ(airtime_ms(11, 7), 42);
}

TEST(Airtime, StrictlyIncreasingInSf) {
    for (std::size_t len = 1; len <= 255; ++len) {
        for (int sf = kMinSf; sf < kMaxSf; ++sf) ASSERT_LT(airtime(len, sf), airtime(len, sf + 1));
    }
}

TEST(Airtime, RejectsBadSf) {
    EXPECT_EQ(error_kind([] { airtime(31, 6); }), ErrorKind::Config);
    EXPECT_EQ(error_kind([] { airtime(31, 13); }), ErrorKind::Config);
}

TEST(AdaptiveSf, Cases) {
    LinkModel link;
    link.snr_margin_db = 10.0;
    EXPECT_EQ(adaptive_sf(link), 7);
    link.snr_margin_db = -19.0;
    EXPECT_EQ(adaptive_sf(link), 12);
    link.snr_margin_db = -30.0;
    EXPECT_EQ(adaptive_sf(link), 12);
    link.snr_margin_db = -11.0;
    EXPECT_EQ(adaptive_sf(link), 9);
}

TEST(AdaptiveSf, MonotoneInMargin) {
    LinkModel link;
    int prev = kMinSf;
    for (double snr = 15.0; snr >= -30.0; snr -= 0.1) {
        link.snr_margin_db = snr;
        const int sf = adaptive_sf(link);
        ASSERT_GE(sf, prev);
        prev = sf;
    }
}

TEST(AdaptiveSf, WithoutSnrPicksBestDelivery) {
    LinkModel link;
    link.delivery_prob = {0.2, 0.5, 0.9, 0.9, 0.8, 0.7};
    EXPECT_EQ(adaptive_sf(link), 9);
}

TEST(Transmit, LosslessFirstAttempt) {
    Rng rng(1);
    const TxOutcome o = transmit_with_ack(sample_alert(), LinkModel::lossless(), {}, rng);
    EXPECT_EQ(o.state, TxStateKind::Delivered);
    EXPECT_EQ(o.retries_used, 0);
    EXPECT_EQ(o.attempts.size(), 1u);
    EXPECT_EQ(o.latency_ms, 72 + 2 * 1 + 42);
}

TEST(Transmit, DeadLinkBuffersAfterRetries) {
    Rng rng(1);
    const TxPolicy policy;
    const TxOutcome o = transmit_with_ack(sample_alert(), LinkModel::uniform(0.0), policy, rng);
    EXPECT_EQ(o.state, TxStateKind::Buffered);
    EXPECT_EQ(o.retries_used, 3);
    ASSERT_EQ(o.attempts.size(), 4u);
    std::int64_t start = 0;
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(o.attempts[static_cast<std::size_t>(k)].start_ms, start);
        start += 72 + policy.ack_timeout_ms + (policy.backoff_base_ms << k);
    }
    EXPECT_EQ(o.busy_ms, o.attempts.back().start_ms + 72 + policy.ack_timeout_ms);
}

TEST(Transmit, ReproducibleForSeed) {
    const LinkModel link = LinkModel::uniform(0.5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng a(seed), b(seed);
        const TxOutcome x = transmit_with_ack(sample_alert(), link, {}, a);
        const TxOutcome y = transmit_with_ack(sample_alert(), link, {}, b);
        ASSERT_EQ(x.retries_used, y.retries_used);
        ASSERT_EQ(x.state, y.state);
        ASSERT_EQ(x.latency_ms, y.latency_ms);
    }
}

TEST(Transmit, AckTimeoutShorterThanRoundTripRejected) {
    Rng rng(1);
    TxPolicy p;
    p.ack_timeout_ms = 10;
    EXPECT_EQ(error_kind([&] { transmit_with_ack(sample_alert(), {}, p, rng); }), ErrorKind::Config);
}

class RetryLaw : public ::testing::TestWithParam<double> {};

TEST_P(RetryLaw, OutcomesFollowGeometricDistribution) {
    const double p = GetParam();
    const TxPolicy policy;
    const LinkModel link = LinkModel::uniform(p);
    Transmitter tx(policy);
    Rng rng(2024);
    constexpr int kTrials = 10000;
    std::array<int, 5> hist{};  // delivered on attempt 0..3, or buffered
    for (int i = 0; i < kTrials; ++i) {
        Alert a = sample_alert();
        a.alert_id = static_cast<std::uint64_t>(i);
        const TxOutcome o = tx.send(a, link, rng, 0);
        ++hist[o.state == TxStateKind::Delivered ? static_cast<std::size_t>(o.retries_used) : 4];
        ASSERT_TRUE(tx.conserved());
        if (o.state == TxStateKind::Delivered) {
            std::int64_t start = 0;
            for (int k = 0; k < o.retries_used; ++k) start += 72 + policy.ack_timeout_ms + (policy.backoff_base_ms << k);
            ASSERT_EQ(o.latency_ms, start + 72 + 2 + 42);
        }
    }
    for (int k = 0; k <= 4; ++k) {
        const double expected = k < 4 ? std::pow(1.0 - p, k) * p : std::pow(1.0 - p, 4);
        EXPECT_NEAR(hist[static_cast<std::size_t>(k)] / double(kTrials), expected, 0.02) << "bucket " << k;
    }
    EXPECT_EQ(tx.alerts_in(), static_cast<std::size_t>(kTrials));
    EXPECT_EQ(tx.delivered() + tx.buffer().size() + tx.drops().size(), static_cast<std::size_t>(kTrials));
}

INSTANTIATE_TEST_SUITE_P(DeliveryProbabilities, RetryLaw, ::testing::Values(1.0, 0.5, 0.0));

TEST(Transmitter, OverflowDropsOldest) {
    TxPolicy policy;
    policy.buffer_capacity = 3;
    Transmitter tx(policy);
    Rng rng(1);
    for (std::uint64_t i = 0; i < 5; ++i) {
        Alert a = sample_alert();
        a.alert_id = i;
        tx.send(a, LinkModel::uniform(0.0), rng, static_cast<std::int64_t>(i) * 100000);
        ASSERT_TRUE(tx.conserved());
    }
    ASSERT_EQ(tx.drops().size(), 2u);
    EXPECT_EQ(tx.drops()[0].alert.alert_id, 0u);
    EXPECT_EQ(tx.drops()[1].alert.alert_id, 1u);
    EXPECT_EQ(tx.buffer().front().alert_id, 2u);
}

TEST(Transmitter, ResendDrainsBuffer) {
    Transmitter tx({});
    Rng rng(1);
    tx.send(sample_alert(), LinkModel::uniform(0.0), rng, 0);
    ASSERT_EQ(tx.buffer().size(), 1u);
    Alert which;
    const auto o = tx.resend_buffered(LinkModel::lossless(), rng, 100000, &which);
    ASSERT_TRUE(o.has_value());
    EXPECT_EQ(o->state, TxStateKind::Delivered);
    EXPECT_EQ(which, sample_alert());
    EXPECT_TRUE(tx.buffer().empty());
    EXPECT_EQ(tx.alerts_in(), 1u);
    EXPECT_EQ(tx.delivered(), 1u);
    EXPECT_TRUE(tx.conserved());
    EXPECT_FALSE(tx.resend_buffered(LinkModel::lossless(), rng, 0).has_value());
}

TEST(LinkModel, Validation) {
    LinkModel l;
    l.delivery_prob[2] = 1.5;
    EXPECT_EQ(error_kind([&] { l.validate(); }), ErrorKind::Config);
    l = {};
    l.ack_loss_prob = -0.1;
    EXPECT_EQ(error_kind([&] { l.validate(); }), ErrorKind::Config);
}

}  // namespace
}  // namespace netra
