#include <gtest/gtest.h>

#include "netra/energy.hpp"
#include "netra/radio.hpp"
#include "netra/random.hpp"
#include "support.hpp"

namespace netra {
namespace {

using test::error_kind;

std::int64_t radio_round_trip_ms() {
    return airtime_ms(kFrameSize, 7) + 2 * LinkModel{}.propagation_ms + airtime_ms(kAckSize, 7);
}

TEST(CameraEnergy, ActivationCounts) {
    const auto p = PlatformProfile::pi4();
    EXPECT_NEAR(camera_energy(79, p), 0.2194, 0.0001);
    EXPECT_NEAR(camera_energy(38, p), 0.1056, 0.0001);
    EXPECT_EQ(camera_energy(0, p), 0.0);
    EXPECT_DOUBLE_EQ(camera_energy(1, p), 10.0 / 3600.0);
}

TEST(Savings, HandValues) {
    const auto p = PlatformProfile::pi4();
    EXPECT_NEAR(savings(camera_energy(79, p), camera_energy(38, p)), 51.9, 0.05);
    EXPECT_EQ(savings(2.0, 1.0), 50.0);
    EXPECT_EQ(savings(2.0, 2.0), 0.0);
    EXPECT_EQ(error_kind([] { savings(0.0, 1.0); }), ErrorKind::Undefined);
}

TEST(Ledger, ComponentsSumToTotal) {
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        EnergyUsage u;
        u.camera_activations = static_cast<std::size_t>(rng.uniform_int(0, 500));
        u.inferences = static_cast<std::size_t>(rng.uniform_int(0, 500));
        u.duration_ms = rng.uniform_int(0, 86400000);
        u.radio_airtime_ms = rng.uniform_int(0, 100000);
        const auto l = run_ledger(u, PlatformProfile::pi_zero());
        ASSERT_NEAR(l.total_wh(), l.camera_wh + l.inference_wh + l.idle_wh + l.radio_wh, 1e-12);
        ASSERT_EQ(l.activation_count, u.camera_activations);
        ASSERT_GE(l.camera_wh, 0.0);
        ASSERT_GE(l.inference_wh, 0.0);
    }
}

TEST(Ledger, MonotoneInActivations) {
    EnergyUsage u;
    u.duration_ms = 3600000;
    double prev = -1.0;
    for (std::size_t n = 0; n < 200; ++n) {
        u.camera_activations = n;
        u.inferences = n;
        const double t = run_ledger(u, PlatformProfile::pi4()).total_wh();
        ASSERT_GT(t, prev);
        prev = t;
    }
}

TEST(Ledger, IdleChargesWholeDuration) {
    EnergyUsage u;
    u.duration_ms = 3600000;
    EXPECT_DOUBLE_EQ(run_ledger(u, PlatformProfile::pi4()).idle_wh, 2.7);
}

TEST(Profiles, PerAlertBudgets) {
    EXPECT_EQ(PlatformProfile::pi4().pre_radio_ms() + radio_round_trip_ms(), 2400);
    EXPECT_EQ(PlatformProfile::pi_zero().pre_radio_ms() + radio_round_trip_ms(), 6500);
    EXPECT_EQ(PlatformProfile::pi4().inference_ms(), 800);
    EXPECT_EQ(PlatformProfile::pi_zero().inference_ms(), 5200);
}

TEST(Profiles, Builtins) {
    EXPECT_EQ(PlatformProfile::builtin("pi4")->name, "pi4");
    EXPECT_EQ(PlatformProfile::builtin("pizero")->name, "pizero");
    EXPECT_FALSE(PlatformProfile::builtin("jetson"));
}

TEST(Profiles, Validation) {
    auto p = PlatformProfile::pi4();
    p.inference_w = 1.0;
    EXPECT_EQ(error_kind([&] { p.validate(); }), ErrorKind::Config);
    p = PlatformProfile::pi4();
    p.capture_ms = -1;
    EXPECT_EQ(error_kind([&] { p.validate(); }), ErrorKind::Config);
}

TEST(BatteryDays, Projection) {
    EnergyLedger l;
    l.idle_wh = 1.0;
    EXPECT_DOUBLE_EQ(*battery_days(74.0, l, 86400000), 74.0);
    EXPECT_DOUBLE_EQ(*battery_days(74.0, l, 43200000), 37.0);
    EXPECT_FALSE(battery_days(74.0, l, 0));
    EXPECT_FALSE(battery_days(74.0, EnergyLedger{}, 1000));
}

}  // namespace
}  // namespace netra
