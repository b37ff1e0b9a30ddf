#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "netra/random.hpp"
#include "netra/sensing.hpp"
#include "support.hpp"

namespace netra {
namespace {

using test::error_kind;

TEST(TofDistance, HandValues) {
    EXPECT_EQ(tof_distance(0.0, 343.0), 0.0);
    EXPECT_EQ(tof_distance(0.01, 343.0), 1.715);
    EXPECT_NEAR(tof_distance(0.0816, 343.0), 13.99, 0.005);
}

TEST(TofDistance, RejectsNegativeAndNonFinite) {
    EXPECT_EQ(error_kind([] { tof_distance(-0.001); }), ErrorKind::InvalidSample);
    EXPECT_EQ(error_kind([] { tof_distance(std::numeric_limits<double>::infinity()); }), ErrorKind::InvalidSample);
    EXPECT_EQ(error_kind([] { tof_distance(std::nan("")); }), ErrorKind::InvalidSample);
}

TEST(TofDistance, EchoTimeInverts) {
    for (double d : {0.5, 4.0, 12.25, 15.0}) EXPECT_DOUBLE_EQ(tof_distance(echo_time_for(d)), d);
}

TEST(Calibration, ConstantInput) {
    const std::array<double, 5> d{13, 13, 13, 13, 13};
    const auto c = calibrate_background(d);
    EXPECT_EQ(c.d_bg_m, 13.0);
    EXPECT_TRUE(c.complete());
}

TEST(Calibration, HandMean) {
    const std::array<double, 5> d{12.0, 12.5, 13.0, 13.5, 14.0};
    EXPECT_EQ(calibrate_background(d).d_bg_m, 13.0);
}

TEST(Calibration, ArityError) {
    const std::array<double, 3> d{12, 13, 14};
    EXPECT_EQ(error_kind([&] { calibrate_background(d); }), ErrorKind::CalibrationArity);
    const std::array<double, 6> six{13, 13, 13, 13, 13, 13};
    EXPECT_EQ(error_kind([&] { calibrate_background(six); }), ErrorKind::CalibrationArity);
}

TEST(Calibration, RejectsImplausibleReadings) {
    const std::array<double, 5> far{13, 13, 13, 13, 20.5};
    EXPECT_EQ(error_kind([&] { calibrate_background(far); }), ErrorKind::InvalidSample);
    const std::array<double, 5> zero{13, 13, 0, 13, 13};
    EXPECT_EQ(error_kind([&] { calibrate_background(zero); }), ErrorKind::InvalidSample);
}

TEST(Calibration, PermutationInvariant) {
    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        std::array<double, 5> d{};
        for (auto& x : d) x = rng.uniform(4.0, 20.0);
        const double ref = calibrate_background(d).d_bg_m;
        std::sort(d.begin(), d.end());
        do {
            ASSERT_EQ(calibrate_background(d).d_bg_m, ref);
        } while (std::next_permutation(d.begin(), d.end()) && rng.uniform() < 0.2);
    }
}

TEST(TruthTag, RoundTrip) {
    const GroundTruth cases[] = {
        truth::Quiet{},
        truth::Calibration{},
        truth::FalseTrigger{FalseTriggerKind::Bird},
        truth::Intrusion{ThreatClass::Elephant, std::nullopt, std::nullopt},
        truth::Intrusion{ThreatClass::Human, 0.35, std::nullopt},
        truth::Intrusion{ThreatClass::Cow, 0.8, 0.12},
    };
    for (const auto& gt : cases) EXPECT_EQ(parse_truth(format_truth(gt)), gt) << format_truth(gt);
}

TEST(TruthTag, Unknown) {
    EXPECT_EQ(error_kind([] { parse_truth("intrusion:dragon"); }), ErrorKind::Parse);
    EXPECT_EQ(error_kind([] { parse_truth("false:rain"); }), ErrorKind::Parse);
    EXPECT_EQ(error_kind([] { parse_truth("intrusion:human@1.5"); }), ErrorKind::Parse);
}

constexpr const char* kSmallTrace =
    "#netra-trace v1\n"
    "#@name small\n"
    "#@true 1\n"
    "#@false 1\n"
    "0,0,0.075801749,calib\n"
    "1000,1,0.046647230,intrusion:human@0.9  # person at 8 m\n"
    "2000,1,-,false:wind\n"
    "3000,0,-,quiet\n";

TEST(Trace, ParsesRecords) {
    const EventTrace t = parse_trace(kSmallTrace);
    ASSERT_EQ(t.samples.size(), 4u);
    EXPECT_EQ(t.metadata.name, "small");
    EXPECT_TRUE(is_calibration(t.samples[0].truth));
    EXPECT_TRUE(t.samples[1].pir);
    EXPECT_EQ(t.samples[1].note, "person at 8 m");
    EXPECT_FALSE(t.samples[2].echo_time_s.has_value());
    EXPECT_TRUE(is_false_trigger(t.samples[2].truth));
}

TEST(Trace, FormatParseRoundTrip) {
    const EventTrace t = parse_trace(kSmallTrace);
    EXPECT_EQ(parse_trace(format_trace(t)), t);
    EXPECT_EQ(format_trace(parse_trace(format_trace(t))), format_trace(t));
}

TEST(Trace, EmptyFileIsAnError) {
    EXPECT_EQ(error_kind([] { parse_trace(""); }), ErrorKind::Parse);
    EXPECT_EQ(error_kind([] { parse_trace("\n\n"); }), ErrorKind::Parse);
}

TEST(Trace, WrongVersion) {
    EXPECT_EQ(error_kind([] { parse_trace("#netra-trace v2\n0,0,-,quiet\n"); }), ErrorKind::Version);
}

TEST(Trace, MetadataCountMismatch) {
    EXPECT_EQ(error_kind([] { parse_trace("#netra-trace v1\n#@true 2\n0,1,0.05,intrusion:human\n"); }),
              ErrorKind::Parse);
}

TEST(Trace, MalformedRecordNamesLine) {
    try {
        parse_trace("#netra-trace v1\n0,0,-,quiet\n5,maybe,-,quiet\n");
        FAIL() << "expected a parse error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Trace, MissingFile) {
    EXPECT_EQ(error_kind([] { load_trace("/nonexistent/trace.txt"); }), ErrorKind::NotFound);
}

TEST(Generator, DeterministicPerSeed) {
    GeneratorSpec spec;
    spec.n_true = 20;
    spec.n_false = 93;
    EXPECT_EQ(format_trace(generate_trace(spec, 1)), format_trace(generate_trace(spec, 1)));
    EXPECT_NE(format_trace(generate_trace(spec, 1)), format_trace(generate_trace(spec, 2)));
}

TEST(Generator, CountsAndCalibration) {
    GeneratorSpec spec;
    spec.n_true = 20;
    spec.n_false = 93;
    spec.n_quiet = 7;
    const EventTrace t = generate_trace(spec, 1);
    EXPECT_EQ(t.samples.size(), 5u + 20 + 93 + 7);
    EXPECT_EQ(t.metadata.true_intrusions, 20u);
    EXPECT_EQ(t.metadata.false_triggers, 93u);
    EXPECT_NO_THROW(calibrate_background(t.calibration_distances()));
    EXPECT_TRUE(std::is_sorted(t.samples.begin(), t.samples.end(),
                               [](const auto& a, const auto& b) { return a.t_ms < b.t_ms; }));
}

TEST(Generator, InMemoryEqualsReparsed) {
    GeneratorSpec spec;
    spec.n_true = 30;
    spec.n_false = 30;
    const EventTrace t = generate_trace(spec, 99);
    EXPECT_EQ(parse_trace(format_trace(t)), t);
}

}  // namespace
}  // namespace netra
