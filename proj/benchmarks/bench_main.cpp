#include <benchmark/benchmark.h>

#include <filesystem>

#include "netra/alert.hpp"
#include "netra/fixtures.hpp"
#include "netra/fusion.hpp"
#include "netra/radio.hpp"
#include "netra/scenario.hpp"
#include "netra/sim.hpp"

namespace {

using namespace netra;

Alert bench_alert() {
    Alert a;
    a.timestamp_ms = 1772841600000ULL;
    a.lat = 26.74567;
    a.lon = 93.12345;
    a.alert_id = make_alert_id(a.timestamp_ms, a.lat, a.lon);
    a.label = Label::Elephant;
    a.priority = Priority::Critical;
    a.ips = 0.82;
    return a;
}

void BM_Encode(benchmark::State& state) {
    const Alert a = bench_alert();
    for (auto _ : state) benchmark::DoNotOptimize(encode_payload(a));
}
BENCHMARK(BM_Encode);

void BM_Decode(benchmark::State& state) {
    const AlertFrame f = encode_payload(bench_alert());
    for (auto _ : state) benchmark::DoNotOptimize(try_decode(f));
}
BENCHMARK(BM_Decode);

void BM_Airtime(benchmark::State& state) {
    const int sf = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(airtime(kFrameSize, sf));
}
BENCHMARK(BM_Airtime)->DenseRange(kMinSf, kMaxSf);

void BM_FusionPipeline(benchmark::State& state) {
    const CalibrationState calib{13.0, CalibrationState::kRequiredSamples};
    const FusionConfig cfg;
    SensorSample s;
    s.pir = true;
    s.echo_time_s = echo_time_for(11.8);
    for (auto _ : state) benchmark::DoNotOptimize(activation_pipeline(s, calib, cfg));
}
BENCHMARK(BM_FusionPipeline);

void BM_TransmitLossy(benchmark::State& state) {
    const Alert a = bench_alert();
    const LinkModel link = LinkModel::uniform(0.5);
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(transmit_with_ack(a, link, {}, rng));
}
BENCHMARK(BM_TransmitLossy);

void BM_RunEndToEnd(benchmark::State& state) {
    Scenario sc;
    sc.trace.generator = GeneratorSpec{};
    const EventTrace trace = fixtures::end_to_end();
    for (auto _ : state) benchmark::DoNotOptimize(run(sc, trace));
}
BENCHMARK(BM_RunEndToEnd)->Unit(benchmark::kMicrosecond);

void BM_RunGenerated(benchmark::State& state) {
    const Scenario sc = load_scenario(std::filesystem::path(NETRA_FIXTURE_DIR) / "lossy_generated.scn");
    const EventTrace trace = resolve_trace(sc);
    for (auto _ : state) benchmark::DoNotOptimize(run(sc, trace));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trace.samples.size()));
}
BENCHMARK(BM_RunGenerated)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
