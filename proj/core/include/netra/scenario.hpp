#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netra/classify.hpp"
#include "netra/energy.hpp"
#include "netra/fusion.hpp"
#include "netra/radio.hpp"
#include "netra/sensing.hpp"

namespace netra {

enum class ClassifierKind { Oracle, Heuristic };

std::string_view to_string(ClassifierKind k) noexcept;

struct TraceSource {
    std::optional<std::filesystem::path> file;  // absolute once loaded
    std::optional<GeneratorSpec> generator;
};

/// Everything a run needs. Loaded from a versioned YAML file; every key is
/// checked and unknown keys are rejected with their dotted path.
struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 0;
    TraceSource trace;

    FusionConfig fusion;
    ClassifyConfig classify;
    ClassifierKind classifier = ClassifierKind::Oracle;
    ConfusionSpec confusion = ConfusionSpec::identity();

    LinkModel link;
    TxPolicy tx;
    PlatformProfile platform = PlatformProfile::pi4();

    double lat = 26.74567;
    double lon = 93.12345;
    std::uint64_t epoch_ms = 1772841600000ULL;  // 2026-03-07T00:00:00Z

    std::int64_t dedup_window_ms = 60000;
    std::optional<double> battery_wh;
    std::optional<std::int64_t> duration_ms;
    std::vector<double> sweep;

    void validate() const;
};

inline constexpr int kScenarioVersion = 1;

/// Relative paths inside the document resolve against `base_dir`.
Scenario parse_scenario(std::string_view yaml_text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

/// Loads or generates the scenario's trace.
EventTrace resolve_trace(const Scenario& scenario);

}  // namespace netra
