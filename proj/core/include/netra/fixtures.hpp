#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "netra/classify.hpp"
#include "netra/sensing.hpp"

namespace netra::fixtures {

/// 79 PIR events (40 intrusions, 39 false triggers) whose fusion outcomes
/// give 34/0 in binary mode, 38/0 at tau 0.65, 40/2 at tau 0.45 and 79/39
/// with PIR only. Every record carries a note naming the gate it targets.
EventTrace activation_table();

/// 113 PIR events (20 intrusions, 93 false triggers) giving the funnel
/// 113 -> 42 -> 10 -> 10 -> 10 on a lossless link.
EventTrace end_to_end();

/// Calibration plus a single daytime human intrusion; for latency budgets.
EventTrace single_alert();

/// Heuristic-classifier confusion on the 165-frame evaluation set
/// (50 human, 47 cow, 49 elephant, 19 obstruction).
ConfusionSpec low_cost_confusion();
std::string low_cost_confusion_text();

/// Frames per scene class in the evaluation set behind low_cost_confusion().
std::array<std::size_t, kSceneClassCount> low_cost_eval_counts();

struct FixtureFile {
    std::string file_name;
    std::string contents;
};

/// Every generated fixture file, in a fixed order.
std::vector<FixtureFile> all();

/// Names accepted by by_name(): activation_table, end_to_end, single_alert,
/// low_cost_confusion.
std::vector<std::string_view> names();
FixtureFile by_name(std::string_view name);

/// Writes all() into `dir`, creating it if needed.
void write_all(const std::filesystem::path& dir);

}  // namespace netra::fixtures
