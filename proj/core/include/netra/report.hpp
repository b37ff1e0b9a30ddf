#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netra/sim.hpp"

namespace netra {

inline constexpr std::string_view kReportFormat = "netra-report";
inline constexpr int kReportVersion = 1;

/// Versioned machine-readable report. Key order and number formatting are
/// fixed, so equal reports serialise to equal bytes.
std::string to_json(const MetricsReport& report);

/// Several reports in one document, e.g. the points of a sweep.
std::string to_json(std::span<const MetricsReport> reports);

/// Throws Error{Parse} on malformed input and Error{Version} on a foreign
/// format tag or version.
MetricsReport report_from_json(std::string_view text);

/// Accepts either a single-report or a multi-report document.
std::vector<MetricsReport> reports_from_json(std::string_view text);

/// Plain-text layout: activation table, funnel, delivery and energy.
std::string render_table(const MetricsReport& report);

/// One row per threshold: tau, activations, false activations, detection rate.
std::string render_sweep_table(std::span<const MetricsReport> reports);

}  // namespace netra
