#ifndef ENVRISK_REPORT_HPP
#define ENVRISK_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "envrisk/json_io.hpp"

namespace envrisk {

// Everything the compute command reads from its config file.
struct ComputeConfig {
    Binning binning;
    EnvMeasureSpec spec;
    std::vector<double> comparative_levels;              // var and avar at each
    std::optional<LevelMeasure> comparative_wvar;
    std::optional<std::pair<double, double>> comparative_rvar;
};

ComputeConfig compute_config_from_json(const json& j);

// FNV-1a over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(std::string_view bytes);

// Full risk report: input echo with hashes, the per-state profile, the outer
// value, classical comparatives of the pooled loss, and (unless with_meta is
// false) wall-clock metadata. Without metadata the report is byte-identical
// across runs.
json build_risk_report(const ScenarioTable& table, const ComputeConfig& cfg,
                       const std::string& scenarios_path, const std::string& scenarios_hash,
                       const std::string& config_path, const std::string& config_hash,
                       bool with_meta);

} // namespace envrisk

#endif
