#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ringdelay/sweep.hpp"

namespace ringdelay {

/// Everything a CLI run needs. Loaded from one JSON document; absent keys keep
/// their defaults, unknown keys are rejected.
struct RunConfig {
    RingParams model;
    std::optional<double> dt;
    ClassifierConfig classifier;
    RootScanOptions roots;
    int root_count = 6;
    Interval tau1_range;
    Interval tau2_range;
    int resolution = 61;
    SweepMethod method = SweepMethod::Simulate;
    int workers = 1;
    int ppm_scale = 8;
    int omega_samples = 400;
    std::uint64_t seed = 1;
    std::string out = "out";

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
    [[nodiscard]] SweepConfig sweep_config() const;
    [[nodiscard]] DelayWindow window() const noexcept;
};

[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);
/// Accepts either a config document or a run-metadata document (its "config" member).
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& doc);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

}  // namespace ringdelay
