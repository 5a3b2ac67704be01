#pragma once

// Batch front end: JSON run configuration, command pipelines and JSON reports.

#include "conical/errors.hpp"
#include "conical/metric.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace conical::cli {

/// Numbers that may need to stay exact are kept as text: "p/q", an integer, or a decimal.
struct RunConfig {
    std::string family = "football";  // "football" | "power_cover"
    std::string beta;                 // football only
    int n = 0;                        // power_cover only
    std::optional<std::array<std::array<std::string, 2>, 4>> mobius;  // a, b, c, d as [re, im]
    std::string extension = "holomorphic";
    std::optional<int> k_max;         // default J + 3
    double lambda_max = 30.0;
    std::string lambda = "2";         // series-verify only
    std::string field = "canonical";  // "canonical" | "re" | "im"
    double scale = 1.0;
    double tol = 1e-10;
    bool exact = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws config errors naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
/// Reads and parses a config file; syntax errors carry the line number.
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

MetricSpec build_metric(const RunConfig& config);

/// A number given as text: exact when it was an integer or "p/q".
struct ParsedNumber {
    double value = 0.0;
    std::optional<Rational> exact;
};
ParsedNumber parse_number(std::string_view text, std::string_view field);

int exit_code(ErrorClass cls);

class Runner {
public:
    Runner(RunConfig config, std::optional<std::string> profile_csv = std::nullopt)
        : config_(std::move(config)), profile_csv_(std::move(profile_csv)) {}

    /// Runs one of spectrum, reduce, series-verify, eigenspace, bochner-check, profile.
    /// The returned report echoes the config. Exit status 0 or 4 (failed exact identity).
    nlohmann::json run(std::string_view command);
    int status() const noexcept { return status_; }

    /// Pipeline stage reached when an error escaped run().
    const std::string& stage() const noexcept { return stage_; }

private:
    nlohmann::json spectrum();
    nlohmann::json eigenspace();
    nlohmann::json bochner_check();
    nlohmann::json reduce();
    nlohmann::json series_verify();
    nlohmann::json profile();

    RunConfig config_;
    std::optional<std::string> profile_csv_;
    std::string stage_ = "config";
    int status_ = 0;
};

nlohmann::json error_payload(std::string_view stage, const Error& e);

}  // namespace conical::cli
