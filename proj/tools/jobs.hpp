#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace psc::jobs {

struct JobOutcome {
    nlohmann::json report;
    bool pass = false;
};

/// Runs one verification job. Reports are deterministic given (config, seed)
/// apart from the timing_ms field. Schema violations and engine rejections
/// throw std::invalid_argument / std::runtime_error with the diagnostic text.
JobOutcome run_job(const std::string& kind, const nlohmann::json& config, std::uint64_t seed);

const std::vector<std::string>& job_kinds();

}  // namespace psc::jobs
