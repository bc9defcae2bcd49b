#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamlab/report.hpp"

namespace hamlab {

struct VerifyOptions {
    int threads = 1;
    std::uint64_t seed = 1;
};

auto verify_suite_names() -> const std::vector<std::string>&;
auto is_verify_suite(const std::string& name) -> bool;

/// Runs every cell of the named suite. The matrix lists cells with a status
/// ("pass", "fail" or "reported") and a detail string; per-cell timings go
/// under "metadata". Throws PreconditionError for an unknown name.
auto run_verify_suite(const std::string& name, const VerifyOptions& options = {}) -> Json;

}  // namespace hamlab
