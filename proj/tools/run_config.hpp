#pragma once

#include "nbcrit/innerprod.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace nbcrit::cli {

enum class OutputFormat { Csv, Json };

struct Limits {
    std::int64_t m_max = 10'000;     // DFT double sum
    std::int64_t gram_n_max = 15;    // Gram-determinant d_n
    std::int64_t k_max_default = 2000;
};

struct RunConfig {
    unsigned threads = 1;
    std::map<std::string, double> tolerances;
    std::filesystem::path cache_dir = ".nbcrit-cache";
    OutputFormat format = OutputFormat::Csv;
    Limits limits;

    IpLimits ip_limits() const { return {limits.m_max, IpLimits{}.series_m_max}; }
    double tolerance(std::string const& name) const;
};

/// Names accepted by --tol, with their defaults.
std::map<std::string, double> const& default_tolerances();

/// Parses "name=value" pairs into cfg.tolerances; unknown names throw PreconditionError.
void apply_tolerance_overrides(RunConfig& cfg, std::vector<std::string> const& pairs);

/// Throws PreconditionError when a limit is not positive.
void validate(RunConfig const& cfg);

} // namespace nbcrit::cli
