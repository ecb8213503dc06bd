#pragma once

#include "run_config.hpp"

#include <string>
#include <vector>

namespace nbcrit::cli {

struct SuiteOutcome {
    bool passed = true;
    std::vector<std::string> lines; // one "PASS ..." / "FAIL ..." per check
};

std::vector<std::string> const& suite_names();

/// Throws PreconditionError for an unknown suite name.
SuiteOutcome run_suite(std::string const& name, RunConfig const& cfg);

} // namespace nbcrit::cli
