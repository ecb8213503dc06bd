#include "run_config.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/published.hpp"

#include <charconv>

namespace nbcrit::cli {

std::map<std::string, double> const& default_tolerances() {
    static std::map<std::string, double> const kDefaults = {
        {"tables", published::kTableTolerance},
        {"counterexample", 1e-10},
        {"asymptotics", 0.25},
        {"cross_dft", 1e-9},
        {"cross_series", 1e-10},
        {"hj_exact", 1e-12},
    };
    return kDefaults;
}

double RunConfig::tolerance(std::string const& name) const {
    if (auto it = tolerances.find(name); it != tolerances.end()) {
        return it->second;
    }
    return default_tolerances().at(name);
}

void apply_tolerance_overrides(RunConfig& cfg, std::vector<std::string> const& pairs) {
    for (auto const& pair : pairs) {
        auto const eq = pair.find('=');
        if (eq == std::string::npos) {
            throw PreconditionError("--tol expects name=value, got '" + pair + "'");
        }
        std::string const name = pair.substr(0, eq);
        std::string const text = pair.substr(eq + 1);
        if (!default_tolerances().contains(name)) {
            throw PreconditionError("unknown tolerance '" + name + "'");
        }
        double value = 0.0;
        auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0)) {
            throw PreconditionError("tolerance '" + name + "' needs a positive number");
        }
        cfg.tolerances[name] = value;
    }
}

void validate(RunConfig const& cfg) {
    if (cfg.threads < 1) {
        throw PreconditionError("threads must be >= 1");
    }
    if (cfg.limits.m_max < 1 || cfg.limits.gram_n_max < 1 || cfg.limits.k_max_default < 2) {
        throw PreconditionError("limits must be positive");
    }
}

} // namespace nbcrit::cli
