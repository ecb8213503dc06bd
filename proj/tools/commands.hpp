#pragma once

#include "run_config.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace nbcrit::cli {

struct IpArgs {
    std::int64_t j = 0;
    std::int64_t k = 0;
    std::string method = "vasyunin";
    bool all_methods = false;
};

struct DnArgs {
    std::int64_t n_max = 2;
    std::string method = "cholesky";
    std::string out;
};

struct ScanArgs {
    std::optional<std::int64_t> k_max;
    bool resume = false;
    std::string resume_file; // empty: <cache-dir>/checkpoint.json
    std::int64_t checkpoint_stride = 500;
    std::string out;         // prefix for .json and .csv reports
    bool no_cache = false;
    bool full_scale = false;
    std::int64_t stop_after = 0;
};

struct VerifyArgs {
    std::string suite;
};

struct PlotArgs {
    std::int64_t k = 0;
    std::int64_t r_max = 40;
    std::string out;
};

struct ZeroFreeArgs {
    std::int64_t n = 2;
};

struct GramArgs {
    std::int64_t n = 9;
    std::string method = "vasyunin";
    std::string out;
    std::string binary;
};

// Each returns a process exit code; library exceptions propagate to main.
int cmd_ip(IpArgs const& args, RunConfig const& cfg, std::ostream& os);
int cmd_dn(DnArgs const& args, RunConfig const& cfg, std::ostream& os);
int cmd_scan(ScanArgs const& args, RunConfig const& cfg, std::ostream& os, std::atomic<bool> const* cancel);
int cmd_verify(VerifyArgs const& args, RunConfig const& cfg, std::ostream& os);
int cmd_plot_fk(PlotArgs const& args, RunConfig const& cfg, std::ostream& os);
int cmd_zerofree(ZeroFreeArgs const& args, RunConfig const& cfg, std::ostream& os);
int cmd_gram(GramArgs const& args, RunConfig const& cfg, std::ostream& os);

} // namespace nbcrit::cli
