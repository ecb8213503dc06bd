#pragma once

namespace nbcrit::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kViolation = 3,
    kIndeterminate = 4,
    kBreakdown = 5,
    kIntegrity = 6,
};

} // namespace nbcrit::cli
