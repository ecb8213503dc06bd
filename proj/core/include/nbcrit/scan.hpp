#pragma once

#include "nbcrit/cholesky.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nbcrit {

// Positivity scan of the strictly-lower Cholesky entries L_kj, with a binary
// row cache and a JSON checkpoint for resumption.
//
// Row cache layout (little-endian):
//   bytes 0..3   magic "NBDL"
//   bytes 4..7   uint32 version (= 1)
//   bytes 8..15  uint64 k_done
//   then rows k = 2..k_done, row k as (k-1) binary64 values L_k2..L_kk.
// Checkpoint: {"version":1,"k_done":int,"cache_path":string,"hash":"<16 hex>"}
// with hash = FNV-1a 64 over the cache bytes.

inline constexpr std::int64_t kDeskScanLimit = 2000;
inline constexpr std::uint32_t kRowCacheVersion = 1;

struct CheckpointState {
    int version = 1;
    std::int64_t k_done = 0;
    std::string cache_path;
    std::uint64_t content_hash = 0;
};

CheckpointState read_checkpoint(std::filesystem::path const& path);
void write_checkpoint(std::filesystem::path const& path, CheckpointState const& state);

/// Writes a complete row cache for rows 2..factor.n().
void write_row_cache(std::filesystem::path const& path, std::span<double const> packed_rows, std::int64_t k_done);

/// FNV-1a of the file as it would be written for these rows.
std::uint64_t row_cache_hash(std::span<double const> packed_rows, std::int64_t k_done);

/// Loads rows 2..k_done, verifying the header and (if given) the hash. Throws IntegrityError.
CholeskyFactor read_row_cache(std::filesystem::path const& path, std::optional<std::uint64_t> expected_hash = {});

/// Rows 2..state.k_done for a resume. Bytes past those rows (left by an
/// interrupted flush) are ignored; the hash covers the header as of
/// state.k_done and exactly those rows.
CholeskyFactor load_checkpoint_rows(CheckpointState const& state);

std::uint64_t hash_file(std::filesystem::path const& path);

struct MarginEntry {
    std::int64_t k = 0;
    std::int64_t j = 0;
    double value = 0.0;
};

struct ScanReport {
    std::int64_t k_max = 0;
    std::int64_t k_done = 0;
    bool complete = false;
    std::optional<MarginEntry> min_margin; // empty when no strictly-lower entry exists
    std::vector<MarginEntry> violations;   // L_kj <= 0
    std::vector<MarginEntry> uncertain;    // 0 < L_kj < noise threshold
    double elapsed = 0.0;
    std::string checkpoint_id; // FNV-1a 64 of the row-cache bytes for rows 2..k_done

    bool has_violation() const noexcept { return !violations.empty(); }
};

struct ScanOptions {
    std::int64_t k_max = 2;
    unsigned threads = 1;
    std::int64_t checkpoint_stride = 500;
    /// Empty: nothing persisted. Otherwise rows.nbdl and checkpoint.json live here.
    std::filesystem::path cache_dir;
    /// Required above kDeskScanLimit rows (~8 k^2/2 bytes of factor in memory).
    bool full_scale = false;
    std::int64_t table_limit = 4096;
    /// Stop (after checkpointing) once this many rows are done; 0 = never.
    std::int64_t stop_after = 0;
    std::atomic<bool> const* cancel = nullptr;
    std::function<void(std::int64_t)> progress;
};

std::filesystem::path cache_file(std::filesystem::path const& cache_dir);
std::filesystem::path checkpoint_file(std::filesystem::path const& cache_dir);

/// Scans rows 2..k_max. With `resume`, rows 2..resume->k_done come from the
/// verified cache instead of being recomputed. The report is independent of
/// thread count and of whether the run was resumed.
ScanReport scan_positivity(ScanOptions const& options, std::optional<CheckpointState> const& resume = {});

/// Runs the classification over an existing factor (no persistence).
ScanReport classify_factor(CholeskyFactor const& factor);

void write_report_json(std::ostream& os, ScanReport const& report);
/// `k,j,L_kj` violation rows, a blank line, then `summary,value,k,j` lines. No timing data.
void write_report_csv(std::ostream& os, ScanReport const& report);

} // namespace nbcrit
