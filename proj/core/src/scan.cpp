#include "nbcrit/scan.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/format.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>

namespace nbcrit {
namespace {

using json = nlohmann::json;

constexpr std::array<char, 4> kMagic = {'N', 'B', 'D', 'L'};
constexpr std::size_t kHeaderSize = 16;

std::size_t packed_length(std::int64_t k_done) {
    if (k_done < 2) {
        return 0;
    }
    auto const m = static_cast<std::size_t>(k_done - 1);
    return m * (m + 1) / 2;
}

template <class T>
void put_le(std::byte* out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<std::byte, sizeof(T)> raw{};
    std::memcpy(raw.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(raw.begin(), raw.end());
    }
    std::memcpy(out, raw.data(), sizeof(T));
}

template <class T>
T get_le(std::byte const* in) {
    std::array<std::byte, sizeof(T)> raw{};
    std::memcpy(raw.data(), in, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(raw.begin(), raw.end());
    }
    T value;
    std::memcpy(&value, raw.data(), sizeof(T));
    return value;
}

std::array<std::byte, kHeaderSize> encode_header(std::int64_t k_done) {
    std::array<std::byte, kHeaderSize> h{};
    std::memcpy(h.data(), kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(h.data() + 4, kRowCacheVersion);
    put_le<std::uint64_t>(h.data() + 8, static_cast<std::uint64_t>(k_done));
    return h;
}

std::vector<std::byte> encode_values(std::span<double const> values) {
    std::vector<std::byte> out(values.size() * sizeof(double));
    if constexpr (std::endian::native == std::endian::little) {
        if (!values.empty()) {
            std::memcpy(out.data(), values.data(), out.size());
        }
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) {
            put_le<double>(out.data() + i * sizeof(double), values[i]);
        }
    }
    return out;
}

void hash_values(Fnv1a64& h, std::span<double const> values) {
    if constexpr (std::endian::native == std::endian::little) {
        h.update(std::as_bytes(values));
    } else {
        auto const bytes = encode_values(values);
        h.update(bytes);
    }
}

// Streams rows to the cache file and keeps the checkpoint in step.
class CacheWriter {
public:
    CacheWriter(std::filesystem::path cache, std::filesystem::path checkpoint, std::int64_t k_done)
        : cache_(std::move(cache)), checkpoint_(std::move(checkpoint)), k_done_(k_done) {
        if (k_done_ <= 1) {
            std::ofstream out(cache_, std::ios::binary | std::ios::trunc);
            auto const header = encode_header(1);
            out.write(reinterpret_cast<char const*>(header.data()), header.size());
            if (!out) {
                throw IntegrityError("cannot create row cache " + cache_.string());
            }
            k_done_ = 1;
        } else {
            std::filesystem::resize_file(cache_, kHeaderSize + packed_length(k_done_) * sizeof(double));
        }
    }

    std::int64_t k_done() const noexcept { return k_done_; }

    CheckpointState flush(CholeskyFactor const& factor) {
        auto const packed = factor.packed();
        auto const from = packed_length(k_done_);
        auto const to = packed_length(factor.n());
        {
            std::fstream io(cache_, std::ios::binary | std::ios::in | std::ios::out);
            if (!io) {
                throw IntegrityError("cannot open row cache " + cache_.string());
            }
            io.seekp(0, std::ios::end);
            auto const bytes = encode_values(packed.subspan(from, to - from));
            io.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
            io.flush();
            auto const header = encode_header(factor.n());
            io.seekp(0);
            io.write(reinterpret_cast<char const*>(header.data()), header.size());
            io.flush();
            if (!io) {
                throw IntegrityError("failed writing row cache " + cache_.string());
            }
        }
        k_done_ = factor.n();
        CheckpointState state;
        state.k_done = k_done_;
        state.cache_path = cache_.string();
        state.content_hash = row_cache_hash(packed.first(to), k_done_);
        write_checkpoint(checkpoint_, state);
        return state;
    }

private:
    std::filesystem::path cache_;
    std::filesystem::path checkpoint_;
    std::int64_t k_done_;
};

class Classifier {
public:
    explicit Classifier(ScanReport& report) : report_(report) {}

    void row(std::int64_t k, std::span<double const> l_row, double p_kk) {
        double const noise = noise_threshold(k, p_kk);
        for (std::int64_t j = 2; j < k; ++j) {
            double const v = l_row[static_cast<std::size_t>(j - 2)];
            MarginEntry const e{k, j, v};
            if (!report_.min_margin || v < report_.min_margin->value) {
                report_.min_margin = e;
            }
            if (!(v > 0.0)) {
                report_.violations.push_back(e);
            } else if (v < noise) {
                report_.uncertain.push_back(e);
            }
        }
    }

private:
    ScanReport& report_;
};

json entry_json(MarginEntry const& e) { return {{"k", e.k}, {"j", e.j}, {"value", e.value}}; }

} // namespace

std::filesystem::path cache_file(std::filesystem::path const& cache_dir) { return cache_dir / "rows.nbdl"; }

std::filesystem::path checkpoint_file(std::filesystem::path const& cache_dir) {
    return cache_dir / "checkpoint.json";
}

CheckpointState read_checkpoint(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
        throw IntegrityError("cannot open checkpoint " + path.string());
    }
    CheckpointState state;
    try {
        json const j = json::parse(in);
        state.version = j.at("version").get<int>();
        state.k_done = j.at("k_done").get<std::int64_t>();
        state.cache_path = j.at("cache_path").get<std::string>();
        auto const hex = j.at("hash").get<std::string>();
        if (hex.size() != 16) {
            throw IntegrityError("checkpoint hash must be 16 hex digits");
        }
        std::size_t used = 0;
        state.content_hash = std::stoull(hex, &used, 16);
        if (used != hex.size()) {
            throw IntegrityError("checkpoint hash is not hexadecimal");
        }
    } catch (IntegrityError const&) {
        throw;
    } catch (std::exception const& e) {
        throw IntegrityError("malformed checkpoint " + path.string() + ": " + e.what());
    }
    if (state.version != 1) {
        throw IntegrityError("unsupported checkpoint version " + std::to_string(state.version));
    }
    return state;
}

void write_checkpoint(std::filesystem::path const& path, CheckpointState const& state) {
    json const j = {{"version", state.version},
                    {"k_done", state.k_done},
                    {"cache_path", state.cache_path},
                    {"hash", to_hex64(state.content_hash)}};
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump() << '\n';
        if (!out) {
            throw IntegrityError("cannot write checkpoint " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t row_cache_hash(std::span<double const> packed_rows, std::int64_t k_done) {
    if (packed_rows.size() != packed_length(k_done)) {
        throw PreconditionError("row_cache_hash: row data does not match k_done");
    }
    Fnv1a64 h;
    auto const header = encode_header(k_done);
    h.update(header);
    hash_values(h, packed_rows);
    return h.digest();
}

void write_row_cache(std::filesystem::path const& path, std::span<double const> packed_rows, std::int64_t k_done) {
    if (packed_rows.size() != packed_length(k_done)) {
        throw PreconditionError("write_row_cache: row data does not match k_done");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    auto const header = encode_header(k_done);
    out.write(reinterpret_cast<char const*>(header.data()), header.size());
    auto const bytes = encode_values(packed_rows);
    out.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IntegrityError("failed writing " + path.string());
    }
}

std::uint64_t hash_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IntegrityError("cannot open " + path.string());
    }
    Fnv1a64 h;
    std::vector<char> buf(1 << 20);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        auto const got = static_cast<std::size_t>(in.gcount());
        h.update(std::as_bytes(std::span(buf.data(), got)));
    }
    return h.digest();
}

namespace {

std::vector<std::byte> read_cache_bytes(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IntegrityError("cannot open row cache " + path.string());
    }
    std::vector<std::byte> bytes;
    in.seekg(0, std::ios::end);
    auto const size = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    bytes.resize(size);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
        throw IntegrityError("row cache " + path.string() + ": bad magic");
    }
    if (get_le<std::uint32_t>(bytes.data() + 4) != kRowCacheVersion) {
        throw IntegrityError("row cache " + path.string() + ": unsupported version");
    }
    return bytes;
}

void check_k_done(std::filesystem::path const& path, std::int64_t k_done) {
    if (k_done < 1 || k_done > (std::int64_t{1} << 31)) {
        throw IntegrityError("row cache " + path.string() + ": implausible k_done");
    }
}

CholeskyFactor decode_rows(std::vector<std::byte> const& bytes, std::int64_t k_done) {
    CholeskyFactor factor;
    factor.reserve(k_done);
    std::vector<double> row;
    std::size_t pos = kHeaderSize;
    for (std::int64_t k = 2; k <= k_done; ++k) {
        row.resize(static_cast<std::size_t>(k - 1));
        for (auto& v : row) {
            v = get_le<double>(bytes.data() + pos);
            pos += sizeof(double);
        }
        factor.append_row(row);
    }
    return factor;
}

} // namespace

CholeskyFactor read_row_cache(std::filesystem::path const& path, std::optional<std::uint64_t> expected_hash) {
    auto const bytes = read_cache_bytes(path);
    auto const k_done = static_cast<std::int64_t>(get_le<std::uint64_t>(bytes.data() + 8));
    check_k_done(path, k_done);
    if (bytes.size() != kHeaderSize + packed_length(k_done) * sizeof(double)) {
        throw IntegrityError("row cache " + path.string() + ": size does not match k_done");
    }
    if (expected_hash) {
        Fnv1a64 h;
        h.update(bytes);
        if (h.digest() != *expected_hash) {
            throw IntegrityError("row cache " + path.string() + ": hash mismatch");
        }
    }
    return decode_rows(bytes, k_done);
}

CholeskyFactor load_checkpoint_rows(CheckpointState const& state) {
    std::filesystem::path const path = state.cache_path;
    if (state.version != 1) {
        throw IntegrityError("unsupported checkpoint version " + std::to_string(state.version));
    }
    check_k_done(path, state.k_done);
    auto const bytes = read_cache_bytes(path);
    auto const row_bytes = packed_length(state.k_done) * sizeof(double);
    if (bytes.size() < kHeaderSize + row_bytes) {
        throw IntegrityError("row cache " + path.string() + " is shorter than its checkpoint");
    }
    Fnv1a64 h;
    h.update(encode_header(state.k_done));
    h.update(std::span(bytes).subspan(kHeaderSize, row_bytes));
    if (h.digest() != state.content_hash) {
        throw IntegrityError("row cache " + path.string() + ": hash mismatch");
    }
    return decode_rows(bytes, state.k_done);
}

ScanReport classify_factor(CholeskyFactor const& factor) {
    ScanReport report;
    report.k_max = factor.n();
    report.k_done = factor.n();
    report.complete = true;
    Classifier classify(report);
    for (std::int64_t k = 2; k <= factor.n(); ++k) {
        classify.row(k, factor.row(k), ip_vasyunin(k, k));
    }
    return report;
}

ScanReport scan_positivity(ScanOptions const& options, std::optional<CheckpointState> const& resume) {
    auto const started = std::chrono::steady_clock::now();
    std::int64_t const k_max = options.k_max;
    if (k_max < 2) {
        throw PreconditionError("scan: k_max must be >= 2");
    }
    if (k_max > kDeskScanLimit && !options.full_scale) {
        throw ResourceError("scan: k_max = " + std::to_string(k_max) + " exceeds the desk limit " +
                            std::to_string(kDeskScanLimit) + "; pass full-scale mode explicitly");
    }
    if (options.checkpoint_stride < 1) {
        throw PreconditionError("scan: checkpoint stride must be >= 1");
    }

    CholeskyFactor factor;
    std::filesystem::path dir = options.cache_dir;
    std::filesystem::path cache;
    if (resume) {
        cache = resume->cache_path;
        factor = load_checkpoint_rows(*resume);
        if (factor.n() > k_max) {
            throw PreconditionError("scan: checkpoint already exceeds k_max");
        }
        if (dir.empty()) {
            dir = cache.parent_path();
        }
    } else if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        cache = cache_file(dir);
    }
    factor.reserve(k_max);

    VasyuninTable const table(k_max, options.table_limit);
    ScanReport report;
    report.k_max = k_max;
    Classifier classify(report);
    for (std::int64_t k = 2; k <= factor.n(); ++k) {
        classify.row(k, factor.row(k), table.ip(k, k));
    }

    std::optional<CacheWriter> writer;
    std::optional<CheckpointState> last_state;
    if (!cache.empty()) {
        writer.emplace(cache, checkpoint_file(dir), factor.n());
        if (factor.n() <= 1) {
            last_state = writer->flush(factor);
        } else {
            last_state = *resume;
        }
    }

    constexpr std::int64_t kBatch = 32;
    std::vector<std::vector<double>> rows;
    bool stopped = false;
    while (factor.n() < k_max && !stopped) {
        std::int64_t const first = factor.n() + 1;
        std::int64_t const last = std::min(k_max, first + kBatch - 1);
        rows.assign(static_cast<std::size_t>(last - first + 1), {});
        detail::parallel_for(first, last + 1, options.threads, [&](std::int64_t k) {
            auto& row = rows[static_cast<std::size_t>(k - first)];
            row.resize(static_cast<std::size_t>(k - 1));
            for (std::int64_t j = 2; j <= k; ++j) {
                row[static_cast<std::size_t>(j - 2)] = table.ip(j, k);
            }
        });
        for (std::int64_t k = first; k <= last; ++k) {
            auto const& p_row = rows[static_cast<std::size_t>(k - first)];
            factor.extend(p_row);
            classify.row(k, factor.row(k), p_row.back());
            if (options.progress) {
                options.progress(k);
            }
            bool const stop_requested = (options.stop_after > 0 && k >= options.stop_after) ||
                                        (options.cancel != nullptr && options.cancel->load());
            if (writer && (k % options.checkpoint_stride == 0 || k == k_max || stop_requested)) {
                last_state = writer->flush(factor);
            }
            if (stop_requested) {
                stopped = true;
                break;
            }
        }
    }

    report.k_done = factor.n();
    report.complete = factor.n() == k_max;
    report.checkpoint_id =
        to_hex64(last_state ? last_state->content_hash : row_cache_hash(factor.packed(), factor.n()));
    report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

void write_report_json(std::ostream& os, ScanReport const& report) {
    json j;
    j["k_max"] = report.k_max;
    j["k_done"] = report.k_done;
    j["complete"] = report.complete;
    j["min_margin"] = report.min_margin ? entry_json(*report.min_margin) : json(nullptr);
    j["violations"] = json::array();
    for (auto const& e : report.violations) {
        j["violations"].push_back(entry_json(e));
    }
    j["uncertain"] = json::array();
    for (auto const& e : report.uncertain) {
        j["uncertain"].push_back(entry_json(e));
    }
    j["elapsed_seconds"] = report.elapsed;
    j["checkpoint_id"] = report.checkpoint_id;
    os << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, ScanReport const& report) {
    os << "k,j,L_kj\n";
    for (auto const& e : report.violations) {
        os << e.k << ',' << e.j << ',' << format_g12(e.value) << '\n';
    }
    os << '\n';
    os << "summary,value,k,j\n";
    os << "k_max," << report.k_max << ",,\n";
    os << "k_done," << report.k_done << ",,\n";
    if (report.min_margin) {
        os << "min_margin," << format_g12(report.min_margin->value) << ',' << report.min_margin->k << ','
           << report.min_margin->j << '\n';
    } else {
        os << "min_margin,,,\n";
    }
    os << "violations," << report.violations.size() << ",,\n";
    os << "uncertain," << report.uncertain.size() << ",,\n";
    os << "checkpoint_id," << report.checkpoint_id << ",,\n";
}

} // namespace nbcrit
