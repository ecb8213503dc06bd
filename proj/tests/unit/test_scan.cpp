#include "doctest.h"

#include "nbcrit/errors.hpp"
#include "nbcrit/scan.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace nbcrit;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(std::string const& name) {
    char const* env = std::getenv("NBCRIT_TEST_TMP");
    fs::path const root = env != nullptr ? fs::path(env) : fs::temp_directory_path() / "nbcrit-tests";
    auto const dir = root / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string csv(ScanReport const& r) {
    std::ostringstream os;
    write_report_csv(os, r);
    return os.str();
}

void flip_byte(fs::path const& path, std::streamoff offset) {
    std::fstream io(path, std::ios::binary | std::ios::in | std::ios::out);
    io.seekg(offset);
    char c = 0;
    io.get(c);
    io.seekp(offset);
    io.put(static_cast<char>(c ^ 0x5a));
}

ScanOptions options(std::int64_t k_max, fs::path const& dir = {}) {
    ScanOptions o;
    o.k_max = k_max;
    o.cache_dir = dir;
    return o;
}

} // namespace

TEST_SUITE("scan") {

TEST_CASE("small scan matches the published factor") {
    auto const r = scan_positivity(options(9));
    CHECK(r.complete);
    CHECK(r.k_done == 9);
    CHECK(r.violations.empty());
    CHECK(r.uncertain.empty());
    REQUIRE(r.min_margin.has_value());
    CHECK(r.min_margin->k == 8);
    CHECK(r.min_margin->j == 5);
    CHECK(r.min_margin->value == doctest::Approx(0.0638).epsilon(5e-5 / 0.0638));
    CHECK(r.checkpoint_id.size() == 16);
}

TEST_CASE("k_max = 2 has no strictly-lower entries") {
    auto const r = scan_positivity(options(2));
    CHECK(r.complete);
    CHECK_FALSE(r.min_margin.has_value());
}

TEST_CASE("report is independent of the thread count") {
    auto one = options(300);
    auto three = options(300);
    three.threads = 3;
    auto const a = scan_positivity(one);
    auto const b = scan_positivity(three);
    CHECK(csv(a) == csv(b));
    CHECK(a.checkpoint_id == b.checkpoint_id);
    REQUIRE(a.min_margin);
    CHECK(a.min_margin->value == b.min_margin->value);
}

TEST_CASE("classify_factor agrees with the scan") {
    auto const r = scan_positivity(options(120));
    auto const c = classify_factor(cholesky(build_gram(120)));
    REQUIRE(c.min_margin);
    CHECK(c.min_margin->k == r.min_margin->k);
    CHECK(c.min_margin->j == r.min_margin->j);
    CHECK(c.min_margin->value == r.min_margin->value);
    CHECK(c.violations.size() == r.violations.size());
}

TEST_CASE("stop, resume, and compare with an uninterrupted run") {
    auto const dir = fresh_dir("resume");
    auto first = options(260, dir);
    first.checkpoint_stride = 50;
    first.stop_after = 130;
    auto const partial = scan_positivity(first);
    CHECK_FALSE(partial.complete);
    CHECK(partial.k_done == 130);

    auto const state = read_checkpoint(checkpoint_file(dir));
    CHECK(state.k_done == 130);
    CHECK(state.version == 1);
    CHECK(state.content_hash == hash_file(cache_file(dir)));

    auto resumed_opts = options(260, dir);
    resumed_opts.threads = 2;
    auto const resumed = scan_positivity(resumed_opts, state);
    CHECK(resumed.complete);

    auto const fresh = scan_positivity(options(260, fresh_dir("fresh")));
    CHECK(csv(resumed) == csv(fresh));
    CHECK(resumed.checkpoint_id == fresh.checkpoint_id);
    CHECK(hash_file(cache_file(dir)) == read_checkpoint(checkpoint_file(dir)).content_hash);
}

TEST_CASE("cancellation checkpoints and stops") {
    auto const dir = fresh_dir("cancel");
    std::atomic<bool> cancel{false};
    auto o = options(200, dir);
    o.cancel = &cancel;
    o.progress = [&](std::int64_t k) {
        if (k == 77) {
            cancel.store(true);
        }
    };
    auto const r = scan_positivity(o);
    CHECK_FALSE(r.complete);
    CHECK(r.k_done == 77);
    auto const state = read_checkpoint(checkpoint_file(dir));
    CHECK(state.k_done == 77);
    auto const done = scan_positivity(options(200, dir), state);
    CHECK(done.complete);
    CHECK(csv(done) == csv(scan_positivity(options(200))));
}

TEST_CASE("resume ignores rows appended after the checkpoint") {
    auto const dir = fresh_dir("torn");
    auto o = options(100, dir);
    o.stop_after = 60;
    scan_positivity(o);
    auto const state = read_checkpoint(checkpoint_file(dir));
    {
        std::ofstream junk(cache_file(dir), std::ios::binary | std::ios::app);
        junk << "partial row bytes";
    }
    auto const r = scan_positivity(options(100, dir), state);
    CHECK(csv(r) == csv(scan_positivity(options(100))));
}

TEST_CASE("integrity failures") {
    auto const dir = fresh_dir("integrity");
    auto o = options(80, dir);
    o.stop_after = 40;
    scan_positivity(o);
    auto const cp = checkpoint_file(dir);
    auto const state = read_checkpoint(cp);

    SUBCASE("flipped row byte") {
        flip_byte(cache_file(dir), 200);
        CHECK_THROWS_AS(scan_positivity(options(80, dir), state), IntegrityError);
        CHECK_THROWS_AS(read_row_cache(cache_file(dir), state.content_hash), IntegrityError);
    }
    SUBCASE("truncated cache") {
        fs::resize_file(cache_file(dir), 100);
        CHECK_THROWS_AS(scan_positivity(options(80, dir), state), IntegrityError);
        CHECK_THROWS_AS(read_row_cache(cache_file(dir)), IntegrityError);
    }
    SUBCASE("bad magic") {
        flip_byte(cache_file(dir), 0);
        CHECK_THROWS_AS(read_row_cache(cache_file(dir)), IntegrityError);
    }
    SUBCASE("wrong checkpoint hash") {
        auto bad = state;
        bad.content_hash ^= 1;
        CHECK_THROWS_AS(scan_positivity(options(80, dir), bad), IntegrityError);
    }
    SUBCASE("unsupported checkpoint version") {
        auto bad = state;
        bad.version = 2;
        CHECK_THROWS_AS(scan_positivity(options(80, dir), bad), IntegrityError);
    }
    SUBCASE("malformed checkpoint files") {
        std::ofstream(cp) << "{ not json";
        CHECK_THROWS_AS(read_checkpoint(cp), IntegrityError);
        std::ofstream(cp) << R"({"version":1,"k_done":40,"cache_path":"x","hash":"zz"})";
        CHECK_THROWS_AS(read_checkpoint(cp), IntegrityError);
        std::ofstream(cp) << R"({"version":1,"k_done":40})";
        CHECK_THROWS_AS(read_checkpoint(cp), IntegrityError);
        CHECK_THROWS_AS(read_checkpoint(dir / "missing.json"), IntegrityError);
    }
    SUBCASE("checkpoint beyond k_max") {
        CHECK_THROWS_AS(scan_positivity(options(30, dir), state), PreconditionError);
    }
}

TEST_CASE("row cache round trip") {
    auto const dir = fresh_dir("roundtrip");
    auto const f = cholesky(build_gram(15));
    auto const path = dir / "rows.nbdl";
    write_row_cache(path, f.packed(), f.n());
    CHECK(fs::file_size(path) == 16 + 105 * 8);
    CHECK(hash_file(path) == row_cache_hash(f.packed(), f.n()));
    auto const back = read_row_cache(path, hash_file(path));
    CHECK(std::equal(back.packed().begin(), back.packed().end(), f.packed().begin(), f.packed().end()));

    std::ifstream in(path, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::string(magic, 4) == "NBDL");

    CHECK_THROWS_AS(write_row_cache(path, f.packed(), 14), PreconditionError);
    CHECK_THROWS_AS(row_cache_hash(f.packed(), 16), PreconditionError);
}

TEST_CASE("checkpoint round trip") {
    auto const dir = fresh_dir("checkpoint");
    CheckpointState s;
    s.k_done = 1234;
    s.cache_path = "some/rows.nbdl";
    s.content_hash = 0x0123456789abcdefULL;
    write_checkpoint(dir / "c.json", s);
    auto const back = read_checkpoint(dir / "c.json");
    CHECK(back.k_done == 1234);
    CHECK(back.cache_path == s.cache_path);
    CHECK(back.content_hash == s.content_hash);
    std::ifstream in(dir / "c.json");
    auto const doc = nlohmann::json::parse(in);
    CHECK(doc.at("hash") == "0123456789abcdef");
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(scan_positivity(options(1)), PreconditionError);
    CHECK_THROWS_AS(scan_positivity(options(kDeskScanLimit + 1)), ResourceError);
    auto o = options(10);
    o.checkpoint_stride = 0;
    CHECK_THROWS_AS(scan_positivity(o), PreconditionError);
}

TEST_CASE("report formats") {
    auto const r = scan_positivity(options(9));
    std::ostringstream js;
    write_report_json(js, r);
    auto const doc = nlohmann::json::parse(js.str());
    for (auto const* key : {"k_max", "k_done", "complete", "min_margin", "violations", "uncertain",
                            "elapsed_seconds", "checkpoint_id"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc["min_margin"]["k"] == 8);
    CHECK(doc["violations"].empty());

    auto const text = csv(r);
    CHECK(text.rfind("k,j,L_kj\n\nsummary,value,k,j\n", 0) == 0);
    CHECK(text.find("min_margin,0.0638402477174,8,5\n") != std::string::npos);
    CHECK(text.find("elapsed") == std::string::npos);

    ScanReport bad;
    bad.k_max = bad.k_done = 3;
    bad.violations.push_back({3, 2, -1.5e-3});
    auto const bad_csv = csv(bad);
    CHECK(bad_csv.rfind("k,j,L_kj\n3,2,-0.0015\n", 0) == 0);
    CHECK(bad.has_violation());
}

}
