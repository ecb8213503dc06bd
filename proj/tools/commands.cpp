#include "commands.hpp"

#include "exit_codes.hpp"
#include "verify_suites.hpp"

#include "nbcrit/cholesky.hpp"
#include "nbcrit/errors.hpp"
#include "nbcrit/format.hpp"
#include "nbcrit/gram.hpp"
#include "nbcrit/scan.hpp"
#include "nbcrit/stepfn.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

namespace nbcrit::cli {
namespace {

using nlohmann::json;

class Sink {
public:
    Sink(std::string const& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) {
            throw PreconditionError("cannot open " + path + " for writing");
        }
        os_ = &file_;
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

json nullable(std::optional<double> v) {
    return v ? json(*v) : json(nullptr);
}

} // namespace

int cmd_ip(IpArgs const& args, RunConfig const& cfg, std::ostream& os) {
    std::vector<IpMethod> methods;
    if (args.all_methods) {
        methods = {IpMethod::Vasyunin, IpMethod::DftDoubleSum, IpMethod::DigammaSeries};
    } else {
        methods = {parse_ip_method(args.method)};
    }
    std::vector<double> values;
    for (auto m : methods) {
        values.push_back(ip(args.j, args.k, m, cfg.ip_limits()));
    }
    double deviation = 0.0;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            deviation = std::max(deviation, std::abs(values[a] - values[b]));
        }
    }

    if (cfg.format == OutputFormat::Json) {
        json doc = {{"j", args.j}, {"k", args.k}};
        json vals = json::object();
        for (std::size_t i = 0; i < methods.size(); ++i) {
            vals[std::string(to_string(methods[i]))] = values[i];
        }
        doc["values"] = vals;
        if (args.all_methods) {
            doc["max_deviation"] = deviation;
        }
        os << doc.dump() << '\n';
        return kOk;
    }
    os << "method,value\n";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        os << to_string(methods[i]) << ',' << format_g12(values[i]) << '\n';
    }
    if (args.all_methods) {
        os << "max_deviation," << format_g12(deviation) << '\n';
    }
    return kOk;
}

int cmd_dn(DnArgs const& args, RunConfig const& cfg, std::ostream& os) {
    if (args.n_max < 2) {
        throw PreconditionError("--n-max must be >= 2");
    }
    DnSeries series;
    if (args.method == "cholesky") {
        series = dn_series(args.n_max, cfg.threads);
    } else if (args.method == "gram") {
        if (args.n_max > cfg.limits.gram_n_max) {
            throw PreconditionError("the Gram-determinant formula is unreliable above n = " +
                                    std::to_string(cfg.limits.gram_n_max) + "; use --method cholesky");
        }
        for (std::int64_t n = 2; n <= args.n_max; ++n) {
            series.push_back({n, dn_gram(n, cfg.limits.gram_n_max)});
        }
    } else {
        throw PreconditionError("unknown d_n method '" + args.method + "' (cholesky|gram)");
    }

    Sink sink(args.out, os);
    if (cfg.format == OutputFormat::Json) {
        json rows = json::array();
        for (auto const& p : series) {
            rows.push_back({{"n", p.n}, {"d_n", p.d}});
        }
        *sink << json{{"method", args.method}, {"series", rows}}.dump() << '\n';
        return kOk;
    }
    *sink << "n,d_n\n";
    for (auto const& p : series) {
        *sink << p.n << ',' << format_g12(p.d) << '\n';
    }
    return kOk;
}

int cmd_scan(ScanArgs const& args, RunConfig const& cfg, std::ostream& os, std::atomic<bool> const* cancel) {
    ScanOptions options;
    options.k_max = args.k_max.value_or(cfg.limits.k_max_default);
    options.threads = cfg.threads;
    options.checkpoint_stride = args.checkpoint_stride;
    options.full_scale = args.full_scale;
    options.stop_after = args.stop_after;
    options.cancel = cancel;
    if (!args.no_cache) {
        options.cache_dir = cfg.cache_dir;
        std::error_code ec;
        std::filesystem::create_directories(cfg.cache_dir, ec);
        if (ec) {
            throw PreconditionError("cannot create cache directory " + cfg.cache_dir.string());
        }
    }
    if (args.stop_after < 0) {
        throw PreconditionError("--stop-after must be >= 0");
    }

    std::optional<CheckpointState> resume;
    if (args.resume) {
        auto const path = args.resume_file.empty() ? checkpoint_file(cfg.cache_dir)
                                                   : std::filesystem::path(args.resume_file);
        resume = read_checkpoint(path);
    }

    auto const report = scan_positivity(options, resume);

    if (args.out.empty()) {
        if (cfg.format == OutputFormat::Json) {
            write_report_json(os, report);
        } else {
            write_report_csv(os, report);
        }
    } else {
        Sink js(args.out + ".json", os);
        write_report_json(*js, report);
        Sink cs(args.out + ".csv", os);
        write_report_csv(*cs, report);
    }

    if (report.has_violation()) {
        return kViolation;
    }
    if (!report.uncertain.empty()) {
        return kIndeterminate;
    }
    return kOk;
}

int cmd_verify(VerifyArgs const& args, RunConfig const& cfg, std::ostream& os) {
    auto const outcome = run_suite(args.suite, cfg);
    if (cfg.format == OutputFormat::Json) {
        os << json{{"suite", args.suite}, {"passed", outcome.passed}, {"checks", outcome.lines}}.dump() << '\n';
    } else {
        for (auto const& line : outcome.lines) {
            os << line << '\n';
        }
        os << "suite " << args.suite << ": " << (outcome.passed ? "PASS" : "FAIL") << '\n';
    }
    return outcome.passed ? kOk : kCheckFailed;
}

int cmd_plot_fk(PlotArgs const& args, RunConfig const&, std::ostream& os) {
    auto const pieces = fk_plot_data(args.k, args.r_max);
    Sink sink(args.out, os);
    write_plot_csv(*sink, pieces);
    return kOk;
}

int cmd_zerofree(ZeroFreeArgs const& args, RunConfig const& cfg, std::ostream& os) {
    if (args.n < 2) {
        throw PreconditionError("--n must be >= 2");
    }
    double const d = dn_series(args.n, cfg.threads).back().d;
    auto const disk = zero_free_disk(d);
    std::optional<double> center;
    std::optional<double> radius;
    if (disk) {
        center = disk->center;
        radius = disk->radius;
    }
    os << json{{"n", args.n}, {"d_n", d}, {"center", nullable(center)}, {"radius", nullable(radius)}}.dump()
       << '\n';
    return kOk;
}

int cmd_gram(GramArgs const& args, RunConfig const& cfg, std::ostream& os) {
    auto const gram = build_gram(args.n, parse_ip_method(args.method), cfg.threads, cfg.ip_limits());
    if (!args.binary.empty()) {
        static_assert(std::endian::native == std::endian::little, "binary export assumes little-endian");
        std::ofstream bin(args.binary, std::ios::binary);
        auto const packed = gram.packed();
        bin.write(reinterpret_cast<char const*>(packed.data()),
                  static_cast<std::streamsize>(packed.size() * sizeof(double)));
        if (!bin) {
            throw PreconditionError("cannot write " + args.binary);
        }
    }
    Sink sink(args.out, os);
    write_gram_csv(*sink, gram);
    return kOk;
}

} // namespace nbcrit::cli
