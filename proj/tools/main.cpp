#include "commands.hpp"
#include "exit_codes.hpp"
#include "run_config.hpp"
#include "verify_suites.hpp"

#include "nbcrit/errors.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <csignal>
#include <iostream>

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) {
    g_cancel.store(true);
}

} // namespace

int main(int argc, char** argv) {
    using namespace nbcrit::cli;

    CLI::App app{"Nyman-Beurling step functions f_k: inner products, d_n, positivity scans"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML configuration file");
    app.allow_config_extras(false);

    RunConfig cfg;
    std::vector<std::string> tol_pairs;
    std::string format = "csv";
    std::string cache_dir = cfg.cache_dir.string();

    app.add_option("--threads", cfg.threads, "worker threads for gram, dn and scan")
        ->envname("NBCRIT_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", tol_pairs, "tolerance override name=value (repeatable)")->envname("NBCRIT_TOL");
    app.add_option("--cache-dir", cache_dir, "row cache and checkpoint directory")->envname("NBCRIT_CACHE_DIR");
    app.add_option("--format", format, "output format")
        ->envname("NBCRIT_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--m-max", cfg.limits.m_max, "largest lcm accepted by the DFT method")->envname("NBCRIT_M_MAX");
    app.add_option("--gram-n-max", cfg.limits.gram_n_max, "largest n for the Gram-determinant d_n")
        ->envname("NBCRIT_GRAM_N_MAX");
    app.add_option("--k-max-default", cfg.limits.k_max_default, "scan size when --k-max is absent")
        ->envname("NBCRIT_K_MAX_DEFAULT");

    IpArgs ip_args;
    auto* ip_cmd = app.add_subcommand("ip", "inner product <f_j, f_k>");
    ip_cmd->add_option("j", ip_args.j)->required();
    ip_cmd->add_option("k", ip_args.k)->required();
    ip_cmd->add_option("--method", ip_args.method, "vasyunin|dft|series");
    ip_cmd->add_flag("--all-methods", ip_args.all_methods, "all three methods and their max deviation");

    DnArgs dn_args;
    auto* dn_cmd = app.add_subcommand("dn", "distance d_n from 1 to span{f_2..f_n}");
    dn_cmd->add_option("--n-max", dn_args.n_max)->required();
    dn_cmd->add_option("--method", dn_args.method, "cholesky|gram");
    dn_cmd->add_option("--out", dn_args.out, "CSV file (stdout when absent)");

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "positivity scan of L_kj");
    scan_cmd->add_option("--k-max", scan_args.k_max);
    scan_cmd->add_option("--resume", scan_args.resume_file, "checkpoint file (default: <cache-dir>/checkpoint.json)")
        ->expected(0, 1);
    scan_cmd->add_option("--checkpoint-stride", scan_args.checkpoint_stride)->check(CLI::PositiveNumber);
    scan_cmd->add_option("--out", scan_args.out, "report prefix; writes PREFIX.json and PREFIX.csv");
    scan_cmd->add_flag("--no-cache", scan_args.no_cache, "do not persist rows or checkpoints");
    scan_cmd->add_flag("--full-scale", scan_args.full_scale, "allow k-max above the desk limit");
    scan_cmd->add_option("--stop-after", scan_args.stop_after, "checkpoint and stop after this many rows");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", verify_args.suite, "one of: " + [] {
        std::string names;
        for (auto const& n : suite_names()) {
            names += (names.empty() ? "" : "|") + n;
        }
        return names;
    }())->required();

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand("plot-fk", "step pieces of f_k");
    plot_cmd->add_option("--k", plot_args.k)->required();
    plot_cmd->add_option("--r-max", plot_args.r_max);
    plot_cmd->add_option("--out", plot_args.out);

    ZeroFreeArgs zf_args;
    auto* zf_cmd = app.add_subcommand("zerofree", "zero-free disk from d_n");
    zf_cmd->add_option("--n", zf_args.n)->required();

    GramArgs gram_args;
    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix P_jk for 2 <= j,k <= n");
    gram_cmd->add_option("--n", gram_args.n)->required();
    gram_cmd->add_option("--method", gram_args.method, "vasyunin|dft|series");
    gram_cmd->add_option("--out", gram_args.out, "CSV file (stdout when absent)");
    gram_cmd->add_option("--binary", gram_args.binary, "packed lower triangle as little-endian binary64");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        cfg.cache_dir = cache_dir;
        cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        apply_tolerance_overrides(cfg, tol_pairs);
        validate(cfg);

        if (*ip_cmd) {
            return cmd_ip(ip_args, cfg, std::cout);
        }
        if (*dn_cmd) {
            return cmd_dn(dn_args, cfg, std::cout);
        }
        if (*scan_cmd) {
            scan_args.resume = scan_cmd->count("--resume") > 0;
            std::signal(SIGINT, on_sigint);
            return cmd_scan(scan_args, cfg, std::cout, &g_cancel);
        }
        if (*verify_cmd) {
            return cmd_verify(verify_args, cfg, std::cout);
        }
        if (*plot_cmd) {
            return cmd_plot_fk(plot_args, cfg, std::cout);
        }
        if (*zf_cmd) {
            return cmd_zerofree(zf_args, cfg, std::cout);
        }
        if (*gram_cmd) {
            return cmd_gram(gram_args, cfg, std::cout);
        }
    } catch (nbcrit::NumericalBreakdown const& e) {
        std::cerr << "numerical breakdown: " << e.what() << '\n';
        return kBreakdown;
    } catch (nbcrit::IntegrityError const& e) {
        std::cerr << "integrity failure: " << e.what() << '\n';
        return kIntegrity;
    } catch (std::invalid_argument const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (std::length_error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (std::out_of_range const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (std::domain_error const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
