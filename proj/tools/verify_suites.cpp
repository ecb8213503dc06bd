#include "verify_suites.hpp"

#include "nbcrit/cholesky.hpp"
#include "nbcrit/errors.hpp"
#include "nbcrit/format.hpp"
#include "nbcrit/published.hpp"
#include "nbcrit/stepfn.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace nbcrit::cli {
namespace {

void check(SuiteOutcome& out, bool ok, std::string const& what) {
    out.passed = out.passed && ok;
    out.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + what);
}

SuiteOutcome tables(RunConfig const& cfg) {
    SuiteOutcome out;
    double const tol = cfg.tolerance("tables");
    auto const gram = build_gram(9, IpMethod::Vasyunin, cfg.threads);
    double worst_p = 0.0;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            worst_p = std::max(worst_p, std::abs(gram(a + 2, b + 2) - published::kGramTable[a][b]));
        }
    }
    check(out, worst_p <= tol, "Gram table P_jk, 2<=j,k<=9: max deviation " + format_g12(worst_p));

    auto const factor = cholesky(gram);
    double worst_l = 0.0;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b <= a; ++b) {
            worst_l = std::max(worst_l, std::abs(factor(a + 2, b + 2) - published::kCholeskyTable[a][b]));
        }
    }
    check(out, worst_l <= tol, "Cholesky table L_kj, 2<=j<=k<=9: max deviation " + format_g12(worst_l));
    return out;
}

SuiteOutcome biorthogonal(RunConfig const&) {
    SuiteOutcome out;
    int bad = 0;
    for (std::int64_t k = 2; k <= 50; ++k) {
        for (std::int64_t l = 2; l <= 50; ++l) {
            if (ip_fk_gl(k, l) != ExactRational(k == l ? 1 : 0)) {
                ++bad;
            }
        }
    }
    check(out, bad == 0, "<f_k, g_l> == delta_kl exactly for 2<=k,l<=50 (" + std::to_string(bad) + " mismatches)");
    int bad_mu = 0;
    for (std::int64_t n = 1; n <= 10'000; ++n) {
        if (mobius_divisor_sum(n) != (n == 1 ? 1 : 0)) {
            ++bad_mu;
        }
    }
    check(out, bad_mu == 0, "sum_{d|n} mu(d) == delta_1n for n<=10000");
    return out;
}

SuiteOutcome signs(RunConfig const&) {
    SuiteOutcome out;
    auto const factor = cholesky(build_gram(30));
    int disagree = 0;
    int indeterminate = 0;
    for (std::int64_t k = 2; k <= 30; ++k) {
        for (std::int64_t j = 2; j <= k; ++j) {
            auto const t = sign_equivalence_check(j, k, factor);
            if (t.indeterminate()) {
                ++indeterminate;
            } else if (!t.agree()) {
                ++disagree;
            }
        }
    }
    check(out, disagree == 0 && indeterminate == 0,
          "sign(L_kj) = sign(bordered) = sign(polarization) for j<=k<=30 (" + std::to_string(disagree) +
              " disagreements, " + std::to_string(indeterminate) + " indeterminate)");
    return out;
}

SuiteOutcome asymptotics(RunConfig const& cfg) {
    SuiteOutcome out;
    double const tol = cfg.tolerance("asymptotics");
    for (std::int64_t j : {2, 3, 5}) {
        double const far = asymp_ratio(j, 1'000'000);
        double const near = asymp_ratio(j, 1'000);
        check(out, std::abs(far - 1.0) <= tol,
              "j=" + std::to_string(j) + ": ratio at k=1e6 is " + format_g12(far));
        check(out, std::abs(far - 1.0) < std::abs(near - 1.0),
              "j=" + std::to_string(j) + ": |ratio-1| shrinks from k=1e3 (" + format_g12(near) + ") to k=1e6");
    }
    return out;
}

SuiteOutcome counterexample(RunConfig const& cfg) {
    SuiteOutcome out;
    std::vector<std::int64_t> const idx = {6, 3, 4};
    double const v = bordered_det(idx, 5, 2);
    check(out, std::abs(v - published::kSwappedBorderedDet) <= cfg.tolerance("counterexample"),
          "G(f6,f3,f4|f5,f2) = " + format_g12(v));
    check(out, v < 0.0, "swapped-order bordered determinant is negative");
    return out;
}

SuiteOutcome hj(RunConfig const& cfg) {
    SuiteOutcome out;
    check(out, std::abs(hj_det(2) - 0.5) <= cfg.tolerance("hj_exact"), "H(2) = 1/2");
    int nonpositive = 0;
    double smallest = 1.0;
    for (std::int64_t j = 2; j <= 100; ++j) {
        auto const h = hj_det_detail(j);
        if (!(h.value > 0.0) || h.uncertain) {
            ++nonpositive;
        }
        smallest = std::min(smallest, h.value);
    }
    check(out, nonpositive == 0, "H(j) > 0 for 2<=j<=100 (smallest " + format_g12(smallest) + ")");
    return out;
}

using Suite = std::function<SuiteOutcome(RunConfig const&)>;

std::map<std::string, Suite> const& registry() {
    static std::map<std::string, Suite> const kSuites = {
        {"tables", tables},           {"biorthogonal", biorthogonal},
        {"signs", signs},             {"asymptotics", asymptotics},
        {"counterexample", counterexample}, {"hj", hj},
    };
    return kSuites;
}

} // namespace

std::vector<std::string> const& suite_names() {
    static std::vector<std::string> const kNames = [] {
        std::vector<std::string> names;
        for (auto const& [name, _] : registry()) {
            names.push_back(name);
        }
        return names;
    }();
    return kNames;
}

SuiteOutcome run_suite(std::string const& name, RunConfig const& cfg) {
    auto const it = registry().find(name);
    if (it == registry().end()) {
        throw PreconditionError("unknown suite '" + name + "'");
    }
    return it->second(cfg);
}

} // namespace nbcrit::cli
