#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "resonance/errors.hpp"
#include "resonance/hunter.hpp"
#include "resonance/kernel.hpp"
#include "resonance/moments.hpp"
#include "resonance/numeric.hpp"
#include "resonance/parallel.hpp"
#include "resonance/primes.hpp"
#include "resonance/resonator.hpp"
#include "resonance/rng.hpp"
#include "resonance/simd.hpp"
#include "resonance/verify.hpp"
#include "resonance/zeta.hpp"

namespace {

using namespace resonance;

// 17 significant digits: doubles round-trip exactly through the output
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const std::string& canonical) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canonical));
    return buf;
}

std::int64_t table_limit_for(double x) {
    return static_cast<std::int64_t>(std::max(2.0, std::ceil(x)));
}

int cmd_primes(std::int64_t limit, const std::vector<double>& at) {
    const PrimeTable table = PrimeTable::sieve(limit);
    const std::string hash = config_hash("primes|limit=" + std::to_string(limit));
    for (double x : at) {
        std::printf(
            "{\"limit\":%lld,\"x\":%s,\"pi\":%lld,\"theta\":%s,\"mertens\":%s,"
            "\"sup_log_bound\":%s,\"config_hash\":\"%s\"}\n",
            static_cast<long long>(table.limit()), num(x).c_str(),
            static_cast<long long>(table.prime_pi(x)), num(table.chebyshev_theta(x)).c_str(),
            num(table.mertens_product(x)).c_str(), num(table.sup_log_bound(x)).c_str(),
            hash.c_str());
    }
    return 0;
}

int cmd_resonator(double T, const std::vector<double>& at, const ResonatorConfig::Overrides& o) {
    const ResonatorConfig cfg = ResonatorConfig::make(T, o);
    const PrimeTable table = PrimeTable::sieve(table_limit_for(cfg.X));
    const WeightSystem w(cfg, table);
    const double bound = table.sup_log_bound(std::max(2.0, cfg.X));
    const std::string hash = config_hash("resonator|T=" + num(T) + "|X=" + num(cfg.X) +
                                         "|N=" + std::to_string(cfg.smooth_limit));
    for (double t : at) {
        const std::complex<double> r = w.eval_euler(t);
        std::printf(
            "{\"t\":%s,\"re\":%s,\"im\":%s,\"abs\":%s,\"log_abs\":%s,"
            "\"sup_log_bound\":%s,\"config_hash\":\"%s\"}\n",
            num(t).c_str(), num(r.real()).c_str(), num(r.imag()).c_str(),
            num(std::abs(r)).c_str(), num(score(w, t)).c_str(), num(bound).c_str(),
            hash.c_str());
    }
    return 0;
}

int cmd_zeta(double sigma, const std::vector<double>& ts, std::optional<double> cutoff,
             double target) {
    std::optional<PrimeTable> table;
    if (cutoff) table = PrimeTable::sieve(table_limit_for(*cutoff));
    const std::string hash = config_hash("zeta|sigma=" + num(sigma) +
                                         (cutoff ? "|cutoff=" + num(*cutoff) : "") +
                                         "|target=" + num(target));
    for (double t : ts) {
        const std::complex<double> s{sigma, t};
        const ZetaValue z = cutoff ? zeta_truncated(s, *cutoff, *table) : zeta(s, target);
        std::printf(
            "{\"sigma\":%s,\"t\":%s,\"re\":%s,\"im\":%s,\"abs\":%s,\"est_error\":%s,"
            "\"method\":\"%s\",\"config_hash\":\"%s\"}\n",
            num(sigma).c_str(), num(t).c_str(), num(z.value.real()).c_str(),
            num(z.value.imag()).c_str(), num(std::abs(z.value)).c_str(),
            num(z.est_error).c_str(),
            z.method == ZetaMethod::euler_product ? "euler_product" : "euler_maclaurin",
            hash.c_str());
    }
    return 0;
}

int cmd_lemma1(double T, int samples, std::vector<double> cutoffs, std::uint64_t seed) {
    if (cutoffs.empty()) throw std::domain_error("lemma1: at least one cutoff required");
    if (samples < 1) throw std::domain_error("lemma1: samples must be >= 1");
    std::sort(cutoffs.begin(), cutoffs.end());
    const PrimeTable table = PrimeTable::sieve(table_limit_for(cutoffs.back()));
    SplitMix64 rng(seed);
    std::printf("t,Y,deviation\n");
    for (int i = 0; i < samples; ++i) {
        const double t = rng.uniform(std::pow(T, 0.1), T);
        const auto dev = lemma1_deviation(t, T, cutoffs, table);
        for (std::size_t j = 0; j < cutoffs.size(); ++j)
            std::printf("%s,%s,%s\n", num(t).c_str(), num(cutoffs[j]).c_str(),
                        num(dev[j]).c_str());
    }
    return 0;
}

int cmd_moments(double T, const ResonatorConfig::Overrides& o, std::int64_t coeff_limit,
                const std::string& method, int threads) {
    const ResonatorConfig cfg = ResonatorConfig::make(T, o);
    const PrimeTable table = PrimeTable::sieve(table_limit_for(cfg.X));
    const WeightSystem w(cfg, table);
    const SmoothBasis basis = SmoothBasis::build(w, cfg.smooth_limit);
    const ZetaCoefficients coeffs = ZetaCoefficients::build(cfg.X, coeff_limit, table);
    const KernelSpec kern{cfg.lambda};
    const MomentMethod mm =
        method == "quadrature" ? MomentMethod::quadrature : MomentMethod::closed_form;
    const MomentReport rep = full_report(cfg, basis, coeffs, w, kern, table, mm, threads);
    const std::string hash = config_hash(
        "moments|T=" + num(T) + "|X=" + num(cfg.X) + "|N=" + std::to_string(cfg.smooth_limit) +
        "|K=" + std::to_string(coeff_limit) + "|lambda=" + num(cfg.lambda) +
        "|method=" + method);
    std::printf(
        "{\"T\":%s,\"X\":%s,\"lambda\":%s,\"smooth_limit\":%lld,\"coeff_limit\":%lld,"
        "\"i2\":%s,\"i1_re\":%s,\"i1_im\":%s,\"ratio\":%s,\"closed_form_bound\":%s,"
        "\"mertens_part\":%s,\"correction_part\":%s,\"coefficient_sum\":%s,\"slack\":%s,"
        "\"truncation_deficit\":%s,\"benchmark_theorem\":%s,\"method\":\"%s\","
        "\"config_hash\":\"%s\"}\n",
        num(cfg.T).c_str(), num(cfg.X).c_str(), num(cfg.lambda).c_str(),
        static_cast<long long>(cfg.smooth_limit), static_cast<long long>(coeff_limit),
        num(rep.i2).c_str(), num(rep.i1.real()).c_str(), num(rep.i1.imag()).c_str(),
        num(rep.ratio).c_str(), num(rep.closed_form_bound).c_str(),
        num(rep.mertens_part).c_str(), num(rep.correction_part).c_str(),
        num(rep.coefficient_sum).c_str(), num(rep.slack).c_str(),
        num(rep.truncation_deficit).c_str(), num(rep.benchmark_theorem).c_str(),
        rep.method == MomentMethod::quadrature ? "quadrature" : "closed_form", hash.c_str());
    return 0;
}

int cmd_verify(std::uint64_t seed, std::optional<int> only, int threads) {
    std::vector<CheckResult> results;
    if (only)
        results.push_back(run_acceptance_check(*only, seed, threads));
    else
        results = run_acceptance_checks(seed, threads);
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        passed += r.pass ? 1 : 0;
        std::printf("[%2d/11] %s  %s — %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}

int cmd_hunt(double T, std::int64_t budget, std::uint64_t seed, std::int64_t top_k,
             const ResonatorConfig::Overrides& o, bool baseline, const std::string& run_log,
             int threads) {
    if (top_k < 0) throw std::domain_error("hunt: top-k must be nonnegative");
    const ResonatorConfig cfg = ResonatorConfig::make(T, o);
    const PrimeTable table = PrimeTable::sieve(table_limit_for(cfg.X));
    const HuntResult result = baseline ? random_baseline(cfg, budget, seed, table, threads)
                                       : hunt(cfg, budget, seed, table, threads);
    const std::string hash = config_hash(
        "hunt|T=" + num(T) + "|X=" + num(cfg.X) + "|budget=" + std::to_string(budget) +
        "|seed=" + std::to_string(seed) + (baseline ? "|baseline" : ""));

    std::printf("t,log_abs_R,zeta_abs,benchmark_levinson,benchmark_theorem\n");
    const std::size_t rows =
        std::min<std::size_t>(result.records.size(), static_cast<std::size_t>(top_k));
    for (std::size_t i = 0; i < rows; ++i) {
        const HuntRecord& r = result.records[i];
        std::printf("%s,%s,%s,%s,%s\n", num(r.t).c_str(), num(r.log_abs_r).c_str(),
                    num(r.zeta_abs).c_str(), num(r.benchmark_levinson).c_str(),
                    num(r.benchmark_theorem).c_str());
    }
    if (result.exhausted_warning)
        std::fprintf(stderr, "warning: no candidates within budget — empty result\n");

    if (!run_log.empty()) {
        std::ofstream log(run_log, std::ios::app);
        if (log) {
            log << hash << " T=" << num(T) << " budget=" << budget << " seed=" << seed
                << " mode=" << (baseline ? "baseline" : "guided")
                << " evals=" << result.budget_used << " best_t="
                << (result.records.empty() ? "none" : num(result.records[0].t))
                << " best_zeta="
                << (result.records.empty() ? "none" : num(result.records[0].zeta_abs)) << "\n";
        } else {
            std::fprintf(stderr, "warning: cannot append to run log %s\n", run_log.c_str());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance toolkit: prime functionals, resonator moments, zeta hunts"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read option defaults from an INI file");

    int threads = 0;
    std::string simd_mode = "auto";
    app.add_option("--threads", threads, "worker threads (0 = RESONANCE_THREADS env or hardware)");
    app.add_option("--simd", simd_mode, "kernel variant: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    std::function<int()> action;

    // primes
    auto* primes_cmd = app.add_subcommand("primes", "prime-counting functionals at query points");
    std::int64_t primes_limit = 0;
    std::vector<double> primes_at;
    primes_cmd->add_option("--limit", primes_limit, "sieve limit")->required();
    primes_cmd->add_option("--at", primes_at, "query points x1,x2,...")
        ->required()
        ->delimiter(',');
    primes_cmd->callback([&] { action = [&] { return cmd_primes(primes_limit, primes_at); }; });

    // resonator
    auto* reso_cmd = app.add_subcommand("resonator", "evaluate R(t) at query heights");
    double reso_T = 0.0, reso_x = 0.0;
    std::int64_t reso_n = 0;
    std::vector<double> reso_at;
    reso_cmd->add_option("--T", reso_T, "target height")->required();
    reso_cmd->add_option("--at", reso_at, "heights t1,t2,...")->required()->delimiter(',');
    auto* reso_x_opt = reso_cmd->add_option("--x-override", reso_x, "prime cutoff X");
    auto* reso_n_opt = reso_cmd->add_option("--smooth-limit", reso_n, "series truncation N");
    reso_cmd->callback([&] {
        action = [&] {
            ResonatorConfig::Overrides o;
            if (reso_x_opt->count()) o.X = reso_x;
            if (reso_n_opt->count()) o.smooth_limit = reso_n;
            return cmd_resonator(reso_T, reso_at, o);
        };
    });

    // zeta
    auto* zeta_cmd = app.add_subcommand("zeta", "zeta on a vertical line, full or truncated");
    double zeta_sigma = 1.0, zeta_cutoff = 0.0, zeta_target = 1e-10;
    std::vector<double> zeta_t;
    zeta_cmd->add_option("--sigma", zeta_sigma, "real part (default 1)");
    zeta_cmd->add_option("--t", zeta_t, "heights t1,t2,...")->required()->delimiter(',');
    auto* zeta_cut_opt =
        zeta_cmd->add_option("--cutoff", zeta_cutoff, "prime cutoff for the truncated product");
    zeta_cmd->add_option("--target-error", zeta_target, "error budget for the full evaluator");
    zeta_cmd->callback([&] {
        action = [&] {
            std::optional<double> cut;
            if (zeta_cut_opt->count()) cut = zeta_cutoff;
            return cmd_zeta(zeta_sigma, zeta_t, cut, zeta_target);
        };
    });

    // lemma1
    auto* lem_cmd = app.add_subcommand("lemma1", "deviation of truncated products from zeta");
    double lem_T = 0.0;
    int lem_samples = 20;
    std::vector<double> lem_cutoffs;
    std::uint64_t lem_seed = 1;
    lem_cmd->add_option("--T", lem_T, "height range upper end")->required();
    lem_cmd->add_option("--samples", lem_samples, "sampled heights (default 20)");
    lem_cmd->add_option("--cutoffs", lem_cutoffs, "prime cutoffs Y1,Y2,...")
        ->required()
        ->delimiter(',');
    lem_cmd->add_option("--seed", lem_seed, "sampling seed");
    lem_cmd->callback([&] {
        action = [&] { return cmd_lemma1(lem_T, lem_samples, lem_cutoffs, lem_seed); };
    });

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "smoothed moment report");
    double mom_T = 0.0, mom_x = 0.0, mom_lambda = 0.0;
    std::int64_t mom_n = 0, mom_K = 1000;
    std::string mom_method = "closed";
    mom_cmd->add_option("--T", mom_T, "target height")->required();
    auto* mom_x_opt = mom_cmd->add_option("--x-override", mom_x, "prime cutoff X");
    auto* mom_n_opt = mom_cmd->add_option("--smooth-limit", mom_n, "series truncation N");
    mom_cmd->add_option("--coeff-limit", mom_K, "coefficient truncation K (default 1000)");
    auto* mom_l_opt = mom_cmd->add_option("--lambda", mom_lambda, "kernel scale override");
    mom_cmd->add_option("--method", mom_method, "closed or quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}));
    mom_cmd->callback([&] {
        action = [&] {
            ResonatorConfig::Overrides o;
            if (mom_x_opt->count()) o.X = mom_x;
            if (mom_n_opt->count()) o.smooth_limit = mom_n;
            if (mom_l_opt->count()) o.lambda = mom_lambda;
            return cmd_moments(mom_T, o, mom_K, mom_method, threads);
        };
    });

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run the acceptance suite");
    std::uint64_t ver_seed = 1;
    int ver_only = 0;
    ver_cmd->add_option("--seed", ver_seed, "seed for the randomized checks");
    auto* ver_only_opt = ver_cmd->add_option("--only", ver_only, "run a single check (1..11)")
                             ->check(CLI::Range(1, kAcceptanceCheckCount));
    ver_cmd->callback([&] {
        action = [&] {
            std::optional<int> only;
            if (ver_only_opt->count()) only = ver_only;
            return cmd_verify(ver_seed, only, threads);
        };
    });

    // hunt
    auto* hunt_cmd = app.add_subcommand("hunt", "search for large |zeta(1+it)|");
    double hunt_T = 0.0, hunt_x = 0.0;
    std::int64_t hunt_budget = 0, hunt_top_k = 10;
    std::uint64_t hunt_seed = 1;
    bool hunt_baseline = false;
    std::string hunt_log = "hunt_runs.log";
    hunt_cmd->add_option("--T", hunt_T, "search range is [sqrt(T), T]")->required();
    hunt_cmd->add_option("--budget", hunt_budget, "zeta evaluations allowed")->required();
    hunt_cmd->add_option("--seed", hunt_seed, "grid jitter / sampling seed");
    hunt_cmd->add_option("--top-k", hunt_top_k, "records to print (default 10)");
    auto* hunt_x_opt = hunt_cmd->add_option("--x-override", hunt_x, "prime cutoff X");
    hunt_cmd->add_flag("--random-baseline", hunt_baseline,
                       "spend the budget on uniform random heights instead");
    hunt_cmd->add_option("--run-log", hunt_log, "append summary lines here ('' disables)");
    hunt_cmd->callback([&] {
        action = [&] {
            ResonatorConfig::Overrides o;
            if (hunt_x_opt->count()) o.X = hunt_x;
            return cmd_hunt(hunt_T, hunt_budget, hunt_seed, hunt_top_k, o, hunt_baseline,
                            hunt_log, threads);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2, --help exits 0
    }

    try {
        if (simd_mode == "scalar")
            simd::force(simd::Mode::scalar);
        else if (simd_mode == "avx2")
            simd::force(simd::Mode::avx2);
        return action ? action() : 2;
    } catch (const config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 3;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 3;
    } catch (const precision_error& e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "out of range: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
