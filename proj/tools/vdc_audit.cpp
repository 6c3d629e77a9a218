// vdc-audit: kernel construction, single bound audits, and grid sweeps.
//
// Exit codes: 0 success, 1 audit failure, 2 configuration error, 3 work
// budget exhausted.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vdc/bound_engine.hpp"
#include "vdc/errors.hpp"
#include "vdc/grid.hpp"
#include "vdc/rng.hpp"
#include "vdc/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct SingleOptions {
    std::int64_t c = 0;
    std::string kernel = "additive";
    std::int64_t M = 0; // 0: default floor(c/8), at least 1
    std::int64_t N = 0;
    int k = 1;
    std::string scheme = "random-signs";
    std::uint64_t seed = 1;
    double shift_cap = 1.0;
    long long budget = 10000;
    std::string search = "exhaustive";
    int samples = 512;
    std::uint64_t sample_seed = 1;
    std::string alpha_mode = "as-stated";
    std::uint64_t kernel_seed = 1;
    std::int64_t twist_a = 1;
    std::string json_path;
};

int run_single(const SingleOptions& opt) {
    const vdc::Modulus c = vdc::Modulus::of(opt.c);
    const std::int64_t M = opt.M > 0 ? opt.M : std::max<std::int64_t>(1, opt.c / 8);
    const std::int64_t N = opt.N > 0 ? opt.N : std::max<std::int64_t>(1, opt.c / 8);

    const vdc::Kernel K = vdc::build_kernel_by_name(opt.kernel, c, opt.kernel_seed, opt.twist_a);
    const auto alpha = vdc::cell_alpha(M, opt.scheme, opt.seed, c);
    const auto beta = vdc::cell_beta(N, opt.scheme, opt.seed, c);

    vdc::BoundConfig cfg;
    cfg.depth = opt.k;
    cfg.shift_cap_constant = opt.shift_cap;
    cfg.work_budget = opt.budget;
    cfg.sample_count = opt.samples;
    cfg.sample_seed = opt.sample_seed;
    if (opt.search == "exhaustive")
        cfg.search = vdc::SearchMode::exhaustive;
    else if (opt.search == "sampled")
        cfg.search = vdc::SearchMode::sampled;
    else
        throw vdc::config_error("--search must be exhaustive or sampled");
    if (opt.alpha_mode == "as-stated")
        cfg.alpha_mode = vdc::AlphaExponentMode::as_stated;
    else if (opt.alpha_mode == "recomposed")
        cfg.alpha_mode = vdc::AlphaExponentMode::recomposed;
    else
        throw vdc::config_error("--alpha-mode must be as-stated or recomposed");

    const std::int64_t L = vdc::shift_cap(cfg, c, N);
    const vdc::RatioAudit audit = vdc::ratio_audit(K, alpha, beta, cfg);

    std::printf("kernel %s, c=%lld, M=%lld, N=%lld, scheme=%s, seed=%llu, k=%d, L=%lld\n",
                opt.kernel.c_str(), static_cast<long long>(opt.c), static_cast<long long>(M),
                static_cast<long long>(N), opt.scheme.c_str(),
                static_cast<unsigned long long>(opt.seed), opt.k,
                static_cast<long long>(L));
    std::printf("  |S_K|        = %.12g\n", audit.lhs_abs);
    std::printf("  prefactor    = %.12g\n", audit.theorem.prefactor);
    for (const auto& t : audit.theorem.terms)
        std::printf("  term %-8s = %.12g\n", t.label.c_str(), t.value);
    std::printf("  rhs_total    = %.12g\n", audit.theorem.rhs_total);
    std::printf("  ratio        = %.12g\n", audit.theorem.ratio);
    std::printf("  trivial      = %.12g (ratio %.12g)\n", audit.trivial, audit.trivial_ratio);
    std::printf("  final triv.  = %.12g (poisson const %.6g)\n", audit.final_trivial.value,
                audit.final_trivial.poisson_constant);
    std::string tup;
    for (std::size_t i = 0; i < audit.theorem.argmax_tuple.shifts.size(); ++i)
        tup += (i ? ";" : "") + std::to_string(audit.theorem.argmax_tuple.shifts[i]);
    std::printf("  argmax tuple = (%s), search %s\n", tup.c_str(),
                audit.theorem.search_exhaustive ? "exhaustive" : "sampled");

    const auto record = vdc::audit_record(audit, opt.c, M, N, opt.kernel, opt.scheme,
                                          opt.seed, opt.k, L);
    if (opt.json_path.empty()) {
        std::cout << record.dump(2) << "\n";
    } else {
        std::ofstream out(opt.json_path);
        if (!out)
            throw vdc::io_error("cannot write " + opt.json_path);
        out << record.dump(2) << "\n";
    }
    return kExitOk;
}

int run_kernel_check(std::int64_t c_val, const std::string& family, std::uint64_t seed,
                     std::int64_t twist_a) {
    const vdc::Modulus c = vdc::Modulus::of(c_val);
    const vdc::Kernel K = vdc::build_kernel_by_name(family, c, seed, twist_a);
    std::printf("kernel %s, c=%lld: sup|K| on units = %.12g, overall = %.12g\n",
                family.c_str(), static_cast<long long>(c_val),
                K.magnitude_profile.sup_units, K.magnitude_profile.sup_all);

    bool ok = true;
    if (family.compare(0, 2, "kl") == 0) {
        const int k = std::stoi(family.substr(2, family.find('-') - 2));
        const double weil = static_cast<double>(k) + 1e-9;
        std::printf("  Weil bound |Kl_%d| <= %d: sup = %.12g -> %s\n", k, k,
                    K.magnitude_profile.sup_units,
                    K.magnitude_profile.sup_units <= weil ? "ok" : "VIOLATED");
        ok = ok && K.magnitude_profile.sup_units <= weil;

        double feasible = 1.0;
        for (int i = 0; i + 1 < k; ++i)
            feasible *= static_cast<double>(c_val);
        if (feasible <= 1e7) {
            const auto fast = vdc::build_hyperkloosterman_fast(c, k);
            const auto direct = vdc::build_hyperkloosterman_direct(c, k);
            double dev = 0.0;
            for (std::size_t i = 0; i < fast.size(); ++i)
                dev = std::max(dev, std::abs(fast[i] - direct[i]));
            std::printf("  fast vs direct: max |diff| = %.3e -> %s\n", dev,
                        dev <= 1e-9 ? "ok" : "VIOLATED");
            ok = ok && dev <= 1e-9;
        } else {
            std::printf("  fast vs direct: skipped (p^(k-1) > 1e7)\n");
        }
        if (k == 2) {
            const auto fast = vdc::build_hyperkloosterman_fast(c, 2);
            double imag = 0.0;
            for (const auto& v : fast)
                imag = std::max(imag, std::abs(v.imag()));
            std::printf("  Kl_2 reality: max |Im| = %.3e -> %s\n", imag,
                        imag <= 1e-10 ? "ok" : "VIOLATED");
            ok = ok && imag <= 1e-10;
        }
    }
    return ok ? kExitOk : kExitAuditFail;
}

int run_poisson_check(std::int64_t c_val, std::uint64_t seed, double support_mult,
                      std::int64_t n_max) {
    const vdc::Modulus c = vdc::Modulus::of(c_val);
    vdc::DetRng rng(seed);
    std::vector<vdc::cplx> values(static_cast<std::size_t>(c_val));
    for (auto& v : values) {
        const double theta = 2.0 * 3.14159265358979323846 * rng.unit();
        v = {std::cos(theta), std::sin(theta)};
    }
    const vdc::PeriodicTable K(c, std::move(values));
    const auto V = vdc::TestFunction::bump(1.0, support_mult * static_cast<double>(c_val));
    const double residual = vdc::poisson_check(K, V, n_max);
    std::printf("poisson residual (c=%lld, seed=%llu, support [1, %g]): %.6e\n",
                static_cast<long long>(c_val), static_cast<unsigned long long>(seed),
                support_mult * static_cast<double>(c_val), residual);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical audits for bilinear-form bounds with periodic kernels"};
    app.require_subcommand(1);

    SingleOptions sopt;
    auto* single = app.add_subcommand("single", "run one ratio audit");
    single->add_option("--c", sopt.c, "modulus")->required();
    single->add_option("--kernel", sopt.kernel, "kernel family");
    single->add_option("--M", sopt.M, "alpha support start (default c/8)");
    single->add_option("--N", sopt.N, "beta support start (default c/8)");
    single->add_option("--k", sopt.k, "bound depth");
    single->add_option("--scheme", sopt.scheme, "coefficient scheme");
    single->add_option("--seed", sopt.seed, "coefficient seed");
    single->add_option("--shift-cap", sopt.shift_cap, "C_l in L = floor(C_l c/N)");
    single->add_option("--budget", sopt.budget, "tuple budget for exhaustive search");
    single->add_option("--search", sopt.search, "exhaustive | sampled");
    single->add_option("--samples", sopt.samples, "sample count for sampled search");
    single->add_option("--sample-seed", sopt.sample_seed, "seed for sampled search");
    single->add_option("--alpha-mode", sopt.alpha_mode, "as-stated | recomposed");
    single->add_option("--kernel-seed", sopt.kernel_seed, "seed for random kernels");
    single->add_option("--twist-a", sopt.twist_a, "twist parameter for inverse-twist");
    single->add_option("--json", sopt.json_path, "write the JSON record here instead of stdout");

    std::string grid_spec_path, grid_out;
    auto* grid = app.add_subcommand("grid", "run a parameter sweep from a JSON spec");
    grid->add_option("--spec", grid_spec_path, "grid spec JSON file")->required();
    grid->add_option("--out", grid_out, "override the CSV output path");

    auto* kernel = app.add_subcommand("kernel", "kernel construction and audits");
    std::int64_t kc = 0, ktwist = 1;
    std::string kfamily = "additive", kout = "kernel.vdck";
    std::uint64_t kseed = 1;
    auto* kdump = kernel->add_subcommand("dump", "build a kernel and write it to a file");
    kdump->add_option("--c", kc, "modulus")->required();
    kdump->add_option("--family", kfamily, "kernel family");
    kdump->add_option("--out", kout, "output path");
    kdump->add_option("--kernel-seed", kseed, "seed for random kernels");
    kdump->add_option("--twist-a", ktwist, "twist parameter");
    auto* kcheck = kernel->add_subcommand("check", "Weil/oracle audits for a kernel family");
    kcheck->add_option("--c", kc, "modulus")->required();
    kcheck->add_option("--family", kfamily, "kernel family");
    kcheck->add_option("--kernel-seed", kseed, "seed for random kernels");
    kcheck->add_option("--twist-a", ktwist, "twist parameter");
    kernel->require_subcommand(1);

    auto* poisson = app.add_subcommand("poisson", "Poisson summation checks");
    std::int64_t pc = 0, pnmax = 0;
    std::uint64_t pseed = 1;
    double psupport = 3.0;
    auto* pcheck = poisson->add_subcommand("check", "residual for a random unimodular kernel");
    pcheck->add_option("--c", pc, "modulus")->required();
    pcheck->add_option("--seed", pseed, "kernel seed");
    pcheck->add_option("--support-mult", psupport, "bump support is [1, mult*c]");
    pcheck->add_option("--n-max", pnmax, "spectral truncation (0 = automatic)");
    poisson->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (single->parsed())
            return run_single(sopt);
        if (grid->parsed()) {
            const vdc::GridSpec spec = vdc::load_grid_spec(grid_spec_path);
            vdc::run_grid(spec, grid_out);
            std::printf("wrote %s\n",
                        (grid_out.empty() ? spec.output_csv : grid_out).c_str());
            return kExitOk;
        }
        if (kdump->parsed()) {
            const vdc::Modulus c = vdc::Modulus::of(kc);
            const vdc::Kernel K = vdc::build_kernel_by_name(kfamily, c, kseed, ktwist);
            vdc::save_kernel(K, kout);
            std::printf("wrote %s (c=%lld, family=%s)\n", kout.c_str(),
                        static_cast<long long>(kc), kfamily.c_str());
            return kExitOk;
        }
        if (kcheck->parsed())
            return run_kernel_check(kc, kfamily, kseed, ktwist);
        if (pcheck->parsed())
            return run_poisson_check(pc, pseed, psupport, pnmax);
    } catch (const vdc::budget_exceeded& e) {
        std::fprintf(stderr, "budget exhausted: %s\n", e.what());
        return kExitBudget;
    } catch (const vdc::infeasible& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitBudget;
    } catch (const vdc::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
