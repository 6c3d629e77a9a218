#include "vdc/bound_engine.hpp"

#include <algorithm>
#include <cmath>

#include "vdc/errors.hpp"
#include "vdc/rng.hpp"
#include "vdc/spectral.hpp"

namespace vdc {

namespace {

double pow_or_zero(double base, double exponent) {
    if (base > 0.0)
        return std::pow(base, exponent);
    return exponent == 0.0 ? 1.0 : 0.0;
}

double tuple_space_size(std::int64_t L, int k) {
    double s = 1.0;
    for (int i = 0; i < k; ++i)
        s *= static_cast<double>(2 * L + 1);
    return s;
}

// Tuple lists are always produced in lexicographic order so that the
// running argmax tie-breaks to the lexicographically smallest tuple and
// consecutive tuples share chain prefixes.
std::vector<std::vector<std::int64_t>> enumerate_tuples(std::int64_t L, int k,
                                                        const BoundConfig& cfg,
                                                        bool* covered_all) {
    const double space = tuple_space_size(L, k);
    std::vector<std::vector<std::int64_t>> tuples;
    if (cfg.search == SearchMode::exhaustive ||
        space <= static_cast<double>(cfg.sample_count)) {
        if (cfg.search == SearchMode::exhaustive &&
            space > static_cast<double>(cfg.work_budget))
            throw budget_exceeded("exhaustive search needs (2L+1)^k = " +
                                  std::to_string(space) + " tuples, budget is " +
                                  std::to_string(cfg.work_budget));
        *covered_all = true;
        std::vector<std::int64_t> cur(static_cast<std::size_t>(k), -L);
        while (true) {
            tuples.push_back(cur);
            int d = k - 1;
            while (d >= 0 && cur[static_cast<std::size_t>(d)] == L) {
                cur[static_cast<std::size_t>(d)] = -L;
                --d;
            }
            if (d < 0)
                break;
            ++cur[static_cast<std::size_t>(d)];
        }
        return tuples;
    }
    // Seeded uniform draw over the lattice; the all-zeros tuple is always
    // included since l = 0 carries the diagonal energy.
    *covered_all = false;
    tuples.emplace_back(static_cast<std::size_t>(k), 0);
    DetRng rng(cfg.sample_seed);
    for (int i = 0; i < cfg.sample_count; ++i) {
        std::vector<std::int64_t> t(static_cast<std::size_t>(k));
        for (auto& l : t)
            l = -L + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * L + 1)));
        tuples.push_back(std::move(t));
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return tuples;
}

// Coefficients folded onto residues: A[r] = sum_{m ~ M, m = r (c)} alpha_m.
std::vector<cplx> fold_to_residues(const CoefficientSequence& a, const Modulus& c) {
    std::vector<cplx> folded(static_cast<std::size_t>(c.c), cplx{0.0, 0.0});
    for (std::int64_t m = a.start; m < 2 * a.start; ++m)
        folded[static_cast<std::size_t>(reduce(m, c.c))] += a.at(m);
    return folded;
}

// S_{Lambda_l K'}(M, M; c) with coefficients (alpha, alpha) for every l at
// once: S(l) = c^(-1/2) DFT(P Q)(l) with P(x) = sum_m a_m K'(m, x) and
// Q(x) = sum_m a_m conj(K'(m, x)).
std::vector<cplx> leaf_bilinear_spectrum(const Kernel& Kp, const std::vector<cplx>& folded) {
    const std::int64_t c = Kp.modulus.c;
    std::vector<cplx> P(static_cast<std::size_t>(c), cplx{0.0, 0.0});
    std::vector<cplx> Q(static_cast<std::size_t>(c), cplx{0.0, 0.0});
    for (std::int64_t r = 0; r < c; ++r) {
        const cplx a = folded[static_cast<std::size_t>(r)];
        if (a == cplx{0.0, 0.0})
            continue;
        const cplx* row = &Kp.table[static_cast<std::size_t>(r * c)];
        for (std::int64_t x = 0; x < c; ++x) {
            P[static_cast<std::size_t>(x)] += a * row[x];
            Q[static_cast<std::size_t>(x)] += a * std::conj(row[x]);
        }
    }
    std::vector<cplx> prod(static_cast<std::size_t>(c));
    for (std::int64_t x = 0; x < c; ++x)
        prod[static_cast<std::size_t>(x)] = P[static_cast<std::size_t>(x)] * Q[static_cast<std::size_t>(x)];
    dft_fast_inplace(prod);
    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    for (auto& v : prod)
        v *= scale;
    return prod;
}

// Shared walker for the iterated bounds. Keeps the chain kernels of the
// current tuple prefix on a stack, so consecutive lexicographic tuples
// recompute only the suffix that changed.
struct ChainStack {
    const Kernel* base;
    std::vector<Kernel> kernels;
    std::vector<double> norms;
    std::vector<std::int64_t> shifts;

    void sync(const std::vector<std::int64_t>& tuple, std::size_t depth) {
        std::size_t common = 0;
        while (common < shifts.size() && common < depth &&
               shifts[common] == tuple[common])
            ++common;
        kernels.resize(common);
        norms.resize(common);
        shifts.resize(common);
        while (kernels.size() < depth) {
            const Kernel& parent = kernels.empty() ? *base : kernels.back();
            const std::int64_t l = tuple[kernels.size()];
            kernels.push_back(lambda_op(parent, l));
            norms.push_back(k2inf_norm(kernels.back()).k2inf);
            shifts.push_back(l);
        }
    }

    const Kernel& at_depth(std::size_t depth) const {
        return depth == 0 ? *base : kernels[depth - 1];
    }
};

enum class BoundKind { iteration, theorem };

BoundReport run_search(BoundKind kind, const Kernel& K, const CoefficientSequence& alpha,
                       const CoefficientSequence& beta, const BoundConfig& cfg) {
    if (cfg.depth < 1)
        throw config_error("bound depth k must be >= 1");
    const int k = cfg.depth;
    const Modulus& c = K.modulus;
    const std::int64_t M = alpha.start;
    const std::int64_t N = beta.start;
    const std::int64_t L = shift_cap(cfg, c, N);

    const double anorm = seq_norm(alpha);
    const double bnorm = seq_norm(beta);
    const double prefactor =
        std::sqrt(static_cast<double>(c.c) * static_cast<double>(M) * static_cast<double>(N)) *
        anorm * bnorm;
    const double diag = k2inf_norm(K).k2inf;

    // Tail factor of the iteration display, divided by the prefactor so the
    // report's terms share one normalization.
    const double pow2k = std::pow(2.0, k);
    double tail_scale = 0.0;
    if (kind == BoundKind::iteration) {
        const double Tk = std::pow(static_cast<double>(c.c), 0.5 - 1.0 / (2.0 * pow2k)) *
                          std::sqrt(static_cast<double>(N)) *
                          std::pow(static_cast<double>(M), 0.5 - 1.0 / pow2k) *
                          pow_or_zero(anorm, 1.0 - 2.0 / pow2k) * bnorm;
        tail_scale = prefactor > 0.0 ? Tk / prefactor : 0.0;
    } else {
        const double e = cfg.alpha_mode == AlphaExponentMode::as_stated ? -1.0 / pow2k : 0.0;
        tail_scale = std::pow(static_cast<double>(M), 1.0 / (2.0 * pow2k)) *
                     pow_or_zero(anorm, e);
    }

    bool covered_all = false;
    const auto tuples = enumerate_tuples(L, k, cfg, &covered_all);

    const std::size_t stack_depth =
        kind == BoundKind::theorem ? static_cast<std::size_t>(k)
                                   : static_cast<std::size_t>(k - 1);
    ChainStack stack;
    stack.base = &K;

    std::vector<cplx> folded;
    std::vector<cplx> leaf_spec;
    bool leaf_valid = false;
    if (kind == BoundKind::iteration)
        folded = fold_to_residues(alpha, c);

    std::vector<double> terms(static_cast<std::size_t>(k + 1), 0.0);
    terms[0] = diag;

    double best_sum = -1.0;
    std::vector<double> best_terms;
    std::vector<std::int64_t> best_tuple;
    // per-term diagnostic accumulators (theorem only)
    std::vector<double> term_max(static_cast<std::size_t>(k + 1), 0.0);
    term_max[0] = diag;
    double tail_max = -1.0;
    std::vector<std::int64_t> tail_argmax;

    std::vector<std::int64_t> prev_prefix;
    for (const auto& tuple : tuples) {
        stack.sync(tuple, stack_depth);
        if (kind == BoundKind::iteration && (!leaf_valid || prev_prefix != stack.shifts)) {
            leaf_spec = leaf_bilinear_spectrum(stack.at_depth(stack_depth), folded);
            leaf_valid = true;
            prev_prefix = stack.shifts;
        }

        for (int j = 1; j <= k - 1; ++j)
            terms[static_cast<std::size_t>(j)] =
                std::pow(stack.norms[static_cast<std::size_t>(j - 1)], 1.0 / std::pow(2.0, j));
        double tail;
        if (kind == BoundKind::iteration) {
            const std::int64_t lk = tuple.back();
            const double s_abs = std::abs(leaf_spec[static_cast<std::size_t>(reduce(lk, c.c))]);
            tail = tail_scale * std::pow(s_abs, 1.0 / pow2k);
        } else {
            tail = tail_scale * std::pow(stack.norms[static_cast<std::size_t>(k - 1)], 1.0 / pow2k);
        }
        terms[static_cast<std::size_t>(k)] = tail;

        double sum = 0.0;
        for (const double t : terms)
            sum += t;
        if (sum > best_sum) {
            best_sum = sum;
            best_terms = terms;
            best_tuple = tuple;
        }
        if (cfg.per_term_sup) {
            for (int j = 1; j <= k - 1; ++j)
                term_max[static_cast<std::size_t>(j)] =
                    std::max(term_max[static_cast<std::size_t>(j)], terms[static_cast<std::size_t>(j)]);
            if (tail > tail_max) {
                tail_max = tail;
                tail_argmax = tuple;
            }
        }
    }

    BoundReport report;
    report.prefactor = prefactor;
    report.search_exhaustive = covered_all;
    if (cfg.per_term_sup && kind == BoundKind::theorem) {
        term_max[static_cast<std::size_t>(k)] = tail_max;
        best_terms = term_max;
        best_tuple = tail_argmax;
    }
    report.argmax_tuple = ShiftTuple::of(best_tuple, L);
    double sum = 0.0;
    for (std::size_t j = 0; j < best_terms.size(); ++j) {
        const std::string label = j == 0 ? "diag"
                                : j == static_cast<std::size_t>(k) ? "tail"
                                : "chain_" + std::to_string(j);
        report.terms.push_back({label, best_terms[j]});
        sum += best_terms[j];
    }
    report.rhs_total = prefactor * sum;
    report.lhs_abs = std::abs(eval_bilinear(alpha, beta, K).value);
    report.ratio = report.rhs_total > 0.0 ? report.lhs_abs / report.rhs_total : 0.0;
    return report;
}

} // namespace

std::int64_t shift_cap(const BoundConfig& cfg, const Modulus& c, std::int64_t N) {
    const double L = std::floor(cfg.shift_cap_constant * static_cast<double>(c.c) /
                                static_cast<double>(N));
    return L < 0.0 ? 0 : static_cast<std::int64_t>(L);
}

double trivial_bound(const Kernel& K, const CoefficientSequence& alpha,
                     const CoefficientSequence& beta, GcdRestriction restriction) {
    const std::int64_t M = alpha.start;
    const std::int64_t N = beta.start;
    const std::int64_t c = K.modulus.c;
    double mass = 0.0;
    for (std::int64_t m = M; m < 2 * M; ++m) {
        if (restriction != GcdRestriction::none && gcd64(m, c) != 1)
            continue;
        const std::int64_t mr = reduce(m, c);
        for (std::int64_t n = N; n < 2 * N; ++n) {
            if (restriction != GcdRestriction::none && gcd64(n, c) != 1)
                continue;
            if (restriction == GcdRestriction::coprime_modulus_and_pair &&
                gcd64(m, n) != 1)
                continue;
            mass += std::norm(K.at(mr, reduce(n, c)));
        }
    }
    return std::sqrt(static_cast<double>(M) * static_cast<double>(N)) * seq_norm(alpha) *
           seq_norm(beta) * std::sqrt(mass);
}

FinalTrivialBound final_trivial_bound(const Kernel& K, const CoefficientSequence& alpha,
                                      const CoefficientSequence& beta) {
    const std::int64_t M = alpha.start;
    const std::int64_t N = beta.start;
    const std::int64_t c = K.modulus.c;
    const double knorm = k2inf_norm(K).k2inf;

    FinalTrivialBound out;
    out.value = std::min(std::sqrt(static_cast<double>(M)), std::sqrt(static_cast<double>(N))) *
                std::sqrt(static_cast<double>(c) * static_cast<double>(M) * static_cast<double>(N)) *
                seq_norm(alpha) * seq_norm(beta) * knorm;
    if (knorm == 0.0)
        return out;

    // Exact row masses over the n-support, against c ||K||^2, maximized over
    // the unit rows the m-support touches.
    std::vector<char> touched(static_cast<std::size_t>(c), 0);
    for (std::int64_t m = M; m < 2 * M && m < M + c; ++m)
        touched[static_cast<std::size_t>(reduce(m, c))] = 1;
    double worst = 0.0;
    for (std::int64_t r = 0; r < c; ++r) {
        if (!touched[static_cast<std::size_t>(r)] || gcd64(r, c) != 1)
            continue;
        double mass = 0.0;
        for (std::int64_t n = N; n < 2 * N; ++n)
            mass += std::norm(K.at(r, reduce(n, c)));
        worst = std::max(worst, mass / (static_cast<double>(c) * knorm * knorm));
    }
    out.poisson_constant = worst;
    return out;
}

CsStepAudit cs_step_audit(const Kernel& K, const CoefficientSequence& alpha,
                          const CoefficientSequence& beta, const TestFunction& V) {
    // Majorant check: >= 1 on [1, 2], >= 0 on the support, on fine grids.
    constexpr int kGrid = 2048;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = 1.0 + static_cast<double>(i) / kGrid;
        if (V(t) < 1.0 - 1e-12)
            throw not_majorant(V.name + " dips below 1 at t=" + std::to_string(t));
    }
    for (int i = 0; i <= kGrid; ++i) {
        const double t = V.s0 + (V.s1 - V.s0) * static_cast<double>(i) / kGrid;
        if (V(t) < -1e-12)
            throw not_majorant(V.name + " is negative at t=" + std::to_string(t));
    }

    const std::int64_t M = alpha.start;
    const std::int64_t N = beta.start;
    const std::int64_t c = K.modulus.c;

    const auto folded = [&] {
        std::vector<cplx> f(static_cast<std::size_t>(c), cplx{0.0, 0.0});
        for (std::int64_t m = M; m < 2 * M; ++m)
            f[static_cast<std::size_t>(reduce(m, c))] += alpha.at(m);
        return f;
    }();

    const std::int64_t n_lo = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor(V.s0 * static_cast<double>(N))));
    const std::int64_t n_hi =
        static_cast<std::int64_t>(std::ceil(V.s1 * static_cast<double>(N)));
    double accum = 0.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const double w = V(static_cast<double>(n) / static_cast<double>(N));
        if (w == 0.0)
            continue;
        cplx inner{0.0, 0.0};
        const std::int64_t nr = reduce(n, c);
        for (std::int64_t r = 0; r < c; ++r) {
            const cplx a = folded[static_cast<std::size_t>(r)];
            if (a != cplx{0.0, 0.0})
                inner += a * K.at(r, nr);
        }
        accum += std::norm(inner) * w;
    }

    CsStepAudit audit;
    audit.lhs = std::abs(eval_bilinear(alpha, beta, K).value);
    audit.rhs = static_cast<double>(N) * seq_norm(beta) *
                std::sqrt(accum / static_cast<double>(N));
    return audit;
}

BoundReport one_step_bound(const Kernel& K, const CoefficientSequence& alpha,
                           const CoefficientSequence& beta, BoundConfig cfg) {
    cfg.depth = 1;
    return run_search(BoundKind::iteration, K, alpha, beta, cfg);
}

BoundReport iteration_bound(const Kernel& K, const CoefficientSequence& alpha,
                            const CoefficientSequence& beta, const BoundConfig& cfg) {
    return run_search(BoundKind::iteration, K, alpha, beta, cfg);
}

BoundReport theorem_rhs(const Kernel& K, const CoefficientSequence& alpha,
                        const CoefficientSequence& beta, const BoundConfig& cfg) {
    return run_search(BoundKind::theorem, K, alpha, beta, cfg);
}

RatioAudit ratio_audit(const Kernel& K, const CoefficientSequence& alpha,
                       const CoefficientSequence& beta, const BoundConfig& cfg) {
    RatioAudit audit;
    audit.theorem = theorem_rhs(K, alpha, beta, cfg);
    audit.lhs_abs = audit.theorem.lhs_abs;
    audit.trivial = trivial_bound(K, alpha, beta);
    audit.trivial_ratio = audit.trivial > 0.0 ? audit.lhs_abs / audit.trivial : 0.0;
    audit.final_trivial = final_trivial_bound(K, alpha, beta);
    return audit;
}

} // namespace vdc
