#pragma once

#include <string>
#include <vector>

#include "vdc/bilinear.hpp"
#include "vdc/correlation.hpp"
#include "vdc/test_function.hpp"

namespace vdc {

enum class SearchMode { exhaustive, sampled };

// The printed bound carries ||alpha||^(-1/2^k) on its final term (overall
// alpha-degree 1 - 1/2^k); recomposing the iteration display with the
// completed trivial bound instead gives alpha-degree 1 (exponent 0). Both
// are available; as_stated is the default.
enum class AlphaExponentMode { as_stated, recomposed };

// Which gcd conditions the trivial bound imposes on the kernel mass. none
// is sound for arbitrary coefficients; the restricted sums match the
// prime-supported reduction and are only bounds for such sequences.
enum class GcdRestriction { none, coprime_modulus, coprime_modulus_and_pair };

struct BoundConfig {
    int depth = 1;                     // k
    double shift_cap_constant = 1.0;   // C_l; L = floor(C_l * c / N)
    SearchMode search = SearchMode::exhaustive;
    int sample_count = 512;
    std::uint64_t sample_seed = 1;
    AlphaExponentMode alpha_mode = AlphaExponentMode::as_stated;
    long long work_budget = 10000;     // exhaustive requires (2L+1)^k <= budget
    // Diagnostic: maximize every term over its own tuple instead of one
    // joint supremum. Upper-bounds the joint mode. theorem_rhs only.
    bool per_term_sup = false;
};

struct TermValue {
    std::string label; // "diag", "chain_1", ..., "tail"
    double value;      // already divided by the prefactor
};

struct BoundReport {
    double prefactor = 0.0; // sqrt(cMN) ||alpha|| ||beta||
    std::vector<TermValue> terms;
    ShiftTuple argmax_tuple;
    double rhs_total = 0.0; // prefactor * sum of term values
    bool search_exhaustive = true;
    double lhs_abs = 0.0;
    double ratio = 0.0; // lhs_abs / rhs_total
};

std::int64_t shift_cap(const BoundConfig& cfg, const Modulus& c, std::int64_t N);

// sqrt(MN) ||alpha|| ||beta|| (sum_{m~M, n~N, conditions} |K|^2)^(1/2).
// With GcdRestriction::none this dominates |S_K| with constant 1 for every
// instance.
double trivial_bound(const Kernel& K, const CoefficientSequence& alpha,
                     const CoefficientSequence& beta,
                     GcdRestriction restriction = GcdRestriction::none);

struct FinalTrivialBound {
    double value = 0.0; // min(sqrt M, sqrt N) sqrt(cMN) ||alpha|| ||beta|| ||K||_{2,inf}
    // Measured constant in sum_{n~N} |K(m,n)|^2 <= const * c ||K||_{2,inf}^2,
    // maximized over the unit rows the support actually touches.
    double poisson_constant = 0.0;
};

FinalTrivialBound final_trivial_bound(const Kernel& K, const CoefficientSequence& alpha,
                                      const CoefficientSequence& beta);

struct CsStepAudit {
    double lhs = 0.0; // |S_K|
    double rhs = 0.0; // N ||beta|| ((1/N) sum_n |sum_m alpha_m K(m,n)|^2 V(n/N))^(1/2)
};

// V must be >= 1 on [1,2] and >= 0 everywhere (checked on a fine grid,
// not_majorant otherwise). The inequality lhs <= rhs has constant 1.
CsStepAudit cs_step_audit(const Kernel& K, const CoefficientSequence& alpha,
                          const CoefficientSequence& beta, const TestFunction& V);

// sqrt(cMN)||a||||b|| ||K||_{2,inf} + c^(1/4) sqrt(N) ||b|| sup_l
// |S_{Lambda_l K}(M, M)|^(1/2), the inner form taken with coefficients
// (alpha, alpha). Identical to iteration_bound at depth 1.
BoundReport one_step_bound(const Kernel& K, const CoefficientSequence& alpha,
                           const CoefficientSequence& beta, BoundConfig cfg);

// Depth-k display: sqrt(cMN)||a||||b|| (||K|| + sum_{j<k} ||chain_j||^(1/2^j))
// + c^(1/2 - 1/2^(k+1)) sqrt(N) M^(1/2 - 1/2^k) ||a||^(1 - 1/2^(k-1)) ||b||
//   |S_{chain_k}(M, M)|^(1/2^k),
// with one joint supremum over the shift tuple.
BoundReport iteration_bound(const Kernel& K, const CoefficientSequence& alpha,
                            const CoefficientSequence& beta, const BoundConfig& cfg);

// The headline right-hand side: sqrt(cMN)||a||||b|| sup over tuples of
// (||K|| + ||chain_1||^(1/2) + ... + ||chain_{k-1}||^(1/2^(k-1))
//  + M^(1/2^(k+1)) ||a||^e ||chain_k||^(1/2^k)).
BoundReport theorem_rhs(const Kernel& K, const CoefficientSequence& alpha,
                        const CoefficientSequence& beta, const BoundConfig& cfg);

struct RatioAudit {
    BoundReport theorem;
    double lhs_abs = 0.0;
    double trivial = 0.0;
    double trivial_ratio = 0.0;
    FinalTrivialBound final_trivial;
};

// One full sharpness measurement: |S_K| against theorem_rhs and against the
// exact trivial bound. Ratios are reported, never asserted: the headline
// bound carries an implied constant, so only the constant-1 inequalities
// are enforceable.
RatioAudit ratio_audit(const Kernel& K, const CoefficientSequence& alpha,
                       const CoefficientSequence& beta, const BoundConfig& cfg);

} // namespace vdc
