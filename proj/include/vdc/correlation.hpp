#pragma once

#include <vector>

#include "vdc/kernel.hpp"

namespace vdc {

// Ordered shifts (l_1, ..., l_j), each bounded by |l_i| <= bound.
struct ShiftTuple {
    std::vector<std::int64_t> shifts;
    std::int64_t bound = 0;

    static ShiftTuple of(std::vector<std::int64_t> shifts, std::int64_t bound);
};

struct NormReport {
    double k2inf = 0.0;           // sup over unit rows of sqrt((1/c) sum_x |K(m,x)|^2)
    std::int64_t argmax_row = 0;  // smallest unit row attaining the sup
    std::int64_t rows_scanned = 0;
};

inline constexpr std::int64_t kDefaultChainWorkCap = 4'000'000'000;

// (Lambda_l K)(m, n) = c^(-1/2) sum_x K(m, x) conj(K(n, x)) e(-l x / c),
// evaluated for every pair (m, n). For a single l each pair is one
// character-weighted length-c product sum.
Kernel lambda_op(const Kernel& K, std::int64_t ell);

// All shifts for one pair: the DFT of x -> K(m,x) conj(K(n,x)), scaled by
// c^(-1/2). Entry l is (Lambda_l K)(m, n).
std::vector<cplx> lambda_spectrum(const Kernel& K, std::int64_t m, std::int64_t n);

// The c x c x c tensor sliced per shift, one DFT per pair. Memory is c^3
// complex values, so this is capped (via work_cap) like the chains.
std::vector<Kernel> lambda_all(const Kernel& K, std::int64_t work_cap = kDefaultChainWorkCap);

// Left fold: Lambda_{l_j} ... Lambda_{l_1} K, innermost subscript applied
// first. Throws chain_budget_exceeded when c^3 * length exceeds work_cap.
Kernel lambda_chain(const Kernel& K, const ShiftTuple& t,
                    std::int64_t work_cap = kDefaultChainWorkCap);

// ||K||_{2,inf}: the sup scans unit rows only, ties broken by smallest m.
NormReport k2inf_norm(const Kernel& K);

} // namespace vdc
