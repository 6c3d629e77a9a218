#pragma once

#include <vector>

#include "vdc/residue.hpp"
#include "vdc/test_function.hpp"

namespace vdc {

// A c-periodic function materialized as its value table on [0, c).
struct PeriodicTable {
    Modulus modulus;
    std::vector<cplx> values; // values[a] = K(a), exactly c entries

    PeriodicTable() = default;
    PeriodicTable(Modulus m, std::vector<cplx> v);
};

// K_hat(n) = sum_{a mod c} K(a) e(-a n / c), again c-periodic.
struct SpectrumTable {
    Modulus modulus;
    std::vector<cplx> values;
};

// Literal double-loop transform. Serves as the oracle for dft_fast.
SpectrumTable dft_direct(const PeriodicTable& f);

// Same contract as dft_direct for arbitrary c: power-of-two sizes use an
// iterative radix-2 FFT, everything else goes through a Bluestein chirp
// transform. Plans are cached per length and shared across threads.
SpectrumTable dft_fast(const PeriodicTable& f);

// Inverse transform: idft(dft(f)) == f.
PeriodicTable idft(const SpectrumTable& F);

// Low-level fast transform on a raw buffer, X_k = sum_n x_n e(-nk/len).
void dft_fast_inplace(std::vector<cplx>& data);

// |sum_{n>=1} K(n) V(n) - (1/c) sum_{|n| <= n_max} K_hat(n) V_hat(n/c)|.
// The left sum runs over integers inside V's support. n_max <= 0 selects the
// default truncation via poisson_default_nmax.
double poisson_check(const PeriodicTable& K, const TestFunction& V,
                     std::int64_t n_max = 0);

// Smallest truncation with |V_hat(n/c)| < 1e-14 * c across a trailing window
// of 8 consecutive frequencies (the transform decays fast but not
// monotonically, so a single small sample is not trusted).
std::int64_t poisson_default_nmax(const TestFunction& V, const Modulus& c);

} // namespace vdc
