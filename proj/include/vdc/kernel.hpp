#pragma once

#include <string>
#include <vector>

#include "vdc/residue.hpp"

namespace vdc {

struct MagnitudeProfile {
    double sup_units = 0.0; // sup |K(m,n)| over gcd(m*n, c) = 1
    double sup_all = 0.0;   // sup over every entry
};

// A two-variable c-periodic kernel stored as a dense c x c table in
// row-major order (row m, column n). Dense storage is capped at c <= 4096;
// the correlation chains revisit entries many times, so tables beat lazy
// closures at that scale.
struct Kernel {
    Modulus modulus;
    std::string family;
    std::vector<cplx> table;
    MagnitudeProfile magnitude_profile;

    const cplx& at(std::int64_t m, std::int64_t n) const {
        return table[static_cast<std::size_t>(m * modulus.c + n)];
    }
    // Lookup with arbitrary integer arguments, reduced mod c.
    cplx value_at(std::int64_t m, std::int64_t n) const {
        return at(reduce(m, modulus.c), reduce(n, modulus.c));
    }
};

inline constexpr std::int64_t kDenseKernelCap = 4096;

// Wraps a table into a Kernel: validates the size and the dense cap, and
// records the magnitude profile from the actual values.
Kernel make_kernel(const Modulus& c, std::string family, std::vector<cplx> table);

// K(m, n) = e(m n / c).
Kernel build_additive(const Modulus& c);

// K(m, n) = e(a m nbar / c) for gcd(n, c) = 1, 0 otherwise.
Kernel build_inverse_twist(const Modulus& c, std::int64_t a);

// Hyper-Kloosterman table over a in (Z/p)*, index a, entry 0 at non-units:
// Kl_k(a; p) = p^(-(k-1)/2) sum over x_1...x_k = a (units) of
// e((x_1 + ... + x_k)/p). Normalization is baked into the stored values.
//
// Direct path: literal enumeration of all k-tuples. Requires
// p^(k-1) <= 10^7, otherwise throws infeasible.
std::vector<cplx> build_hyperkloosterman_direct(const Modulus& p, int k);

// Single point by the same enumeration (O(p^(k-1)) for one a).
cplx kloosterman_direct_point(const Modulus& p, int k, std::int64_t a);

// Fast path: discrete logs map (Z/p)* to Z/(p-1), where the defining sum
// becomes a k-fold cyclic convolution of t -> e(g^t / p), done with one
// FFT, a pointwise k-th power, and an inverse FFT. O(k p log p).
std::vector<cplx> build_hyperkloosterman_fast(const Modulus& p, int k);

// k = 2 only: Kl_2(a) = p^(-1/2) hhat(-a) for h(x) = e(xbar/p) on units,
// a single length-p transform. Third route, used for cross-checks.
std::vector<cplx> kloosterman2_spectral(const Modulus& p);

enum class Combiner {
    product, // K(m, n) = f(m n mod p)
    twist,   // K(m, n) = f(m nbar mod p) on gcd(n, p) = 1, else 0
};

// Lifts a one-variable table on (Z/p)* (extended by 0) to a two-variable
// kernel.
Kernel assemble_kernel_from_1d(const Modulus& p, const std::vector<cplx>& f,
                               Combiner combiner, std::string family);

// K(m, n) = e(theta_{m,n}) with phases from a seeded deterministic
// generator; same seed, same kernel.
Kernel build_random_unimodular(const Modulus& c, std::uint64_t seed);

// File format: header "VDCK1 c=<int> family=<tag>" then c*c lines
// "m n re im" in row-major order with 17 significant digits. Values
// round-trip bit-exactly.
void save_kernel(const Kernel& K, const std::string& path);
Kernel load_kernel(const std::string& path);

// Builds a kernel from its CLI name: additive | inverse-twist |
// kl<k>-product | kl<k>-twist | random-unimodular. Hyper-Kloosterman names
// require a prime modulus.
Kernel build_kernel_by_name(const std::string& name, const Modulus& c,
                            std::uint64_t seed = 1, std::int64_t twist_a = 1);

} // namespace vdc
