#pragma once

#include <string>
#include <vector>

#include "vdc/kernel.hpp"

namespace vdc {

enum class Scheme {
    all_ones,
    random_signs,
    random_phases,
    prime_supported,
    custom,
};

Scheme scheme_from_name(const std::string& name);
std::string scheme_name(Scheme s);

// Complex coefficients supported on the dyadic interval [start, 2*start).
struct CoefficientSequence {
    std::int64_t start = 1;
    std::vector<cplx> values; // values[i] is the coefficient of n = start + i
    Scheme scheme = Scheme::custom;
    std::uint64_t seed = 0;

    cplx at(std::int64_t n) const { return values[static_cast<std::size_t>(n - start)]; }

    static CoefficientSequence custom_of(std::int64_t start, std::vector<cplx> values);
};

// Deterministic given (scheme, seed). prime-supported puts 1 at primes
// p in [start, 2*start) with gcd(p, c) = 1 and throws empty_support when no
// prime qualifies.
CoefficientSequence gen_coefficients(std::int64_t start, Scheme scheme,
                                     std::uint64_t seed, const Modulus& modulus);

// sqrt((1/N) sum |a_n|^2), the dyadic-normalized l2 norm.
double seq_norm(const CoefficientSequence& a);

struct BilinearValue {
    cplx value;
    std::int64_t M = 0;
    std::int64_t N = 0;
    Modulus modulus;
    // sqrt(MN) ||alpha|| ||beta|| (sum over the support rectangle of
    // |K(m mod c, n mod c)|^2)^(1/2): the Cauchy-Schwarz bound with
    // constant 1, checked on every evaluation.
    double trivial_cs_bound = 0.0;
};

// S_K(M, N; c) = sum_{m ~ M} sum_{n ~ N} alpha_m beta_n K(m, n; c), kernel
// indices reduced mod c.
BilinearValue eval_bilinear(const CoefficientSequence& alpha,
                            const CoefficientSequence& beta, const Kernel& K);

} // namespace vdc
