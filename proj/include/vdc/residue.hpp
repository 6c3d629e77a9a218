#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace vdc {

using cplx = std::complex<double>;

// A modulus c together with its factorization. c is limited to the machine
// word range (c < 2^31); there is no arbitrary-precision path.
struct Modulus {
    std::int64_t c = 1;
    bool is_prime = false;
    std::vector<std::pair<std::int64_t, int>> factorization; // (prime, exponent)

    static Modulus of(std::int64_t c);
};

struct Residue {
    std::int64_t value = 0; // in [0, c)
    Modulus modulus;
};

// Reduces any integer into [0, c).
std::int64_t reduce(std::int64_t a, std::int64_t c);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// b with a*b == 1 (mod c). Throws not_invertible when gcd(a, c) > 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t c);
Residue mod_inverse(const Residue& a);

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t c);

// Smallest primitive root mod p. Throws not_prime for composite p.
// primitive_root(2) == 1 since (Z/2)* is trivial.
Residue primitive_root(const Modulus& p);

// dlog[g^t mod p] == t for t in [0, p-1); dlog[0] == -1.
std::vector<std::int64_t> discrete_log_table(const Modulus& p);

// e(a/c) = exp(2*pi*i*a/c). a is reduced mod c in exact integer arithmetic
// before the single trig evaluation, so the value depends only on a mod c
// and large arguments carry no phase drift.
cplx additive_character(std::int64_t a, const Modulus& c);

} // namespace vdc
