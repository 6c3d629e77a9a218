#include "vdc/residue.hpp"

#include <cmath>

#include "vdc/errors.hpp"

namespace vdc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;
} // namespace

Modulus Modulus::of(std::int64_t c) {
    if (c < 1 || c > kMaxModulus)
        throw config_error("modulus out of range [1, 2^31): " + std::to_string(c));
    Modulus m;
    m.c = c;
    std::int64_t n = c;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            m.factorization.emplace_back(q, e);
        }
    }
    if (n > 1)
        m.factorization.emplace_back(n, 1);
    m.is_prime = m.factorization.size() == 1 && m.factorization[0].second == 1;
    return m;
}

std::int64_t reduce(std::int64_t a, std::int64_t c) {
    std::int64_t r = a % c;
    return r < 0 ? r + c : r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
    a = reduce(a, c);
    // Extended Euclid on (a, c).
    std::int64_t r0 = c, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1)
        throw not_invertible("no inverse: gcd(" + std::to_string(a) + ", " +
                             std::to_string(c) + ") = " + std::to_string(r0));
    return reduce(s0, c);
}

Residue mod_inverse(const Residue& a) {
    return Residue{mod_inverse(a.value, a.modulus.c), a.modulus};
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t c) {
    // base*base stays below 2^62 since c < 2^31.
    std::int64_t b = reduce(base, c), r = 1 % c;
    while (exp > 0) {
        if (exp & 1)
            r = (r * b) % c;
        b = (b * b) % c;
        exp >>= 1;
    }
    return r;
}

Residue primitive_root(const Modulus& p) {
    if (!p.is_prime)
        throw not_prime("primitive_root requires a prime modulus, got " +
                        std::to_string(p.c));
    if (p.c == 2)
        return Residue{1, p};
    const Modulus phi = Modulus::of(p.c - 1);
    for (std::int64_t g = 2; g < p.c; ++g) {
        bool ok = true;
        for (const auto& [q, e] : phi.factorization) {
            (void)e;
            if (pow_mod(g, (p.c - 1) / q, p.c) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return Residue{g, p};
    }
    throw not_prime("no primitive root found mod " + std::to_string(p.c));
}

std::vector<std::int64_t> discrete_log_table(const Modulus& p) {
    const std::int64_t g = primitive_root(p).value;
    std::vector<std::int64_t> dlog(static_cast<std::size_t>(p.c), -1);
    std::int64_t x = 1;
    for (std::int64_t t = 0; t < p.c - 1; ++t) {
        dlog[static_cast<std::size_t>(x)] = t;
        x = (x * g) % p.c;
    }
    return dlog;
}

cplx additive_character(std::int64_t a, const Modulus& c) {
    const std::int64_t r = reduce(a, c.c);
    const double theta = kTwoPi * (static_cast<double>(r) / static_cast<double>(c.c));
    return {std::cos(theta), std::sin(theta)};
}

} // namespace vdc
