#include "vdc/bilinear.hpp"

#include <cmath>

#include "vdc/errors.hpp"
#include "vdc/rng.hpp"

namespace vdc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_prime_i64(std::int64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::int64_t q = 3; q * q <= n; q += 2)
        if (n % q == 0)
            return false;
    return true;
}

} // namespace

Scheme scheme_from_name(const std::string& name) {
    if (name == "all-ones")
        return Scheme::all_ones;
    if (name == "random-signs")
        return Scheme::random_signs;
    if (name == "random-phases")
        return Scheme::random_phases;
    if (name == "prime-supported")
        return Scheme::prime_supported;
    if (name == "custom")
        return Scheme::custom;
    throw config_error("unknown coefficient scheme: " + name);
}

std::string scheme_name(Scheme s) {
    switch (s) {
    case Scheme::all_ones: return "all-ones";
    case Scheme::random_signs: return "random-signs";
    case Scheme::random_phases: return "random-phases";
    case Scheme::prime_supported: return "prime-supported";
    case Scheme::custom: return "custom";
    }
    return "custom";
}

CoefficientSequence CoefficientSequence::custom_of(std::int64_t start,
                                                   std::vector<cplx> values) {
    if (start < 1)
        throw config_error("sequence start must be >= 1");
    if (values.size() != static_cast<std::size_t>(start))
        throw config_error("dyadic support [start, 2*start) needs exactly start values");
    CoefficientSequence s;
    s.start = start;
    s.values = std::move(values);
    s.scheme = Scheme::custom;
    return s;
}

CoefficientSequence gen_coefficients(std::int64_t start, Scheme scheme,
                                     std::uint64_t seed, const Modulus& modulus) {
    if (start < 1)
        throw config_error("sequence start must be >= 1");
    CoefficientSequence s;
    s.start = start;
    s.scheme = scheme;
    s.seed = seed;
    s.values.assign(static_cast<std::size_t>(start), cplx{0.0, 0.0});
    DetRng rng(seed);
    switch (scheme) {
    case Scheme::all_ones:
        for (auto& v : s.values)
            v = 1.0;
        break;
    case Scheme::random_signs:
        for (auto& v : s.values)
            v = static_cast<double>(rng.sign());
        break;
    case Scheme::random_phases:
        for (auto& v : s.values) {
            const double theta = kTwoPi * rng.unit();
            v = {std::cos(theta), std::sin(theta)};
        }
        break;
    case Scheme::prime_supported: {
        bool any = false;
        for (std::int64_t n = start; n < 2 * start; ++n) {
            if (is_prime_i64(n) && gcd64(n, modulus.c) == 1) {
                s.values[static_cast<std::size_t>(n - start)] = 1.0;
                any = true;
            }
        }
        if (!any)
            throw empty_support("no prime coprime to " + std::to_string(modulus.c) +
                                " in [" + std::to_string(start) + ", " +
                                std::to_string(2 * start) + ")");
        break;
    }
    case Scheme::custom:
        throw config_error("custom sequences are built with CoefficientSequence::custom_of");
    }
    return s;
}

double seq_norm(const CoefficientSequence& a) {
    double mass = 0.0;
    for (const auto& v : a.values)
        mass += std::norm(v);
    return std::sqrt(mass / static_cast<double>(a.start));
}

BilinearValue eval_bilinear(const CoefficientSequence& alpha,
                            const CoefficientSequence& beta, const Kernel& K) {
    const std::int64_t M = alpha.start;
    const std::int64_t N = beta.start;
    const std::int64_t c = K.modulus.c;

    cplx value{0.0, 0.0};
    double kernel_mass = 0.0;
    for (std::int64_t m = M; m < 2 * M; ++m) {
        const std::int64_t mr = reduce(m, c);
        cplx row{0.0, 0.0};
        for (std::int64_t n = N; n < 2 * N; ++n) {
            const cplx kv = K.at(mr, reduce(n, c));
            row += beta.at(n) * kv;
            kernel_mass += std::norm(kv);
        }
        value += alpha.at(m) * row;
    }

    BilinearValue out;
    out.value = value;
    out.M = M;
    out.N = N;
    out.modulus = K.modulus;
    out.trivial_cs_bound = std::sqrt(static_cast<double>(M) * static_cast<double>(N)) *
                           seq_norm(alpha) * seq_norm(beta) * std::sqrt(kernel_mass);
    if (std::abs(out.value) > out.trivial_cs_bound + 1e-9)
        throw std::logic_error("Cauchy-Schwarz violated: |S| = " +
                               std::to_string(std::abs(out.value)) + " > " +
                               std::to_string(out.trivial_cs_bound));
    return out;
}

} // namespace vdc
