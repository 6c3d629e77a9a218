#include "vdc/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vdc/errors.hpp"
#include "vdc/rng.hpp"
#include "vdc/spectral.hpp"

namespace vdc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<char> unit_mask(const Modulus& c) {
    std::vector<char> unit(static_cast<std::size_t>(c.c), 0);
    for (std::int64_t a = 0; a < c.c; ++a)
        unit[static_cast<std::size_t>(a)] = gcd64(a, c.c) == 1 ? 1 : 0;
    return unit;
}

// e(j/p) for j in [0, p): the lookup used by every enumeration path.
std::vector<cplx> character_table(const Modulus& p) {
    std::vector<cplx> chi(static_cast<std::size_t>(p.c));
    for (std::int64_t j = 0; j < p.c; ++j)
        chi[static_cast<std::size_t>(j)] = additive_character(j, p);
    return chi;
}

void require_prime(const Modulus& p, const char* what) {
    if (!p.is_prime)
        throw not_prime(std::string(what) + " requires a prime modulus, got " +
                        std::to_string(p.c));
}

void require_direct_feasible(const Modulus& p, int k) {
    double work = 1.0;
    for (int i = 0; i + 1 < k; ++i)
        work *= static_cast<double>(p.c);
    if (work > 1e7)
        throw infeasible("direct hyper-Kloosterman enumeration needs p^(k-1) <= 1e7; p=" +
                         std::to_string(p.c) + " k=" + std::to_string(k));
}

} // namespace

Kernel make_kernel(const Modulus& c, std::string family, std::vector<cplx> table) {
    if (c.c > kDenseKernelCap)
        throw config_error("dense kernels are capped at c <= " +
                           std::to_string(kDenseKernelCap));
    if (table.size() != static_cast<std::size_t>(c.c) * static_cast<std::size_t>(c.c))
        throw config_error("kernel table must have c*c entries");
    Kernel K;
    K.modulus = c;
    K.family = std::move(family);
    K.table = std::move(table);
    const auto unit = unit_mask(c);
    for (std::int64_t m = 0; m < c.c; ++m) {
        for (std::int64_t n = 0; n < c.c; ++n) {
            const double mag = std::abs(K.at(m, n));
            K.magnitude_profile.sup_all = std::max(K.magnitude_profile.sup_all, mag);
            if (unit[static_cast<std::size_t>(m)] && unit[static_cast<std::size_t>(n)])
                K.magnitude_profile.sup_units = std::max(K.magnitude_profile.sup_units, mag);
        }
    }
    return K;
}

Kernel build_additive(const Modulus& c) {
    const auto chi = character_table(c);
    std::vector<cplx> table(static_cast<std::size_t>(c.c * c.c));
    for (std::int64_t m = 0; m < c.c; ++m)
        for (std::int64_t n = 0; n < c.c; ++n)
            table[static_cast<std::size_t>(m * c.c + n)] = chi[static_cast<std::size_t>((m * n) % c.c)];
    return make_kernel(c, "additive", std::move(table));
}

Kernel build_inverse_twist(const Modulus& c, std::int64_t a) {
    const auto chi = character_table(c);
    std::vector<cplx> table(static_cast<std::size_t>(c.c * c.c), cplx{0.0, 0.0});
    for (std::int64_t n = 0; n < c.c; ++n) {
        if (gcd64(n, c.c) != 1)
            continue;
        const std::int64_t nbar = mod_inverse(n, c.c);
        for (std::int64_t m = 0; m < c.c; ++m) {
            const std::int64_t idx = reduce(a, c.c) * m % c.c * nbar % c.c;
            table[static_cast<std::size_t>(m * c.c + n)] = chi[static_cast<std::size_t>(idx)];
        }
    }
    return make_kernel(c, "inverse-twist", std::move(table));
}

std::vector<cplx> build_hyperkloosterman_direct(const Modulus& p, int k) {
    require_prime(p, "build_hyperkloosterman_direct");
    if (k < 1)
        throw config_error("hyper-Kloosterman order k must be >= 1");
    require_direct_feasible(p, k);

    const auto chi = character_table(p);
    std::vector<cplx> out(static_cast<std::size_t>(p.c), cplx{0.0, 0.0});

    // Odometer over (x_1, ..., x_{k-1}) in units^{k-1}, tracking the running
    // sum and product; the last variable closes each tuple against every a.
    std::vector<std::int64_t> x(static_cast<std::size_t>(std::max(k - 1, 0)), 1);
    std::vector<std::int64_t> sum(static_cast<std::size_t>(k), 0);
    std::vector<std::int64_t> prod(static_cast<std::size_t>(k), 1);
    // sum[d] / prod[d] cover the first d chosen variables.
    for (int d = 0; d < k - 1; ++d) {
        sum[d + 1] = reduce(sum[d] + x[d], p.c);
        prod[d + 1] = prod[d] * x[d] % p.c;
    }
    while (true) {
        const std::int64_t s = sum[k - 1];
        const std::int64_t q = prod[k - 1];
        for (std::int64_t xk = 1; xk < p.c; ++xk) {
            const std::int64_t a = q * xk % p.c;
            out[static_cast<std::size_t>(a)] += chi[static_cast<std::size_t>(reduce(s + xk, p.c))];
        }
        // Advance the odometer.
        int d = k - 2;
        while (d >= 0) {
            ++x[d];
            if (x[d] < p.c)
                break;
            x[d] = 1;
            --d;
        }
        if (d < 0)
            break;
        for (; d < k - 1; ++d) {
            sum[d + 1] = reduce(sum[d] + x[d], p.c);
            prod[d + 1] = prod[d] * x[d] % p.c;
        }
    }

    const double norm = std::pow(static_cast<double>(p.c), -(k - 1) / 2.0);
    for (auto& v : out)
        v *= norm;
    return out;
}

cplx kloosterman_direct_point(const Modulus& p, int k, std::int64_t a) {
    require_prime(p, "kloosterman_direct_point");
    if (k < 1)
        throw config_error("hyper-Kloosterman order k must be >= 1");
    a = reduce(a, p.c);
    if (gcd64(a, p.c) != 1)
        throw config_error("kloosterman_direct_point needs gcd(a, p) = 1");
    require_direct_feasible(p, k);

    const auto chi = character_table(p);
    // Inverses let the last variable be eliminated: x_k = a * inv(x_1...x_{k-1}).
    std::vector<std::int64_t> inv(static_cast<std::size_t>(p.c), 0);
    for (std::int64_t v = 1; v < p.c; ++v)
        inv[static_cast<std::size_t>(v)] = mod_inverse(v, p.c);

    cplx acc{0.0, 0.0};
    std::vector<std::int64_t> x(static_cast<std::size_t>(std::max(k - 1, 0)), 1);
    std::vector<std::int64_t> sum(static_cast<std::size_t>(k), 0);
    std::vector<std::int64_t> prod(static_cast<std::size_t>(k), 1);
    for (int d = 0; d < k - 1; ++d) {
        sum[d + 1] = reduce(sum[d] + x[d], p.c);
        prod[d + 1] = prod[d] * x[d] % p.c;
    }
    while (true) {
        const std::int64_t xk = a * inv[static_cast<std::size_t>(prod[k - 1])] % p.c;
        acc += chi[static_cast<std::size_t>(reduce(sum[k - 1] + xk, p.c))];
        int d = k - 2;
        while (d >= 0) {
            ++x[d];
            if (x[d] < p.c)
                break;
            x[d] = 1;
            --d;
        }
        if (d < 0)
            break;
        for (; d < k - 1; ++d) {
            sum[d + 1] = reduce(sum[d] + x[d], p.c);
            prod[d + 1] = prod[d] * x[d] % p.c;
        }
    }
    return acc * std::pow(static_cast<double>(p.c), -(k - 1) / 2.0);
}

std::vector<cplx> build_hyperkloosterman_fast(const Modulus& p, int k) {
    require_prime(p, "build_hyperkloosterman_fast");
    if (k < 1)
        throw config_error("hyper-Kloosterman order k must be >= 1");

    const std::int64_t g = primitive_root(p).value;
    const std::size_t order = static_cast<std::size_t>(p.c - 1);
    std::vector<std::int64_t> gpow(order);
    {
        std::int64_t v = 1;
        for (std::size_t t = 0; t < order; ++t) {
            gpow[t] = v;
            v = v * g % p.c;
        }
    }

    std::vector<cplx> f(order);
    for (std::size_t t = 0; t < order; ++t)
        f[t] = additive_character(gpow[t], p);

    dft_fast_inplace(f);
    for (auto& v : f) {
        cplx acc{1.0, 0.0};
        for (int i = 0; i < k; ++i)
            acc *= v;
        v = acc;
    }
    // Inverse transform of the pointwise power = k-fold cyclic convolution.
    for (auto& v : f)
        v = std::conj(v);
    dft_fast_inplace(f);
    const double scale = 1.0 / static_cast<double>(order);
    const double norm = std::pow(static_cast<double>(p.c), -(k - 1) / 2.0);
    std::vector<cplx> out(static_cast<std::size_t>(p.c), cplx{0.0, 0.0});
    for (std::size_t s = 0; s < order; ++s)
        out[static_cast<std::size_t>(gpow[s])] = std::conj(f[s]) * scale * norm;
    return out;
}

std::vector<cplx> kloosterman2_spectral(const Modulus& p) {
    require_prime(p, "kloosterman2_spectral");
    std::vector<cplx> h(static_cast<std::size_t>(p.c), cplx{0.0, 0.0});
    for (std::int64_t x = 1; x < p.c; ++x)
        h[static_cast<std::size_t>(x)] = additive_character(mod_inverse(x, p.c), p);
    dft_fast_inplace(h);
    const double norm = 1.0 / std::sqrt(static_cast<double>(p.c));
    std::vector<cplx> out(static_cast<std::size_t>(p.c), cplx{0.0, 0.0});
    for (std::int64_t a = 1; a < p.c; ++a)
        out[static_cast<std::size_t>(a)] = h[static_cast<std::size_t>(reduce(-a, p.c))] * norm;
    return out;
}

Kernel assemble_kernel_from_1d(const Modulus& p, const std::vector<cplx>& f,
                               Combiner combiner, std::string family) {
    if (f.size() != static_cast<std::size_t>(p.c))
        throw config_error("1d table must have p entries (zeros at non-units)");
    std::vector<cplx> table(static_cast<std::size_t>(p.c * p.c), cplx{0.0, 0.0});
    if (combiner == Combiner::product) {
        for (std::int64_t m = 0; m < p.c; ++m)
            for (std::int64_t n = 0; n < p.c; ++n)
                table[static_cast<std::size_t>(m * p.c + n)] = f[static_cast<std::size_t>(m * n % p.c)];
    } else {
        for (std::int64_t n = 0; n < p.c; ++n) {
            if (gcd64(n, p.c) != 1)
                continue;
            const std::int64_t nbar = mod_inverse(n, p.c);
            for (std::int64_t m = 0; m < p.c; ++m)
                table[static_cast<std::size_t>(m * p.c + n)] = f[static_cast<std::size_t>(m * nbar % p.c)];
        }
    }
    return make_kernel(p, std::move(family), std::move(table));
}

Kernel build_random_unimodular(const Modulus& c, std::uint64_t seed) {
    DetRng rng(seed);
    std::vector<cplx> table(static_cast<std::size_t>(c.c * c.c));
    for (auto& v : table) {
        const double theta = kTwoPi * rng.unit();
        v = {std::cos(theta), std::sin(theta)};
    }
    return make_kernel(c, "random-unimodular", std::move(table));
}

void save_kernel(const Kernel& K, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open for writing: " + path);
    out << "VDCK1 c=" << K.modulus.c << " family=" << K.family << "\n";
    char line[128];
    for (std::int64_t m = 0; m < K.modulus.c; ++m) {
        for (std::int64_t n = 0; n < K.modulus.c; ++n) {
            const cplx v = K.at(m, n);
            std::snprintf(line, sizeof line, "%lld %lld %.17g %.17g\n",
                          static_cast<long long>(m), static_cast<long long>(n),
                          v.real(), v.imag());
            out << line;
        }
    }
    if (!out)
        throw io_error("write failed: " + path);
}

Kernel load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open: " + path);
    std::string header;
    if (!std::getline(in, header))
        throw format_error("empty kernel file: " + path);
    long long c_val = 0;
    char family_buf[64] = {0};
    if (std::sscanf(header.c_str(), "VDCK1 c=%lld family=%63s", &c_val, family_buf) != 2)
        throw format_error("bad kernel header: " + header);
    if (c_val < 1 || c_val > kDenseKernelCap)
        throw format_error("kernel modulus out of range: " + std::to_string(c_val));
    const Modulus c = Modulus::of(c_val);
    std::vector<cplx> table(static_cast<std::size_t>(c_val) * static_cast<std::size_t>(c_val));
    std::string line;
    for (std::int64_t m = 0; m < c_val; ++m) {
        for (std::int64_t n = 0; n < c_val; ++n) {
            if (!std::getline(in, line))
                throw format_error("kernel file truncated at entry (" + std::to_string(m) +
                                   ", " + std::to_string(n) + ")");
            long long fm = 0, fn = 0;
            double re = 0.0, im = 0.0;
            if (std::sscanf(line.c_str(), "%lld %lld %lf %lf", &fm, &fn, &re, &im) != 4)
                throw format_error("bad kernel line: " + line);
            if (fm != m || fn != n)
                throw format_error("kernel entries out of order at (" + std::to_string(m) +
                                   ", " + std::to_string(n) + ")");
            table[static_cast<std::size_t>(m * c_val + n)] = {re, im};
        }
    }
    while (std::getline(in, line)) {
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            throw format_error("trailing data after " + std::to_string(c_val * c_val) +
                               " kernel entries");
    }
    return make_kernel(c, family_buf, std::move(table));
}

Kernel build_kernel_by_name(const std::string& name, const Modulus& c,
                            std::uint64_t seed, std::int64_t twist_a) {
    if (name == "additive")
        return build_additive(c);
    if (name == "ones")
        return make_kernel(c, "ones",
                           std::vector<cplx>(static_cast<std::size_t>(c.c * c.c), cplx{1.0, 0.0}));
    if (name == "inverse-twist")
        return build_inverse_twist(c, twist_a);
    if (name == "random-unimodular")
        return build_random_unimodular(c, seed);
    if (name.size() > 2 && name.compare(0, 2, "kl") == 0) {
        const auto dash = name.find('-');
        if (dash != std::string::npos && dash > 2) {
            int k = 0;
            try {
                k = std::stoi(name.substr(2, dash - 2));
            } catch (const std::exception&) {
                k = 0;
            }
            const std::string mode = name.substr(dash + 1);
            if (k >= 1 && (mode == "product" || mode == "twist")) {
                require_prime(c, "hyper-Kloosterman kernel");
                const auto f = build_hyperkloosterman_fast(c, k);
                return assemble_kernel_from_1d(
                    c, f, mode == "product" ? Combiner::product : Combiner::twist, name);
            }
        }
    }
    throw config_error("unknown kernel family: " + name);
}

} // namespace vdc
