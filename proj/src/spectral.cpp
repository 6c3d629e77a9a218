#include "vdc/spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "vdc/errors.hpp"

namespace vdc {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n)
        m <<= 1;
    return m;
}

// Iterative radix-2 transform with precomputed twiddles. The butterfly
// order is fixed, so repeated runs are bit-identical.
struct Pow2FFT {
    std::size_t n = 0;
    std::vector<cplx> w; // w[j] = e(-j/n), j < n/2

    explicit Pow2FFT(std::size_t n_) : n(n_), w(n_ / 2) {
        for (std::size_t j = 0; j < n / 2; ++j) {
            const double theta = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
            w[j] = {std::cos(theta), std::sin(theta)};
        }
    }

    void bit_reverse(std::vector<cplx>& a) const {
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1)
                j ^= bit;
            j ^= bit;
            if (i < j)
                std::swap(a[i], a[j]);
        }
    }

    void forward(std::vector<cplx>& a) const {
        bit_reverse(a);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t step = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t j = 0; j < len / 2; ++j) {
                    const cplx u = a[i + j];
                    const cplx v = a[i + j + len / 2] * w[j * step];
                    a[i + j] = u + v;
                    a[i + j + len / 2] = u - v;
                }
            }
        }
    }

    void inverse(std::vector<cplx>& a) const {
        bit_reverse(a);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t step = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t j = 0; j < len / 2; ++j) {
                    const cplx u = a[i + j];
                    const cplx v = a[i + j + len / 2] * std::conj(w[j * step]);
                    a[i + j] = u + v;
                    a[i + j + len / 2] = u - v;
                }
            }
        }
        const double s = 1.0 / static_cast<double>(n);
        for (auto& x : a)
            x *= s;
    }
};

// Bluestein: X_k = chirp_k * (a (*) b)[k] with a_n = x_n chirp_n and
// b_j = conj(chirp_j), chirp_j = e^(-pi i j^2 / n). The exponent j^2 is
// reduced mod 2n in integer arithmetic before the single trig call.
struct Plan {
    std::size_t n = 0;
    std::unique_ptr<Pow2FFT> pow2;     // direct path when n is a power of two
    std::unique_ptr<Pow2FFT> padded;   // convolution transform, size m
    std::vector<cplx> chirp;           // length n
    std::vector<cplx> b_hat;           // FFT of the symmetric chirp, length m

    explicit Plan(std::size_t n_) : n(n_) {
        if (is_pow2(n)) {
            pow2 = std::make_unique<Pow2FFT>(n);
            return;
        }
        const std::size_t m = next_pow2(2 * n - 1);
        padded = std::make_unique<Pow2FFT>(m);
        chirp.resize(n);
        const std::int64_t two_n = 2 * static_cast<std::int64_t>(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::int64_t jj = static_cast<std::int64_t>(j);
            const std::int64_t r = (jj * jj) % two_n;
            const double theta = -kPi * static_cast<double>(r) / static_cast<double>(n);
            chirp[j] = {std::cos(theta), std::sin(theta)};
        }
        std::vector<cplx> b(m, cplx{0.0, 0.0});
        b[0] = std::conj(chirp[0]);
        for (std::size_t j = 1; j < n; ++j)
            b[j] = b[m - j] = std::conj(chirp[j]);
        padded->forward(b);
        b_hat = std::move(b);
    }

    void forward(std::vector<cplx>& x) const {
        if (pow2) {
            pow2->forward(x);
            return;
        }
        const std::size_t m = padded->n;
        std::vector<cplx> a(m, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < n; ++j)
            a[j] = x[j] * chirp[j];
        padded->forward(a);
        for (std::size_t j = 0; j < m; ++j)
            a[j] *= b_hat[j];
        padded->inverse(a);
        for (std::size_t k = 0; k < n; ++k)
            x[k] = a[k] * chirp[k];
    }
};

const Plan& plan_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<Plan>(n)).first;
    return *it->second;
}

} // namespace

PeriodicTable::PeriodicTable(Modulus m, std::vector<cplx> v)
    : modulus(std::move(m)), values(std::move(v)) {
    if (values.size() != static_cast<std::size_t>(modulus.c))
        throw config_error("periodic table needs exactly c values");
}

SpectrumTable dft_direct(const PeriodicTable& f) {
    const std::int64_t c = f.modulus.c;
    // All characters e(-j/c) appear with j = a*n mod c; tabulate them once.
    std::vector<cplx> chi(static_cast<std::size_t>(c));
    for (std::int64_t j = 0; j < c; ++j)
        chi[static_cast<std::size_t>(j)] = additive_character(-j, f.modulus);
    std::vector<cplx> out(static_cast<std::size_t>(c));
    for (std::int64_t n = 0; n < c; ++n) {
        cplx acc{0.0, 0.0};
        for (std::int64_t a = 0; a < c; ++a)
            acc += f.values[static_cast<std::size_t>(a)] * chi[static_cast<std::size_t>((a * n) % c)];
        out[static_cast<std::size_t>(n)] = acc;
    }
    return SpectrumTable{f.modulus, std::move(out)};
}

void dft_fast_inplace(std::vector<cplx>& data) {
    if (data.empty())
        return;
    plan_for(data.size()).forward(data);
}

SpectrumTable dft_fast(const PeriodicTable& f) {
    std::vector<cplx> v = f.values;
    dft_fast_inplace(v);
    return SpectrumTable{f.modulus, std::move(v)};
}

PeriodicTable idft(const SpectrumTable& F) {
    // f(a) = (1/c) conj(dft(conj F))(a).
    const std::size_t c = F.values.size();
    std::vector<cplx> v(c);
    for (std::size_t i = 0; i < c; ++i)
        v[i] = std::conj(F.values[i]);
    dft_fast_inplace(v);
    const double s = 1.0 / static_cast<double>(c);
    for (auto& x : v)
        x = std::conj(x) * s;
    PeriodicTable out;
    out.modulus = F.modulus;
    out.values = std::move(v);
    return out;
}

std::int64_t poisson_default_nmax(const TestFunction& V, const Modulus& c) {
    // The computed transform cannot be resolved below the quadrature's own
    // rounding floor (roughly eps times the support width), so the 1e-14*c
    // tail rule is clamped there.
    const double floor_mag = 16.0 * 2.220446049250313e-16 * (V.s1 - V.s0);
    const double threshold = std::max(1e-14 * static_cast<double>(c.c), floor_mag);
    constexpr int kWindow = 8;
    constexpr std::int64_t kHardCap = 200000;
    int below = 0;
    for (std::int64_t n = 1; n <= kHardCap; ++n) {
        double mag;
        try {
            mag = std::abs(continuous_ft(V, static_cast<double>(n) / static_cast<double>(c.c)));
        } catch (const quadrature_not_converged&) {
            // Refinement stalls only once the value sits at rounding level.
            mag = 0.0;
        }
        below = mag < threshold ? below + 1 : 0;
        if (below >= kWindow)
            return n;
    }
    return kHardCap;
}

double poisson_check(const PeriodicTable& K, const TestFunction& V, std::int64_t n_max) {
    const Modulus& c = K.modulus;
    if (n_max <= 0)
        n_max = poisson_default_nmax(V, c);

    cplx lhs{0.0, 0.0};
    const std::int64_t first = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(V.s0)));
    const std::int64_t last = static_cast<std::int64_t>(std::ceil(V.s1));
    for (std::int64_t n = first; n <= last; ++n)
        lhs += K.values[static_cast<std::size_t>(reduce(n, c.c))] * V(static_cast<double>(n));

    // Two-sided convention: the n-th spectral term pairs V_hat(n/c) with
    // K_hat(-n). For even V this is the identity as usually printed; for
    // general smooth compactly supported V it is the one that holds.
    const SpectrumTable K_hat = dft_fast(K);
    cplx rhs{0.0, 0.0};
    for (std::int64_t n = -n_max; n <= n_max; ++n) {
        const cplx kh = K_hat.values[static_cast<std::size_t>(reduce(-n, c.c))];
        rhs += kh * continuous_ft(V, static_cast<double>(n) / static_cast<double>(c.c));
    }
    rhs /= static_cast<double>(c.c);

    return std::abs(lhs - rhs);
}

} // namespace vdc
