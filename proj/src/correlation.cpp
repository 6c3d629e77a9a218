#include "vdc/correlation.hpp"

#include <cmath>

#include "vdc/errors.hpp"
#include "vdc/spectral.hpp"

namespace vdc {

ShiftTuple ShiftTuple::of(std::vector<std::int64_t> shifts, std::int64_t bound) {
    for (const auto l : shifts)
        if (std::llabs(l) > bound)
            throw config_error("shift " + std::to_string(l) + " exceeds bound " +
                               std::to_string(bound));
    return ShiftTuple{std::move(shifts), bound};
}

Kernel lambda_op(const Kernel& K, std::int64_t ell) {
    const std::int64_t c = K.modulus.c;
    // e(-l x / c) tabulated once; the index l*x is reduced exactly.
    std::vector<cplx> twist(static_cast<std::size_t>(c));
    const std::int64_t lr = reduce(ell, c);
    for (std::int64_t x = 0; x < c; ++x)
        twist[static_cast<std::size_t>(x)] = additive_character(-(lr * x), K.modulus);

    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    std::vector<cplx> out(static_cast<std::size_t>(c * c));
    for (std::int64_t m = 0; m < c; ++m) {
        const cplx* row_m = &K.table[static_cast<std::size_t>(m * c)];
        for (std::int64_t n = 0; n < c; ++n) {
            const cplx* row_n = &K.table[static_cast<std::size_t>(n * c)];
            cplx acc{0.0, 0.0};
            for (std::int64_t x = 0; x < c; ++x)
                acc += row_m[x] * std::conj(row_n[x]) * twist[static_cast<std::size_t>(x)];
            out[static_cast<std::size_t>(m * c + n)] = acc * scale;
        }
    }
    return make_kernel(K.modulus, "lambda(" + K.family + ")", std::move(out));
}

std::vector<cplx> lambda_spectrum(const Kernel& K, std::int64_t m, std::int64_t n) {
    const std::int64_t c = K.modulus.c;
    const cplx* row_m = &K.table[static_cast<std::size_t>(m * c)];
    const cplx* row_n = &K.table[static_cast<std::size_t>(n * c)];
    std::vector<cplx> prod(static_cast<std::size_t>(c));
    for (std::int64_t x = 0; x < c; ++x)
        prod[static_cast<std::size_t>(x)] = row_m[x] * std::conj(row_n[x]);
    dft_fast_inplace(prod);
    const double scale = 1.0 / std::sqrt(static_cast<double>(c));
    for (auto& v : prod)
        v *= scale;
    return prod;
}

std::vector<Kernel> lambda_all(const Kernel& K, std::int64_t work_cap) {
    const std::int64_t c = K.modulus.c;
    if (c * c * c > work_cap)
        throw chain_budget_exceeded("lambda_all needs c^3 = " + std::to_string(c * c * c) +
                                    " work, cap is " + std::to_string(work_cap));
    std::vector<std::vector<cplx>> tables(static_cast<std::size_t>(c));
    for (auto& t : tables)
        t.resize(static_cast<std::size_t>(c * c));
    for (std::int64_t m = 0; m < c; ++m) {
        for (std::int64_t n = 0; n < c; ++n) {
            const auto spec = lambda_spectrum(K, m, n);
            for (std::int64_t l = 0; l < c; ++l)
                tables[static_cast<std::size_t>(l)][static_cast<std::size_t>(m * c + n)] =
                    spec[static_cast<std::size_t>(l)];
        }
    }
    std::vector<Kernel> out;
    out.reserve(static_cast<std::size_t>(c));
    for (std::int64_t l = 0; l < c; ++l)
        out.push_back(make_kernel(K.modulus, "lambda(" + K.family + ")",
                                  std::move(tables[static_cast<std::size_t>(l)])));
    return out;
}

Kernel lambda_chain(const Kernel& K, const ShiftTuple& t, std::int64_t work_cap) {
    if (t.shifts.empty())
        throw config_error("lambda_chain needs at least one shift");
    const std::int64_t c = K.modulus.c;
    const double work = static_cast<double>(c) * static_cast<double>(c) *
                        static_cast<double>(c) * static_cast<double>(t.shifts.size());
    if (work > static_cast<double>(work_cap))
        throw chain_budget_exceeded("chain work c^3*len = " + std::to_string(work) +
                                    " exceeds cap " + std::to_string(work_cap));
    Kernel cur = lambda_op(K, t.shifts.front());
    for (std::size_t i = 1; i < t.shifts.size(); ++i)
        cur = lambda_op(cur, t.shifts[i]);
    return cur;
}

NormReport k2inf_norm(const Kernel& K) {
    const std::int64_t c = K.modulus.c;
    NormReport report;
    double best = -1.0;
    for (std::int64_t m = 0; m < c; ++m) {
        if (gcd64(m, c) != 1)
            continue;
        ++report.rows_scanned;
        const cplx* row = &K.table[static_cast<std::size_t>(m * c)];
        double mass = 0.0;
        for (std::int64_t x = 0; x < c; ++x)
            mass += std::norm(row[x]);
        mass /= static_cast<double>(c);
        if (mass > best) {
            best = mass;
            report.argmax_row = m;
        }
    }
    report.k2inf = best < 0.0 ? 0.0 : std::sqrt(best);
    return report;
}

} // namespace vdc
