#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vdc/bilinear.hpp"
#include "vdc/errors.hpp"

using namespace vdc;

TEST_CASE("gen_coefficients") {
    const Modulus c7 = Modulus::of(7);

    SUBCASE("all-ones") {
        const auto s = gen_coefficients(4, Scheme::all_ones, 0, c7);
        REQUIRE(s.values.size() == 4);
        for (std::int64_t n = 4; n < 8; ++n)
            CHECK(s.at(n) == cplx{1.0, 0.0});
    }
    SUBCASE("prime-supported respects the coprimality sieve") {
        // Primes in [4, 8) are 5 and 7; 7 shares a factor with c = 7.
        const auto s = gen_coefficients(4, Scheme::prime_supported, 0, c7);
        CHECK(s.at(4) == cplx{0.0, 0.0});
        CHECK(s.at(5) == cplx{1.0, 0.0});
        CHECK(s.at(6) == cplx{0.0, 0.0});
        CHECK(s.at(7) == cplx{0.0, 0.0});
    }
    SUBCASE("empty prime support throws") {
        // [7, 14) holds 7, 11, 13, all dividing 1001.
        CHECK_THROWS_AS(gen_coefficients(7, Scheme::prime_supported, 0, Modulus::of(1001)),
                        empty_support);
    }
    SUBCASE("determinism and scheme shapes") {
        const auto a = gen_coefficients(32, Scheme::random_signs, 9, c7);
        const auto b = gen_coefficients(32, Scheme::random_signs, 9, c7);
        const auto d = gen_coefficients(32, Scheme::random_signs, 10, c7);
        CHECK(a.values == b.values);
        CHECK(a.values != d.values);
        for (const auto& v : a.values)
            CHECK((v == cplx{1.0, 0.0} || v == cplx{-1.0, 0.0}));

        const auto p = gen_coefficients(32, Scheme::random_phases, 9, c7);
        for (const auto& v : p.values)
            CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    }
    SUBCASE("custom sequences go through custom_of") {
        CHECK_THROWS_AS(gen_coefficients(4, Scheme::custom, 0, c7), config_error);
        CHECK_THROWS_AS(CoefficientSequence::custom_of(4, std::vector<cplx>(3)), config_error);
    }
}

TEST_CASE("eval_bilinear") {
    const Modulus c = Modulus::of(11);
    const Kernel K = oracles::random_kernel(11, 17);

    SUBCASE("spikes pick out one kernel value") {
        std::vector<cplx> av(13, cplx{0.0, 0.0});
        av[4] = 1.0; // m0 = 17
        std::vector<cplx> bv(6, cplx{0.0, 0.0});
        bv[3] = 1.0; // n0 = 9
        const auto alpha = CoefficientSequence::custom_of(13, std::move(av));
        const auto beta = CoefficientSequence::custom_of(6, std::move(bv));
        const auto S = eval_bilinear(alpha, beta, K);
        CHECK(std::abs(S.value - K.at(17 % 11, 9)) < 1e-15);
    }
    SUBCASE("additive kernel against the closed-form geometric oracle") {
        const Kernel A = build_additive(Modulus::of(9));
        for (std::int64_t M : {3, 5, 14}) {
            for (std::int64_t N : {4, 9}) {
                const auto alpha = gen_coefficients(M, Scheme::all_ones, 0, A.modulus);
                const auto beta = gen_coefficients(N, Scheme::all_ones, 0, A.modulus);
                const cplx got = eval_bilinear(alpha, beta, A).value;
                const cplx want = oracles::additive_bilinear_closed_form(M, N, 9);
                REQUIRE(std::abs(got - want) < 1e-9 * (1.0 + std::abs(want)));
            }
        }
    }
    SUBCASE("triangle inequality") {
        const auto alpha = gen_coefficients(8, Scheme::random_phases, 3, c);
        const auto beta = gen_coefficients(5, Scheme::random_signs, 4, c);
        const auto S = eval_bilinear(alpha, beta, K);
        double a1 = 0.0, b1 = 0.0;
        for (const auto& v : alpha.values)
            a1 += std::abs(v);
        for (const auto& v : beta.values)
            b1 += std::abs(v);
        CHECK(std::abs(S.value) <= a1 * b1 * K.magnitude_profile.sup_all + 1e-9);
    }
    SUBCASE("matches the literal oracle") {
        const auto alpha = gen_coefficients(20, Scheme::random_phases, 5, c);
        const auto beta = gen_coefficients(13, Scheme::random_phases, 6, c);
        const auto S = eval_bilinear(alpha, beta, K);
        CHECK(std::abs(S.value - oracles::bilinear(alpha, beta, K)) < 1e-11);
        CHECK(std::abs(S.value) <= S.trivial_cs_bound + 1e-9);
    }
}

TEST_CASE("bilinearity in each argument") {
    const Modulus c = Modulus::of(13);
    const Kernel K = oracles::random_kernel(13, 23);
    const auto alpha = gen_coefficients(6, Scheme::random_phases, 1, c);
    const auto beta = gen_coefficients(9, Scheme::random_phases, 2, c);

    auto scaled = alpha.values;
    for (auto& v : scaled)
        v *= cplx{2.0, -1.0};
    const auto alpha2 = CoefficientSequence::custom_of(6, std::move(scaled));
    const cplx s1 = eval_bilinear(alpha, beta, K).value;
    const cplx s2 = eval_bilinear(alpha2, beta, K).value;
    CHECK(std::abs(s2 - cplx{2.0, -1.0} * s1) <= 1e-12 * std::abs(s2));

    const auto gamma = gen_coefficients(9, Scheme::random_phases, 3, c);
    auto summed = beta.values;
    for (std::size_t i = 0; i < summed.size(); ++i)
        summed[i] += gamma.values[i];
    const auto beta_sum = CoefficientSequence::custom_of(9, std::move(summed));
    const cplx t1 = eval_bilinear(alpha, beta, K).value;
    const cplx t2 = eval_bilinear(alpha, gamma, K).value;
    const cplx t12 = eval_bilinear(alpha, beta_sum, K).value;
    CHECK(std::abs(t12 - (t1 + t2)) <= 1e-12 * (std::abs(t1) + std::abs(t2) + 1.0));
}

TEST_CASE("conjugating the kernel and both sequences conjugates the form") {
    const Modulus c = Modulus::of(10);
    const Kernel K = oracles::random_kernel(10, 29);
    const auto alpha = gen_coefficients(7, Scheme::random_phases, 4, c);
    const auto beta = gen_coefficients(4, Scheme::random_phases, 5, c);

    auto conj_table = K.table;
    for (auto& v : conj_table)
        v = std::conj(v);
    const Kernel Kc = make_kernel(K.modulus, K.family, std::move(conj_table));
    auto ac = alpha.values;
    for (auto& v : ac)
        v = std::conj(v);
    auto bc = beta.values;
    for (auto& v : bc)
        v = std::conj(v);

    const cplx direct = eval_bilinear(alpha, beta, K).value;
    const cplx conjugated = eval_bilinear(CoefficientSequence::custom_of(7, std::move(ac)),
                                          CoefficientSequence::custom_of(4, std::move(bc)),
                                          Kc)
                                .value;
    CHECK(std::abs(conjugated - std::conj(direct)) < 1e-12);
}

TEST_CASE("trivial Cauchy-Schwarz bound holds on random instances") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        DetRng rng(seed);
        const std::int64_t c = 2 + static_cast<std::int64_t>(rng.below(30));
        const std::int64_t M = 2 + static_cast<std::int64_t>(rng.below(20));
        const std::int64_t N = 2 + static_cast<std::int64_t>(rng.below(20));
        const Kernel K = oracles::random_kernel(c, seed);
        const auto alpha = gen_coefficients(M, Scheme::random_phases, seed * 2, K.modulus);
        const auto beta = gen_coefficients(N, Scheme::random_signs, seed * 2 + 1, K.modulus);
        // eval_bilinear itself verifies |S| <= trivial_cs_bound + 1e-9.
        CHECK_NOTHROW(eval_bilinear(alpha, beta, K));
    }
}
