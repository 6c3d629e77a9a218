#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "vdc/errors.hpp"
#include "vdc/kernel.hpp"
#include "vdc/spectral.hpp"

using namespace vdc;

TEST_CASE("additive kernel") {
    const Modulus c5 = Modulus::of(5);
    const Kernel K = build_additive(c5);

    CHECK(std::abs(K.at(1, 1) - cplx{0.30901699437494742, 0.95105651629515357}) < 1e-12);
    for (std::int64_t n = 0; n < 5; ++n)
        CHECK(std::abs(K.at(0, n) - cplx{1.0, 0.0}) < 1e-15);

    // Row m is the frequency-m character; dft_direct puts all its mass at
    // index m mod c. (The DFT convention e(-an/c) pairs e(ma/c) with n = m.)
    for (std::int64_t m = 0; m < 5; ++m) {
        std::vector<cplx> row(K.table.begin() + static_cast<std::ptrdiff_t>(m * 5),
                              K.table.begin() + static_cast<std::ptrdiff_t>((m + 1) * 5));
        const auto hat = dft_direct(PeriodicTable(c5, std::move(row)));
        for (std::int64_t n = 0; n < 5; ++n) {
            const cplx want = n == m ? cplx{5.0, 0.0} : cplx{0.0, 0.0};
            CHECK(std::abs(hat.values[static_cast<std::size_t>(n)] - want) < 1e-9);
        }
    }
}

TEST_CASE("inverse-twist kernel") {
    const Modulus c7 = Modulus::of(7);
    const Kernel K = build_inverse_twist(c7, 1);

    const std::int64_t nbar[] = {0, 1, 4, 5, 2, 3, 6};
    for (std::int64_t n = 1; n < 7; ++n) {
        const cplx want = oracles::unit_phase(static_cast<double>(nbar[n]) / 7.0);
        CHECK(std::abs(K.at(1, n) - want) < 1e-12);
        CHECK(std::abs(std::abs(K.at(3, n)) - 1.0) < 1e-12);
    }
    for (std::int64_t m = 0; m < 7; ++m)
        CHECK(K.at(m, 0) == cplx{0.0, 0.0});

    // Composite modulus: zeros at every non-unit column.
    const Kernel K12 = build_inverse_twist(Modulus::of(12), 5);
    for (std::int64_t n = 0; n < 12; ++n)
        if (gcd64(n, 12) != 1)
            CHECK(K12.at(5, n) == cplx{0.0, 0.0});
}

TEST_CASE("hyper-Kloosterman direct oracle") {
    SUBCASE("k = 1 is the additive character") {
        const Modulus p = Modulus::of(13);
        const auto kl1 = build_hyperkloosterman_direct(p, 1);
        for (std::int64_t a = 1; a < 13; ++a)
            CHECK(std::abs(kl1[static_cast<std::size_t>(a)] - additive_character(a, p)) < 1e-12);
    }
    SUBCASE("Kl_2(1; 3) = -1/sqrt(3)") {
        const auto kl2 = build_hyperkloosterman_direct(Modulus::of(3), 2);
        CHECK(std::abs(kl2[1] - cplx{-0.57735026918962576, 0.0}) < 1e-12);
    }
    SUBCASE("Kl_2 is real") {
        for (std::int64_t p : {5, 7, 11}) {
            const auto kl2 = build_hyperkloosterman_direct(Modulus::of(p), 2);
            for (std::int64_t a = 1; a < p; ++a)
                CHECK(std::abs(kl2[static_cast<std::size_t>(a)].imag()) < 1e-10);
        }
    }
    SUBCASE("rejects composite moduli and blown budgets") {
        CHECK_THROWS_AS(build_hyperkloosterman_direct(Modulus::of(10), 2), not_prime);
        CHECK_THROWS_AS(build_hyperkloosterman_direct(Modulus::of(101), 5), infeasible);
    }
}

TEST_CASE("hyper-Kloosterman fast path agrees with the oracle") {
    SUBCASE("p = 7, k = 2") {
        const Modulus p = Modulus::of(7);
        const auto fast = build_hyperkloosterman_fast(p, 2);
        const auto direct = build_hyperkloosterman_direct(p, 2);
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(std::abs(fast[i] - direct[i]) < 1e-10);
    }
    SUBCASE("p = 101, k = 3 with Weil bound") {
        const Modulus p = Modulus::of(101);
        const auto fast = build_hyperkloosterman_fast(p, 3);
        const auto direct = build_hyperkloosterman_direct(p, 3);
        for (std::size_t i = 0; i < fast.size(); ++i) {
            REQUIRE(std::abs(fast[i] - direct[i]) < 1e-9);
            REQUIRE(std::abs(fast[i]) <= 3.0 + 1e-9);
        }
    }
    SUBCASE("single-point direct sum at p = 1009") {
        const Modulus p = Modulus::of(1009);
        const auto fast = build_hyperkloosterman_fast(p, 2);
        CHECK(std::abs(fast[1] - kloosterman_direct_point(p, 2, 1)) < 1e-9);
        CHECK(std::abs(fast[77] - kloosterman_direct_point(p, 2, 77)) < 1e-9);
    }
    SUBCASE("k = 2 spectral route agrees") {
        const Modulus p = Modulus::of(13);
        const auto fast = build_hyperkloosterman_fast(p, 2);
        const auto spectral = kloosterman2_spectral(p);
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(std::abs(fast[i] - spectral[i]) < 1e-10);
    }
}

TEST_CASE("assemble_kernel_from_1d") {
    const Modulus p = Modulus::of(7);
    const auto kl2 = build_hyperkloosterman_fast(p, 2);
    const Kernel K = assemble_kernel_from_1d(p, kl2, Combiner::product, "kl2-product");

    CHECK(std::abs(K.at(2, 3) - kl2[6]) < 1e-15);
    for (std::int64_t n = 0; n < 7; ++n) {
        CHECK(K.at(0, n) == cplx{0.0, 0.0});
        CHECK(K.at(n, 0) == cplx{0.0, 0.0});
    }
    CHECK(K.magnitude_profile.sup_units <= 2.0 + 1e-9);

    const Kernel T = assemble_kernel_from_1d(p, kl2, Combiner::twist, "kl2-twist");
    CHECK(std::abs(T.at(3, 2) - kl2[static_cast<std::size_t>(3 * mod_inverse(2, 7) % 7)]) < 1e-15);
}

TEST_CASE("random unimodular kernels are seeded and unimodular") {
    const Modulus c = Modulus::of(11);
    const Kernel a = build_random_unimodular(c, 42);
    const Kernel b = build_random_unimodular(c, 42);
    const Kernel d = build_random_unimodular(c, 43);
    CHECK(a.table == b.table);
    CHECK(a.table != d.table);
    for (const auto& v : a.table)
        CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    CHECK(a.magnitude_profile.sup_all == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel files round-trip bit-exactly") {
    const std::string path = "test_kernel_roundtrip.vdck";
    const Kernel K = build_random_unimodular(Modulus::of(9), 7);
    save_kernel(K, path);
    const Kernel L = load_kernel(path);
    CHECK(L.modulus.c == 9);
    CHECK(L.family == "random-unimodular");
    REQUIRE(L.table.size() == K.table.size());
    for (std::size_t i = 0; i < K.table.size(); ++i) {
        REQUIRE(K.table[i].real() == L.table[i].real());
        REQUIRE(K.table[i].imag() == L.table[i].imag());
    }
    std::remove(path.c_str());
}

TEST_CASE("kernel loader rejects malformed files") {
    const std::string path = "test_kernel_malformed.vdck";
    CHECK_THROWS_AS(load_kernel("no_such_file.vdck"), io_error);

    {
        std::ofstream out(path);
        out << "VDCK2 c=3 family=additive\n";
    }
    CHECK_THROWS_AS(load_kernel(path), format_error);

    {
        std::ofstream out(path);
        out << "VDCK1 c=3 family=additive\n0 0 1 0\n0 1 1 0\n";
    }
    CHECK_THROWS_AS(load_kernel(path), format_error);

    {
        std::ofstream out(path);
        const Kernel K = build_additive(Modulus::of(2));
        save_kernel(K, path);
        std::ofstream app(path, std::ios::app);
        app << "9 9 0 0\n";
    }
    CHECK_THROWS_AS(load_kernel(path), format_error);

    {
        const Kernel K = build_additive(Modulus::of(2));
        save_kernel(K, path);
        // Swap two index labels: out-of-order entries are rejected.
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto pos = text.find("0 1 ");
        text.replace(pos, 4, "1 0 ");
        std::ofstream out(path);
        out << text;
    }
    CHECK_THROWS_AS(load_kernel(path), format_error);
    std::remove(path.c_str());
}

TEST_CASE("build_kernel_by_name") {
    const Modulus c7 = Modulus::of(7);
    CHECK(build_kernel_by_name("additive", c7).family == "additive");
    CHECK(build_kernel_by_name("kl2-product", c7).family == "kl2-product");
    CHECK(build_kernel_by_name("kl3-twist", c7).family == "kl3-twist");
    CHECK_THROWS_AS(build_kernel_by_name("kl2-product", Modulus::of(12)), not_prime);
    CHECK_THROWS_AS(build_kernel_by_name("wavelet", c7), config_error);
}

TEST_CASE("dense kernel cap") {
    CHECK_THROWS_AS(build_additive(Modulus::of(5000)), config_error);
}

TEST_CASE("Weil bound audit on a sample of primes") {
    for (std::int64_t p : {3, 5, 17, 97, 499}) {
        for (int k : {2, 3}) {
            const auto table = build_hyperkloosterman_fast(Modulus::of(p), k);
            for (std::int64_t a = 1; a < p; ++a)
                REQUIRE(std::abs(table[static_cast<std::size_t>(a)]) <=
                        static_cast<double>(k) + 1e-9);
        }
    }
}
