#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "lrkitaev/error.hpp"
#include "lrkitaev/kernels.hpp"
#include "lrkitaev/parallel.hpp"

using namespace lrk;

TEST_CASE("trig table quarter points are exact") {
    for (std::size_t n : {4u, 8u, 12u, 1024u}) {
        const auto t = kernels::make_trig_table(n);
        REQUIRE(t.cos.size() == n);
        CHECK(t.cos[0] == 1.0);
        CHECK(t.sin[0] == 0.0);
        CHECK(t.cos[n / 2] == -1.0);
        CHECK(t.sin[n / 2] == 0.0);
        if (n % 4 == 0) {
            CHECK(t.cos[n / 4] == 0.0);
            CHECK(t.sin[n / 4] == 1.0);
            CHECK(t.sin[3 * n / 4] == -1.0);
        }
        for (std::size_t j = 1; j < n; ++j) {
            CHECK(t.cos[j] == t.cos[n - j]);
            CHECK(t.sin[j] == -t.sin[n - j]);
            CHECK(std::fabs(t.cos[j] - std::cos(2 * std::numbers::pi * j / n)) < 1e-15);
        }
    }
}

TEST_CASE("modular_dot scalar reference") {
    const auto t = kernels::make_trig_table(16);
    std::vector<double> w = {1.0, 2.0, 3.0};
    // stride 4 on a 16-table: cos(pi/2 r) for r = 0, 1, 2
    CHECK(kernels::modular_dot_scalar(t.cos.data(), t.n, w.data(), w.size(), 4, 0) == doctest::Approx(1 - 3));
    // r0 = 1 shifts to r = 1, 2, 3
    CHECK(kernels::modular_dot_scalar(t.cos.data(), t.n, w.data(), w.size(), 4, 1) == doctest::Approx(-2));
    CHECK(kernels::modular_dot_scalar(t.cos.data(), t.n, w.data(), 0, 4, 0) == 0.0);
}

TEST_CASE("AVX2 modular_dot matches the scalar kernel") {
    if (!kernels::cpu_has_avx2()) {
        MESSAGE("AVX2 unavailable; equivalence test skipped");
        CHECK_THROWS_AS(kernels::set_active_isa(kernels::Isa::avx2), ConfigError);
        return;
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (std::size_t n : {4u, 6u, 10u, 64u, 1000u, 4096u}) {
        const auto t = kernels::make_trig_table(n);
        for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 257u}) {
            std::vector<double> w(count);
            for (auto& x : w) x = U(rng);
            for (std::uint64_t stride : {0u, 1u, 3u, 17u, 4095u})
                for (std::uint64_t r0 : {0u, 1u, 5u}) {
                    const double a = kernels::modular_dot_scalar(t.sin.data(), n, w.data(), count, stride, r0);
                    const double b = kernels::modular_dot_avx2(t.sin.data(), n, w.data(), count, stride, r0);
                    double scale = 0;
                    for (double x : w) scale += std::fabs(x);
                    CHECK(std::fabs(a - b) <= 1e-14 * std::max(1.0, scale));
                }
        }
    }
}

TEST_CASE("dispatcher honours set_active_isa") {
    const auto before = kernels::active_isa();
    kernels::set_active_isa(kernels::Isa::scalar);
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    CHECK(kernels::isa_name(kernels::Isa::scalar) == "scalar");
    CHECK(kernels::isa_name(kernels::Isa::avx2) == "avx2");
    const auto t = kernels::make_trig_table(32);
    std::vector<double> w(13, 0.5);
    const double s = kernels::modular_dot(t.cos.data(), t.n, w.data(), w.size(), 3, 1);
    CHECK(s == kernels::modular_dot_scalar(t.cos.data(), t.n, w.data(), w.size(), 3, 1));
    kernels::set_active_isa(before);
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    parallel_for(0, [&](std::size_t) { FAIL("no calls expected"); });
}

TEST_CASE("parallel_for rethrows the body's exception") {
    CHECK_THROWS_AS(parallel_for(50,
                                 [&](std::size_t i) {
                                     if (i == 17) throw NumericalError("boom");
                                 }),
                    NumericalError);
}

TEST_CASE("nested parallel_for runs") {
    std::atomic<int> total{0};
    parallel_for(8, [&](std::size_t) { parallel_for(8, [&](std::size_t) { total++; }); });
    CHECK(total == 64);
    CHECK(thread_count() >= 1);
}
