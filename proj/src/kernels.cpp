#include "lrkitaev/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "lrkitaev/error.hpp"

namespace lrk::kernels {

double modular_dot_scalar(const double* table, std::size_t n, const double* w, std::size_t count,
                          std::uint64_t stride, std::uint64_t r0) {
    const std::uint64_t step = stride % n;
    std::uint64_t idx = ((r0 % n) * step) % n;
    double acc = 0.0;
    for (std::size_t r = 0; r < count; ++r) {
        acc += w[r] * table[idx];
        idx += step;
        if (idx >= n) idx -= n;
    }
    return acc;
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("LRKITAEV_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& isa_slot() {
    static std::atomic<int> slot{static_cast<int>(detect())};
    return slot;
}

}  // namespace

Isa active_isa() { return static_cast<Isa>(isa_slot().load(std::memory_order_relaxed)); }

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2()) throw ConfigError("AVX2 not available on this CPU");
    isa_slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double modular_dot(const double* table, std::size_t n, const double* w, std::size_t count,
                   std::uint64_t stride, std::uint64_t r0) {
    if (active_isa() == Isa::avx2) return modular_dot_avx2(table, n, w, count, stride, r0);
    return modular_dot_scalar(table, n, w, count, stride, r0);
}

TrigTable make_trig_table(std::size_t n) {
    TrigTable t;
    t.n = n;
    t.cos.assign(n, 0.0);
    t.sin.assign(n, 0.0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    // Fill the first half-turn, then mirror so that cos is exactly even and
    // sin exactly odd under j -> n - j.
    for (std::size_t j = 0; 2 * j <= n; ++j) {
        double c, s;
        if (n % 2 == 0 && 4 * j > n) {
            // reflect about the quarter turn: angle = pi - angle'
            const std::size_t jr = n / 2 - j;
            c = -std::cos(step * jr);
            s = std::sin(step * jr);
        } else {
            c = std::cos(step * j);
            s = std::sin(step * j);
        }
        if (4 * j == n) {
            c = 0.0;
            s = 1.0;
        }
        if (2 * j == n) {
            c = -1.0;
            s = 0.0;
        }
        if (j == 0) {
            c = 1.0;
            s = 0.0;
        }
        t.cos[j] = c;
        t.sin[j] = s;
        if (j != 0 && 2 * j != n) {
            t.cos[n - j] = c;
            t.sin[n - j] = -s;
        }
    }
    return t;
}

}  // namespace lrk::kernels
