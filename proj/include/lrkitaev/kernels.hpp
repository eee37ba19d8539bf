#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Strided trigonometric dot products over a periodic lookup table:
//
//   sum_{r=0}^{count-1} w[r] * table[((r + r0) * stride) mod n]
//
// This is the inner loop of both the finite-N coupling sums and the
// correlation-matrix Fourier sums. A scalar reference and an AVX2 gather
// variant are provided; the active one is chosen at first use from the CPU
// features, overridable with LRKITAEV_SIMD=scalar|avx2.
namespace lrk::kernels {

enum class Isa { scalar, avx2 };

double modular_dot_scalar(const double* table, std::size_t n, const double* w, std::size_t count,
                          std::uint64_t stride, std::uint64_t r0);

// Requires cpu_has_avx2(); callers normally go through modular_dot.
double modular_dot_avx2(const double* table, std::size_t n, const double* w, std::size_t count,
                        std::uint64_t stride, std::uint64_t r0);

double modular_dot(const double* table, std::size_t n, const double* w, std::size_t count,
                   std::uint64_t stride, std::uint64_t r0);

bool cpu_has_avx2();
Isa active_isa();
// Tests use this to pin a variant; throws ConfigError if the CPU lacks it.
void set_active_isa(Isa isa);
std::string_view isa_name(Isa isa);

// cos(2 pi j / n) and sin(2 pi j / n) for j in [0, n), with the quarter-turn
// points stored exactly (0, +-1) so that k = 0 and k = pi stay symmetric.
struct TrigTable {
    std::size_t n = 0;
    std::vector<double> cos;
    std::vector<double> sin;
};
TrigTable make_trig_table(std::size_t n);

}  // namespace lrk::kernels
