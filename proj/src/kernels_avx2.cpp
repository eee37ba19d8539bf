#include <immintrin.h>

#include "lrkitaev/kernels.hpp"

namespace lrk::kernels {

// Four lanes walk the index sequence (r*stride) mod n with a lane offset of
// one step each; indices fit in int32 because n is a mode count.
double modular_dot_avx2(const double* table, std::size_t n, const double* w, std::size_t count,
                        std::uint64_t stride, std::uint64_t r0) {
    const std::uint64_t step = stride % n;
    std::uint64_t start = ((r0 % n) * step) % n;
    const std::size_t blocks = count / 4;

    alignas(16) int lane[4];
    std::uint64_t idx = start;
    for (int j = 0; j < 4; ++j) {
        lane[j] = static_cast<int>(idx);
        idx += step;
        if (idx >= n) idx -= n;
    }
    const int step4 = static_cast<int>((4 * step) % n);
    __m128i vidx = _mm_load_si128(reinterpret_cast<const __m128i*>(lane));
    const __m128i vstep = _mm_set1_epi32(step4);
    const __m128i vn = _mm_set1_epi32(static_cast<int>(n));
    const __m128i vlimit = _mm_set1_epi32(static_cast<int>(n) - 1);

    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t b = 0;
    for (; b + 1 < blocks; b += 2) {
        const __m256d t0 = _mm256_i32gather_pd(table, vidx, 8);
        vidx = _mm_add_epi32(vidx, vstep);
        vidx = _mm_sub_epi32(vidx, _mm_and_si128(_mm_cmpgt_epi32(vidx, vlimit), vn));
        const __m256d t1 = _mm256_i32gather_pd(table, vidx, 8);
        vidx = _mm_add_epi32(vidx, vstep);
        vidx = _mm_sub_epi32(vidx, _mm_and_si128(_mm_cmpgt_epi32(vidx, vlimit), vn));
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + 4 * b), t0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + 4 * b + 4), t1, acc1);
    }
    for (; b < blocks; ++b) {
        const __m256d t0 = _mm256_i32gather_pd(table, vidx, 8);
        vidx = _mm_add_epi32(vidx, vstep);
        vidx = _mm_sub_epi32(vidx, _mm_and_si128(_mm_cmpgt_epi32(vidx, vlimit), vn));
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + 4 * b), t0, acc0);
    }
    alignas(32) double parts[4];
    _mm256_store_pd(parts, _mm256_add_pd(acc0, acc1));
    double acc = (parts[0] + parts[1]) + (parts[2] + parts[3]);

    _mm_store_si128(reinterpret_cast<__m128i*>(lane), vidx);
    std::uint64_t tail = static_cast<std::uint64_t>(lane[0]);
    for (std::size_t r = 4 * blocks; r < count; ++r) {
        acc += w[r] * table[tail];
        tail += step;
        if (tail >= n) tail -= n;
    }
    return acc;
}

}  // namespace lrk::kernels
