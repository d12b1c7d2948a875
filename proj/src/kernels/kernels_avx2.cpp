#include "arcsolve/kernels.hpp"

#if defined(ARCSOLVE_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define ARCSOLVE_AVX2 __attribute__((target("avx2,popcnt")))

namespace arcsolve::kernels::avx2 {

ARCSOLVE_AVX2
std::size_t count_mismatches(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t diff = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        diff += static_cast<std::size_t>(_mm_popcnt_u32(~eq));
    }
    for (; i < n; ++i) diff += a[i] != b[i];
    return diff;
}

ARCSOLVE_AVX2
void color_histogram(const std::uint8_t* cells, std::size_t n, std::uint32_t* counts) {
    for (int c = 0; c < 10; ++c) counts[c] = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cells + i));
        for (int c = 0; c < 10; ++c) {
            const __m256i eq = _mm256_cmpeq_epi8(v, _mm256_set1_epi8(static_cast<char>(c)));
            counts[c] += static_cast<std::uint32_t>(
                _mm_popcnt_u32(static_cast<std::uint32_t>(_mm256_movemask_epi8(eq))));
        }
    }
    for (; i < n; ++i) {
        if (cells[i] < 10) ++counts[cells[i]];
    }
}

// Four cells per step: widen bytes to 64-bit lanes, compare, mask the weight.
// Non-matching lanes add +0.0, which leaves acc bit-identical to the scalar path.
ARCSOLVE_AVX2
void accumulate_color_weight(const std::uint8_t* cells, std::size_t n, std::uint8_t color,
                             double weight, double* acc) {
    const __m256i target = _mm256_set1_epi64x(color);
    const __m256d w = _mm256_set1_pd(weight);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::int32_t packed;
        __builtin_memcpy(&packed, cells + i, sizeof packed);
        const __m256i lanes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256d mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(lanes, target));
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_and_pd(mask, w));
        _mm256_storeu_pd(acc + i, sum);
    }
    for (; i < n; ++i) {
        if (cells[i] == color) acc[i] += weight;
    }
}

ARCSOLVE_AVX2
void swap_colors(std::uint8_t* cells, std::size_t n, std::uint8_t a, std::uint8_t b) {
    const __m256i va = _mm256_set1_epi8(static_cast<char>(a));
    const __m256i vb = _mm256_set1_epi8(static_cast<char>(b));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cells + i));
        const __m256i is_a = _mm256_cmpeq_epi8(v, va);
        const __m256i is_b = _mm256_cmpeq_epi8(v, vb);
        v = _mm256_blendv_epi8(v, vb, is_a);
        v = _mm256_blendv_epi8(v, va, is_b);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(cells + i), v);
    }
    for (; i < n; ++i) {
        if (cells[i] == a)
            cells[i] = b;
        else if (cells[i] == b)
            cells[i] = a;
    }
}

}  // namespace arcsolve::kernels::avx2

#endif
