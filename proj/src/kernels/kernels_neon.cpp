#include "arcsolve/kernels.hpp"

#if defined(ARCSOLVE_HAVE_NEON_KERNELS)

#include <arm_neon.h>

namespace arcsolve::kernels::neon {

std::size_t count_mismatches(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
    std::size_t diff = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t ne = vmvnq_u8(vceqq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
        diff += vaddvq_u8(vshrq_n_u8(ne, 7));
    }
    for (; i < n; ++i) diff += a[i] != b[i];
    return diff;
}

void color_histogram(const std::uint8_t* cells, std::size_t n, std::uint32_t* counts) {
    for (int c = 0; c < 10; ++c) counts[c] = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t v = vld1q_u8(cells + i);
        for (int c = 0; c < 10; ++c) {
            const uint8x16_t eq = vceqq_u8(v, vdupq_n_u8(static_cast<std::uint8_t>(c)));
            counts[c] += vaddvq_u8(vshrq_n_u8(eq, 7));
        }
    }
    for (; i < n; ++i) {
        if (cells[i] < 10) ++counts[cells[i]];
    }
}

void accumulate_color_weight(const std::uint8_t* cells, std::size_t n, std::uint8_t color,
                             double weight, double* acc) {
    const float64x2_t w = vdupq_n_f64(weight);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t lanes = {cells[i], cells[i + 1]};
        const uint64x2_t mask = vceqq_u64(lanes, vdupq_n_u64(color));
        const float64x2_t add = vreinterpretq_f64_u64(vandq_u64(mask, vreinterpretq_u64_f64(w)));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), add));
    }
    for (; i < n; ++i) {
        if (cells[i] == color) acc[i] += weight;
    }
}

void swap_colors(std::uint8_t* cells, std::size_t n, std::uint8_t a, std::uint8_t b) {
    const uint8x16_t va = vdupq_n_u8(a);
    const uint8x16_t vb = vdupq_n_u8(b);
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16_t v = vld1q_u8(cells + i);
        const uint8x16_t is_a = vceqq_u8(v, va);
        const uint8x16_t is_b = vceqq_u8(v, vb);
        v = vbslq_u8(is_a, vb, v);
        v = vbslq_u8(is_b, va, v);
        vst1q_u8(cells + i, v);
    }
    for (; i < n; ++i) {
        if (cells[i] == a)
            cells[i] = b;
        else if (cells[i] == b)
            cells[i] = a;
    }
}

}  // namespace arcsolve::kernels::neon

#endif
