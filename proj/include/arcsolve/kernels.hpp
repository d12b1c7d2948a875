#pragma once

// Byte-plane kernels used on the hot paths: candidate scoring during search,
// background profiling and per-pixel voting. Each kernel has a scalar
// reference implementation plus AVX2 / NEON variants; the active variant is
// chosen once at startup from CPUID (override with ARCSOLVE_ISA=scalar).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace arcsolve::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
Isa active_isa() noexcept;
// Switch the dispatch table; returns false (and leaves it unchanged) when the
// ISA is not supported on this machine.
bool force_isa(Isa isa) noexcept;

using Histogram = std::array<std::uint32_t, 10>;

// Number of positions where a[i] != b[i]. Spans must have equal length.
std::size_t count_mismatches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept;

// counts[c] = number of cells equal to c, for c in 0..9.
Histogram color_histogram(std::span<const std::uint8_t> cells) noexcept;

// acc[i] += weight wherever cells[i] == color.
void accumulate_color_weight(std::span<const std::uint8_t> cells, std::uint8_t color,
                             double weight, std::span<double> acc) noexcept;

// Exchange every occurrence of a with b and vice versa, in place.
void swap_colors(std::span<std::uint8_t> cells, std::uint8_t a, std::uint8_t b) noexcept;

// Per-ISA entry points, exposed for equivalence tests. Calling a variant the
// CPU does not support is undefined.
#define ARCSOLVE_KERNEL_DECLS                                                                  \
    std::size_t count_mismatches(const std::uint8_t* a, const std::uint8_t* b, std::size_t n); \
    void color_histogram(const std::uint8_t* cells, std::size_t n, std::uint32_t* counts);     \
    void accumulate_color_weight(const std::uint8_t* cells, std::size_t n, std::uint8_t color, \
                                 double weight, double* acc);                                  \
    void swap_colors(std::uint8_t* cells, std::size_t n, std::uint8_t a, std::uint8_t b);

namespace scalar {
ARCSOLVE_KERNEL_DECLS
}
#if defined(__x86_64__) || defined(_M_X64)
#define ARCSOLVE_HAVE_AVX2_KERNELS 1
namespace avx2 {
ARCSOLVE_KERNEL_DECLS
}
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
#define ARCSOLVE_HAVE_NEON_KERNELS 1
namespace neon {
ARCSOLVE_KERNEL_DECLS
}
#endif

#undef ARCSOLVE_KERNEL_DECLS

}  // namespace arcsolve::kernels
