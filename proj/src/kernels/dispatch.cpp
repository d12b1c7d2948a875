#include "arcsolve/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

namespace arcsolve::kernels {
namespace {

struct Table {
    Isa isa;
    std::size_t (*count_mismatches)(const std::uint8_t*, const std::uint8_t*, std::size_t);
    void (*color_histogram)(const std::uint8_t*, std::size_t, std::uint32_t*);
    void (*accumulate_color_weight)(const std::uint8_t*, std::size_t, std::uint8_t, double, double*);
    void (*swap_colors)(std::uint8_t*, std::size_t, std::uint8_t, std::uint8_t);
};

constexpr Table kScalar{Isa::scalar, scalar::count_mismatches, scalar::color_histogram,
                        scalar::accumulate_color_weight, scalar::swap_colors};
#if defined(ARCSOLVE_HAVE_AVX2_KERNELS)
constexpr Table kAvx2{Isa::avx2, avx2::count_mismatches, avx2::color_histogram,
                      avx2::accumulate_color_weight, avx2::swap_colors};
#endif
#if defined(ARCSOLVE_HAVE_NEON_KERNELS)
constexpr Table kNeon{Isa::neon, neon::count_mismatches, neon::color_histogram,
                      neon::accumulate_color_weight, neon::swap_colors};
#endif

const Table* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return &kScalar;
        case Isa::avx2:
#if defined(ARCSOLVE_HAVE_AVX2_KERNELS)
            return &kAvx2;
#else
            return nullptr;
#endif
        case Isa::neon:
#if defined(ARCSOLVE_HAVE_NEON_KERNELS)
            return &kNeon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const Table* detect() noexcept {
    if (const char* env = std::getenv("ARCSOLVE_ISA")) {
        const std::string_view want{env};
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == isa_name(isa) && isa_supported(isa)) return table_for(isa);
        }
    }
    if (isa_supported(Isa::avx2)) return table_for(Isa::avx2);
    if (isa_supported(Isa::neon)) return table_for(Isa::neon);
    return &kScalar;
}

std::atomic<const Table*>& current() noexcept {
    static std::atomic<const Table*> table{detect()};
    return table;
}

const Table& active() noexcept { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(ARCSOLVE_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
            return false;
#endif
        case Isa::neon:
#if defined(ARCSOLVE_HAVE_NEON_KERNELS)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return active().isa; }

bool force_isa(Isa isa) noexcept {
    if (!isa_supported(isa)) return false;
    current().store(table_for(isa), std::memory_order_relaxed);
    return true;
}

std::size_t count_mismatches(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) noexcept {
    assert(a.size() == b.size());
    return active().count_mismatches(a.data(), b.data(), a.size());
}

Histogram color_histogram(std::span<const std::uint8_t> cells) noexcept {
    Histogram counts{};
    active().color_histogram(cells.data(), cells.size(), counts.data());
    return counts;
}

void accumulate_color_weight(std::span<const std::uint8_t> cells, std::uint8_t color, double weight,
                             std::span<double> acc) noexcept {
    assert(cells.size() == acc.size());
    active().accumulate_color_weight(cells.data(), cells.size(), color, weight, acc.data());
}

void swap_colors(std::span<std::uint8_t> cells, std::uint8_t a, std::uint8_t b) noexcept {
    if (a == b) return;
    active().swap_colors(cells.data(), cells.size(), a, b);
}

}  // namespace arcsolve::kernels
