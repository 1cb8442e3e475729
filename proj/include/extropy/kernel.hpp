#pragma once

#include <algorithm>
#include <string_view>

namespace extropy {

/// Symmetric pair kernels whose means define the extropy measures.
enum class PairKernel { Min, Max, MinSquared, MaxSquared };

inline constexpr double apply_kernel(PairKernel k, double a, double b) noexcept {
    switch (k) {
        case PairKernel::Min: return std::min(a, b);
        case PairKernel::Max: return std::max(a, b);
        case PairKernel::MinSquared: return std::min(a, b) * std::min(a, b);
        case PairKernel::MaxSquared: return std::max(a, b) * std::max(a, b);
    }
    return 0.0;
}

inline constexpr std::string_view to_string(PairKernel k) noexcept {
    switch (k) {
        case PairKernel::Min: return "min";
        case PairKernel::Max: return "max";
        case PairKernel::MinSquared: return "min2";
        case PairKernel::MaxSquared: return "max2";
    }
    return "unknown";
}

}  // namespace extropy
