#pragma once

#include <algorithm>
#include <cmath>

namespace ucw {

/// Comparison band used by every property check. `le(a, b)` accepts
/// a <= b + max(abs, rel * max(|a|, |b|)).
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;

    double band(double a, double b) const noexcept {
        return std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
    }
    bool le(double a, double b) const noexcept { return a <= b + band(a, b); }
    bool eq(double a, double b) const noexcept { return std::fabs(a - b) <= band(a, b); }
    /// Signed amount by which `a <= b` is violated; nonpositive when satisfied exactly.
    static double excess(double a, double b) noexcept { return a - b; }
};

inline constexpr Tolerance default_tolerance{};

} // namespace ucw
