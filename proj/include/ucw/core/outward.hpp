#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "ucw/core/error.hpp"

namespace ucw {

/// How bound arithmetic rounds. `outward` moves every inexact intermediate
/// in the direction that can only enlarge the final certificate.
enum class Rounding { nearest, outward };

namespace outward {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Error-free transformations detect the sign of the rounding error, so the
// result is nudged by one ulp only when the nearest result was on the wrong side.

inline double add(double a, double b, int dir) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    if (dir > 0 && err > 0) return std::nextafter(s, inf);
    if (dir < 0 && err < 0) return std::nextafter(s, -inf);
    return s;
}

inline double mul(double a, double b, int dir) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    if (dir > 0 && err > 0) return std::nextafter(p, inf);
    if (dir < 0 && err < 0) return std::nextafter(p, -inf);
    return p;
}

/// Division for b > 0.
inline double div(double a, double b, int dir) {
    const double q = a / b;
    const double rem = std::fma(-q, b, a);
    if (dir > 0 && rem > 0) return std::nextafter(q, inf);
    if (dir < 0 && rem < 0) return std::nextafter(q, -inf);
    return q;
}

} // namespace outward

/// Arithmetic helper parameterised by rounding policy: up() rounds toward
/// +inf, down() toward -inf; with Rounding::nearest both are plain IEEE ops.
class BoundArith {
public:
    explicit BoundArith(Rounding r) : dir_(r == Rounding::outward ? 1 : 0) {}

    double add_up(double a, double b) const { return outward::add(a, b, dir_); }
    double add_down(double a, double b) const { return outward::add(a, b, -dir_); }
    double mul_up(double a, double b) const { return outward::mul(a, b, dir_); }
    double mul_down(double a, double b) const { return outward::mul(a, b, -dir_); }
    double div_up(double a, double b) const { return outward::div(a, b, dir_); }
    double div_down(double a, double b) const { return outward::div(a, b, -dir_); }
    bool outward() const noexcept { return dir_ != 0; }

private:
    int dir_;
};

using Index = std::uint64_t;

/// Ceiling of a nonnegative real as an index; throws on overflow.
inline Index ceil_index(double x) {
    if (std::isnan(x)) throw NumericError("bound evaluation produced NaN");
    if (x <= 0.0) return 0;
    const double c = std::ceil(x);
    if (!(c < 9.2e18)) throw NumericError("bound exceeds the representable index range");
    return static_cast<Index>(c);
}

inline Index checked_add(Index a, Index b) {
    if (a > std::numeric_limits<Index>::max() - b) throw NumericError("index overflow");
    return a + b;
}

} // namespace ucw
