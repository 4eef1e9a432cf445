#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

namespace dirac3t {

using Vec3i = std::array<std::int64_t, 3>;
using Vec3d = std::array<double, 3>;

inline std::int64_t dot(const Vec3i& a, const Vec3i& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double dot(const Vec3d& a, const Vec3d& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double dot(const Vec3i& a, const Vec3d& b) {
    return double(a[0]) * b[0] + double(a[1]) * b[1] + double(a[2]) * b[2];
}

inline Vec3i cross(const Vec3i& a, const Vec3i& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vec3i add(const Vec3i& a, const Vec3i& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3d add(const Vec3d& a, const Vec3d& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3i sub(const Vec3i& a, const Vec3i& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3d sub(const Vec3d& a, const Vec3d& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3i scale(std::int64_t s, const Vec3i& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3d scale(double s, const Vec3d& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline Vec3d to_double(const Vec3i& a) { return {double(a[0]), double(a[1]), double(a[2])}; }

inline std::int64_t norm2i(const Vec3i& a) { return dot(a, a); }
inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec3i& a) { return std::sqrt(double(dot(a, a))); }

inline bool is_zero(const Vec3i& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

inline std::int64_t gcd3(const Vec3i& a) {
    std::int64_t g = std::gcd(std::llabs(a[0]), std::llabs(a[1]));
    return std::gcd(g, std::llabs(a[2]));
}

// Rounded integer division with ties toward zero (keeps lattice reduction
// loops from oscillating on exact halves).
inline std::int64_t div_round(std::int64_t num, std::int64_t den) {
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t q = num / den;
    const std::int64_t r = num % den;
    if (2 * std::llabs(r) > den) return q + (r > 0 ? 1 : -1);
    return q;
}

inline double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r += 1.0;
    return r;
}

inline std::string format_vec(const Vec3i& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

}  // namespace dirac3t
