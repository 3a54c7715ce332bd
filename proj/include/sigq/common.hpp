#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigq {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy: every failure carries a stable machine-readable code
// (used by the CLI for exit-code mapping) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {x * a, y * a}; }
    Vec2 operator/(double a) const { return {x / a, y / a}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double a, Vec2 v) { return {a * v.x, a * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

inline Vec2 rotate(Vec2 v, double cos_a, double sin_a) {
    return {cos_a * v.x - sin_a * v.y, sin_a * v.x + cos_a * v.y};
}

// Reduce s into [origin, origin + period).
inline double wrap_into(double s, double origin, double period) {
    double u = std::fmod(s - origin, period);
    if (u < 0.0) u += period;
    // fmod can land exactly on period after the negative fixup
    if (u >= period) u -= period;
    return u + origin;
}

inline double sq(double x) { return x * x; }

inline int64_t gcd64(int64_t a, int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace sigq
