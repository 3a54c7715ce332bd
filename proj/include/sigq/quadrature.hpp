#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "sigq/common.hpp"

namespace sigq {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
struct GaussLegendre5 {
    static constexpr std::array<double, 5> nodes = {
        -0.90617984593866399280, -0.53846931010568309104, 0.0,
        0.53846931010568309104, 0.90617984593866399280};
    static constexpr std::array<double, 5> weights = {
        0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
        0.47862867049936646804, 0.23692688505618908751};
};

template <class F>
double gauss5(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i)
        acc += GaussLegendre5::weights[i] * f(mid + half * GaussLegendre5::nodes[i]);
    return acc * half;
}

// Adaptive Gauss-Legendre: a panel is accepted when halving changes the
// estimate by less than its share of the absolute tolerance.
template <class F>
double adaptive_gauss(const F& f, double a, double b, double abs_tol, int depth = 0) {
    const double whole = gauss5(f, a, b);
    const double mid = 0.5 * (a + b);
    const double left = gauss5(f, a, mid);
    const double right = gauss5(f, mid, b);
    const double split = left + right;
    if (depth >= 48 || std::abs(split - whole) <= abs_tol) return split;
    return adaptive_gauss(f, a, mid, 0.5 * abs_tol, depth + 1) +
           adaptive_gauss(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace sigq
