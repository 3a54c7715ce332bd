#pragma once

#include <cmath>
#include <limits>

#include "sigq/common.hpp"

namespace sigq {

template <class Real>
struct ValueDeriv {
    Real value = 0;
    Real deriv = 0;
};

namespace detail {

// Exponent magnitude beyond which the logistic form of the cutoff is
// indistinguishable from its limit; keeps exp() inside the representable
// range and avoids 0 * inf at the interval ends.
template <class Real>
constexpr Real cutoff_exponent_limit() {
    return std::numeric_limits<Real>::max_exponent10 >= 4000 ? Real(11000) : Real(700);
}

}  // namespace detail

// Decreasing smooth cutoff: 1 on (-inf, r1], 0 on [r2, inf),
// e^{1/(s-r1)} / (e^{1/(s-r1)} + e^{1/(r2-s)}) in between.
// Evaluated as 1/(1 + e^u) with u = 1/(r2-s) - 1/(s-r1), which stays finite
// until one distance underflows; that case is clamped to the exact limit.
template <class Real>
ValueDeriv<Real> cutoff_h(Real s, Real r1, Real r2) {
    if (s <= r1) return {Real(1), Real(0)};
    if (s >= r2) return {Real(0), Real(0)};
    const Real d1 = s - r1;
    const Real d2 = r2 - s;
    const Real u = Real(1) / d2 - Real(1) / d1;
    const Real limit = detail::cutoff_exponent_limit<Real>();
    if (u >= limit) return {Real(0), Real(0)};
    if (u <= -limit) return {Real(1), Real(0)};
    const Real eu = std::exp(u);
    const Real h = Real(1) / (Real(1) + eu);
    const Real du = Real(1) / (d2 * d2) + Real(1) / (d1 * d1);
    // h' = -u' * h * (1 - h); 1-h written as eu*h to avoid cancellation
    return {h, -du * h * (eu * h)};
}

// Increasing counterpart (the reflection of h across the midpoint).
template <class Real>
ValueDeriv<Real> cutoff_g(Real s, Real r1, Real r2) {
    ValueDeriv<Real> h = cutoff_h(s, r1, r2);
    return {Real(1) - h.value, -h.deriv};
}

// Smooth bump: 0 outside (r1, r2), 1 at the midpoint, C-infinity everywhere.
// Rising half uses g on [r1, mid], falling half uses h on [mid, r2].
template <class Real>
ValueDeriv<Real> bump_f(Real s, Real r1, Real r2) {
    if (!(r1 < r2)) fail("invalid-interval", "bump requires r1 < r2");
    if (s <= r1 || s >= r2) return {Real(0), Real(0)};
    const Real mid = (r1 + r2) / Real(2);
    if (s <= mid) return cutoff_g(s, r1, mid);
    return cutoff_h(s, mid, r2);
}

}  // namespace sigq
