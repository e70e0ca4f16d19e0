#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//
// The observer is called after every accepted step with (x, state&) and may
// rescale the state in place; this is how callers keep exponentially growing
// solutions inside a representable range.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "steklov/errors.hpp"

namespace steklov::ode {

struct Tolerance {
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

} // namespace detail

struct NoObserver {
    template <class State>
    void operator()(double, State&) const {}
};

/// Integrates y' = rhs(x, y) from x0 to x1 (either direction). `h0` is the
/// initial step magnitude; zero selects a default.
template <class T, std::size_t N, class Rhs, class Observer = NoObserver>
std::array<T, N> integrate(Rhs&& rhs, std::array<T, N> y, double x0, double x1,
                           Tolerance tol = {}, double h0 = 0.0,
                           Observer&& observer = {}, Stats* stats = nullptr) {
    using State = std::array<T, N>;
    // Dormand-Prince tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = x1 - x0;
    if (span == 0.0) return y;
    const double dir = span > 0 ? 1.0 : -1.0;
    const double length = std::abs(span);
    double h = h0 > 0.0 ? std::min(h0, length) : std::min(0.01, length);
    const double h_min = 64.0 * std::numeric_limits<double>::epsilon() * length;
    constexpr long max_steps = 5'000'000;

    auto axpy = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = base;
        for (const auto& [coef, k] : terms) {
            if (coef == 0.0) continue;
            for (std::size_t i = 0; i < N; ++i) out[i] += (h * coef) * (*k)[i];
        }
        return out;
    };

    double x = x0;
    State k1 = rhs(x, y);
    long steps = 0;
    while (dir * (x1 - x) > 0.0) {
        if (++steps > max_steps) throw IntegrationFailure("step budget exhausted");
        bool last = false;
        if (h >= dir * (x1 - x)) {
            h = dir * (x1 - x);
            last = true;
        }
        const double hs = dir * h;
        const State k2 = rhs(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
        const State k3 = rhs(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(x + c5 * hs,
                             axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs(x + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                                  {a64, &k4}, {a65, &k5}}));
        const State y_new = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(x + hs, y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const T e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
            const double sc = tol.atol + tol.rtol * std::max(detail::magnitude(y[i]),
                                                             detail::magnitude(y_new[i]));
            const double ratio = detail::magnitude(e) / sc;
            // std::max would silently drop a NaN
            err = std::isfinite(ratio) ? std::max(err, ratio) : ratio;
            if (!std::isfinite(err)) break;
        }
        if (!std::isfinite(err)) {
            if (stats) ++stats->rejected;
            h *= 0.1;
            if (h < h_min) throw IntegrationFailure("non-finite state during integration");
            continue;
        }
        if (err <= 1.0) {
            x = last ? x1 : x + hs;
            y = y_new;
            k1 = k7;
            if (stats) ++stats->accepted;
            const State before = y;
            observer(x, y);
            if (y != before) k1 = rhs(x, y);
            const double fac = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
            h *= std::max(fac, 0.2);
        } else {
            if (stats) ++stats->rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < h_min) throw IntegrationFailure("step size underflow");
        }
    }
    return y;
}

} // namespace steklov::ode
