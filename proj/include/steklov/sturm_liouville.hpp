#pragma once

// Fundamental systems of -u'' + q u = -z u on [0,1].
//
//   c0(0)=1, c0'(0)=0      s0(0)=0, s0'(0)=1
//   Delta(z) = s0(1),  D(z) = c0(1),  E(z) = c1(0) = s0'(1)
//
// The last identity follows from writing c1 in the basis {c0, s0} and using
// W(c0, s0) = 1, so one forward sweep yields all three functions.
//
// Solutions grow like e^{Re sqrt(z) x}. The integrated state is
// y = e^{-shift x - log_scale} (u, u'/sigma) with shift = max(Re sqrt z, 0)
// and sigma = max(1, |sqrt z|); the factor e^{shift x} is carried
// analytically and log_scale absorbs renormalizations. Both members of the
// pair share one scale, so Wronskians stay consistent.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/ode.hpp"
#include "steklov/scaled_value.hpp"
#include "steklov/warping.hpp"

namespace steklov {

inline constexpr double kMaxSpectralParameter = 1e9;
inline constexpr double kRootThreshold = 1e-8;

template <class T = double>
struct FundamentalValues {
    ScaledValue<T> delta;  // s0(1)
    ScaledValue<T> dd;     // c0(1)
    ScaledValue<T> ee;     // s0'(1) = c1(0)
    T z{};
    /// |c0 s0' - c0' s0 - 1| at x = 1, relative to max(1, |c0 s0'| + |c0' s0|).
    double wronskian_defect = 0.0;
};

template <class T = double>
struct WeylValues {
    T m{};
    T n{};
};

namespace detail {

template <class T>
std::complex<double> complex_sqrt(T z) {
    return std::sqrt(std::complex<double>(z));
}

} // namespace detail

/// Natural log of the relative vanishing threshold for |Delta(z)|:
/// 1e-8 * e^{Re sqrt z} / (2 (1 + |sqrt z|)).
template <class T>
double characteristic_log_threshold(T z) {
    const auto k = detail::complex_sqrt(z);
    return std::log(kRootThreshold) + std::max(k.real(), 0.0) - std::log(2.0 * (1.0 + std::abs(k)));
}

template <class T = double>
FundamentalValues<T> fundamental_at(const Potential& potential, T z,
                                    ode::Tolerance tol = {1e-12, 1e-14}) {
    if (!(std::abs(z) <= kMaxSpectralParameter)) {
        throw InvalidArgument("|z| exceeds the supported range 1e9");
    }
    const std::complex<double> root = detail::complex_sqrt(z);
    const double shift = std::max(root.real(), 0.0);
    const double sigma = std::max(1.0, std::abs(root));

    using State = std::array<T, 4>;
    auto rhs = [&](double x, const State& y) {
        const T coupling = (T(potential.q(x)) + z) / sigma;
        return State{sigma * y[1] - shift * y[0], coupling * y[0] - shift * y[1],
                     sigma * y[3] - shift * y[2], coupling * y[2] - shift * y[3]};
    };

    double log_scale = 0.0;
    auto renormalize = [&](double, State& y) {
        double peak = 0.0;
        for (const auto& v : y) peak = std::max(peak, std::abs(v));
        if (peak > 10.0 || (peak < 0.1 && peak > 0.0)) {
            for (auto& v : y) v /= peak;
            log_scale += std::log(peak);
        }
    };

    State y{T(1.0), T(0.0), T(0.0), T(1.0 / sigma)};
    const double h0 = std::min(0.01, 0.5 / sigma);
    y = ode::integrate<T, 4>(rhs, y, 0.0, 1.0, tol, h0, renormalize);

    const double total = log_scale + shift;
    FundamentalValues<T> out;
    out.z = z;
    out.dd = ScaledValue<T>::make(y[0], total);
    out.delta = ScaledValue<T>::make(y[2], total);
    out.ee = ScaledValue<T>::make(sigma * y[3], total);

    const T w = sigma * (y[0] * y[3] - y[1] * y[2]);
    const double terms = sigma * (std::abs(y[0] * y[3]) + std::abs(y[1] * y[2]));
    const double unit = std::exp(-2.0 * total);
    out.wronskian_defect = std::abs(w - T(unit)) / std::max(unit, terms);
    for (const auto* v : {&out.dd, &out.delta, &out.ee}) {
        if (!std::isfinite(std::abs(v->mantissa)) || !std::isfinite(v->log_scale)) {
            throw IntegrationFailure("non-finite fundamental solution value");
        }
    }
    return out;
}

/// M = -D/Delta and N = -E/Delta with the scales cancelled exactly.
template <class T = double>
WeylValues<T> weyl_functions(const FundamentalValues<T>& fv) {
    if (fv.delta.is_zero() || fv.delta.log_abs() < characteristic_log_threshold(fv.z)) {
        throw AtCharacteristicRoot("Delta(z) vanishes to within the relative threshold");
    }
    return {-ratio(fv.dd, fv.delta), -ratio(fv.ee, fv.delta)};
}

template <class T = double>
WeylValues<T> weyl_functions(const Potential& potential, T z) {
    return weyl_functions(fundamental_at(potential, z));
}

/// Modified Prufer angle theta(1) for -u'' + q u = E u, u(0)=0. The number of
/// Dirichlet eigenvalues below E equals floor(theta(1)/pi).
inline double prufer_angle(const Potential& potential, double energy) {
    const double scale = std::sqrt(std::max(energy - potential.q_min, 1.0));
    auto rhs = [&](double x, const std::array<double, 1>& th) {
        const double c = std::cos(th[0]);
        const double s = std::sin(th[0]);
        return std::array<double, 1>{scale * c * c + (energy - potential.q(x)) / scale * s * s};
    };
    const auto out = ode::integrate<double, 1>(rhs, {0.0}, 0.0, 1.0, {1e-12, 1e-12},
                                               std::min(0.05, 0.5 / scale));
    return out[0];
}

inline int dirichlet_count_below(const Potential& potential, double energy) {
    return static_cast<int>(std::floor(prufer_angle(potential, energy) / std::numbers::pi));
}

/// Roots alpha_0 > alpha_1 > ... of Delta, i.e. minus the Dirichlet eigenvalues
/// of -d^2/dx^2 + q.
inline std::vector<double> dirichlet_alphas(const Potential& potential, int count) {
    if (count < 1) throw InvalidArgument("count must be >= 1");
    constexpr double pi = std::numbers::pi;
    std::vector<double> alphas;
    alphas.reserve(static_cast<std::size_t>(count));
    double previous = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < count; ++j) {
        const double target = (j + 1) * pi;
        auto g = [&](double e) { return prufer_angle(potential, e) - target; };
        const double base = (j + 1.0) * (j + 1.0) * pi * pi;
        double lo = std::max(base + potential.q_min - 1.0, previous);
        double hi = base + potential.q_max + 1.0;
        double glo = g(lo);
        double ghi = g(hi);
        for (int expand = 0; glo > 0.0 && expand < 60; ++expand) {
            lo -= (hi - lo);
            glo = g(lo);
        }
        for (int expand = 0; ghi < 0.0 && expand < 60; ++expand) {
            hi += (hi - lo);
            ghi = g(hi);
        }
        if (!(glo <= 0.0 && ghi >= 0.0)) {
            throw RootSearchFailure("could not bracket Dirichlet eigenvalue " + std::to_string(j) +
                                    ": g(" + std::to_string(lo) + ")=" + std::to_string(glo) +
                                    ", g(" + std::to_string(hi) + ")=" + std::to_string(ghi));
        }
        for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (g(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double energy = 0.5 * (lo + hi);
        if (energy <= previous) {
            throw RootSearchFailure("Dirichlet eigenvalues not strictly increasing at index " +
                                    std::to_string(j));
        }
        previous = energy;
        alphas.push_back(-energy);
    }
    return alphas;
}

/// C * prod_{k < terms} (1 - z / alpha_k).
inline double hadamard_truncated(std::span<const double> alphas, double normalization, double z,
                                 std::size_t terms) {
    if (terms > alphas.size()) throw InvalidArgument("more product terms than roots");
    double product = normalization;
    for (std::size_t k = 0; k < terms; ++k) product *= 1.0 - z / alphas[k];
    return product;
}

} // namespace steklov
