#pragma once

// Warping profiles f on [0,1] for the metric f(x)(dx^2 + g_S) on
// [0,1] x S^{n-1}, and the reduced Sturm-Liouville potential
//
//     q = (f^{(n-2)/4})'' / f^{(n-2)/4} - lambda f.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "steklov/chebyshev.hpp"
#include "steklov/errors.hpp"

namespace steklov {

inline constexpr std::size_t kDefaultNodeCount = 64;
inline constexpr std::size_t kPositivitySamples = 4 * kDefaultNodeCount;

class WarpingProfile {
public:
    const std::vector<double>& coefficients() const { return coeffs_; }
    int dimension() const { return n_; }
    double frequency() const { return lambda_; }

    double operator()(double x) const { return cheb::evaluate(coeffs_, x); }

    friend WarpingProfile make_profile(std::vector<double> coefficients, int n, double lambda);

private:
    WarpingProfile(std::vector<double> c, int n, double lambda)
        : coeffs_(std::move(c)), n_(n), lambda_(lambda) {}

    std::vector<double> coeffs_;
    int n_ = 2;
    double lambda_ = 0.0;
};

/// Validates and builds a profile. Positivity is checked on a dense set of
/// Chebyshev points plus the endpoints.
inline WarpingProfile make_profile(std::vector<double> coefficients, int n, double lambda) {
    if (n < 2) throw BadDimension(n);
    if (coefficients.empty()) throw InvalidArgument("empty coefficient vector");
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw InvalidArgument("non-finite Chebyshev coefficient");
    }
    if (!std::isfinite(lambda)) throw InvalidArgument("non-finite frequency");
    const std::size_t samples = std::max(kPositivitySamples, 4 * coefficients.size());
    for (double x : cheb::sample_points(samples)) {
        const double v = cheb::evaluate(coefficients, x);
        if (!(v > 0.0)) throw NonPositiveProfile(x, v);
    }
    return WarpingProfile(std::move(coefficients), n, lambda);
}

/// d^order f / dx^order at x, from the exact derivative of the interpolant.
inline double eval_profile(const WarpingProfile& profile, double x, int order = 0) {
    if (!(x >= 0.0 && x <= 1.0)) throw OutOfDomain(x);
    if (order < 0 || order > 4) throw InvalidArgument("derivative order must be in 0..4");
    if (order == 0) return profile(x);
    const auto d = cheb::derivative(profile.coefficients(), order);
    return cheb::evaluate(d, x);
}

/// The profile of x -> f(1-x).
inline WarpingProfile involute(const WarpingProfile& profile) {
    auto c = profile.coefficients();
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
    return make_profile(std::move(c), profile.dimension(), profile.frequency());
}

/// |f'(k)/f(k)| <= 1/(n-2) at both endpoints; vacuous for n = 2.
inline bool cb_membership(const WarpingProfile& profile) {
    const int n = profile.dimension();
    if (n <= 2) return true;
    const double bound = 1.0 / (n - 2);
    for (double x : {0.0, 1.0}) {
        const double ratio = eval_profile(profile, x, 1) / eval_profile(profile, x, 0);
        if (std::abs(ratio) > bound) return false;
    }
    return true;
}

/// Reduced potential sampled on the Chebyshev-Lobatto grid, with the endpoint
/// data of h = f^{n-2} needed by the DN blocks.
struct Potential {
    std::vector<double> q_values;
    std::vector<double> q_coeffs;
    double f0 = 1.0;
    double f1 = 1.0;
    double lnh_prime0 = 0.0;
    double lnh_prime1 = 0.0;
    std::size_t node_count = 0;
    int dimension = 2;
    double lambda = 0.0;
    double q_min = 0.0;
    double q_max = 0.0;
    cheb::Barycentric interpolant;

    double q(double x) const { return interpolant(x); }
    double sup_norm() const { return std::max(std::abs(q_min), std::abs(q_max)); }
};

namespace detail {

inline Potential finish_potential(Potential p) {
    p.node_count = p.q_values.size();
    p.q_coeffs = cheb::coefficients_from_values(p.q_values);
    const auto [lo, hi] = std::minmax_element(p.q_values.begin(), p.q_values.end());
    p.q_min = *lo;
    p.q_max = *hi;
    p.interpolant = cheb::Barycentric(p.q_values);
    return p;
}

} // namespace detail

inline Potential build_potential(const WarpingProfile& profile,
                                 std::size_t node_count = kDefaultNodeCount) {
    if (node_count < 16) throw InvalidArgument("node_count must be >= 16");
    const int n = profile.dimension();
    const double a = (n - 2) / 4.0;
    const auto& c = profile.coefficients();
    const auto d1 = cheb::derivative(c, 1);
    const auto d2 = cheb::derivative(c, 2);

    Potential p;
    p.dimension = n;
    p.lambda = profile.frequency();
    p.q_values.resize(node_count);
    const auto nodes = cheb::lobatto_nodes(node_count);
    for (std::size_t k = 0; k < node_count; ++k) {
        const double f = cheb::evaluate(c, nodes[k]);
        if (!(f > 0.0)) throw NonPositiveProfile(nodes[k], f);
        // (f^a)''/f^a = a f''/f + a(a-1) (f'/f)^2
        const double r1 = cheb::evaluate(d1, nodes[k]) / f;
        const double r2 = cheb::evaluate(d2, nodes[k]) / f;
        const double qf = a == 0.0 ? 0.0 : a * r2 + a * (a - 1.0) * r1 * r1;
        p.q_values[k] = qf - p.lambda * f;
        if (!std::isfinite(p.q_values[k])) throw InvalidArgument("non-finite potential value");
    }
    p.f0 = cheb::evaluate(c, 0.0);
    p.f1 = cheb::evaluate(c, 1.0);
    if (n == 2) {
        p.lnh_prime0 = 0.0;
        p.lnh_prime1 = 0.0;
    } else {
        p.lnh_prime0 = (n - 2) * cheb::evaluate(d1, 0.0) / p.f0;
        p.lnh_prime1 = (n - 2) * cheb::evaluate(d1, 1.0) / p.f1;
    }
    return detail::finish_potential(std::move(p));
}

/// Potential of the reflected problem x -> 1-x.
inline Potential reflect(const Potential& p) {
    Potential r;
    r.q_values.assign(p.q_values.rbegin(), p.q_values.rend());
    r.f0 = p.f1;
    r.f1 = p.f0;
    r.lnh_prime0 = -p.lnh_prime1;
    r.lnh_prime1 = -p.lnh_prime0;
    r.dimension = p.dimension;
    r.lambda = p.lambda;
    return detail::finish_potential(std::move(r));
}

} // namespace steklov
