#pragma once

// Closed-form checks run by `steklov selfcheck`.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "steklov/asymptotics.hpp"
#include "steklov/dn_map.hpp"
#include "steklov/sturm_liouville.hpp"
#include "steklov/transversal.hpp"
#include "steklov/warping.hpp"

namespace steklov {

struct CheckResult {
    std::string name;
    bool pass = false;
    double error = 0.0;
    double tolerance = 0.0;
};

namespace detail {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Flat cylinder: each block pair is sqrt(k) tanh(sqrt(k)/2), sqrt(k) coth(sqrt(k)/2).
inline double cylinder_error(int n, int m_max) {
    const auto s = steklov_spectrum(make_profile({1.0}, n, 0.0), m_max);
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double r = std::sqrt(kappa(n, m));
        double lo = 0.0, hi = 2.0;  // m = 0 limits
        if (m > 0) {
            lo = r * std::tanh(r / 2.0);
            hi = r / std::tanh(r / 2.0);
        }
        std::vector<double> got;
        for (const auto& e : s.entries) {
            if (e.m == m) got.push_back(e.value);
        }
        std::sort(got.begin(), got.end());
        worst = std::max(worst, lo == 0.0 ? std::abs(got[0]) : rel_err(got[0], lo));
        worst = std::max(worst, rel_err(got[1], hi));
    }
    return worst;
}

inline double free_identity_error() {
    const auto p = build_potential(make_profile({1.0}, 2, 0.0));
    double worst = 0.0;
    for (double z : {-50.0, 0.0, 1.0, 1e2, 1e4, 1e6}) {
        const auto fv = fundamental_at(p, z);
        double sinhc = 1.0, cosh_v = 1.0, log_shift = 0.0;
        if (z > 0.0) {
            const double r = std::sqrt(z);
            // sinh r / r and cosh r with e^r factored out
            log_shift = r;
            sinhc = (1.0 - std::exp(-2.0 * r)) / (2.0 * r);
            cosh_v = (1.0 + std::exp(-2.0 * r)) / 2.0;
        } else if (z < 0.0) {
            const double r = std::sqrt(-z);
            sinhc = std::sin(r) / r;
            cosh_v = std::cos(r);
        }
        auto value = [&](const ScaledValue<double>& v) {
            return v.mantissa * std::exp(v.log_scale - log_shift);
        };
        worst = std::max(worst, rel_err(value(fv.delta), sinhc));
        worst = std::max(worst, rel_err(value(fv.dd), cosh_v));
        worst = std::max(worst, rel_err(value(fv.ee), cosh_v));
    }
    return worst;
}

inline double dirichlet_error(double shift) {
    const auto p = build_potential(make_profile({1.0}, 2, -shift));
    const auto alphas = dirichlet_alphas(p, 20);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double pi = std::numbers::pi;
        const double want = -(k + 1.0) * (k + 1.0) * pi * pi - shift;
        worst = std::max(worst, std::abs(alphas[static_cast<std::size_t>(k)] - want));
    }
    return worst;
}

inline double constant_beta_error(double c) {
    const auto p = build_potential(make_profile({1.0}, 2, -c));
    const auto coeffs = riccati_coefficients(p, 2);
    const double want[3] = {c / 2.0, 0.0, -c * c / 8.0};
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        worst = std::max(worst, std::abs(coeffs.beta[static_cast<std::size_t>(j)] - want[j]));
    }
    return worst;
}

inline double multiplicity_error() {
    // circle: 1, 2, 2, ...; S^2: 2m+1; S^3: (m+1)^2
    double worst = 0.0;
    for (int m = 0; m <= 30; ++m) {
        worst = std::max(worst, std::abs(double(multiplicity(2, m)) - (m == 0 ? 1.0 : 2.0)));
        worst = std::max(worst, std::abs(double(multiplicity(3, m)) - (2.0 * m + 1.0)));
        worst = std::max(worst, std::abs(double(multiplicity(4, m)) - double((m + 1) * (m + 1))));
    }
    return worst;
}

inline double ground_state_error() {
    double worst = 0.0;
    for (int n : {2, 3}) {
        const auto s = steklov_spectrum(make_profile({1.21, 0.2, 0.01}, n, 0.0), 10);
        worst = std::max(worst, std::abs(s.min_value()));
    }
    return worst;
}

} // namespace detail

inline std::vector<CheckResult> run_selfcheck() {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, double err, double tol) {
        out.push_back({std::move(name), err <= tol, err, tol});
    };
    add("cylinder n=2, m<=30", detail::cylinder_error(2, 30), 1e-8);
    add("cylinder n=3, m<=30", detail::cylinder_error(3, 30), 1e-8);
    add("q=0 sinh/cosh identities", detail::free_identity_error(), 1e-9);
    add("Dirichlet roots q=0", detail::dirichlet_error(0.0), 1e-7);
    add("Dirichlet roots q=5", detail::dirichlet_error(5.0), 1e-7);
    add("constant-q expansion coefficients", detail::constant_beta_error(3.0), 1e-12);
    add("sphere multiplicities", detail::multiplicity_error(), 0.0);
    add("lambda=0 ground state", detail::ground_state_error(), 1e-8);
    return out;
}

} // namespace steklov
