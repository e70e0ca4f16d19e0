#pragma once

// Large-z expansion of the Weyl-Titchmarsh functions
//
//     -M(z^2) = z + sum_{j=0}^{A} beta_j(0) / z^{j+1} + o(z^{-(A+1)})
//
// The coefficients come from the Riccati equation w' = w^2 - q - z^2 obeyed
// by w = -psi'/psi along the Weyl solution psi. Matching powers of 1/z gives
//
//     beta_0 = q/2,  beta_1 = beta_0'/2,
//     beta_{j+1} = beta_j'/2 - (1/2) sum_{l=0}^{j-1} beta_l beta_{j-1-l}.
//
// gamma_j (for -N) is the same recursion on the reflected potential q(1-x).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "steklov/chebyshev.hpp"
#include "steklov/errors.hpp"
#include "steklov/sturm_liouville.hpp"
#include "steklov/warping.hpp"

namespace steklov {

inline constexpr int kDefaultExpansionOrder = 3;
inline constexpr int kMaxExpansionOrder = 6;

struct ExpansionCoefficients {
    std::vector<double> beta;   // beta_j(0), j = 0..order
    std::vector<double> gamma;  // gamma_j(0), j = 0..order
    int order = 0;
};

namespace detail {

/// Chebyshev coefficients of beta_j(x), j = 0..order, for the potential
/// sampled as `q_values` on a Lobatto grid. Work stays in coefficient space
/// with roundoff tails trimmed, so a constant q differentiates to exactly zero.
inline std::vector<std::vector<double>> riccati_fields(std::span<const double> q_values, int order) {
    const std::size_t n = q_values.size();
    std::vector<std::vector<double>> beta;
    beta.reserve(static_cast<std::size_t>(order) + 1);
    auto b0 = cheb::chop(cheb::coefficients_from_values(q_values));
    for (auto& c : b0) c *= 0.5;
    beta.push_back(std::move(b0));

    std::vector<std::vector<double>> values;
    values.push_back(cheb::values_at_nodes(beta.front(), n));
    for (int j = 0; j < order; ++j) {
        auto next = cheb::derivative(beta[static_cast<std::size_t>(j)]);
        for (auto& c : next) c *= 0.5;
        if (j >= 1) {
            std::vector<double> conv(n, 0.0);
            for (int l = 0; l <= j - 1; ++l) {
                const auto& a = values[static_cast<std::size_t>(l)];
                const auto& b = values[static_cast<std::size_t>(j - 1 - l)];
                for (std::size_t k = 0; k < n; ++k) conv[k] += a[k] * b[k];
            }
            const auto cc = cheb::chop(cheb::coefficients_from_values(conv));
            if (next.size() < cc.size()) next.resize(cc.size(), 0.0);
            for (std::size_t k = 0; k < cc.size(); ++k) next[k] -= 0.5 * cc[k];
        }
        next = cheb::chop(std::move(next));
        values.push_back(cheb::values_at_nodes(next, n));
        beta.push_back(std::move(next));
    }
    return beta;
}

inline std::vector<double> endpoint_coefficients(std::span<const double> q_values, int order) {
    const auto fields = riccati_fields(q_values, order);
    std::vector<double> out;
    out.reserve(fields.size());
    for (const auto& f : fields) out.push_back(cheb::evaluate(f, 0.0));
    return out;
}

/// Same coefficients computed on a coarser resampling of q; used to detect
/// orders where repeated differentiation is dominated by noise.
inline void check_refinement(const Potential& potential, std::span<const double> fine, int order) {
    const std::size_t coarse_count = std::max<std::size_t>(16, (3 * potential.node_count) / 4);
    if (coarse_count >= potential.node_count) return;
    std::vector<double> q_coarse(coarse_count);
    const auto nodes = cheb::lobatto_nodes(coarse_count);
    for (std::size_t k = 0; k < coarse_count; ++k) q_coarse[k] = potential.q(nodes[k]);
    const auto coarse = endpoint_coefficients(q_coarse, order);
    const double scale = 1.0 + potential.sup_norm();
    for (int j = 0; j <= order; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const double diff = std::abs(fine[ju] - coarse[ju]);
        const double allowed = 0.01 * std::abs(fine[ju]) + 1e-9 * std::pow(scale, j + 1);
        if (diff > allowed) throw OrderTooHigh(j, diff);
    }
}

} // namespace detail

inline ExpansionCoefficients riccati_coefficients(const Potential& potential,
                                                  int order = kDefaultExpansionOrder) {
    if (order < 0 || order > kMaxExpansionOrder) {
        throw InvalidArgument("expansion order must be in 0..6");
    }
    ExpansionCoefficients out;
    out.order = order;
    out.beta = detail::endpoint_coefficients(potential.q_values, order);
    const Potential mirrored = reflect(potential);
    out.gamma = detail::endpoint_coefficients(mirrored.q_values, order);
    detail::check_refinement(potential, out.beta, order);
    detail::check_refinement(mirrored, out.gamma, order);
    return out;
}

struct WeylPrediction {
    double minus_m = 0.0;  // predicted -M(z^2)
    double minus_n = 0.0;  // predicted -N(z^2)
};

inline WeylPrediction wt_expansion(const ExpansionCoefficients& coeffs, double z) {
    if (!(z > 0.0)) throw InvalidArgument("expansion variable must be positive");
    WeylPrediction p{z, z};
    double power = z;
    for (int j = 0; j <= coeffs.order; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        p.minus_m += coeffs.beta[ju] / power;
        p.minus_n += coeffs.gamma[ju] / power;
        power *= z;
    }
    return p;
}

struct VpPrediction {
    // leading order: sqrt(mu)/sqrt(f) plus the endpoint constants
    double leading_minus = 0.0;
    double leading_plus = 0.0;
    // diagonal entries with -M, -N taken from the truncated expansion
    double series_minus = 0.0;
    double series_plus = 0.0;
    // diagonal entries with the computed -M(mu), -N(mu); exponentially close
    // to the block eigenvalues
    double refined_minus = 0.0;
    double refined_plus = 0.0;
};

inline VpPrediction vp_prediction(const WarpingProfile& profile, const Potential& potential,
                                  const ExpansionCoefficients& coeffs, double mu) {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    if (profile.dimension() != potential.dimension) {
        throw InvalidArgument("profile and potential dimensions differ");
    }
    const double s0 = std::sqrt(potential.f0);
    const double s1 = std::sqrt(potential.f1);
    const double c0 = potential.lnh_prime0 / (4.0 * s0);
    const double c1 = potential.lnh_prime1 / (4.0 * s1);
    const double root = std::sqrt(mu);

    VpPrediction p;
    p.leading_plus = root / s0 + c0;
    p.leading_minus = root / s1 - c1;
    const auto series = wt_expansion(coeffs, root);
    p.series_plus = series.minus_m / s0 + c0;
    p.series_minus = series.minus_n / s1 - c1;
    const auto weyl = weyl_functions(potential, mu);
    p.refined_plus = -weyl.m / s0 + c0;
    p.refined_minus = -weyl.n / s1 - c1;
    return p;
}

struct DecaySample {
    double z = 0.0;
    double residual = 0.0;
};

struct DecayFit {
    double exponent = 0.0;
    double intercept = 0.0;
    /// Some residuals sat at the roundoff floor and were left out of the fit.
    bool degenerate = false;
    std::size_t used = 0;
};

inline constexpr double kResidualFloor = 1e-13;

/// Least-squares slope of log|residual| against log z.
inline DecayFit decay_order_fit(std::span<const DecaySample> samples) {
    if (samples.size() < 5) throw InvalidArgument("decay fit needs at least 5 samples");
    double zmin = samples.front().z;
    double zmax = zmin;
    for (const auto& s : samples) {
        if (!(s.z > 0.0)) throw InvalidArgument("decay fit abscissae must be positive");
        zmin = std::min(zmin, s.z);
        zmax = std::max(zmax, s.z);
    }
    if (zmax < 10.0 * zmin * (1.0 - 1e-12)) {
        throw InvalidArgument("decay fit samples must span a decade");
    }
    DecayFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        const double r = std::abs(s.residual);
        if (r < kResidualFloor) {
            fit.degenerate = true;
            continue;
        }
        const double lx = std::log(s.z);
        const double ly = std::log(r);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++fit.used;
    }
    if (fit.used < 2) {
        fit.degenerate = true;
        fit.exponent = std::numeric_limits<double>::quiet_NaN();
        fit.intercept = std::numeric_limits<double>::quiet_NaN();
        return fit;
    }
    const double cnt = static_cast<double>(fit.used);
    const double denom = cnt * sxx - sx * sx;
    fit.exponent = (cnt * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.exponent * sx) / cnt;
    return fit;
}

} // namespace steklov
