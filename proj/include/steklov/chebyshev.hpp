#pragma once

// Chebyshev expansions on the unit interval [0,1].
//
// A function is stored as coefficients c_k of T_k(2x-1). Grids are the
// Chebyshev-Lobatto points (extrema of T_{N-1}) mapped to [0,1] and sorted in
// increasing x, so node 0 is x=0 and node N-1 is x=1.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace steklov::cheb {

inline std::vector<double> lobatto_nodes(std::size_t count) {
    std::vector<double> nodes(count);
    if (count == 1) {
        nodes[0] = 0.5;
        return nodes;
    }
    const double denom = static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        // sin form keeps the nodes exactly mirror-symmetric about 1/2
        const double s = std::sin(std::numbers::pi * static_cast<double>(k) / (2.0 * denom));
        nodes[k] = s * s;
    }
    nodes[0] = 0.0;
    nodes[count - 1] = 1.0;
    return nodes;
}

/// Chebyshev points of the first kind on [0,1], plus both endpoints.
inline std::vector<double> sample_points(std::size_t count) {
    std::vector<double> pts;
    pts.reserve(count + 2);
    pts.push_back(0.0);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = -std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) /
                                   static_cast<double>(count));
        pts.push_back(0.5 * (t + 1.0));
    }
    pts.push_back(1.0);
    return pts;
}

/// Clenshaw evaluation of sum c_k T_k(2x-1).
inline double evaluate(std::span<const double> coeffs, double x) {
    const double t = 2.0 * x - 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        const double b0 = 2.0 * t * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    const double c0 = coeffs.empty() ? 0.0 : coeffs[0];
    return t * b1 - b2 + c0;
}

/// Coefficients of d/dx of the expansion (x in [0,1], hence the factor 2).
inline std::vector<double> derivative(std::span<const double> coeffs) {
    const std::size_t n = coeffs.size();
    if (n <= 1) return {0.0};
    std::vector<double> d(n + 1, 0.0);
    for (std::size_t k = n - 1; k >= 1; --k) {
        d[k - 1] = d[k + 1] + 2.0 * static_cast<double>(k) * coeffs[k];
    }
    d[0] *= 0.5;
    d.resize(n - 1);
    for (double& v : d) v *= 2.0;
    return d;
}

inline std::vector<double> derivative(std::span<const double> coeffs, int order) {
    std::vector<double> out(coeffs.begin(), coeffs.end());
    if (out.empty()) out.push_back(0.0);
    for (int i = 0; i < order; ++i) out = derivative(out);
    return out;
}

/// Interpolation coefficients from values at lobatto_nodes(values.size()).
inline std::vector<double> coefficients_from_values(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 1) return {values[0]};
    const double denom = static_cast<double>(n - 1);
    std::vector<double> c(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            // t_k = -cos(pi k / (n-1)), so T_j(t_k) = (-1)^j cos(pi j k / (n-1))
            const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
            const std::size_t phase = (j * k) % (2 * (n - 1));
            sum += w * values[k] * std::cos(std::numbers::pi * static_cast<double>(phase) / denom);
        }
        double cj = 2.0 / denom * sum;
        if (j % 2 == 1) cj = -cj;
        if (j == 0 || j == n - 1) cj *= 0.5;
        c[j] = cj;
    }
    return c;
}

/// Interpolant of fn on `count` Lobatto nodes.
template <class Fn>
std::vector<double> fit(Fn&& fn, std::size_t count) {
    const auto nodes = lobatto_nodes(count);
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) values[k] = fn(nodes[k]);
    return coefficients_from_values(values);
}

/// Drops trailing coefficients below rel_tol * max|c|; keeps at least one.
inline std::vector<double> chop(std::vector<double> coeffs, double rel_tol = 1e-14) {
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    while (coeffs.size() > 1 && std::abs(coeffs.back()) <= rel_tol * scale) coeffs.pop_back();
    return coeffs;
}

/// Values at the Lobatto nodes of an expansion.
inline std::vector<double> values_at_nodes(std::span<const double> coeffs, std::size_t count) {
    const auto nodes = lobatto_nodes(count);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = evaluate(coeffs, nodes[k]);
    return out;
}

/// Barycentric form of the Lobatto-node interpolant.
class Barycentric {
public:
    Barycentric() = default;
    explicit Barycentric(std::vector<double> values)
        : nodes_(lobatto_nodes(values.size())), values_(std::move(values)),
          weights_(values_.size()) {
        for (std::size_t k = 0; k < weights_.size(); ++k) {
            double w = (k % 2 == 0) ? 1.0 : -1.0;
            if (k == 0 || k + 1 == weights_.size()) w *= 0.5;
            weights_[k] = w;
        }
    }

    double operator()(double x) const {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const double diff = x - nodes_[k];
            if (diff == 0.0) return values_[k];
            const double t = weights_[k] / diff;
            num += t * values_[k];
            den += t;
        }
        return num / den;
    }

    std::span<const double> values() const { return values_; }

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> weights_;
};

} // namespace steklov::cheb
