#pragma once

// Spectrum of the Laplacian on the round unit sphere S^{n-1}.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

/// kappa_m = m (m + n - 2)
inline double kappa(int n, int m) {
    if (n < 2) throw BadDimension(n);
    if (m < 0) throw InvalidArgument("transversal index must be >= 0");
    return static_cast<double>(m) * static_cast<double>(m + n - 2);
}

/// Dimension of degree-m spherical harmonics on S^{n-1}:
/// (2m+n-2)/(n-2) * C(m+n-3, m) for n >= 3; 1 or 2 on the circle.
inline std::int64_t multiplicity(int n, int m) {
    if (n < 2) throw BadDimension(n);
    if (m < 0) throw InvalidArgument("transversal index must be >= 0");
    if (n == 2) return m == 0 ? 1 : 2;
    if (m == 0) return 1;
    // C(m+n-3, m) built incrementally; each partial product is an integer
    std::int64_t binom = 1;
    for (int i = 1; i <= m; ++i) binom = binom * (n - 3 + i) / i;
    return binom * (2 * m + n - 2) / (n - 2);
}

struct TransversalEntry {
    int m = 0;
    double kappa = 0.0;
    std::int64_t multiplicity = 1;
};

struct TransversalSpectrum {
    int n = 2;
    std::vector<TransversalEntry> entries;
};

inline TransversalSpectrum transversal_spectrum(int n, int m_max) {
    if (m_max < 0) throw InvalidArgument("m_max must be >= 0");
    TransversalSpectrum out{n, {}};
    out.entries.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) out.entries.push_back({m, kappa(n, m), multiplicity(n, m)});
    return out;
}

/// Weyl constant c(S^{n-1}) = (2 pi)^2 / (omega vol(S^{n-1}))^{2/(n-1)}, with
/// omega the volume of the unit ball in R^{n-1}.
inline double weyl_coefficient(int n) {
    if (n < 2) throw BadDimension(n);
    const double d = n - 1;
    const double pi = std::numbers::pi;
    const double ball = std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    const double sphere = 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
    return 4.0 * pi * pi / std::pow(ball * sphere, 2.0 / d);
}

} // namespace steklov
