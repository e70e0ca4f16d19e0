#pragma once

#include <cmath>
#include <cstddef>

#include "steklov/errors.hpp"
#include "steklov/sturm_liouville.hpp"
#include "steklov/transversal.hpp"
#include "steklov/warping.hpp"

namespace steklov {

/// Checks that the frequency avoids the Dirichlet spectrum, i.e. Delta(kappa_m)
/// stays above the relative threshold for every transversal index m <= m_max.
/// Beyond kappa_m > 4 max|q| + 16 the sinh asymptotic keeps Delta away from
/// zero, so only the indices below that cutoff are integrated.
inline void admissibility_check(const WarpingProfile& profile, const Potential& potential,
                                int m_max) {
    if (m_max < 0) throw InvalidArgument("m_max must be >= 0");
    const int n = profile.dimension();
    const double cutoff = 4.0 * potential.sup_norm() + 16.0;
    for (int m = 0; m <= m_max; ++m) {
        const double k = kappa(n, m);
        if (k > cutoff) break;
        const auto fv = fundamental_at(potential, k);
        const double log_threshold = characteristic_log_threshold(k);
        if (fv.delta.is_zero() || fv.delta.log_abs() < log_threshold) {
            throw FrequencyOnDirichletSpectrum(m, std::abs(fv.delta.value()),
                                               std::exp(log_threshold));
        }
    }
}

} // namespace steklov
