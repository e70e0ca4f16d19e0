#pragma once

// Dirichlet-to-Neumann map of the warped cylinder, block by block.
//
// Separating variables along the spherical harmonics of degree m reduces the
// DN map to 2x2 blocks acting on (boundary value at x=0, boundary value at
// x=1). With h = f^{n-2} and (M, N, Delta) evaluated at mu = kappa_m:
//
//   a11 = -M/sqrt f(0) + (ln h)'(0) / (4 sqrt f(0))
//   a12 = -(h(1)/h(0))^{1/4} / (sqrt f(0) Delta)
//   a21 = -(h(0)/h(1))^{1/4} / (sqrt f(1) Delta)
//   a22 = -N/sqrt f(1) - (ln h)'(1) / (4 sqrt f(1))

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

#include "steklov/admissibility.hpp"
#include "steklov/errors.hpp"
#include "steklov/sturm_liouville.hpp"
#include "steklov/transversal.hpp"
#include "steklov/warping.hpp"

namespace steklov {

inline constexpr int kDefaultMMax = 40;

struct DNBlock {
    double mu = 0.0;
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;
    int m_index = 0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Branch tag: plus follows the x=0 boundary, minus the x=1 boundary.
enum class Branch { minus, plus, unknown };

inline char branch_symbol(Branch b) {
    switch (b) {
    case Branch::minus: return '-';
    case Branch::plus: return '+';
    default: return '?';
    }
}

struct BlockEigenvalues {
    double lambda_minus = 0.0;
    double lambda_plus = 0.0;
};

inline DNBlock dn_block(const FundamentalValues<double>& fv, const Potential& potential,
                        int m_index) {
    const auto weyl = weyl_functions(fv);
    const double inv_delta = reciprocal(fv.delta);
    const double s0 = std::sqrt(potential.f0);
    const double s1 = std::sqrt(potential.f1);
    const double h_ratio = std::pow(potential.f1 / potential.f0, (potential.dimension - 2) / 4.0);
    DNBlock b;
    b.mu = fv.z;
    b.m_index = m_index;
    b.a11 = -weyl.m / s0 + potential.lnh_prime0 / (4.0 * s0);
    b.a12 = -h_ratio * inv_delta / s0;
    b.a21 = -inv_delta / (h_ratio * s1);
    b.a22 = -weyl.n / s1 - potential.lnh_prime1 / (4.0 * s1);
    return b;
}

inline DNBlock dn_block(const WarpingProfile& profile, const Potential& potential, double mu,
                        int m_index) {
    if (profile.dimension() != potential.dimension) {
        throw InvalidArgument("profile and potential dimensions differ");
    }
    return dn_block(fundamental_at(potential, mu), potential, m_index);
}

/// Both roots of X^2 - tr X + det. The larger-magnitude root comes from the
/// discriminant formula, the other from det / root, which stays accurate when
/// the off-diagonal entries are exponentially small. The root tied to a11 (the
/// one on the far side of a22) is tagged plus.
inline BlockEigenvalues block_eigenvalues(const DNBlock& b) {
    const double gap = b.a11 - b.a22;
    const double disc = std::max(gap * gap + 4.0 * b.a12 * b.a21, 0.0);
    const double tr = b.trace();
    const double big = 0.5 * (tr + std::copysign(std::sqrt(disc), tr));
    const double small = big != 0.0 ? b.det() / big : 0.0;
    const double hi = std::max(big, small);
    const double lo = std::min(big, small);
    // diagonals equal up to integration noise count as a tie: plus is the larger
    const double tie = 1e-9 * (std::abs(b.a11) + std::abs(b.a22));
    if (b.a11 >= b.a22 - tie) return {lo, hi};
    return {hi, lo};
}

struct SpectrumEntry {
    double value = 0.0;
    Branch branch = Branch::unknown;
    int m = 0;
    std::int64_t multiplicity = 1;
};

struct SteklovSpectrum {
    std::vector<SpectrumEntry> entries;  // ordered by m, then minus before plus
    int n = 2;
    double lambda = 0.0;
    int m_max = 0;
    /// Smallest m from which both branches increase strictly in m.
    int crossover_index = 0;

    double min_value() const {
        double v = entries.empty() ? 0.0 : entries.front().value;
        for (const auto& e : entries) v = std::min(v, e.value);
        return v;
    }
    std::int64_t total_count() const {
        std::int64_t c = 0;
        for (const auto& e : entries) c += e.multiplicity;
        return c;
    }
};

namespace detail {

inline int branch_crossover(const std::vector<BlockEigenvalues>& pairs) {
    int start = 0;
    for (std::size_t m = 1; m < pairs.size(); ++m) {
        if (!(pairs[m].lambda_minus > pairs[m - 1].lambda_minus &&
              pairs[m].lambda_plus > pairs[m - 1].lambda_plus)) {
            start = static_cast<int>(m);
        }
    }
    return start;
}

/// Runs fn(m) for m in [0, count) on a few worker threads; results keep order.
template <class Fn>
auto parallel_indexed(int count, Fn fn) {
    using R = decltype(fn(0));
    std::vector<R> out(static_cast<std::size_t>(count));
    const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
    if (count < 8 || workers == 1) {
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < count; i += workers) out[static_cast<std::size_t>(i)] = fn(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

} // namespace detail

inline SteklovSpectrum steklov_spectrum(const WarpingProfile& profile, const Potential& potential,
                                        int m_max = kDefaultMMax) {
    admissibility_check(profile, potential, m_max);
    const int n = profile.dimension();
    const auto pairs = detail::parallel_indexed(m_max + 1, [&](int m) {
        return block_eigenvalues(dn_block(profile, potential, kappa(n, m), m));
    });

    SteklovSpectrum s;
    s.n = n;
    s.lambda = profile.frequency();
    s.m_max = m_max;
    s.crossover_index = detail::branch_crossover(pairs);
    s.entries.reserve(2 * pairs.size());
    for (int m = 0; m <= m_max; ++m) {
        const auto mult = multiplicity(n, m);
        const auto& p = pairs[static_cast<std::size_t>(m)];
        s.entries.push_back({p.lambda_minus, Branch::minus, m, mult});
        s.entries.push_back({p.lambda_plus, Branch::plus, m, mult});
    }
    return s;
}

inline SteklovSpectrum steklov_spectrum(const WarpingProfile& profile, int m_max = kDefaultMMax,
                                        std::size_t node_count = kDefaultNodeCount) {
    return steklov_spectrum(profile, build_potential(profile, node_count), m_max);
}

/// Number of eigenvalues <= t, counted with multiplicity.
inline std::int64_t counting_function(const SteklovSpectrum& spectrum, double t) {
    if (t < 0.0) throw InvalidArgument("counting threshold must be >= 0");
    std::int64_t count = 0;
    for (const auto& e : spectrum.entries) {
        if (e.value <= t) count += e.multiplicity;
    }
    return count;
}

/// Eigenvalues expanded by multiplicity and sorted ascending.
inline std::vector<double> sorted_values(const SteklovSpectrum& spectrum) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(spectrum.total_count()));
    for (const auto& e : spectrum.entries) v.insert(v.end(), static_cast<std::size_t>(e.multiplicity), e.value);
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace steklov
