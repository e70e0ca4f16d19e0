#pragma once

// Spectral data -> boundary information, and the trace/det and
// isospectrality probes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "steklov/dn_map.hpp"
#include "steklov/errors.hpp"
#include "steklov/transversal.hpp"
#include "steklov/warping.hpp"

namespace steklov {

struct BranchPoint {
    int m = 0;
    double root_kappa = 0.0;  // sqrt(kappa_m)
    double value = 0.0;
    std::int64_t multiplicity = 1;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ssr = 0.0;
};

struct BranchSplit {
    std::vector<BranchPoint> minus;
    std::vector<BranchPoint> plus;
    LineFit fit_minus;
    LineFit fit_plus;
    /// Equal slopes (within 1e-3): membership falls back to per-m ordering.
    bool parallel = false;
};

namespace detail {

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double cnt = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = cnt * sxx - sx * sx;
    LineFit f;
    if (x.size() < 2 || denom == 0.0) {
        f.slope = std::numeric_limits<double>::quiet_NaN();
        f.intercept = std::numeric_limits<double>::quiet_NaN();
        f.ssr = std::numeric_limits<double>::infinity();
        return f;
    }
    f.slope = (cnt * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / cnt;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.slope * x[i] - f.intercept;
        f.ssr += r * r;
    }
    return f;
}

struct MPair {
    int m = 0;
    double root_kappa = 0.0;
    std::int64_t multiplicity = 1;
    SpectrumEntry lo;
    SpectrumEntry hi;
};

inline std::vector<MPair> pair_by_m(const SteklovSpectrum& spectrum) {
    std::map<int, std::vector<SpectrumEntry>> groups;
    for (const auto& e : spectrum.entries) groups[e.m].push_back(e);
    std::vector<MPair> pairs;
    for (auto& [m, list] : groups) {
        if (list.size() != 2) {
            throw InvalidArgument("transversal index " + std::to_string(m) +
                                  " does not carry exactly two eigenvalues");
        }
        std::sort(list.begin(), list.end(),
                  [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });
        pairs.push_back({m, std::sqrt(kappa(spectrum.n, m)), list[0].multiplicity, list[0], list[1]});
    }
    return pairs;
}

/// Fits both lines for a membership where pairs before `cross` send lo to
/// line A, and pairs from `cross` on send hi to line A.
inline std::pair<LineFit, LineFit> fit_membership(const std::vector<MPair>& pairs, std::size_t first,
                                                  std::size_t cross) {
    std::vector<double> xa, ya, xb, yb;
    for (std::size_t i = first; i < pairs.size(); ++i) {
        const bool swapped = i >= cross;
        xa.push_back(pairs[i].root_kappa);
        xb.push_back(pairs[i].root_kappa);
        ya.push_back(swapped ? pairs[i].hi.value : pairs[i].lo.value);
        yb.push_back(swapped ? pairs[i].lo.value : pairs[i].hi.value);
    }
    return {fit_line(xa, ya), fit_line(xb, yb)};
}

} // namespace detail

/// Splits a spectrum into its two eigenvalue families by fitting two lines in
/// (sqrt(kappa_m), value) over the upper three quarters of the available m.
/// Memberships with at most one crossing of the lines are enumerated and the
/// one with the least squared residual wins; a near tie between the
/// no-crossing and the crossing families raises BranchAmbiguity. Lower m are
/// assigned to the nearer extrapolated line. Without branch tags the
/// shallower line is labelled minus; with tags, labels follow the tag
/// majority.
inline BranchSplit split_branches(const SteklovSpectrum& spectrum) {
    const auto pairs = detail::pair_by_m(spectrum);
    if (pairs.size() < 21 || pairs.back().m < 20) {
        throw InvalidArgument("branch splitting needs eigenvalues up to m >= 20");
    }
    const std::size_t first = pairs.size() / 4;
    const std::size_t count = pairs.size() - first;

    BranchSplit out;
    auto [lo_fit, hi_fit] = detail::fit_membership(pairs, first, pairs.size());
    std::size_t best_cross = pairs.size();  // no crossing: lo -> A everywhere
    const double slope_scale = std::max(std::abs(lo_fit.slope), std::abs(hi_fit.slope));
    out.parallel = std::abs(lo_fit.slope - hi_fit.slope) <= 1e-3 * slope_scale;

    if (!out.parallel) {
        double energy = 0.0;
        for (std::size_t i = first; i < pairs.size(); ++i) {
            energy += pairs[i].lo.value * pairs[i].lo.value + pairs[i].hi.value * pairs[i].hi.value;
        }
        const double floor = 1e-20 * energy;
        const double ssr_sorted = lo_fit.ssr + hi_fit.ssr;
        double ssr_cross = std::numeric_limits<double>::infinity();
        std::size_t cross_at = pairs.size();
        for (std::size_t c = first + 1; c < pairs.size(); ++c) {
            const auto [a, b] = detail::fit_membership(pairs, first, c);
            if (a.ssr + b.ssr < ssr_cross) {
                ssr_cross = a.ssr + b.ssr;
                cross_at = c;
            }
        }
        const double top = std::max(ssr_sorted, ssr_cross);
        if (top > floor && std::abs(ssr_sorted - ssr_cross) <= 0.1 * top) {
            throw BranchAmbiguity("two branch assignments fit within 10%: residuals " +
                                  std::to_string(ssr_sorted) + " vs " + std::to_string(ssr_cross) +
                                  " over " + std::to_string(count) + " indices");
        }
        if (ssr_cross < ssr_sorted) {
            best_cross = cross_at;
            std::tie(lo_fit, hi_fit) = detail::fit_membership(pairs, first, best_cross);
        }
    }

    // Line A collects lo before the crossing and hi after it.
    std::vector<BranchPoint> line_a, line_b;
    std::int64_t plus_votes_a = 0, plus_votes_b = 0, tagged = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        bool a_gets_lo;
        if (i >= first) {
            a_gets_lo = i < best_cross;
        } else {
            const double pa = lo_fit.slope * p.root_kappa + lo_fit.intercept;
            const double pb = hi_fit.slope * p.root_kappa + hi_fit.intercept;
            const double keep = std::pow(p.lo.value - pa, 2) + std::pow(p.hi.value - pb, 2);
            const double swap = std::pow(p.hi.value - pa, 2) + std::pow(p.lo.value - pb, 2);
            a_gets_lo = out.parallel || keep <= swap;
        }
        const SpectrumEntry& ea = a_gets_lo ? p.lo : p.hi;
        const SpectrumEntry& eb = a_gets_lo ? p.hi : p.lo;
        line_a.push_back({p.m, p.root_kappa, ea.value, p.multiplicity});
        line_b.push_back({p.m, p.root_kappa, eb.value, p.multiplicity});
        for (const auto* e : {&ea, &eb}) {
            if (e->branch == Branch::unknown) continue;
            ++tagged;
            if (e->branch == Branch::plus) (e == &ea ? plus_votes_a : plus_votes_b) += 1;
        }
    }

    bool a_is_minus;
    if (tagged > 0 && plus_votes_a != plus_votes_b) {
        a_is_minus = plus_votes_a < plus_votes_b;
    } else if (out.parallel) {
        a_is_minus = true;  // lower family
    } else {
        a_is_minus = lo_fit.slope < hi_fit.slope;
    }
    out.minus = a_is_minus ? std::move(line_a) : std::move(line_b);
    out.plus = a_is_minus ? std::move(line_b) : std::move(line_a);
    out.fit_minus = a_is_minus ? lo_fit : hi_fit;
    out.fit_plus = a_is_minus ? hi_fit : lo_fit;
    return out;
}

struct BoundaryData {
    double f0_hat = 0.0;
    double f1_hat = 0.0;
    double b0_hat = 0.0;  // (ln h)'(0) / (4 sqrt f(0))
    double b1_hat = 0.0;  // (ln h)'(1) / (4 sqrt f(1))
    /// f(0)^{(n-1)/2} + f(1)^{(n-1)/2} from the Weyl growth of the counting function
    double volume_hat = 0.0;
    /// the same functional from the recovered endpoint values
    double volume_from_endpoints = 0.0;
    /// relative disagreement of the two volume routes
    double volume_residual = 0.0;
    /// RMS residual of the two branch line fits
    double residual = 0.0;
};

namespace detail {

/// Solves the small normal-equation system for a polynomial least-squares fit.
inline std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y,
                                   int degree) {
    const int k = degree + 1;
    std::vector<double> a(static_cast<std::size_t>(k * k), 0.0), b(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<double> pw(static_cast<std::size_t>(2 * k), 1.0);
        for (int p = 1; p < 2 * k; ++p) pw[static_cast<std::size_t>(p)] = pw[static_cast<std::size_t>(p - 1)] * x[i];
        for (int r = 0; r < k; ++r) {
            b[static_cast<std::size_t>(r)] += pw[static_cast<std::size_t>(r)] * y[i];
            for (int c = 0; c < k; ++c) a[static_cast<std::size_t>(r * k + c)] += pw[static_cast<std::size_t>(r + c)];
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r * k + col)]) > std::abs(a[static_cast<std::size_t>(piv * k + col)])) piv = r;
        }
        for (int c = 0; c < k; ++c) std::swap(a[static_cast<std::size_t>(col * k + c)], a[static_cast<std::size_t>(piv * k + c)]);
        std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
        const double d = a[static_cast<std::size_t>(col * k + col)];
        if (d == 0.0) throw IllConditionedFit("singular counting-function fit");
        for (int r = col + 1; r < k; ++r) {
            const double f = a[static_cast<std::size_t>(r * k + col)] / d;
            for (int c = col; c < k; ++c) a[static_cast<std::size_t>(r * k + c)] -= f * a[static_cast<std::size_t>(col * k + c)];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> coef(static_cast<std::size_t>(k));
    for (int r = k - 1; r >= 0; --r) {
        double s = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < k; ++c) s -= a[static_cast<std::size_t>(r * k + c)] * coef[static_cast<std::size_t>(c)];
        coef[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r * k + r)];
    }
    return coef;
}

/// Weyl-law estimate of f(0)^{(n-1)/2} + f(1)^{(n-1)/2}: the counting function
/// grows like omega_{n-1} vol(S^{n-1}) V t^{n-1} / (2 pi)^{n-1}. The leading
/// coefficient comes from a degree n-1 polynomial fit of N(t) on [t_lo, t_hi].
inline double weyl_volume(const SteklovSpectrum& spectrum, double t_lo, double t_hi) {
    const int n = spectrum.n;
    const double d = n - 1;
    const double pi = std::numbers::pi;
    const double ball = std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    const double sphere = 2.0 * std::pow(pi, n / 2.0) / std::tgamma(n / 2.0);
    constexpr int samples = 400;
    std::vector<double> t(samples), counts(samples);
    for (int i = 0; i < samples; ++i) {
        const double ti = t_lo + (t_hi - t_lo) * (i + 0.5) / samples;
        t[static_cast<std::size_t>(i)] = ti / t_hi;  // normalized abscissa
        counts[static_cast<std::size_t>(i)] = static_cast<double>(counting_function(spectrum, ti));
    }
    const auto coef = polyfit(t, counts, n - 1);
    const double leading = coef.back() / std::pow(t_hi, d);
    return leading * std::pow(2.0 * pi, d) / (ball * sphere);
}

} // namespace detail

/// Boundary invariants from the branch asymptotics
///     lambda^+ ~ sqrt(kappa)/sqrt f(0) + b0,   lambda^- ~ sqrt(kappa)/sqrt f(1) - b1
/// fitted over m in [fit_from, fit_to], plus the boundary volume functional.
inline BoundaryData recover_boundary(const SteklovSpectrum& spectrum, int fit_from, int fit_to) {
    if (fit_to - fit_from + 1 < 10) throw IllConditionedFit("fit range shorter than 10 indices");
    if (fit_from < 0 || fit_to > spectrum.m_max) {
        throw InvalidArgument("fit range outside the available transversal indices");
    }
    const auto split = split_branches(spectrum);
    auto fit_range = [&](const std::vector<BranchPoint>& pts) {
        std::vector<double> x, y;
        for (const auto& p : pts) {
            if (p.m >= fit_from && p.m <= fit_to) {
                x.push_back(p.root_kappa);
                y.push_back(p.value);
            }
        }
        return detail::fit_line(x, y);
    };
    const auto plus = fit_range(split.plus);
    const auto minus = fit_range(split.minus);
    if (!(plus.slope > 0.0) || !(minus.slope > 0.0)) {
        throw IllConditionedFit("non-positive branch slope in the fit range");
    }

    BoundaryData out;
    out.f0_hat = 1.0 / (plus.slope * plus.slope);
    out.f1_hat = 1.0 / (minus.slope * minus.slope);
    out.b0_hat = plus.intercept;
    out.b1_hat = -minus.intercept;
    const int points = fit_to - fit_from + 1;
    out.residual = std::sqrt((plus.ssr + minus.ssr) / (2.0 * points));

    const double e = (spectrum.n - 1) / 2.0;
    out.volume_from_endpoints = std::pow(out.f0_hat, e) + std::pow(out.f1_hat, e);
    auto value_at = [](const std::vector<BranchPoint>& pts, int m) {
        for (const auto& p : pts) {
            if (p.m == m) return p.value;
        }
        return std::numeric_limits<double>::quiet_NaN();
    };
    const double t_lo = std::max(value_at(split.plus, fit_from), value_at(split.minus, fit_from));
    const double t_hi = std::min(value_at(split.plus, fit_to), value_at(split.minus, fit_to));
    if (!(t_hi > t_lo)) throw IllConditionedFit("empty counting window for the volume fit");
    out.volume_hat = detail::weyl_volume(spectrum, t_lo, t_hi);
    out.volume_residual = std::abs(out.volume_hat - out.volume_from_endpoints) / out.volume_from_endpoints;
    return out;
}

struct SignatureEntry {
    int m = 0;
    double trace = 0.0;
    double det = 0.0;
};

struct TraceDetSignature {
    std::vector<SignatureEntry> entries;
};

inline TraceDetSignature trace_det_signature(const WarpingProfile& profile, const Potential& potential,
                                             int m_from, int m_to) {
    if (m_from < 0 || m_to < m_from) throw InvalidArgument("invalid signature index range");
    admissibility_check(profile, potential, m_to);
    const int n = profile.dimension();
    const auto blocks = detail::parallel_indexed(m_to - m_from + 1, [&](int i) {
        const int m = m_from + i;
        return dn_block(profile, potential, kappa(n, m), m);
    });
    TraceDetSignature sig;
    for (const auto& b : blocks) sig.entries.push_back({b.m_index, b.trace(), b.det()});
    return sig;
}

inline TraceDetSignature trace_det_signature(const WarpingProfile& profile, int m_from, int m_to,
                                             std::size_t node_count = kDefaultNodeCount) {
    return trace_det_signature(profile, build_potential(profile, node_count), m_from, m_to);
}

struct SignatureComparison {
    double max_deviation = 0.0;  // absolute, over trace and det
    int witness_m = -1;
};

inline SignatureComparison compare_signatures(const TraceDetSignature& a, const TraceDetSignature& b) {
    if (a.entries.size() != b.entries.size()) throw LengthMismatch("signature lengths differ");
    SignatureComparison c;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].m != b.entries[i].m) throw LengthMismatch("signature index ranges differ");
        const double dev = std::max(std::abs(a.entries[i].trace - b.entries[i].trace),
                                    std::abs(a.entries[i].det - b.entries[i].det));
        if (c.witness_m < 0 || dev > c.max_deviation) {
            c.max_deviation = dev;
            c.witness_m = a.entries[i].m;
        }
    }
    return c;
}

struct IsospectralReport {
    bool matched = false;
    double max_deviation = 0.0;
    /// position in the sorted (multiplicity-expanded) list of the worst pair
    std::size_t worst_index = 0;
    /// count difference between the two expanded lists
    std::int64_t unmatched_excess = 0;
};

/// Optimal one-to-one matching of two spectra. For real values the sorted
/// pairing minimizes the maximal deviation.
inline IsospectralReport isospectral_compare(const SteklovSpectrum& a, const SteklovSpectrum& b,
                                             double tol) {
    if (a.n != b.n || a.m_max != b.m_max || !(a.lambda == b.lambda)) {
        throw LengthMismatch("spectra differ in dimension, frequency or m_max");
    }
    const auto va = sorted_values(a);
    const auto vb = sorted_values(b);
    IsospectralReport r;
    r.unmatched_excess = static_cast<std::int64_t>(va.size()) - static_cast<std::int64_t>(vb.size());
    const std::size_t common = std::min(va.size(), vb.size());
    for (std::size_t i = 0; i < common; ++i) {
        const double dev = std::abs(va[i] - vb[i]);
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.worst_index = i;
        }
    }
    r.matched = r.unmatched_excess == 0 && r.max_deviation <= tol;
    return r;
}

enum class Verdict { identical, reflected, distinct };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::identical: return "identical";
    case Verdict::reflected: return "reflected";
    default: return "distinct";
    }
}

enum class CoefficientMatch { same, reflected, none };

struct ProbeReport {
    Verdict verdict = Verdict::distinct;
    CoefficientMatch coefficients = CoefficientMatch::none;
    double spectrum_deviation = 0.0;
    double signature_deviation = 0.0;
    int witness_m = -1;
    /// signatures and spectra agree although no coefficient match was found
    bool spectrally_equivalent = false;
    /// n >= 3 and one of the profiles lies outside the C_b class
    bool cb_warning = false;
};

inline constexpr double kCoefficientTolerance = 1e-8;
inline constexpr double kSignatureTolerance = 1e-8;
inline constexpr double kSpectrumTolerance = 1e-7;

namespace detail {

inline bool same_coefficients(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t len = std::max(a.size(), b.size());
    double scale = 1.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < len; ++k) {
        const double va = k < a.size() ? a[k] : 0.0;
        const double vb = k < b.size() ? b[k] : 0.0;
        if (std::abs(va - vb) > kCoefficientTolerance * scale) return false;
    }
    return true;
}

inline bool same_samples(const WarpingProfile& a, const WarpingProfile& b) {
    double scale = 1.0;
    for (double x : cheb::sample_points(kPositivitySamples)) scale = std::max(scale, std::abs(a(x)));
    for (double x : cheb::sample_points(kPositivitySamples)) {
        if (std::abs(a(x) - b(x)) > kCoefficientTolerance * scale) return false;
    }
    return true;
}

} // namespace detail

/// Decides whether two warping profiles are equal, reflections of each other,
/// or distinct. Coefficients are compared first; otherwise the trace/det
/// signatures and spectra over m <= m_max decide, with the witnessing index of
/// the largest signature deviation reported.
inline ProbeReport uniqueness_probe(const WarpingProfile& a, const WarpingProfile& b, int m_max,
                                    std::size_t node_count = kDefaultNodeCount) {
    if (a.dimension() != b.dimension() || !(a.frequency() == b.frequency())) {
        throw InvalidArgument("profiles must share dimension and frequency");
    }
    ProbeReport r;
    r.cb_warning = a.dimension() >= 3 && (!cb_membership(a) || !cb_membership(b));
    const auto reflected_b = involute(b);
    if (detail::same_coefficients(a.coefficients(), b.coefficients())) {
        r.coefficients = CoefficientMatch::same;
    } else if (detail::same_coefficients(a.coefficients(), reflected_b.coefficients())) {
        r.coefficients = CoefficientMatch::reflected;
    }

    const auto pa = build_potential(a, node_count);
    const auto pb = build_potential(b, node_count);
    const auto sig = compare_signatures(trace_det_signature(a, pa, 0, m_max),
                                        trace_det_signature(b, pb, 0, m_max));
    r.signature_deviation = sig.max_deviation;
    r.witness_m = sig.witness_m;
    const auto spec = isospectral_compare(steklov_spectrum(a, pa, m_max),
                                          steklov_spectrum(b, pb, m_max), kSpectrumTolerance);
    r.spectrum_deviation = spec.max_deviation;

    if (r.coefficients == CoefficientMatch::same) {
        r.verdict = Verdict::identical;
    } else if (r.coefficients == CoefficientMatch::reflected) {
        r.verdict = Verdict::reflected;
    } else if (spec.matched && sig.max_deviation <= kSignatureTolerance * (1.0 + std::sqrt(kappa(a.dimension(), m_max)))) {
        if (detail::same_samples(a, b)) {
            r.verdict = Verdict::identical;
        } else if (detail::same_samples(a, reflected_b)) {
            r.verdict = Verdict::reflected;
        } else {
            r.verdict = Verdict::distinct;
            r.spectrally_equivalent = true;
        }
    } else {
        r.verdict = Verdict::distinct;
    }
    return r;
}

} // namespace steklov
