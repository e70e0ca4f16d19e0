#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "steklov/expression.hpp"
#include "steklov/inverse.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<double> kQuadratic{1.215, 0.22, 0.005};  // (1+0.2x)^2

SteklovSpectrum untagged(SteklovSpectrum s) {
    for (auto& e : s.entries) e.branch = Branch::unknown;
    return s;
}

} // namespace

TEST_CASE("branch split follows the two boundary slopes") {
    const auto s = steklov_spectrum(make_profile(kQuadratic, 3, 0.0), 60);
    for (const auto& spectrum : {s, untagged(s)}) {
        const auto split = split_branches(spectrum);
        CHECK_FALSE(split.parallel);
        CHECK_THAT(split.fit_plus.slope, WithinAbs(1.0, 1e-3));
        CHECK_THAT(split.fit_minus.slope, WithinAbs(1.0 / 1.2, 1e-3));
        REQUIRE(split.plus.size() == 61);
        for (std::size_t i = 0; i < split.plus.size(); ++i) {
            CHECK(split.plus[i].m == static_cast<int>(i));
            CHECK(split.plus[i].multiplicity == 2 * split.plus[i].m + 1);
        }
    }
    CHECK_THROWS_AS(split_branches(steklov_spectrum(make_profile(kQuadratic, 3, 0.0), 15)), InvalidArgument);
}

TEST_CASE("boundary recovery inverts the forward map") {
    const auto f = make_profile(kQuadratic, 3, 0.0);
    const auto r = recover_boundary(steklov_spectrum(f, 80), 20, 80);
    CHECK_THAT(r.f0_hat, WithinRel(1.0, 1e-3));
    CHECK_THAT(r.f1_hat, WithinRel(1.44, 1e-3));
    // b_k = (ln h)'(k) / (4 sqrt f(k))
    CHECK_THAT(r.b0_hat, WithinAbs(0.1, 1e-3));
    CHECK_THAT(r.b1_hat, WithinAbs(0.4 / 1.2 / 4.8, 1e-3));
    CHECK_THAT(r.volume_hat, WithinRel(2.44, 2e-2));
    CHECK(r.volume_residual < 2e-2);

    // the reflected profile swaps the endpoints
    const auto g = recover_boundary(steklov_spectrum(involute(f), 80), 20, 80);
    CHECK_THAT(g.f0_hat, WithinRel(1.44, 1e-3));
    CHECK_THAT(g.f1_hat, WithinRel(1.0, 1e-3));
}

TEST_CASE("boundary recovery with equal endpoint values") {
    const auto f = make_profile(parse_expression("1+0.3*x*(1-x)"), 3, 0.0);
    const auto r = recover_boundary(steklov_spectrum(f, 80), 20, 80);
    CHECK_THAT(r.f0_hat, WithinRel(1.0, 1e-2));
    CHECK_THAT(r.f1_hat, WithinRel(1.0, 1e-2));
}

TEST_CASE("boundary recovery rejects short windows") {
    const auto s = steklov_spectrum(make_profile(kQuadratic, 3, 0.0), 40);
    CHECK_THROWS_AS(recover_boundary(s, 30, 35), IllConditionedFit);
    CHECK_THROWS_AS(recover_boundary(s, 20, 60), InvalidArgument);
}

TEST_CASE("trace and det asymptotics") {
    for (int n : {2, 3, 4}) {
        const auto f = make_profile(kQuadratic, n, 0.0);
        const auto p = build_potential(f);
        const double s0 = std::sqrt(p.f0), s1 = std::sqrt(p.f1);
        const double b0 = p.lnh_prime0 / (4 * s0), b1 = p.lnh_prime1 / (4 * s1);
        const auto sig = trace_det_signature(f, p, 10, 60);
        for (const auto& e : sig.entries) {
            const double rk = std::sqrt(kappa(n, e.m));
            const double slack = 2.0 / rk * (std::abs(b0) + std::abs(b1) + 1.0);
            CHECK(std::abs(e.trace / rk - (1 / s0 + 1 / s1)) <= slack);
            CHECK(std::abs(e.det / (rk * rk) - 1 / (s0 * s1)) <= slack * (1 / s0 + 1 / s1));
        }
    }
}

TEST_CASE("signature is invariant under reflection") {
    const auto f = make_profile({1.3, 0.2, -0.1, 0.03}, 3, 0.2);
    const auto c = compare_signatures(trace_det_signature(f, 0, 30), trace_det_signature(involute(f), 0, 30));
    CHECK(c.max_deviation <= 1e-8);
    CHECK(c.witness_m >= 0);
    CHECK_THROWS_AS(compare_signatures(trace_det_signature(f, 0, 5), trace_det_signature(f, 0, 6)), LengthMismatch);
}

TEST_CASE("isospectral comparison") {
    const auto f = make_profile(kQuadratic, 3, 0.0);
    const auto s = steklov_spectrum(f, 30);
    const auto same = isospectral_compare(s, s, 0.0);
    CHECK(same.matched);
    CHECK(same.max_deviation == 0.0);
    CHECK(isospectral_compare(s, steklov_spectrum(involute(f), 30), 1e-7).matched);

    const auto a = steklov_spectrum(make_profile({1.0}, 3, 0.0), 30);
    const auto b = steklov_spectrum(make_profile({1.21}, 3, 0.0), 30);
    CHECK_FALSE(isospectral_compare(a, b, 1e-3).matched);
    CHECK_THROWS_AS(isospectral_compare(a, steklov_spectrum(make_profile({1.0}, 3, 0.0), 20), 1e-3), LengthMismatch);
}

TEST_CASE("uniqueness probe verdicts") {
    const auto f = make_profile(kQuadratic, 3, 0.0);
    CHECK(uniqueness_probe(f, f, 20).verdict == Verdict::identical);

    const auto refl = uniqueness_probe(f, involute(f), 20);
    CHECK(refl.verdict == Verdict::reflected);
    CHECK(refl.coefficients == CoefficientMatch::reflected);
    CHECK(refl.spectrum_deviation <= 1e-7);

    const auto g = make_profile(parse_expression("(1+0.2*x)^2+0.05*x*(1-x)"), 3, 0.0);
    const auto d = uniqueness_probe(f, g, 20);
    CHECK(d.verdict == Verdict::distinct);
    CHECK(d.witness_m >= 0);
    CHECK(d.signature_deviation > 1e-3);
    CHECK_FALSE(d.spectrally_equivalent);
}

TEST_CASE("probe warns outside the C_b class") {
    const auto f = make_profile(kQuadratic, 5, 0.0);  // |f'(0)/f(0)| = 0.4 > 1/3
    CHECK(uniqueness_probe(f, f, 10).cb_warning);
    CHECK_FALSE(uniqueness_probe(make_profile(kQuadratic, 3, 0.0), make_profile(kQuadratic, 3, 0.0), 10).cb_warning);
}
