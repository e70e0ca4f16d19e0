#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "steklov/asymptotics.hpp"
#include "steklov/dn_map.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Potential constant_potential(double c) { return build_potential(make_profile({1.0}, 2, -c)); }

} // namespace

TEST_CASE("constant potential reproduces the Laurent series of sqrt(z^2 + c)") {
    // sqrt(z^2+c) = z + c/(2z) - c^2/(8z^3) + c^3/(16z^5) + ...
    for (double c : {1.0, 3.0, -2.0}) {
        const auto co = riccati_coefficients(constant_potential(c), 4);
        const double want[5] = {c / 2, 0.0, -c * c / 8, 0.0, c * c * c / 16};
        for (int j = 0; j <= 4; ++j) {
            CHECK_THAT(co.beta[static_cast<std::size_t>(j)], WithinAbs(want[j], 1e-12));
            CHECK_THAT(co.gamma[static_cast<std::size_t>(j)], WithinAbs(want[j], 1e-12));
        }
    }
}

TEST_CASE("first coefficients come from q and its derivative at the endpoints") {
    const auto f = make_profile({1.215, 0.22, 0.005}, 3, 0.0);  // q = -0.01/(1+0.2x)^2
    const auto co = riccati_coefficients(build_potential(f), 2);
    CHECK_THAT(co.beta[0], WithinAbs(-0.005, 1e-13));
    CHECK_THAT(co.beta[1], WithinAbs(0.5 * 0.5 * 0.004, 1e-12));  // q'(0)/4, q'(x) = 0.004/(1+0.2x)^3
    CHECK_THAT(co.gamma[0], WithinAbs(-0.005 / 1.44, 1e-13));
    // gamma is beta of q(1-x), whose derivative at 0 is -q'(1)
    CHECK_THAT(co.gamma[1], WithinAbs(-0.25 * 0.004 / (1.2 * 1.2 * 1.2), 1e-12));
}

TEST_CASE("reflection exchanges beta and gamma") {
    const auto p = build_potential(make_profile({1.3, 0.2, -0.1, 0.03}, 4, 0.6));
    const auto a = riccati_coefficients(p, 4);
    const auto b = riccati_coefficients(reflect(p), 4);
    for (int j = 0; j <= 4; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        CHECK_THAT(b.beta[ju], WithinAbs(a.gamma[ju], 1e-9));
        CHECK_THAT(b.gamma[ju], WithinAbs(a.beta[ju], 1e-9));
    }
}

TEST_CASE("order bounds") {
    const auto p = constant_potential(1.0);
    CHECK_THROWS_AS(riccati_coefficients(p, -1), InvalidArgument);
    CHECK_THROWS_AS(riccati_coefficients(p, 7), InvalidArgument);
    CHECK_NOTHROW(riccati_coefficients(p, 6));
}

TEST_CASE("under-resolved potentials raise OrderTooHigh") {
    // a sharp bump sampled on the minimum grid
    const auto f = make_profile(cheb::fit([](double x) { return 1.0 + 0.3 * std::exp(-400 * (x - 0.05) * (x - 0.05)); }, 60),
                                3, 0.0);
    CHECK_THROWS_AS(riccati_coefficients(build_potential(f, 32), 4), OrderTooHigh);
}

TEST_CASE("truncated expansion approximates -M and -N") {
    const auto p = build_potential(make_profile({1.3, 0.2, -0.1, 0.03}, 3, 1.0));
    const auto low = riccati_coefficients(p, 1);
    const auto co = riccati_coefficients(p, 3);
    double scaled[2][2];
    int i = 0;
    for (double z : {30.0, 60.0}) {
        const auto w = weyl_functions(p, z * z);
        const auto pred = wt_expansion(co, z);
        const auto coarse = wt_expansion(low, z);
        CHECK(std::abs(-w.m - pred.minus_m) < std::abs(-w.m - coarse.minus_m));
        CHECK(std::abs(-w.n - pred.minus_n) < std::abs(-w.n - coarse.minus_n));
        // the residual behaves like beta_4 / z^5
        scaled[i][0] = (-w.m - pred.minus_m) * std::pow(z, 5);
        scaled[i][1] = (-w.n - pred.minus_n) * std::pow(z, 5);
        ++i;
    }
    CHECK_THAT(scaled[1][0], WithinRel(scaled[0][0], 0.2));
    CHECK_THAT(scaled[1][1], WithinRel(scaled[0][1], 0.2));
    CHECK_THROWS_AS(wt_expansion(co, 0.0), InvalidArgument);
}

TEST_CASE("refined predictions track the block eigenvalues") {
    const auto f = make_profile({1.215, 0.22, 0.005}, 3, 0.0);
    const auto p = build_potential(f);
    const auto co = riccati_coefficients(p, 3);
    for (int m : {8, 15, 30}) {
        const double mu = kappa(3, m);
        const auto ev = block_eigenvalues(dn_block(f, p, mu, m));
        const auto pred = vp_prediction(f, p, co, mu);
        const double bound = 10 * std::sqrt(mu) * std::exp(-std::sqrt(mu)) + 1e-9;
        CHECK(std::abs(ev.lambda_plus - pred.refined_plus) <= bound);
        CHECK(std::abs(ev.lambda_minus - pred.refined_minus) <= bound);
        // the leading prediction is off by O(1/sqrt(mu))
        CHECK(std::abs(ev.lambda_plus - pred.leading_plus) * std::sqrt(mu) < 0.1);
        CHECK(std::abs(ev.lambda_plus - pred.series_plus) < std::abs(ev.lambda_plus - pred.leading_plus));
    }
}

TEST_CASE("decay fit recovers a power law") {
    std::vector<DecaySample> s;
    for (int i = 0; i <= 10; ++i) {
        const double z = 10.0 * std::pow(10.0, i / 10.0);
        s.push_back({z, 3.0 * std::pow(z, -4.0)});
    }
    const auto fit = decay_order_fit(s);
    CHECK_THAT(fit.exponent, WithinAbs(-4.0, 1e-12));
    CHECK_THAT(fit.intercept, WithinAbs(std::log(3.0), 1e-10));
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.used == s.size());
}

TEST_CASE("decay fit flags roundoff-floor residuals") {
    std::vector<DecaySample> s;
    for (int i = 0; i <= 8; ++i) {
        const double z = 10.0 * std::pow(10.0, i / 8.0);
        s.push_back({z, i < 6 ? std::pow(z, -6.0) : 0.0});
    }
    const auto fit = decay_order_fit(s);
    CHECK(fit.degenerate);
    CHECK(fit.used == 6);
    CHECK_THAT(fit.exponent, WithinAbs(-6.0, 1e-10));
}

TEST_CASE("decay fit input checks") {
    std::vector<DecaySample> few{{1, 1}, {2, 1}, {3, 1}, {20, 1}};
    CHECK_THROWS_AS(decay_order_fit(few), InvalidArgument);
    std::vector<DecaySample> narrow{{10, 1}, {11, 1}, {12, 1}, {13, 1}, {14, 1}};
    CHECK_THROWS_AS(decay_order_fit(narrow), InvalidArgument);
}
