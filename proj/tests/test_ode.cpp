#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>

#include "steklov/ode.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("harmonic oscillator reaches cos and sin") {
    auto rhs = [](double, const std::array<double, 2>& y) { return std::array<double, 2>{y[1], -y[0]}; };
    ode::Stats stats;
    const auto y = ode::integrate<double, 2>(rhs, {1.0, 0.0}, 0.0, 3.0, {1e-12, 1e-14}, 0.0, ode::NoObserver{}, &stats);
    CHECK_THAT(y[0], WithinAbs(std::cos(3.0), 1e-10));
    CHECK_THAT(y[1], WithinAbs(-std::sin(3.0), 1e-10));
    CHECK(stats.accepted > 0);
}

TEST_CASE("backward integration inverts forward integration") {
    auto rhs = [](double x, const std::array<double, 1>& y) { return std::array<double, 1>{std::cos(x) * y[0]}; };
    const auto fwd = ode::integrate<double, 1>(rhs, {1.0}, 0.0, 2.0, {1e-12, 1e-14});
    CHECK_THAT(fwd[0], WithinRel(std::exp(std::sin(2.0)), 1e-10));
    const auto back = ode::integrate<double, 1>(rhs, fwd, 2.0, 0.0, {1e-12, 1e-14});
    CHECK_THAT(back[0], WithinAbs(1.0, 1e-10));
}

TEST_CASE("observer renormalization tracks a growth factor beyond double range") {
    // y' = 2000 y from 0 to 1 would reach e^2000
    double log_scale = 0.0;
    auto rhs = [](double, const std::array<double, 1>& y) { return std::array<double, 1>{2000.0 * y[0]}; };
    auto renorm = [&](double, std::array<double, 1>& y) {
        if (std::abs(y[0]) > 10.0) {
            log_scale += std::log(std::abs(y[0]));
            y[0] /= std::abs(y[0]);
        }
    };
    const auto y = ode::integrate<double, 1>(rhs, {1.0}, 0.0, 1.0, {1e-11, 1e-300}, 1e-4, renorm);
    CHECK_THAT(std::log(y[0]) + log_scale, WithinRel(2000.0, 1e-9));
}

TEST_CASE("complex states integrate") {
    using C = std::complex<double>;
    const C k(0.0, 2.0);
    auto rhs = [&](double, const std::array<C, 1>& y) { return std::array<C, 1>{k * y[0]}; };
    const auto y = ode::integrate<C, 1>(rhs, {C(1.0)}, 0.0, 1.0, {1e-12, 1e-14});
    CHECK(std::abs(y[0] - std::exp(k)) < 1e-10);
}

TEST_CASE("non-finite right-hand side raises IntegrationFailure") {
    auto rhs = [](double x, const std::array<double, 1>&) {
        return std::array<double, 1>{x > 0.5 ? std::nan("") : 1.0};
    };
    CHECK_THROWS_AS((ode::integrate<double, 1>(rhs, {0.0}, 0.0, 1.0)), IntegrationFailure);
}
