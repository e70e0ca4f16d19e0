#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "steklov/chebyshev.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;

TEST_CASE("lobatto nodes are ascending with exact endpoints") {
    const auto x = cheb::lobatto_nodes(33);
    REQUIRE(x.front() == 0.0);
    REQUIRE(x.back() == 1.0);
    for (std::size_t k = 1; k < x.size(); ++k) REQUIRE(x[k] > x[k - 1]);
    // mirror symmetry about 1/2
    for (std::size_t k = 0; k < x.size(); ++k) REQUIRE_THAT(x[k] + x[x.size() - 1 - k], WithinAbs(1.0, 1e-15));
}

TEST_CASE("x^2 has coefficients 3/8, 1/2, 1/8") {
    // x = (1+t)/2, x^2 = (1 + 2t + t^2)/4 and t^2 = (T0 + T2)/2
    const auto c = cheb::chop(cheb::fit([](double x) { return x * x; }, 17));
    REQUIRE(c.size() == 3);
    CHECK_THAT(c[0], WithinAbs(0.375, 1e-15));
    CHECK_THAT(c[1], WithinAbs(0.5, 1e-15));
    CHECK_THAT(c[2], WithinAbs(0.125, 1e-15));

    const auto d = cheb::chop(cheb::derivative(c));  // 2x = 1 + t
    REQUIRE(d.size() == 2);
    CHECK_THAT(d[0], WithinAbs(1.0, 1e-14));
    CHECK_THAT(d[1], WithinAbs(1.0, 1e-14));
    CHECK_THAT(cheb::evaluate(cheb::derivative(c, 2), 0.3), WithinAbs(2.0, 1e-13));
}

TEST_CASE("smooth functions are resolved to roundoff") {
    const auto c = cheb::fit([](double x) { return std::exp(std::sin(3 * x)); }, 48);
    const auto d = cheb::derivative(c);
    for (double x : {0.0, 0.123, 0.5, 0.77, 1.0}) {
        CHECK_THAT(cheb::evaluate(c, x), WithinAbs(std::exp(std::sin(3 * x)), 1e-13));
        CHECK_THAT(cheb::evaluate(d, x), WithinAbs(3 * std::cos(3 * x) * std::exp(std::sin(3 * x)), 1e-10));
    }
}

TEST_CASE("values and coefficients round trip") {
    const std::vector<double> v{1.0, -2.0, 0.5, 3.0, 4.0, -1.0, 0.25};
    const auto back = cheb::values_at_nodes(cheb::coefficients_from_values(v), v.size());
    for (std::size_t k = 0; k < v.size(); ++k) CHECK_THAT(back[k], WithinAbs(v[k], 1e-13));
}

TEST_CASE("barycentric interpolant matches Clenshaw evaluation") {
    const auto c = cheb::fit([](double x) { return 1.0 / (1.0 + 4 * x * x); }, 40);
    const cheb::Barycentric b(cheb::values_at_nodes(c, 40));
    for (double x = 0.0; x <= 1.0; x += 0.0625) CHECK_THAT(b(x), WithinAbs(cheb::evaluate(c, x), 1e-13));
    // nodes return the stored values exactly
    CHECK(b(0.0) == b.values().front());
    CHECK(b(1.0) == b.values().back());
}

TEST_CASE("chop keeps at least one coefficient") {
    CHECK(cheb::chop({0.0, 0.0}).size() == 1);
    CHECK(cheb::chop({1.0, 1e-20, 1e-3, 1e-17}).size() == 3);
}
