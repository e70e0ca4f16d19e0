#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "steklov/transversal.hpp"

using namespace steklov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Monomial = std::vector<int>;

void monomials(int vars, int degree, Monomial& cur, std::vector<Monomial>& out) {
    if (static_cast<int>(cur.size()) == vars - 1) {
        cur.push_back(degree);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = 0; e <= degree; ++e) {
        cur.push_back(e);
        monomials(vars, degree - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Monomial> monomials(int vars, int degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    Monomial cur;
    monomials(vars, degree, cur, out);
    return out;
}

/// Dimension of the harmonic homogeneous polynomials of degree m in n
/// variables: the kernel of the Laplacian from degree m to degree m-2.
long harmonic_dimension(int n, int m) {
    const auto src = monomials(n, m);
    const auto dst = monomials(n, m - 2);
    if (dst.empty()) return static_cast<long>(src.size());
    std::map<Monomial, int> row;
    for (std::size_t i = 0; i < dst.size(); ++i) row[dst[i]] = static_cast<int>(i);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<long>(dst.size()), static_cast<long>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
        for (int v = 0; v < n; ++v) {
            const int e = src[j][static_cast<std::size_t>(v)];
            if (e < 2) continue;
            auto target = src[j];
            target[static_cast<std::size_t>(v)] -= 2;
            lap(row.at(target), static_cast<long>(j)) += e * (e - 1.0);
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
    return static_cast<long>(src.size()) - lu.rank();
}

} // namespace

TEST_CASE("sphere eigenvalues") {
    CHECK(kappa(2, 3) == 9.0);
    CHECK(kappa(3, 2) == 6.0);
    CHECK(kappa(5, 0) == 0.0);
    CHECK_THROWS_AS(kappa(1, 2), BadDimension);
    CHECK_THROWS_AS(kappa(3, -1), InvalidArgument);
}

TEST_CASE("multiplicity closed forms in low dimension") {
    for (int m = 0; m <= 40; ++m) {
        CHECK(multiplicity(2, m) == (m == 0 ? 1 : 2));
        CHECK(multiplicity(3, m) == 2 * m + 1);
        CHECK(multiplicity(4, m) == (m + 1) * (m + 1));
        CHECK(multiplicity(5, m) == (m + 1) * (m + 2) * (2 * m + 3) / 6);
    }
}

TEST_CASE("multiplicity equals the dimension of harmonic polynomials") {
    for (int n = 3; n <= 6; ++n) {
        for (int m = 0; m <= 6; ++m) {
            INFO("n=" << n << " m=" << m);
            CHECK(multiplicity(n, m) == harmonic_dimension(n, m));
        }
    }
}

TEST_CASE("multiplicity stays exact for large indices") {
    // C(m+n-3, m) for n = 10, m = 200 fits comfortably in 64 bits
    const auto big = multiplicity(10, 200);
    double binom = 1.0;
    for (int i = 1; i <= 7; ++i) binom = binom * (200 + i) / i;
    CHECK_THAT(static_cast<double>(big), WithinRel(binom * 408.0 / 8.0, 1e-12));
}

TEST_CASE("transversal spectrum lists indices in order") {
    const auto t = transversal_spectrum(3, 5);
    REQUIRE(t.entries.size() == 6);
    for (int m = 0; m <= 5; ++m) {
        CHECK(t.entries[static_cast<std::size_t>(m)].m == m);
        CHECK(t.entries[static_cast<std::size_t>(m)].kappa == m * (m + 1.0));
    }
}

TEST_CASE("Weyl constant of the circle and the 2-sphere") {
    CHECK_THAT(weyl_coefficient(2), WithinAbs(0.25, 1e-14));
    CHECK_THAT(weyl_coefficient(3), WithinAbs(1.0, 1e-14));
}

TEST_CASE("sphere eigenvalues follow the Weyl law on average") {
    for (int n : {2, 3, 4}) {
        std::vector<double> expanded;
        for (int m = 0; static_cast<int>(expanded.size()) < 600; ++m) {
            expanded.insert(expanded.end(), static_cast<std::size_t>(multiplicity(n, m)), kappa(n, m));
        }
        const double c = weyl_coefficient(n);
        double mean = 0.0;
        for (int j = 200; j <= 500; ++j) {
            mean += expanded[static_cast<std::size_t>(j)] / (c * std::pow(j, 2.0 / (n - 1)));
        }
        mean /= 301.0;
        INFO("n=" << n);
        CHECK_THAT(mean, WithinAbs(1.0, 0.05));
    }
}
