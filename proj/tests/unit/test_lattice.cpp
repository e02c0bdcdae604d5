#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "subapprox/grassmann.hpp"
#include "subapprox/lattice.hpp"
#include "test_support.hpp"

using namespace subapprox;

namespace {

Rat gram_det(const RatMatrix& b) {
    RatMatrix g(b.cols, b.cols);
    for (std::size_t i = 0; i < b.cols; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Rat s = 0;
            for (std::size_t k = 0; k < b.rows; ++k) s += b(k, i) * b(k, j);
            g(i, j) = s;
        }
    return determinant(g);
}

LVector combine(const std::vector<LVector>& b, const std::vector<long long>& c) {
    LVector v(b[0].size(), 0.0L);
    for (std::size_t k = 0; k < b.size(); ++k)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += static_cast<long double>(c[k]) * b[k][i];
    return v;
}

}  // namespace

TEST_CASE("projected lattice is orthogonal with covolume 1/H") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 3);
        const std::size_t e = 1 + static_cast<std::size_t>(trial % 2);
        const IntMatrix y = testsupport::random_int_matrix(rng, n, e, -4, 4);
        if (rank(y) != e) continue;
        const auto pl = projected_lattice(y);
        REQUIRE(pl.rank == static_cast<int>(n - e));
        for (std::size_t k = 0; k < n - e; ++k)
            for (std::size_t c = 0; c < e; ++c) {
                Rat s = 0;
                for (std::size_t i = 0; i < n; ++i) s += pl.basis(i, k) * y(i, c);
                CHECK(s == 0);
            }
        const auto b = from_basis(y);
        CHECK(gram_det(pl.basis) == Rat(1) / Rat(b.height_squared));
    }
    const auto id = projected_lattice(IntMatrix(3, 0));
    CHECK(id.rank == 3);
    CHECK(id.lifts(1, 1) == 1);
}

TEST_CASE("LLL tracks coefficients and reduces") {
    std::vector<LVector> b = {{1, 0, 0}, {4, 1, 0}, {7, 3, 1}};
    const auto orig = b;
    std::vector<std::vector<long long>> t;
    lll_reduce(b, t);
    for (std::size_t k = 0; k < b.size(); ++k) {
        const auto v = combine(orig, t[k]);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(static_cast<double>(v[i] - b[k][i])) < 1e-12);
        CHECK(dot(b[k], b[k]) == doctest::Approx(1.0));
    }
}

TEST_CASE("Fincke-Pohst agrees with brute force") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<LVector> b(3, LVector(3));
        for (auto& v : b)
            for (auto& x : v) x = u(rng);
        const long double r2 = 6.0L;
        std::map<std::vector<long long>, long double> seen;
        enumerate_short(b, r2, [&](const std::vector<long long>& c, long double n2) { seen[c] = n2; });
        std::size_t brute = 0;
        const int box = 40;
        for (int x = -box; x <= box; ++x)
            for (int y = -box; y <= box; ++y)
                for (int z = -box; z <= box; ++z) {
                    if (x == 0 && y == 0 && z == 0) continue;
                    const std::vector<long long> c{x, y, z};
                    const long double n2 = dot(combine(b, c), combine(b, c));
                    if (n2 > r2 * (1 - 1e-12L)) continue;
                    const long long last = z != 0 ? z : (y != 0 ? y : x);
                    if (last < 0) continue;
                    ++brute;
                    CHECK(seen.count(c) == 1);
                }
        std::size_t inside = 0;
        for (const auto& [c, n2] : seen) {
            CHECK(n2 <= r2 * (1 + 1e-12L));
            CHECK(std::fabs(static_cast<double>(dot(combine(b, c), combine(b, c)) - n2)) < 1e-9);
            bool in_box = true;
            for (long long v : c) in_box = in_box && std::llabs(v) <= box;
            if (in_box) ++inside;
        }
        CHECK(inside == brute);
    }
}

TEST_CASE("work budget stops enumeration") {
    std::vector<LVector> b = {{1, 0}, {0, 1}};
    WorkBudget w;
    w.limit = 10;
    CHECK_THROWS_AS(enumerate_short(b, 1e4L, [](const std::vector<long long>&, long double) {}, &w),
                    WorkLimitExceeded);
    std::vector<LVector> dep = {{1, 0}, {2, 0}};
    CHECK_THROWS_AS(enumerate_short(dep, 1.0L, [](const std::vector<long long>&, long double) {}), ValidationError);
}
