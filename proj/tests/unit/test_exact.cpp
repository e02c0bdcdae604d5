#include <random>

#include "doctest.h"
#include "subapprox/exact.hpp"
#include "test_support.hpp"

using namespace subapprox;

TEST_CASE("inversion counts and ell") {
    CHECK(ell({1, 2}, 4) == 0);
    CHECK(ell({2, 4}, 4) == 3);
    CHECK(inversion_count({}, {1, 2, 3}) == 0);
    CHECK(inversion_count({3, 4}, {1, 2}) == 4);
}

TEST_CASE("lex order and ranks") {
    auto s = subsets_lex(2, 4);
    REQUIRE(s.size() == 6);
    CHECK(s[0] == IndexSet{1, 2});
    CHECK(s[5] == IndexSet{3, 4});
    for (int n = 1; n <= 7; ++n)
        for (int r = 0; r <= n; ++r) {
            auto all = subsets_lex(r, n);
            CHECK(all.size() == binomial_size(n, r));
            for (std::size_t i = 0; i < all.size(); ++i) CHECK(lex_rank(all[i], n) == i);
        }
    // complement of the i-th set sits at index N-1-i (0-based)
    for (int n = 2; n <= 7; ++n)
        for (int r = 0; r <= n; ++r) {
            auto all = subsets_lex(r, n);
            for (std::size_t i = 0; i < all.size(); ++i) CHECK(lex_rank(complement(all[i], n), n) == all.size() - 1 - i);
        }
}

TEST_CASE("maximal minors") {
    IntMatrix id(3, 2, Int(0));
    id(0, 0) = 1;
    id(1, 1) = 1;
    CHECK(maximal_minors(id) == std::vector<Int>{1, 0, 0});
    IntMatrix m(4, 2, Int(0));
    m(0, 0) = 1; m(1, 1) = 1; m(2, 0) = 2; m(3, 1) = 3;
    CHECK(maximal_minors(m) == std::vector<Int>{1, 0, 3, -2, 0, 6});
    IntMatrix dep(4, 2);
    for (std::size_t i = 0; i < 4; ++i) { dep(i, 0) = static_cast<long>(i) + 1; dep(i, 1) = 2 * (static_cast<long>(i) + 1); }
    for (const auto& x : maximal_minors(dep)) CHECK(x == 0);
}

TEST_CASE("Laplace signs for n=4, J={1,2}") {
    CHECK(laplace_signs(4, {1, 2}) == std::vector<int>{1, -1, 1, 1, -1, 1});
}

TEST_CASE("Laplace and pairing determinants against cofactor oracle") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        for (std::size_t n : {std::size_t(3), std::size_t(4), std::size_t(5)}) {
            IntMatrix m = testsupport::random_int_matrix(rng, n, n, -9, 9);
            Int oracle = determinant_cofactor(m);
            CHECK(determinant(m) == oracle);
            RatMatrix q = to_rational(m);
            for (int r = 0; r <= static_cast<int>(n); ++r)
                for (const auto& J : subsets_lex(r, static_cast<int>(n))) CHECK(laplace_determinant(q, J) == Rat(oracle));
            for (int a = 1; a < static_cast<int>(n); ++a) {
                IntMatrix ma(n, static_cast<std::size_t>(a)), mb(n, n - static_cast<std::size_t>(a));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j < static_cast<std::size_t>(a)) ma(i, j) = m(i, j); else mb(i, j - static_cast<std::size_t>(a)) = m(i, j);
                    }
                CHECK(pairing_determinant(maximal_minors(ma), maximal_minors(mb), static_cast<int>(n), a) == oracle);
            }
        }
    }
}

TEST_CASE("rational determinant") {
    std::mt19937_64 rng(11);
    RatMatrix m = testsupport::random_rat_matrix(rng, 4, 4, -5, 5, 7);
    RatMatrix scaled = m;
    for (std::size_t j = 0; j < 4; ++j) scaled(0, j) *= 3;
    CHECK(determinant(scaled) == 3 * determinant(m));
    CHECK(laplace_determinant(m, {2, 4}) == determinant(m));
}

TEST_CASE("real determinant agrees with exact") {
    std::mt19937_64 rng(13);
    IntMatrix m = testsupport::random_int_matrix(rng, 5, 5, -9, 9);
    Matrix<Real> r(5, 5);
    for (std::size_t k = 0; k < 25; ++k) r.a[k] = Real(m.a[k], 128);
    Real d = determinant(r);
    CHECK(abs(d - Real(determinant(m), 128)).to_double() < 1e-25);
}

TEST_CASE("generalized determinant") {
    std::vector<std::vector<Rat>> on = {{1, 0, 0}, {0, 1, 0}};
    CHECK(generalized_determinant(on).value_squared == 1);
    std::vector<std::vector<Rat>> dep = {{1, 2, 3}, {2, 4, 6}};
    CHECK(generalized_determinant(dep).value_squared == 0);
    std::vector<std::vector<Rat>> fam = {{1, 2, 3}, {0, 1, 5}};
    auto d1 = generalized_determinant(fam).value_squared;
    fam[1] = {0, 3, 15};
    CHECK(generalized_determinant(fam).value_squared == 9 * d1);
    std::vector<std::vector<Real>> rf = {{Real(1L, 128), Real(2L, 128), Real(3L, 128)}, {Real(0L, 128), Real(1L, 128), Real(5L, 128)}};
    CHECK(abs(generalized_determinant(rf) - GramValue{d1}.value(128)).to_double() < 1e-30);
}

TEST_CASE("block determinant with commuting blocks") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        RatMatrix a1 = testsupport::random_rat_matrix(rng, 3, 3, -4, 4, 1);
        RatMatrix a2 = multiply(a1, a1);
        for (std::size_t i = 0; i < 3; ++i) a2(i, i) += 2;  // A1^2 + 2I commutes with A1
        RatMatrix a3 = testsupport::random_rat_matrix(rng, 3, 3, -4, 4, 3);
        RatMatrix a4 = testsupport::random_rat_matrix(rng, 3, 3, -4, 4, 3);
        RatMatrix big(6, 6);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                big(i, j) = a1(i, j); big(i, j + 3) = a2(i, j);
                big(i + 3, j) = a3(i, j); big(i + 3, j + 3) = a4(i, j);
            }
        CHECK(block_determinant_commuting(a1, a2, a3, a4) == determinant(big));
    }
    RatMatrix z(2, 2, Rat(0));
    CHECK(block_determinant_commuting(z, z, z, z) == 0);
    RatMatrix x(2, 2, Rat(0)), y(2, 2, Rat(0));
    x(0, 1) = 1; y(1, 0) = 1;
    CHECK_THROWS_AS(block_determinant_commuting(x, y, z, z), ValidationError);
}

namespace {

// Independent oracle: lattice membership by solving over Q and checking integrality.
bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
    return column_hermite_form(a) == column_hermite_form(b);
}

}  // namespace

TEST_CASE("saturation") {
    IntMatrix m(2, 1);
    m(0, 0) = 2; m(1, 0) = 0;
    IntMatrix s = saturate_lattice(m);
    CHECK(s(0, 0) == 1);
    CHECK(s(1, 0) == 0);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        std::size_t e = 1 + static_cast<std::size_t>(t % static_cast<int>(n - 1));
        IntMatrix a = testsupport::random_int_matrix(rng, n, e, -6, 6);
        if (rank(a) != e) continue;
        IntMatrix sat = saturate_lattice(a);
        CHECK(content(maximal_minors(sat)) == 1);
        CHECK(rank(sat) == e);
        // span unchanged: stacking does not raise the rank
        IntMatrix both(n, 2 * e);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < e; ++j) { both(i, j) = a(i, j); both(i, j + e) = sat(i, j); }
        CHECK(rank(both) == e);
        CHECK(saturate_lattice(sat) == sat);
        CHECK(same_lattice(saturate_lattice(sat), sat));
        // original lattice index equals the content of its minors
        Int idx = content(maximal_minors(a));
        CHECK(gram_determinant(a) == idx * idx * gram_determinant(sat));
    }
    IntMatrix bad(3, 2, Int(1));
    CHECK_THROWS_AS(saturate_lattice(bad), ValidationError);
}
