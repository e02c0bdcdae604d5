#include <cmath>
#include <random>

#include "doctest.h"
#include "subapprox/angles.hpp"
#include "test_support.hpp"

using namespace subapprox;

namespace {

constexpr mpfr_prec_t P = 128;

RealVector vec(std::initializer_list<double> xs) {
    RealVector v;
    for (double x : xs) v.emplace_back(x, P);
    return v;
}

RealSubspace span(std::initializer_list<RealVector> cs) {
    return make_real_subspace(RealMatrix::from_columns(std::vector<RealVector>(cs)));
}

double d(const Real& x) { return x.to_double(); }

}  // namespace

TEST_CASE("vector angle") {
    CHECK(d(vector_angle(vec({1, 0}), vec({1, 0}))) == 0.0);
    CHECK(std::abs(d(vector_angle(vec({1, 0}), vec({1, 1}))) - std::sqrt(0.5)) < 1e-15);
    CHECK(d(vector_angle(vec({1, 0}), vec({0, 1}))) == 1.0);
    CHECK_THROWS_AS(vector_angle(vec({0, 0}), vec({0, 1})), ValidationError);
}

TEST_CASE("principal angles on known pairs") {
    auto a = span({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    auto p = principal_angles(a, a);
    for (const auto& s : p.psis) CHECK(d(s) < 1e-30);

    auto b = span({vec({0, 0, 1, 0}), vec({0, 0, 0, 1})});
    auto q = principal_angles(a, b);
    CHECK(std::abs(d(q.psis[0]) - 1) < 1e-30);
    CHECK(std::abs(d(q.psis[1]) - 1) < 1e-30);

    // (1,1,0,0) lies in both planes, so the first angle vanishes.
    auto c = span({vec({1, 1, 0, 0}), vec({0, 0, 1, 0})});
    auto r = principal_angles(a, c);
    CHECK(d(r.psis[0]) < 1e-30);
    CHECK(std::abs(d(r.psis[1]) - 1) < 1e-30);

    auto e = span({vec({1, 0, 1, 0}), vec({0, 0, 0, 1})});
    auto s = principal_angles(a, e);
    CHECK(std::abs(d(s.psis[0]) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(d(s.psis[1]) - 1) < 1e-30);
}

TEST_CASE("principal angles match the min-max definition on a grid") {
    // A, B planes in R^3 meet in a line, so psi_1 = 0 and psi_2 is the dihedral sine.
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        auto a = testsupport::random_real_subspace(rng, 3, 2, P);
        auto b = testsupport::random_real_subspace(rng, 3, 2, P);
        auto p = principal_angles(a, b);
        CHECK(d(p.psis[0]) < 1e-30);
        // psi_2 = max over unit X in A orthogonal to the common line of min over Y of psi(X, Y)
        // = max over X in A of psi(X, B); brute force over a circle.
        double best = 0;
        for (int k = 0; k < 20000; ++k) {
            double th = M_PI * k / 20000.0;
            RealVector x(3, Real(0L, P));
            for (std::size_t i = 0; i < 3; ++i) x[i] = a.onb(i, 0) * Real(std::cos(th), P) + a.onb(i, 1) * Real(std::sin(th), P);
            best = std::max(best, d(project_onto(b, x).angle));
        }
        CHECK(std::abs(best - d(p.psis[1])) < 1e-7);
    }
    // A line and a plane in R^3: psi_1 = min over the unique direction.
    for (int t = 0; t < 5; ++t) {
        auto a = testsupport::random_real_subspace(rng, 3, 1, P);
        auto b = testsupport::random_real_subspace(rng, 3, 2, P);
        auto p = principal_angles(a, b);
        double best = 2;
        for (int k = 0; k < 20000; ++k) {
            double th = M_PI * k / 20000.0;
            RealVector y(3, Real(0L, P));
            for (std::size_t i = 0; i < 3; ++i) y[i] = b.onb(i, 0) * Real(std::cos(th), P) + b.onb(i, 1) * Real(std::sin(th), P);
            best = std::min(best, d(vector_angle(a.onb.column(0), y)));
        }
        CHECK(best >= d(p.psis[0]) - 1e-25);
        CHECK(best - d(p.psis[0]) < 1e-5);
    }
}

TEST_CASE("witnesses satisfy X_i . Y_j = delta_ij cos") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        auto a = testsupport::random_real_subspace(rng, 6, 2, P);
        auto b = testsupport::random_real_subspace(rng, 6, 3, P);
        auto p = principal_angles(a, b);
        REQUIRE(p.t == 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Real g = dot(p.x[static_cast<std::size_t>(i)], p.y[static_cast<std::size_t>(j)]);
                if (i == j) {
                    Real s = p.psis[static_cast<std::size_t>(i)];
                    Real c = sqrt(Real(1L, P) - s * s);
                    CHECK(d(abs(g - c)) < 1e-25);
                } else {
                    CHECK(d(abs(g)) < 1e-25);
                }
            }
    }
}

TEST_CASE("phi formulas agree") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
        auto a = testsupport::random_real_subspace(rng, 5, 2, P);
        auto b = testsupport::random_real_subspace(rng, 5, 3, P);
        auto f = phi(a, b);
        CHECK(d(abs(f.value - f.by_product)) < 1e-25);
    }
    auto a = span({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    auto b = span({vec({0, 0, 1, 0}), vec({0, 0, 0, 1})});
    CHECK(std::abs(d(phi(a, b).value) - 1) < 1e-30);
    auto c = span({vec({1, 0, 0, 0}), vec({0, 0, 1, 0})});
    CHECK(d(phi(a, c).value) < 1e-30);
}

TEST_CASE("phi_complementary") {
    auto a = span({vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    IntMatrix bz(4, 2, Int(0));
    bz(2, 0) = 1;
    bz(3, 1) = 1;
    auto b = from_basis(bz);
    CHECK(std::abs(d(phi_complementary(a, b)) - 1) < 1e-30);

    std::mt19937_64 rng(14);
    for (int t = 0; t < 20; ++t) {
        auto ar = testsupport::random_real_subspace(rng, 5, 2, P);
        auto bm = testsupport::random_int_matrix(rng, 5, 3, -6, 6);
        if (rank(bm) != 3) continue;
        auto br = from_basis(bm);
        CHECK(d(abs(phi_complementary(ar, br) - phi(ar, br).value)) < 1e-25);
    }
    IntMatrix cz(4, 2, Int(0));
    cz(0, 0) = 1;
    cz(2, 1) = 1;
    CHECK(d(phi_complementary(a, from_basis(cz))) < 1e-30);
}

TEST_CASE("projection") {
    auto f = span({vec({1, 0})});
    auto pr = project_onto(f, vec({1, 1}));
    CHECK(std::abs(d(pr.angle) - std::sqrt(0.5)) < 1e-15);
    CHECK(d(project_onto(f, vec({3, 0})).angle) == 0.0);
    CHECK_THROWS_AS(project_onto(f, vec({0, 1})), ValidationError);

    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        auto F = testsupport::random_real_subspace(rng, 5, 2, P);
        auto x = testsupport::random_real_matrix(rng, 5, 1, P);
        auto line = make_real_subspace(x);
        CHECK(d(abs(principal_angles(line, F).psis[0] - project_onto(F, x.column(0)).angle)) < 1e-30);
    }
}

TEST_CASE("exact zero flags and intersection detection") {
    IntMatrix az(4, 2, Int(0)), bz(4, 2, Int(0));
    az(0, 0) = 1; az(1, 1) = 1;
    bz(0, 0) = 1; bz(2, 1) = 1;
    auto p = principal_angles(from_basis(az), from_basis(bz), P);
    CHECK(p.exact_zero_count == 1);
    CHECK(p.psis[0].is_zero());
    CHECK(std::abs(d(p.psis[1]) - 1) < 1e-30);

    std::mt19937_64 rng(3);
    for (int k = 0; k <= 2; ++k) {
        // A and B share exactly k random directions.
        auto common = testsupport::random_real_matrix(rng, 6, static_cast<std::size_t>(k), P);
        auto ea = testsupport::random_real_matrix(rng, 6, static_cast<std::size_t>(3 - k), P);
        auto eb = testsupport::random_real_matrix(rng, 6, static_cast<std::size_t>(3 - k), P);
        std::vector<RealVector> ca, cb;
        for (std::size_t j = 0; j < common.cols; ++j) { ca.push_back(common.column(j)); cb.push_back(common.column(j)); }
        for (std::size_t j = 0; j < ea.cols; ++j) { ca.push_back(ea.column(j)); cb.push_back(eb.column(j)); }
        auto A = make_real_subspace(RealMatrix::from_columns(ca));
        auto B = make_real_subspace(RealMatrix::from_columns(cb));
        CHECK(probable_intersection_dimension(principal_angles(A, B), P) == k);
    }
}

TEST_CASE("angle profile JSON round trip is bit exact") {
    std::mt19937_64 rng(2);
    auto a = testsupport::random_real_subspace(rng, 4, 2, P);
    auto b = testsupport::random_real_subspace(rng, 4, 2, P);
    auto p = principal_angles(a, b);
    std::string js = to_json(p);
    CHECK(js.find(p.psis[0].to_hex()) != std::string::npos);
    CHECK(Real::parse(p.psis[0].to_hex(), P) == p.psis[0]);
}
