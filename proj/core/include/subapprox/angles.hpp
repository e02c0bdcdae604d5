#pragma once

#include <string>
#include <vector>

#include "subapprox/exact.hpp"
#include "subapprox/grassmann.hpp"

namespace subapprox {

using RealMatrix = Matrix<Real>;
using RealVector = std::vector<Real>;

// d-dimensional subspace of R^n carried by an orthonormal basis (columns of onb).
struct RealSubspace {
    int n = 0;
    int d = 0;
    RealMatrix onb;
    std::string provenance = "random";

    mpfr_prec_t precision() const { return onb.a.empty() ? kDefaultPrecision : onb.a[0].precision(); }
};

// Orthonormalizes the columns (two passes of modified Gram-Schmidt).
// Throws ValidationError when the columns are numerically dependent.
RealSubspace make_real_subspace(const RealMatrix& columns, std::string provenance = "random");
RealSubspace to_real_subspace(const RationalSubspace& b, mpfr_prec_t prec);
// max |onb^t onb - I|
Real orthonormality_defect(const RealSubspace& a);

struct AngleProfile {
    int t = 0;
    std::vector<Real> psis;  // ascending
    std::vector<RealVector> x;  // unit witnesses in the first argument
    std::vector<RealVector> y;  // unit witnesses in the second argument
    // psis[i] is exactly 0 (decided over Q) for i < exact_zero_count.
    int exact_zero_count = 0;
};

struct PhiValue {
    Real value;       // generalized-determinant ratio
    Real by_product;  // product of the psi_i
};

RealVector to_real_vector(const std::vector<Int>& v, mpfr_prec_t prec);
RealVector to_real_vector(const std::vector<Rat>& v, mpfr_prec_t prec);
Real dot(const RealVector& a, const RealVector& b);
Real norm(const RealVector& a);

// sin of the angle between two nonzero vectors, from the residual norm.
Real vector_angle(const RealVector& x, const RealVector& y);

AngleProfile principal_angles(const RealSubspace& a, const RealSubspace& b);
AngleProfile principal_angles(const RealSubspace& a, const RationalSubspace& b);
// Both rational: angles at precision prec, exact zeros flagged from dim(A cap B).
AngleProfile principal_angles(const RationalSubspace& a, const RationalSubspace& b, mpfr_prec_t prec);

// psi_j, 1-based.
Real psi(const RealSubspace& a, const RationalSubspace& b, int j);

PhiValue phi(const RealSubspace& a, const RealSubspace& b);
PhiValue phi(const RealSubspace& a, const RationalSubspace& b);
// d + e = n: |det(X|Y)| / (D(X) H(B)) with Y the Z-basis of B.
Real phi_complementary(const RealSubspace& a, const RationalSubspace& b);

struct Projection {
    RealVector image;
    Real angle;  // psi(X, p_F(X))
};
// Throws ValidationError when X is (numerically) orthogonal to F.
Projection project_onto(const RealSubspace& f, const RealVector& x);

// Number of leading psi_j below the probable-intersection threshold 2^{64-p}.
int probable_intersection_dimension(const AngleProfile& p, mpfr_prec_t prec);

// Singular values of an m x k matrix (k <= m) by one-sided Jacobi; returns
// singular values (unsorted) and the right singular vectors as columns of v.
void jacobi_svd(RealMatrix& w, RealMatrix& v, std::vector<Real>& sigma);

std::string to_json(const AngleProfile& p);

}  // namespace subapprox
