#pragma once

#include <string>
#include <vector>

#include "subapprox/exact.hpp"

namespace subapprox {

// Primitive integer Plücker vector; first nonzero coordinate positive.
struct PluckerVector {
    int n = 0;
    int r = 0;
    std::vector<Int> coords;

    friend bool operator==(const PluckerVector& x, const PluckerVector& y) {
        return x.n == y.n && x.r == y.r && x.coords == y.coords;
    }
    friend bool operator<(const PluckerVector& x, const PluckerVector& y);
};

struct RationalSubspace {
    int n = 0;
    int e = 0;
    IntMatrix zbasis;  // n x e, column Hermite form of B cap Z^n
    PluckerVector plucker;
    Int height_squared;

    Real height(mpfr_prec_t prec = kDefaultPrecision) const;
};

// One quadratic Plücker relation: sum of coef * x[a] * x[b], indices 0-based, a <= b.
struct PluckerTerm {
    int coef;
    int a;
    int b;
    friend bool operator==(const PluckerTerm& x, const PluckerTerm& y) {
        return x.coef == y.coef && x.a == y.a && x.b == y.b;
    }
    friend bool operator<(const PluckerTerm& x, const PluckerTerm& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.coef < y.coef;
    }
};
using PluckerRelation = std::vector<PluckerTerm>;

struct PluckerRelationSet {
    int r = 0;
    int n = 0;
    std::vector<PluckerRelation> relations;
};

// Rendered with 1-based variable names, e.g. "x1*x6 - x2*x5 + x3*x4".
std::string format_relation(const PluckerRelation& rel, const std::string& var = "x");

// Divides by the content and makes the first nonzero coordinate positive.
std::vector<Int> normalize_plucker(std::vector<Int> v);

RationalSubspace from_basis(const RatMatrix& m);
RationalSubspace from_basis(const IntMatrix& m);
// Rebuilds the subspace from a Plücker vector; throws if it is not decomposable.
RationalSubspace from_plucker(const std::vector<Int>& coords, int n, int r);

PluckerRelationSet plucker_relations(int r, int n);

struct RelationCheck {
    bool ok = false;
    bool degenerate = false;  // all-zero input
    Real max_residual;        // real inputs only
    Real tolerance;
};

bool check_relations(const std::vector<Int>& v, const PluckerRelationSet& rels);
RelationCheck check_relations(const std::vector<Real>& v, const PluckerRelationSet& rels);
RelationCheck check_relations(const std::vector<Real>& v, const PluckerRelationSet& rels, const Real& tolerance);
bool is_degenerate(const std::vector<Int>& v);

struct ImageResult {
    RationalSubspace image;
    Rat c_squared;     // certified c(phi)^2
    Real c;            // sqrt of c_squared
    bool bound_holds;  // H(phi B)^2 <= c^2 H(B)^2, checked exactly
};

// phi given as an n x n rational matrix acting on columns.
ImageResult image_subspace(const RatMatrix& phi, const RationalSubspace& b);

bool canonical_equal(const RationalSubspace& b1, const RationalSubspace& b2);

// e-th compound matrix: entry (I, J) = det phi[I, J], lex order on both sides.
RatMatrix compound_matrix(const RatMatrix& phi, int e);

std::string to_json(const RationalSubspace& b);
RationalSubspace rational_subspace_from_json(const std::string& text);

}  // namespace subapprox
