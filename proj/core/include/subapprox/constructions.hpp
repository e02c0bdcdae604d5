#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subapprox/angles.hpp"
#include "subapprox/bounds.hpp"
#include "subapprox/grassmann.hpp"

namespace subapprox {

// ---------------------------------------------------------------------------
// The plane A_xi of R^4 spanned by (0,1,xi,s) and (1,0,-s,xi), s = sqrt(7 - xi^2).

struct R4Construction {
    Real xi;
    Real s;
    RealMatrix basis;  // 4 x 2, unnormalized generators
    RealSubspace a;
    std::vector<Real> plucker;  // minors of basis: -1, -xi, -s, -s, xi, 7
};

R4Construction construct_r4(const Real& xi, mpfr_prec_t prec);
// -eta6 + 7 eta1 + (eta5 - eta2) xi - (eta3 + eta4) s, i.e. det(basis | Y) for Y with minors eta.
Real r4_pairing_formula(const R4Construction& c, const std::vector<Int>& eta);

// ---------------------------------------------------------------------------
// The 3-space of R^5 built from zeta_3.

struct R5Construction {
    Real zeta3;
    std::vector<Real> zeta;  // zeta_1 .. zeta_5 (index 0 .. 4)
    std::vector<Real> xi;    // xi_1 .. xi_10
    RealMatrix basis;        // 5 x 3, reconstructed from xi
    RealSubspace a;
    Real max_residual;          // over the five (3,5) relations
    Real reconstruction_defect;  // max |minors(basis) - lambda xi|
    std::string note;
};

// Throws ValidationError for zeta3 < 5/4 or a vanishing denominator (named in the message).
R5Construction construct_r5(const Real& zeta3, mpfr_prec_t prec);

// P(X) = 2X^3 - 4X + 1 and its candidate rational roots +-1, +-1/2.
Rat r5_cubic(const Rat& x);
std::vector<Rat> r5_rational_root_candidates();

// Quadratic form term coef * x_a * x_b; an index of -1 stands for the constant 1.
struct QuadricTerm {
    Rat coef;
    int a = -1;
    int b = -1;
};
using Quadric = std::vector<QuadricTerm>;

// The five quadrics in (eta3, eta5, eta7, eta9) left after the linear reduction.
std::vector<Quadric> r5_obstruction_system();

struct ObstructionResult {
    bool empty = true;
    std::vector<Rat> counterexample;
    std::uint64_t nodes = 0;
};

// Nonzero rational solutions with numerators and denominators bounded by `bound`,
// found by branching on variables and solving forced linear or quadratic unknowns exactly.
ObstructionResult quadric_system_search(const std::vector<Quadric>& system, int nvars, int bound,
                                        const std::vector<int>& branch_order = {});
ObstructionResult r5_obstruction_search(int bound);

// ---------------------------------------------------------------------------
// Simultaneous approximation.

struct DirichletResult {
    std::vector<Int> p;
    Int q;
    Real error;     // max_i |q x_i - p_i|
    bool verified;  // q |x - p/q|^d ... bound checked in rational arithmetic with outward rounding
};

// Best approximation over 1 <= q <= Q: minimizes max_i |q x_i - p_i|, ties to the smallest q.
DirichletResult dirichlet(const std::vector<Real>& x, std::uint64_t big_q);

// ---------------------------------------------------------------------------
// Going-up.

class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GoingUpResult {
    RationalSubspace c;
    Real psi;
    Real height;
    Real height_budget;
    Real transfer_ratio;  // psi_j(A,C) H(C)^{x (n-e)/(n-e-1)}, x the measured exponent of B
    bool transfer_held = false;
    std::size_t candidates = 0;
};

// Throws NotFoundError when no extension fits under budget * H(B)^{(n-e-1)/(n-e)}.
GoingUpResult going_up_search(const RealSubspace& a, const RationalSubspace& b, int j, double budget = 4.0);

// ---------------------------------------------------------------------------
// Direct-sum pipeline.

struct PipelineEmission {
    std::uint64_t big_q = 0;
    Int q;
    RationalSubspace c;
    Real psi;
    Real height;
    Real scaled;    // psi * H^beta
    double exponent = 0;  // -log psi / log H
    bool dirichlet_verified = false;
};

struct PipelineResult {
    int n = 0, d = 0, e = 0, j = 0;
    Rat beta;
    std::vector<RealVector> family;  // f_1 .. f_j
    int coordinates = 0;             // N
    std::vector<PipelineEmission> emissions;
};

// The exponent the construction guarantees; same closed form as the table lower bound.
Rat pipeline_exponent(int n, int d, int e, int j);

PipelineResult lower_bound_pipeline(const RealSubspace& f, int e, int j, const std::vector<std::uint64_t>& schedule,
                                    double going_up_budget = 4.0);

// ---------------------------------------------------------------------------
// Subspaces with prescribed exponent.

// Smallest prime above l! (2l+1)^l.
Int spectrum_theta(int ell);

struct SpectrumConfig {
    int ell = 1;
    Rat beta;
    std::uint64_t seed = 1;
    mpfr_prec_t precision = 0;  // 0: use the minimum required
    bool infinite_variant = false;  // denominators 3^{k^k}
};

struct SpectrumState {
    SpectrumConfig config;
    Rat alpha;
    Int theta;
    int truncation = 0;               // K
    std::vector<Int> exponents;       // floor(alpha^k), k = 0..K+1
    std::vector<std::vector<std::vector<int>>> digits;  // digits[i][j][k]
    RatMatrix xi;                     // truncated sums, l x l
    RealSubspace a;
    mpfr_prec_t precision = 0;
};

mpfr_prec_t spectrum_required_precision(const SpectrumConfig& cfg, int truncation);
// floor(alpha^k) computed exactly.
Int floor_power(const Rat& alpha, int k);
SpectrumState spectrum_build(const SpectrumConfig& cfg, int truncation);
SpectrumState spectrum_infinite_variant(int ell, int truncation, std::uint64_t seed, mpfr_prec_t prec = 0);

struct SpectrumApproximant {
    int index = 0;  // N
    IntMatrix basis;  // [theta^{a_N} I ; F_N]
    RationalSubspace b;
    Int minor_gcd;
};
SpectrumApproximant spectrum_B_N(const SpectrumState& s, int n_index);
// (2(2l+1) sqrt(2l))^l
Real spectrum_height_constant(int ell, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace subapprox
