#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subapprox/angles.hpp"
#include "subapprox/grassmann.hpp"
#include "subapprox/lattice.hpp"

namespace subapprox {

enum class Strategy { exhaustive, heuristic };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

struct EnumerationPlan {
    int n = 0;
    int e = 0;
    double height_max = 1.0;
    Strategy strategy = Strategy::exhaustive;
    std::uint64_t work_limit = 100000000;
    unsigned workers = 1;
    int effort = 1;  // heuristic only

    void validate() const;
};

struct EnumerationResult {
    std::vector<RationalSubspace> subspaces;  // ordered by (height^2, plucker)
    std::uint64_t work = 0;
    bool complete = true;  // false for heuristic scans
};

struct ApproximationRecord {
    RationalSubspace b;
    Real height;
    Real psi;
    int j = 1;
};

struct Frontier {
    int n = 0, d = 0, e = 0, j = 1;
    double height_max = 0;
    Strategy strategy = Strategy::exhaustive;
    std::string label;  // "frontier" or "lower-bound frontier"
    std::vector<ApproximationRecord> records;
    std::uint64_t work = 0;
    mpfr_prec_t precision = kDefaultPrecision;
};

// Work limit hit; `progress` holds everything finished before the interruption.
class PartialEnumerationError : public WorkLimitExceeded {
public:
    PartialEnumerationError(EnumerationResult p, std::uint64_t work)
        : WorkLimitExceeded("work limit exceeded during enumeration", work), progress(std::move(p)) {}
    EnumerationResult progress;
};

class PartialFrontierError : public WorkLimitExceeded {
public:
    PartialFrontierError(Frontier p, std::uint64_t work)
        : WorkLimitExceeded("work limit exceeded during frontier scan", work), progress(std::move(p)) {}
    Frontier progress;
};

// Exhaustive: primitive Plücker vectors in the height ball passing the quadratic relations.
// Heuristic: subspaces spanned by small integer vectors, coordinate subspaces included.
EnumerationResult enumerate(const EnumerationPlan& plan);

// Sequential fold: keep B when psi_j(A,B) beats every candidate of smaller height.
Frontier fold_frontier(const RealSubspace& a, int e, int j, std::vector<RationalSubspace> candidates,
                       double height_max);

// Best-approximation frontier. The exhaustive strategy enumerates reduced bases level by
// level in projected lattices; when d + e = n the last level is confined to a slab
// |det(A | b_1..b_{e-1} | w)| <= psi*^j H, psi* the record from lower height shells.
Frontier frontier(const RealSubspace& a, int e, int j, const EnumerationPlan& plan);

// Candidates from LLL on x -> (x, W P_{A^perp} x) over a range of weights W.
// Completeness is not claimed. effort 0 returns the coordinate subspaces only.
std::vector<ApproximationRecord> heuristic_search(const RealSubspace& a, int e, int j, int effort,
                                                  double height_max = 0);

struct ExponentFit {
    double beta = 0;
    std::size_t records_used = 0;
    double residual = 0;  // root mean square of the regression residuals
    double height_min = 0, height_max = 0;
    double min_scaled = 0;  // min over records of psi H^beta
};

ExponentFit fit_exponent(const std::vector<ApproximationRecord>& records);
// Same fit on raw (H, psi) pairs.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& height_psi);

// n,e,j,height_sq,psi_j,plucker with psi_j as a hex float.
std::string frontier_csv(const Frontier& f, bool header = true);
std::string enumeration_csv(const EnumerationResult& r, int n, int e, bool header = true);

}  // namespace subapprox
