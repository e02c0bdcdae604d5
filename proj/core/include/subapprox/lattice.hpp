#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subapprox/exact.hpp"

namespace subapprox {

// Raised when an enumeration exceeds its configured work limit.
class WorkLimitExceeded : public std::runtime_error {
public:
    WorkLimitExceeded(const std::string& what, std::uint64_t work) : std::runtime_error(what), work_done(work) {}
    std::uint64_t work_done;
};

// Work counter; add() throws once the limit is passed. With `shared` set, the count is
// pooled across threads in batches.
struct WorkBudget {
    std::uint64_t limit = 100000000;
    std::uint64_t used = 0;
    std::atomic<std::uint64_t>* shared = nullptr;
    std::uint64_t pending = 0;

    void add(std::uint64_t k = 1) {
        used += k;
        if (!shared) {
            if (used > limit) throw WorkLimitExceeded("work limit exceeded", used);
            return;
        }
        pending += k;
        if (pending >= 1024) flush();
    }
    void flush() {
        if (!shared) return;
        const std::uint64_t total = shared->fetch_add(pending) + pending;
        pending = 0;
        if (total > limit) throw WorkLimitExceeded("work limit exceeded", total);
    }
};

using LVector = std::vector<long double>;

// pi(Z^n) for pi the orthogonal projection onto span(Y)^perp.
struct ProjectedLattice {
    int n = 0;
    int rank = 0;
    IntMatrix lifts;       // n x rank integer vectors u_k
    RatMatrix basis;       // n x rank, pi(u_k)
    std::vector<LVector> approx;  // basis columns as long doubles
};

// y: n x e integer matrix of full column rank (e = 0 allowed).
ProjectedLattice projected_lattice(const IntMatrix& y);

// LLL on the vectors b (same length), mirroring the integer operations on t.
// t[k] is the coefficient vector of b[k] in terms of the input vectors.
void lll_reduce(std::vector<LVector>& b, std::vector<std::vector<long long>>& t, long double delta = 0.99L);

// Fincke-Pohst: every nonzero coefficient vector c, one per +-pair (last nonzero entry
// positive), with |sum_k c_k b_k|^2 <= r2. The visitor receives c and the squared norm.
void enumerate_short(const std::vector<LVector>& b, long double r2,
                     const std::function<void(const std::vector<long long>&, long double)>& visit,
                     WorkBudget* budget = nullptr);

long double dot(const LVector& x, const LVector& y);

}  // namespace subapprox
