#include "subapprox/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace subapprox {

namespace {

// Hermite constants gamma_k, k = 1..8.
const long double kHermite[] = {0.0L,
                                1.0L,
                                1.1547005383792515290L,
                                1.2599210498948731648L,
                                1.4142135623730950488L,
                                1.5157165665103980823L,
                                1.6653663553112078920L,
                                1.8114473285278132375L,
                                2.0L};

using Key = std::vector<Int>;

bool key_less(const RationalSubspace& x, const RationalSubspace& y) {
    if (x.height_squared != y.height_squared) return x.height_squared < y.height_squared;
    return x.plucker.coords < y.plucker.coords;
}

Rat exact_rat(double x) {
    Rat r(x);
    r.canonicalize();
    return r;
}

struct Shell {
    Rat lo2, hi2;
    bool hi_inclusive = false;
    double hi = 0, lo = 0;
    bool contains(const Int& h2) const {
        const Rat h(h2);
        return h >= lo2 && (hi_inclusive ? h <= hi2 : h < hi2);
    }
};

std::vector<Shell> height_shells(double hmax) {
    std::vector<Shell> out;
    const Rat top = exact_rat(hmax) * exact_rat(hmax);
    for (int k = 0;; ++k) {
        const double lo = std::ldexp(1.0, k);
        if (lo > hmax) break;
        Shell s;
        s.lo = lo;
        s.lo2 = Rat(lo) * Rat(lo);
        const double hi = std::ldexp(1.0, k + 1);
        if (hi > hmax) {
            s.hi = hmax;
            s.hi2 = top;
            s.hi_inclusive = true;
        } else {
            s.hi = hi;
            s.hi2 = Rat(hi) * Rat(hi);
        }
        out.push_back(s);
    }
    return out;
}

std::vector<std::vector<long double>> approx_onb(const RealSubspace& a) {
    std::vector<std::vector<long double>> q(static_cast<std::size_t>(a.d), std::vector<long double>(static_cast<std::size_t>(a.n)));
    for (int k = 0; k < a.d; ++k)
        for (int i = 0; i < a.n; ++i)
            q[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = static_cast<long double>(a.onb(static_cast<std::size_t>(i), static_cast<std::size_t>(k)).to_double());
    return q;
}

// Eigenvalues of a small symmetric matrix, ascending (cyclic Jacobi).
std::vector<long double> symmetric_eigenvalues(std::vector<std::vector<long double>> m) {
    const std::size_t k = m.size();
    for (int sweep = 0; sweep < 60; ++sweep) {
        long double off = 0;
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = p + 1; q < k; ++q) off += m[p][q] * m[p][q];
        if (off < 1e-60L) break;
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = p + 1; q < k; ++q) {
                if (m[p][q] == 0) continue;
                const long double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                const long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                const long double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t r = 0; r < k; ++r) {
                    const long double mrp = m[r][p], mrq = m[r][q];
                    m[r][p] = c * mrp - s * mrq;
                    m[r][q] = s * mrp + c * mrq;
                }
                for (std::size_t r = 0; r < k; ++r) {
                    const long double mpr = m[p][r], mqr = m[q][r];
                    m[p][r] = c * mpr - s * mqr;
                    m[q][r] = s * mpr + c * mqr;
                }
            }
    }
    std::vector<long double> ev(k);
    for (std::size_t i = 0; i < k; ++i) ev[i] = m[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// psi_j from mutually orthogonal spanning vectors of B.
long double approx_psi(const std::vector<std::vector<long double>>& qa, const std::vector<LVector>& ws, int j) {
    const std::size_t e = ws.size();
    std::vector<LVector> r(e);
    for (std::size_t k = 0; k < e; ++k) {
        const long double nk = std::sqrt(dot(ws[k], ws[k]));
        r[k] = ws[k];
        for (auto& x : r[k]) x /= nk;
        LVector q = r[k];
        for (const auto& col : qa) {
            const long double c = dot(col, q);
            for (std::size_t i = 0; i < q.size(); ++i) r[k][i] -= c * col[i];
        }
    }
    std::vector<std::vector<long double>> m(e, std::vector<long double>(e));
    for (std::size_t p = 0; p < e; ++p)
        for (std::size_t q = 0; q < e; ++q) m[p][q] = dot(r[p], r[q]);
    const auto ev = symmetric_eigenvalues(m);
    return std::sqrt(std::max(0.0L, ev[static_cast<std::size_t>(j - 1)]));
}

long double det_ld(std::vector<std::vector<long double>> m) {
    const std::size_t k = m.size();
    long double det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
        if (m[p][c] == 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            const long double f = m[r][c] / m[c][c];
            for (std::size_t s = c; s < k; ++s) m[r][s] -= f * m[c][s];
        }
    }
    return det;
}

// Coefficients of x -> det(Q_A | b_1 .. b_{e-1} | x); needs d + (e - 1) = n - 1.
LVector slab_gradient(const std::vector<std::vector<long double>>& qa, const std::vector<std::vector<long long>>& prefix,
                      std::size_t n) {
    std::vector<LVector> cols = qa;
    for (const auto& b : prefix) {
        LVector c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<long double>(b[i]);
        cols.push_back(c);
    }
    LVector g(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<long double>> minor;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            LVector row;
            for (const auto& c : cols) row.push_back(c[r]);
            minor.push_back(row);
        }
        const long double sgn = ((i + n - 1) % 2 == 0) ? 1.0L : -1.0L;
        g[i] = sgn * det_ld(minor);
    }
    return g;
}

IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& cols, std::size_t n) {
    IntMatrix m(n, cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) m(i, k) = Int(static_cast<long>(cols[k][i]));
    return m;
}

struct Candidate {
    RationalSubspace b;
    Real psi;
};

using CandidateMap = std::map<Key, Candidate>;

struct ShellScan {
    const RealSubspace& a;
    std::vector<std::vector<long double>> qa;
    int n, d, e, j;
    Shell shell;
    std::optional<Real> threshold;
    long double thr_ld = 0;
    bool slab = false;

    void level(std::size_t i, std::vector<std::vector<long long>>& prefix, std::vector<LVector>& ws,
               long double hprefix, CandidateMap& out, WorkBudget& work) const {
        const int k = e - static_cast<int>(i);
        const auto nn = static_cast<std::size_t>(n);
        const ProjectedLattice pl = projected_lattice(to_int_matrix(prefix, nn));
        std::vector<LVector> basis = pl.approx;
        std::vector<std::vector<long long>> t;
        lll_reduce(basis, t);
        const std::size_t rank = basis.size();

        auto coefficients = [&](const std::vector<long long>& c, std::vector<long long>& coeff) {
            coeff.assign(rank, 0);
            for (std::size_t r = 0; r < rank; ++r)
                for (std::size_t s = 0; s < rank; ++s) coeff[s] += c[r] * t[r][s];
            long long g = 0;
            for (long long x : coeff) g = std::gcd(g, x < 0 ? -x : x);
            return g == 1;
        };
        auto lift = [&](const std::vector<long long>& coeff, std::vector<long long>& b, LVector& w) {
            b.assign(nn, 0);
            w.assign(nn, 0.0L);
            for (std::size_t s = 0; s < rank; ++s) {
                if (coeff[s] == 0) continue;
                for (std::size_t r = 0; r < nn; ++r) {
                    b[r] += coeff[s] * pl.lifts(r, s).get_si();
                    w[r] += static_cast<long double>(coeff[s]) * pl.approx[s][r];
                }
            }
        };

        if (k > 1) {
            const long double r2 = kHermite[k] * std::pow(static_cast<long double>(shell.hi) / hprefix, 2.0L / k) * (1 + 1e-9L);
            std::vector<long long> coeff, b;
            LVector w;
            enumerate_short(
                basis, r2,
                [&](const std::vector<long long>& c, long double) {
                    if (!coefficients(c, coeff)) return;
                    lift(coeff, b, w);
                    prefix.push_back(b);
                    ws.push_back(w);
                    level(i + 1, prefix, ws, hprefix * std::sqrt(dot(w, w)), out, work);
                    prefix.pop_back();
                    ws.pop_back();
                },
                &work);
            return;
        }

        const long double rhi = static_cast<long double>(shell.hi) / hprefix;
        const long double rlo = static_cast<long double>(shell.lo) / hprefix;
        const bool use_slab = slab && threshold.has_value();
        LVector g;
        long double s = 0;
        std::vector<LVector> search = basis;
        long double r2 = rhi * rhi * (1 + 1e-9L);
        if (use_slab) {
            s = std::pow(thr_ld, static_cast<long double>(j)) * static_cast<long double>(shell.hi) * (1 + 1e-9L) + 1e-30L;
            g = slab_gradient(qa, prefix, nn);
            for (std::size_t r = 0; r < rank; ++r) {
                LVector v(nn + 1);
                for (std::size_t q = 0; q < nn; ++q) v[q] = basis[r][q] / rhi;
                v[nn] = dot(g, basis[r]) / s;
                search[r] = v;
            }
            std::vector<std::vector<long long>> t2;
            lll_reduce(search, t2);
            // Fold the second reduction into t so `coefficients` maps straight to the lifts.
            std::vector<std::vector<long long>> composed(rank, std::vector<long long>(rank, 0));
            for (std::size_t p = 0; p < rank; ++p)
                for (std::size_t q = 0; q < rank; ++q)
                    for (std::size_t r = 0; r < rank; ++r) composed[p][r] += t2[p][q] * t[q][r];
            t = composed;
            r2 = 2.0L * (1 + 1e-9L);
        }
        std::vector<long long> coeff, b;
        LVector w;
        enumerate_short(
            search, r2,
            [&](const std::vector<long long>& c, long double) {
                if (!coefficients(c, coeff)) return;
                lift(coeff, b, w);
                const long double w2 = dot(w, w);
                if (w2 > rhi * rhi * (1 + 1e-9L) || w2 < rlo * rlo * (1 - 1e-9L)) return;
                if (use_slab && std::fabs(dot(g, w)) > s * (1 + 1e-6L)) return;
                ws.push_back(w);
                const long double pa = approx_psi(qa, ws, j);
                ws.pop_back();
                if (threshold && pa > thr_ld * (1 + 1e-6L) + 1e-24L) return;
                work.add();
                prefix.push_back(b);
                RationalSubspace cand = from_basis(to_int_matrix(prefix, nn));
                prefix.pop_back();
                if (!shell.contains(cand.height_squared)) return;
                if (out.count(cand.plucker.coords)) return;
                Real ps = psi(a, cand, j);
                if (threshold && !(ps < *threshold)) return;
                Key key = cand.plucker.coords;
                out.emplace(std::move(key), Candidate{std::move(cand), std::move(ps)});
            },
            &work);
    }
};

}  // namespace

std::string to_string(Strategy s) { return s == Strategy::exhaustive ? "exhaustive" : "heuristic"; }

Strategy parse_strategy(const std::string& s) {
    if (s == "exhaustive") return Strategy::exhaustive;
    if (s == "heuristic") return Strategy::heuristic;
    throw ValidationError("unknown strategy: " + s);
}

void EnumerationPlan::validate() const {
    if (n < 2 || n > 8) throw ValidationError("enumeration: ambient dimension must lie in 2..8");
    if (e < 1 || e >= n) throw ValidationError("enumeration: need 1 <= e < n");
    if (!(height_max >= 1.0) || !std::isfinite(height_max)) throw ValidationError("enumeration: height_max must be >= 1");
    if (workers == 0) throw ValidationError("enumeration: at least one worker");
    if (effort < 0) throw ValidationError("enumeration: effort must be non-negative");
}

// ---------------------------------------------------------------------------

namespace {

void enumerate_shell(int n, int e, const Shell& shell, const PluckerRelationSet& rels,
                     const std::vector<std::vector<std::size_t>>& rel_at, std::vector<RationalSubspace>& out,
                     WorkBudget& work) {
    const std::size_t len = binomial_size(n, e);
    // hi2 bounds the integer norm; lo2 may be fractional
    Int hi2_floor;
    mpz_fdiv_q(hi2_floor.get_mpz_t(), shell.hi2.get_num_mpz_t(), shell.hi2.get_den_mpz_t());
    const long long cap = hi2_floor.get_si();
    std::vector<long long> x(len, 0);
    std::function<void(std::size_t, long long, bool)> rec = [&](std::size_t i, long long used, bool zero) {
        work.add();
        if (i == len) {
            if (zero) return;
            const Int h2(static_cast<long>(used));
            if (!shell.contains(h2)) return;
            std::vector<Int> v(len);
            for (std::size_t k = 0; k < len; ++k) v[k] = Int(static_cast<long>(x[k]));
            if (content(v) != 1) return;
            out.push_back(from_plucker(v, n, e));
            return;
        }
        const long long room = cap - used;
        long long m = static_cast<long long>(std::sqrt(static_cast<long double>(room)));
        while (m * m > room) --m;
        while ((m + 1) * (m + 1) <= room) ++m;
        for (long long v = zero ? 0 : -m; v <= m; ++v) {
            x[i] = v;
            bool ok = true;
            for (std::size_t r : rel_at[i]) {
                long long s = 0;
                for (const auto& term : rels.relations[r]) s += term.coef * x[static_cast<std::size_t>(term.a)] * x[static_cast<std::size_t>(term.b)];
                if (s != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(i + 1, used + v * v, zero && v == 0);
        }
        x[i] = 0;
    };
    rec(0, 0, true);
}

std::vector<RationalSubspace> heuristic_pool_subspaces(int n, int e, double hmax, int effort, WorkBudget& work) {
    std::set<std::vector<long long>> pool;
    std::vector<long long> x(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            long long g = 0;
            for (long long v : x) g = std::gcd(g, v < 0 ? -v : v);
            if (g != 1) return;
            auto y = x;
            for (auto& v : y)
                if (v != 0) {
                    if (v < 0)
                        for (auto& u : y) u = -u;
                    break;
                }
            pool.insert(y);
            return;
        }
        for (long long v = -effort; v <= effort; ++v) {
            x[static_cast<std::size_t>(i)] = v;
            rec(i + 1);
        }
    };
    if (effort == 0) {
        for (int i = 0; i < n; ++i) {
            std::vector<long long> u(static_cast<std::size_t>(n), 0);
            u[static_cast<std::size_t>(i)] = 1;
            pool.insert(u);
        }
    } else {
        rec(0);
    }
    const std::vector<std::vector<long long>> vecs(pool.begin(), pool.end());
    const Rat top = exact_rat(hmax) * exact_rat(hmax);
    std::map<Key, RationalSubspace> found;
    std::vector<std::size_t> idx(static_cast<std::size_t>(e));
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t depth, std::size_t start) {
        if (depth == idx.size()) {
            work.add();
            std::vector<std::vector<long long>> cols;
            for (auto k : idx) cols.push_back(vecs[k]);
            const IntMatrix m = to_int_matrix(cols, static_cast<std::size_t>(n));
            if (rank(m) != static_cast<std::size_t>(e)) return;
            RationalSubspace b = from_basis(m);
            if (Rat(b.height_squared) > top) return;
            found.emplace(b.plucker.coords, std::move(b));
            return;
        }
        for (std::size_t k = start; k < vecs.size(); ++k) {
            idx[depth] = k;
            pick(depth + 1, k + 1);
        }
    };
    pick(0, 0);
    std::vector<RationalSubspace> out;
    for (auto& kv : found) out.push_back(std::move(kv.second));
    std::sort(out.begin(), out.end(), key_less);
    return out;
}

// Runs `job(i, budget)` for i in [0, count) on `workers` threads; rethrows the first error.
template <typename Job>
void parallel_for(std::size_t count, unsigned workers, std::atomic<std::uint64_t>& shared, std::uint64_t limit,
                  Job job) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    auto run = [&] {
        WorkBudget budget;
        budget.limit = limit;
        budget.shared = &shared;
        try {
            for (;;) {
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (error) return;
                }
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                job(i, budget);
            }
            budget.flush();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!error) error = std::current_exception();
        }
    };
    const unsigned nthreads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (nthreads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

EnumerationResult enumerate(const EnumerationPlan& plan) {
    plan.validate();
    EnumerationResult res;
    std::atomic<std::uint64_t> shared{0};
    if (plan.strategy == Strategy::heuristic) {
        res.complete = false;
        WorkBudget work;
        work.limit = plan.work_limit;
        try {
            res.subspaces = heuristic_pool_subspaces(plan.n, plan.e, plan.height_max, plan.effort, work);
        } catch (const WorkLimitExceeded& ex) {
            throw PartialEnumerationError(res, ex.work_done);
        }
        res.work = work.used;
        return res;
    }
    const auto rels = plucker_relations(plan.e, plan.n);
    const std::size_t len = binomial_size(plan.n, plan.e);
    std::vector<std::vector<std::size_t>> rel_at(len);
    for (std::size_t r = 0; r < rels.relations.size(); ++r) {
        int hi = 0;
        for (const auto& t : rels.relations[r]) hi = std::max({hi, t.a, t.b});
        rel_at[static_cast<std::size_t>(hi)].push_back(r);
    }
    const auto shells = height_shells(plan.height_max);
    std::vector<std::vector<RationalSubspace>> per_shell(shells.size());
    std::vector<char> done(shells.size(), 0);
    try {
        parallel_for(shells.size(), plan.workers, shared, plan.work_limit, [&](std::size_t i, WorkBudget& budget) {
            std::vector<RationalSubspace> out;
            enumerate_shell(plan.n, plan.e, shells[i], rels, rel_at, out, budget);
            std::sort(out.begin(), out.end(), key_less);
            per_shell[i] = std::move(out);
            done[i] = 1;
        });
    } catch (const WorkLimitExceeded& ex) {
        EnumerationResult partial;
        for (std::size_t i = 0; i < shells.size() && done[i]; ++i)
            for (auto& b : per_shell[i]) partial.subspaces.push_back(std::move(b));
        partial.work = ex.work_done;
        throw PartialEnumerationError(std::move(partial), ex.work_done);
    }
    for (auto& v : per_shell)
        for (auto& b : v) res.subspaces.push_back(std::move(b));
    res.work = shared.load();
    return res;
}

// ---------------------------------------------------------------------------

Frontier fold_frontier(const RealSubspace& a, int e, int j, std::vector<RationalSubspace> candidates,
                       double height_max) {
    if (j < 1 || j > std::min(a.d, e)) throw ValidationError("frontier: need 1 <= j <= min(d, e)");
    Frontier f;
    f.n = a.n;
    f.d = a.d;
    f.e = e;
    f.j = j;
    f.height_max = height_max;
    f.label = "frontier";
    f.precision = a.precision();
    std::sort(candidates.begin(), candidates.end(), key_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const RationalSubspace& x, const RationalSubspace& y) {
                                     return x.plucker.coords == y.plucker.coords;
                                 }),
                     candidates.end());
    std::optional<Real> best;
    std::size_t i = 0;
    while (i < candidates.size()) {
        std::size_t k = i;
        std::optional<std::size_t> arg;
        Real group_min(f.precision);
        for (; k < candidates.size() && candidates[k].height_squared == candidates[i].height_squared; ++k) {
            if (candidates[k].e != e || candidates[k].n != a.n) throw ValidationError("frontier: candidate shape mismatch");
            Real p = psi(a, candidates[k], j);
            if (!arg || p < group_min) {
                group_min = p;
                arg = k;
            }
        }
        if (!best || group_min < *best) {
            ApproximationRecord r;
            r.b = candidates[*arg];
            r.height = r.b.height(f.precision);
            r.psi = group_min;
            r.j = j;
            f.records.push_back(std::move(r));
            best = group_min;
        }
        i = k;
    }
    return f;
}

namespace {

using FirstVectors = std::function<std::vector<std::vector<long long>>(const Shell&, WorkBudget&)>;

std::vector<std::vector<long long>> short_primitive_vectors(std::size_t n, long double r2, WorkBudget& budget) {
    std::vector<std::vector<long long>> out;
    std::vector<LVector> basis(n, LVector(n, 0.0L));
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
    enumerate_short(
        basis, r2,
        [&](const std::vector<long long>& c, long double) {
            long long g = 0;
            for (long long x : c) g = std::gcd(g, x < 0 ? -x : x);
            if (g == 1) out.push_back(c);
        },
        &budget);
    return out;
}

// Shell-by-shell record scan. `firsts` supplies the first basis vectors of each shell;
// `keep` receives every candidate that beat the previous shells.
void scan_shells(const RealSubspace& a, int e, int j, const EnumerationPlan& plan, bool first_is_whole,
                 const FirstVectors& firsts, Frontier& f, std::vector<Candidate>* keep) {
    std::atomic<std::uint64_t> shared{0};
    std::optional<Real> best;
    const auto nn = static_cast<std::size_t>(a.n);
    ShellScan base{a, approx_onb(a), a.n, a.d, e, j, Shell{}, std::nullopt, 0, a.d + e == a.n};
    for (const Shell& shell : height_shells(plan.height_max)) {
        if (best && best->is_zero()) break;
        ShellScan scan = base;
        scan.shell = shell;
        scan.threshold = best;
        if (best) scan.thr_ld = static_cast<long double>(best->to_double());

        std::vector<CandidateMap> parts;
        try {
            WorkBudget budget;
            budget.limit = plan.work_limit;
            budget.shared = &shared;
            if (e == 1 && !first_is_whole) {
                CandidateMap out;
                std::vector<std::vector<long long>> prefix;
                std::vector<LVector> ws;
                scan.level(0, prefix, ws, 1.0L, out, budget);
                budget.flush();
                parts.push_back(std::move(out));
            } else {
                const auto vs = firsts(shell, budget);
                budget.flush();
                parts.resize(vs.size());
                parallel_for(vs.size(), plan.workers, shared, plan.work_limit, [&](std::size_t i, WorkBudget& wb) {
                    std::vector<std::vector<long long>> prefix{vs[i]};
                    LVector w(nn);
                    for (std::size_t r = 0; r < nn; ++r) w[r] = static_cast<long double>(vs[i][r]);
                    if (e > 1) {
                        std::vector<LVector> ws{w};
                        scan.level(1, prefix, ws, std::sqrt(dot(w, w)), parts[i], wb);
                        return;
                    }
                    wb.add();
                    RationalSubspace cand = from_basis(to_int_matrix(prefix, nn));
                    if (!shell.contains(cand.height_squared)) return;
                    Real ps = psi(a, cand, j);
                    if (scan.threshold && !(ps < *scan.threshold)) return;
                    Key key = cand.plucker.coords;
                    parts[i].emplace(std::move(key), Candidate{std::move(cand), std::move(ps)});
                });
            }
        } catch (const WorkLimitExceeded& ex) {
            f.work = ex.work_done;
            throw PartialFrontierError(f, ex.work_done);
        }
        std::map<Key, Candidate> merged;
        for (auto& part : parts)
            for (auto& kv : part) merged.emplace(kv.first, std::move(kv.second));
        std::vector<Candidate> cands;
        for (auto& kv : merged) cands.push_back(std::move(kv.second));
        std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return key_less(x.b, y.b); });
        std::size_t i = 0;
        while (i < cands.size()) {
            std::size_t k = i, arg = i;
            for (; k < cands.size() && cands[k].b.height_squared == cands[i].b.height_squared; ++k)
                if (cands[k].psi < cands[arg].psi) arg = k;
            if (!best || cands[arg].psi < *best) {
                ApproximationRecord r;
                r.b = cands[arg].b;
                r.height = r.b.height(f.precision);
                r.psi = cands[arg].psi;
                r.j = j;
                f.records.push_back(std::move(r));
                best = cands[arg].psi;
            }
            i = k;
        }
        if (keep)
            for (auto& c : cands) keep->push_back(std::move(c));
    }
    f.work = shared.load();
}

// Short integer vectors close to A: LLL on x -> (x, W P_{A^perp} x) for W = 2, 4, ..., 2^{6 effort}.
std::vector<std::vector<long long>> heuristic_pool(const RealSubspace& a, int e, int effort) {
    const auto nn = static_cast<std::size_t>(a.n);
    std::set<std::vector<long long>> pool;
    auto normalized = [](std::vector<long long> v) {
        for (auto x : v)
            if (x != 0) {
                if (x < 0)
                    for (auto& u : v) u = -u;
                break;
            }
        return v;
    };
    for (std::size_t i = 0; i < nn; ++i) {
        std::vector<long long> u(nn, 0);
        u[i] = 1;
        pool.insert(u);
    }
    // every short primitive vector, then the weighted ones
    WorkBudget small;
    small.limit = 50000000;
    const long double radius = 2.0L * effort + 2;
    for (auto& v : short_primitive_vectors(nn, radius * radius, small)) pool.insert(normalized(std::move(v)));
    const auto qa = approx_onb(a);
    const std::size_t per_weight = 4 + 4 * static_cast<std::size_t>(effort);
    for (int m = 1; m <= 6 * effort; ++m) {
        const long double weight = std::ldexp(1.0L, m);
        std::vector<LVector> basis(nn, LVector(2 * nn, 0.0L));
        for (std::size_t i = 0; i < nn; ++i) {
            basis[i][i] = 1;
            LVector perp(nn, 0.0L);
            perp[i] = 1;
            for (const auto& col : qa)
                for (std::size_t r = 0; r < nn; ++r) perp[r] -= col[i] * col[r];
            for (std::size_t r = 0; r < nn; ++r) basis[i][nn + r] = weight * perp[r];
        }
        std::vector<std::vector<long long>> t;
        lll_reduce(basis, t);
        const std::size_t ref = std::min(nn, static_cast<std::size_t>(e + 1)) - 1;
        const long double r2 = 4 * dot(basis[ref], basis[ref]);
        std::vector<std::pair<long double, std::vector<long long>>> found;
        WorkBudget budget;
        budget.limit = 200000;
        try {
            enumerate_short(
                basis, r2,
                [&](const std::vector<long long>& c, long double norm2) {
                    std::vector<long long> x(nn, 0);
                    for (std::size_t r = 0; r < nn; ++r)
                        for (std::size_t s = 0; s < nn; ++s) x[s] += c[r] * t[r][s];
                    found.emplace_back(norm2, x);
                },
                &budget);
        } catch (const WorkLimitExceeded&) {
        }
        std::sort(found.begin(), found.end());
        for (std::size_t k = 0; k < found.size() && k < per_weight; ++k) {
            long long g = 0;
            for (long long x : found[k].second) g = std::gcd(g, x < 0 ? -x : x);
            if (g == 1) pool.insert(normalized(found[k].second));
        }
    }
    return {pool.begin(), pool.end()};
}

Frontier blank_frontier(const RealSubspace& a, int e, int j, const EnumerationPlan& plan) {
    Frontier f;
    f.n = a.n;
    f.d = a.d;
    f.e = e;
    f.j = j;
    f.height_max = plan.height_max;
    f.strategy = plan.strategy;
    f.label = plan.strategy == Strategy::exhaustive ? "frontier" : "lower-bound frontier";
    f.precision = a.precision();
    return f;
}

void check_target(const RealSubspace& a, int e, int j) {
    if (e < 1 || e >= a.n) throw ValidationError("frontier: need 1 <= e < n");
    if (j < 1 || j > std::min(a.d, e)) throw ValidationError("frontier: need 1 <= j <= min(d, e)");
}

}  // namespace

Frontier frontier(const RealSubspace& a, int e, int j, const EnumerationPlan& plan) {
    plan.validate();
    if (a.n != plan.n || e != plan.e) throw ValidationError("frontier: plan does not match the target");
    check_target(a, e, j);
    Frontier f = blank_frontier(a, e, j, plan);
    if (plan.strategy == Strategy::heuristic) {
        std::vector<RationalSubspace> cands;
        for (auto& r : heuristic_search(a, e, j, plan.effort, plan.height_max)) cands.push_back(std::move(r.b));
        Frontier g = fold_frontier(a, e, j, std::move(cands), plan.height_max);
        f.records = std::move(g.records);
        return f;
    }
    const auto nn = static_cast<std::size_t>(a.n);
    scan_shells(
        a, e, j, plan, false,
        [&](const Shell& shell, WorkBudget& budget) {
            const long double r2 = kHermite[e] * std::pow(static_cast<long double>(shell.hi), 2.0L / e) * (1 + 1e-9L);
            return short_primitive_vectors(nn, r2, budget);
        },
        f, nullptr);
    return f;
}

std::vector<ApproximationRecord> heuristic_search(const RealSubspace& a, int e, int j, int effort, double height_max) {
    check_target(a, e, j);
    if (effort < 0) throw ValidationError("heuristic_search: effort must be non-negative");
    const auto nn = static_cast<std::size_t>(a.n);
    std::vector<ApproximationRecord> out;
    if (effort == 0) {
        for (const auto& s : subsets_lex(e, a.n)) {
            IntMatrix m(nn, static_cast<std::size_t>(e), Int(0));
            for (std::size_t k = 0; k < s.size(); ++k) m(static_cast<std::size_t>(s[k] - 1), k) = 1;
            ApproximationRecord r;
            r.b = from_basis(m);
            r.height = r.b.height(a.precision());
            r.psi = psi(a, r.b, j);
            r.j = j;
            out.push_back(std::move(r));
        }
    } else {
        EnumerationPlan plan;
        plan.n = a.n;
        plan.e = e;
        plan.height_max = height_max >= 1 ? height_max : 1024.0;
        plan.strategy = Strategy::heuristic;
        const auto pool = heuristic_pool(a, e, effort);
        Frontier f = blank_frontier(a, e, j, plan);
        std::vector<Candidate> cands;
        scan_shells(
            a, e, j, plan, true,
            [&](const Shell& shell, WorkBudget&) {
                std::vector<std::vector<long long>> vs;
                for (const auto& v : pool) {
                    long double n2 = 0;
                    for (long long x : v) n2 += static_cast<long double>(x) * static_cast<long double>(x);
                    if (n2 <= static_cast<long double>(shell.hi) * static_cast<long double>(shell.hi) * (1 + 1e-9L)) vs.push_back(v);
                }
                return vs;
            },
            f, &cands);
        for (auto& c : cands) {
            ApproximationRecord r;
            r.height = c.b.height(a.precision());
            r.b = std::move(c.b);
            r.psi = std::move(c.psi);
            r.j = j;
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const ApproximationRecord& x, const ApproximationRecord& y) { return key_less(x.b, y.b); });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Least squares on (log H, log psi).
ExponentFit fit_logs(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw ValidationError("fit_exponent: at least three records with psi > 0 are needed");
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw ValidationError("fit_exponent: all records have the same height");
    const double slope = sxy / sxx;
    ExponentFit fit;
    fit.beta = -slope;
    fit.records_used = pts.size();
    double ss = 0, lo = INFINITY, hi = -INFINITY, scaled = INFINITY;
    for (const auto& [x, y] : pts) {
        const double r = y - (my + slope * (x - mx));
        ss += r * r;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        scaled = std::min(scaled, y + fit.beta * x);
    }
    fit.residual = std::sqrt(ss / static_cast<double>(pts.size()));
    fit.height_min = std::exp(lo);
    fit.height_max = std::exp(hi);
    fit.min_scaled = std::exp(scaled);
    return fit;
}

}  // namespace

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& height_psi) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [h, p] : height_psi)
        if (p > 0 && h >= 1 && std::isfinite(h) && std::isfinite(p)) pts.emplace_back(std::log(h), std::log(p));
    return fit_logs(pts);
}

ExponentFit fit_exponent(const std::vector<ApproximationRecord>& records) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records) {
        if (r.psi.sign() <= 0) continue;
        pts.emplace_back(log(r.height).to_double(), log(r.psi).to_double());
    }
    return fit_logs(pts);
}

std::string frontier_csv(const Frontier& f, bool header) {
    std::ostringstream os;
    if (header) os << "n,e,j,height_sq,psi_j,plucker\n";
    for (const auto& r : f.records) {
        os << f.n << ',' << f.e << ',' << f.j << ',' << r.b.height_squared.get_str() << ',' << r.psi.to_hex() << ',';
        for (std::size_t i = 0; i < r.b.plucker.coords.size(); ++i) os << (i ? " " : "") << r.b.plucker.coords[i].get_str();
        os << '\n';
    }
    return os.str();
}

std::string enumeration_csv(const EnumerationResult& r, int n, int e, bool header) {
    std::ostringstream os;
    if (header) os << "n,e,height_sq,plucker\n";
    for (const auto& b : r.subspaces) {
        os << n << ',' << e << ',' << b.height_squared.get_str() << ',';
        for (std::size_t i = 0; i < b.plucker.coords.size(); ++i) os << (i ? " " : "") << b.plucker.coords[i].get_str();
        os << '\n';
    }
    return os.str();
}

}  // namespace subapprox
