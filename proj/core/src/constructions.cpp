#include "subapprox/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "subapprox/lattice.hpp"

namespace subapprox {

namespace {

Real rat_real(long p, long q, mpfr_prec_t prec) { return Real(Rat(p, q), prec); }

// Unit-free kernel vector of a wide matrix (rows < cols) by Gaussian elimination.
RealVector null_vector(RealMatrix m) {
    const std::size_t rows = m.rows, cols = m.cols;
    const mpfr_prec_t prec = m.a.empty() ? kDefaultPrecision : m.a[0].precision();
    std::vector<std::size_t> pivot_col;
    Real scale(0L, prec);
    for (const auto& x : m.a) scale = max(scale, abs(x));
    const Real tol = scale * pow2(32 - static_cast<long>(prec), prec);
    std::size_t r = 0;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (abs(m(i, c)) > abs(m(best, c))) best = i;
        if (abs(m(best, c)) <= tol) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Real f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    std::size_t free = 0;
    while (free < cols && is_pivot[free]) ++free;
    if (free == cols) throw std::logic_error("null_vector: trivial kernel");
    RealVector v(cols, Real(0L, prec));
    v[free] = Real(1L, prec);
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m(k, free) / m(k, pivot_col[k]);
    return v;
}

Rat reduce(Rat q) {
    q.canonicalize();
    return q;
}

bool rational_sqrt(const Rat& x, Rat& out) {
    if (x < 0) return false;
    if (x == 0) {
        out = 0;
        return true;
    }
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
    Int a, b;
    mpz_sqrt(a.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), x.get_den_mpz_t());
    out = reduce(Rat(a, b));
    return true;
}

Real measured_psi(const RealSubspace& a, const RationalSubspace& b, int j) { return psi(a, b, j); }

}  // namespace

// ---------------------------------------------------------------------------

R4Construction construct_r4(const Real& xi, mpfr_prec_t prec) {
    R4Construction c;
    c.xi = xi;
    c.xi.set_precision(prec);
    const Real seven(7L, prec);
    if (c.xi.sign() <= 0 || c.xi * c.xi >= seven) throw ValidationError("construct_r4: xi must lie in (0, sqrt 7)");
    c.s = sqrt(seven - c.xi * c.xi);
    c.basis = RealMatrix(4, 2, Real(0L, prec));
    c.basis(1, 0) = Real(1L, prec);
    c.basis(2, 0) = c.xi;
    c.basis(3, 0) = c.s;
    c.basis(0, 1) = Real(1L, prec);
    c.basis(2, 1) = -c.s;
    c.basis(3, 1) = c.xi;
    c.plucker = maximal_minors(c.basis);
    c.a = make_real_subspace(c.basis, "r4");
    return c;
}

Real r4_pairing_formula(const R4Construction& c, const std::vector<Int>& eta) {
    if (eta.size() != 6) throw ValidationError("r4_pairing_formula: six coordinates expected");
    const mpfr_prec_t p = c.xi.precision();
    auto E = [&](int i) { return Real(eta[static_cast<std::size_t>(i - 1)], p); };
    return -E(6) + E(1) * 7L + (E(5) - E(2)) * c.xi - (E(3) + E(4)) * c.s;
}

// ---------------------------------------------------------------------------

R5Construction construct_r5(const Real& zeta3, mpfr_prec_t prec) {
    R5Construction c;
    Real z = zeta3;
    z.set_precision(prec);
    if (z < rat_real(5, 4, prec)) throw ValidationError("construct_r5: zeta3 must be at least 5/4");
    c.zeta3 = z;
    const Real z2 = z * z, z3 = z2 * z, z4 = z3 * z;
    // sqrt(2) sqrt(4 zeta3 - 5) sqrt(zeta3 - 1)
    const Real r = sqrt(Real(2L, prec)) * sqrt(z * 4L - 5L) * sqrt(z - 1L);
    const Real tiny = pow2(-static_cast<long>(prec) / 2, prec);

    const Real d12_poly = z4 * 10L - z3 * 7L - (z3 * 4L + z2 * 3L + 1L) * r - z2 * 10L + z * 5L - 2L;
    const Real d12_scale = z4 * 10L + z3 * 7L + (z3 * 4L + z2 * 3L + 1L) * r + z2 * 10L + z * 5L + 2L;
    const Real d45 = (z2 - 1L) * 2L;
    if (abs(d12_poly) <= tiny * d12_scale) throw ValidationError("construct_r5: denominator of zeta1 vanishes");
    if (abs(d12_poly) <= tiny * d12_scale) throw ValidationError("construct_r5: denominator of zeta2 vanishes");
    if (abs(d45) <= tiny * (z2 + 1L) * 2L) throw ValidationError("construct_r5: denominator of zeta4 vanishes");
    if (abs(d45) <= tiny * (z2 + 1L) * 2L) throw ValidationError("construct_r5: denominator of zeta5 vanishes");
    const Real d12 = d12_poly * 4L;

    const Real zeta1 = -(z4 * 112L - z3 * 196L - (z3 * 42L - z2 * 17L + z * 13L) * r + z2 * 88L - z * 30L + 6L) / d12;
    const Real zeta2 =
        -(z4 * 52L - z3 * 154L - (z3 * 18L - z2 * 35L + z * 13L - 6L) * r + z2 * 148L - z * 60L + 18L) / d12;
    const Real zeta4 = -(r * z2 - z3 * 6L + z2 * 3L + z * 3L) / d45;
    const Real zeta5 = -(r * z - z2 * 3L + z * 3L) / d45;
    c.zeta = {zeta1, zeta2, z, zeta4, zeta5};

    const Real one(1L, prec);
    c.xi = {one,   zeta2 + zeta5, -zeta1, one + zeta1 + zeta5, zeta2, zeta2 * 2L - zeta5,
            -z,    z,             zeta4,  zeta5};

    const auto rels = plucker_relations(3, 5);
    const RelationCheck rc = check_relations(c.xi, rels, pow2(64 - static_cast<long>(prec), prec));
    c.max_residual = rc.max_residual;
    if (!rc.ok) throw ValidationError("construct_r5: Plücker relations fail at this precision");

    // Contractions of the largest coordinate span the subspace.
    const auto sets = subsets_lex(3, 5);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < c.xi.size(); ++i)
        if (abs(c.xi[i]) > abs(c.xi[pivot])) pivot = i;
    const IndexSet& I = sets[pivot];
    c.basis = RealMatrix(5, 3, Real(0L, prec));
    for (std::size_t s = 0; s < 3; ++s) {
        IndexSet J;
        for (std::size_t t = 0; t < 3; ++t)
            if (t != s) J.push_back(I[t]);
        for (int k = 1; k <= 5; ++k) {
            if (std::find(J.begin(), J.end(), k) != J.end()) continue;
            IndexSet K = J;
            K.insert(std::upper_bound(K.begin(), K.end(), k), k);
            long above = 0;
            for (int jj : J)
                if (jj > k) ++above;
            const Real& x = c.xi[lex_rank(K, 5)];
            c.basis(static_cast<std::size_t>(k - 1), s) = (above % 2) ? -x : x;
        }
    }
    const auto minors = maximal_minors(c.basis);
    const Real lambda = minors[pivot] / c.xi[pivot];
    c.reconstruction_defect = Real(0L, prec);
    for (std::size_t i = 0; i < minors.size(); ++i)
        c.reconstruction_defect = max(c.reconstruction_defect, abs(minors[i] - lambda * c.xi[i]) / abs(lambda));
    c.a = make_real_subspace(c.basis, "r5");
    c.note = "irrationality needs [Q(zeta3):Q] >= 33; not certified numerically";
    return c;
}

Rat r5_cubic(const Rat& x) { return Rat(2) * x * x * x - Rat(4) * x + Rat(1); }

std::vector<Rat> r5_rational_root_candidates() { return {Rat(-1), Rat(-1, 2), Rat(1, 2), Rat(1)}; }

std::vector<Quadric> r5_obstruction_system() {
    // variables: 0 = eta3, 1 = eta5, 2 = eta7, 3 = eta9
    return {
        {{1, 0, 0}, {-2, 1, 1}, {2, 1, 2}, {-1, 1, 3}, {-1, 2, 3}, {1, 3, 3}},
        {{-1, 0, 2}, {-1, 1, 3}, {1, 2, 3}, {-1, 3, 3}},
        {{-1, 0, 2}, {-1, 2, 2}, {1, 2, 3}},
        {{-2, 1, 2}, {-1, 0, 3}, {1, 2, 3}},
        {{1, 0, 2}, {-2, 1, 2}, {1, 1, 3}, {1, 2, 3}},
    };
}

ObstructionResult quadric_system_search(const std::vector<Quadric>& system, int nvars, int bound,
                                        const std::vector<int>& branch_order) {
    if (bound < 1) throw ValidationError("quadric_system_search: bound must be positive");
    std::vector<int> order = branch_order;
    if (order.empty())
        for (int v = 0; v < nvars; ++v) order.push_back(v);
    std::vector<Rat> values{Rat(0)};
    for (int q = 1; q <= bound; ++q)
        for (int p = 1; p <= bound; ++p) {
            Rat x(p, q);
            if (x.get_den() != q) continue;  // not in lowest terms
            values.push_back(x);
            values.push_back(-x);
        }
    std::sort(values.begin(), values.end());

    ObstructionResult res;
    std::vector<std::optional<Rat>> assign(static_cast<std::size_t>(nvars));
    const auto known = [&](int v) { return v < 0 || assign[static_cast<std::size_t>(v)].has_value(); };
    const auto val = [&](int v) { return v < 0 ? Rat(1) : *assign[static_cast<std::size_t>(v)]; };

    std::function<bool()> search = [&]() -> bool {
        ++res.nodes;
        for (const auto& eq : system) {
            Rat cst = 0, lin = 0, quad = 0;
            int var = -2;
            bool multi = false;
            for (const auto& t : eq) {
                const bool ka = known(t.a), kb = known(t.b);
                if (ka && kb) {
                    cst += t.coef * val(t.a) * val(t.b);
                    continue;
                }
                int u;
                if (!ka && !kb) {
                    if (t.a != t.b) {
                        multi = true;
                        break;
                    }
                    u = t.a;
                } else {
                    u = ka ? t.b : t.a;
                }
                if (var != -2 && var != u) {
                    multi = true;
                    break;
                }
                var = u;
                if (!ka && !kb)
                    quad += t.coef;
                else
                    lin += t.coef * (ka ? val(t.a) : val(t.b));
            }
            if (multi) continue;
            if (var == -2 || (quad == 0 && lin == 0)) {
                if (cst != 0) return false;
                continue;
            }
            std::vector<Rat> roots;
            if (quad == 0) {
                roots.push_back(-cst / lin);
            } else {
                Rat s;
                if (!rational_sqrt(lin * lin - Rat(4) * quad * cst, s)) return false;
                roots.push_back((-lin - s) / (Rat(2) * quad));
                if (s != 0) roots.push_back((-lin + s) / (Rat(2) * quad));
            }
            for (const auto& x : roots) {
                assign[static_cast<std::size_t>(var)] = x;
                if (search()) return true;
            }
            assign[static_cast<std::size_t>(var)].reset();
            return false;
        }
        int next = -1;
        for (int v : order)
            if (!assign[static_cast<std::size_t>(v)]) {
                next = v;
                break;
            }
        if (next < 0) {
            bool nonzero = false;
            for (const auto& a : assign)
                if (*a != 0) nonzero = true;
            if (!nonzero) return false;
            res.empty = false;
            for (const auto& a : assign) res.counterexample.push_back(*a);
            return true;
        }
        for (const auto& x : values) {
            assign[static_cast<std::size_t>(next)] = x;
            if (search()) return true;
        }
        assign[static_cast<std::size_t>(next)].reset();
        return false;
    };
    search();
    return res;
}

ObstructionResult r5_obstruction_search(int bound) {
    return quadric_system_search(r5_obstruction_system(), 4, bound, {2, 3, 0, 1});
}

// ---------------------------------------------------------------------------

DirichletResult dirichlet(const std::vector<Real>& x, std::uint64_t big_q) {
    if (big_q < 1) throw ValidationError("dirichlet: Q must be at least 1");
    if (x.empty()) throw ValidationError("dirichlet: empty target");
    const std::size_t d = x.size();
    const mpfr_prec_t prec = x[0].precision();
    std::vector<long double> hi(d), lo(d);
    long double mag = 1;
    for (std::size_t i = 0; i < d; ++i) {
        const Real frac = x[i] - Real(floor_to_integer(x[i]), prec);
        hi[i] = static_cast<long double>(frac.to_double());
        lo[i] = static_cast<long double>((frac - Real(static_cast<double>(hi[i]), prec)).to_double());
        mag = std::max(mag, std::fabs(hi[i]));
    }
    const long double tol = 8e-19L * static_cast<long double>(big_q) * mag + 1e-30L;
    long double best = 2;
    std::vector<std::pair<std::uint64_t, long double>> cands;
    for (std::uint64_t q = 1; q <= big_q; ++q) {
        const long double ql = static_cast<long double>(q);
        long double err = 0;
        for (std::size_t i = 0; i < d && err <= best + 2 * tol; ++i) {
            long double y = ql * hi[i] + ql * lo[i];
            y -= std::nearbyint(y);
            err = std::max(err, std::fabs(y));
        }
        if (err > best + 2 * tol) continue;
        if (err < best) {
            best = err;
            cands.erase(std::remove_if(cands.begin(), cands.end(),
                                       [&](const auto& c) { return c.second > best + 2 * tol; }),
                        cands.end());
        }
        cands.emplace_back(q, err);
    }
    DirichletResult res;
    bool have = false;
    for (const auto& c : cands) {
        const Int q(static_cast<unsigned long>(c.first));
        std::vector<Int> p(d);
        Real err(0L, prec);
        for (std::size_t i = 0; i < d; ++i) {
            const Real y = x[i] * Real(q, prec);
            p[i] = round_to_integer(y);
            err = max(err, abs(y - Real(p[i], prec)));
        }
        if (!have || err < res.error) {
            res.p = p;
            res.q = q;
            res.error = err;
            have = true;
        }
    }
    // Outward-rounded check of |q x_i - p_i|^d q <= 1.
    res.verified = true;
    for (std::size_t i = 0; i < d; ++i) {
        const Rat xr = x[i].to_rational();
        Rat u = 0;
        if (!x[i].is_zero()) {
            const long ex = x[i].exponent() - static_cast<long>(prec) + 1;
            u = ex >= 0 ? Rat(Int(1) << static_cast<unsigned long>(ex)) : Rat(Int(1), Int(1) << static_cast<unsigned long>(-ex));
        }
        const Rat dev = abs(Rat(res.q) * xr - Rat(res.p[i])) + Rat(res.q) * u;
        Rat lhs = Rat(res.q);
        for (std::size_t k = 0; k < d; ++k) lhs *= dev;
        if (lhs > 1) res.verified = false;
    }
    return res;
}

// ---------------------------------------------------------------------------

GoingUpResult going_up_search(const RealSubspace& a, const RationalSubspace& b, int j, double budget) {
    const int n = b.n, e = b.e, d = a.d;
    if (a.n != n) throw ValidationError("going_up_search: dimension mismatch");
    if (d + e >= n) throw ValidationError("going_up_search: needs d + e < n");
    if (j < 1 || j > std::min(d, e)) throw ValidationError("going_up_search: j out of range");
    const mpfr_prec_t prec = a.precision();
    const Real hb = b.height(prec);
    const int m = n - e;
    // H(C) = H(B) |w| for w primitive in the projected lattice.
    const Real hbudget = Real(budget, prec) * pow(hb, Real(Rat(m - 1, m), prec));
    const long double radius = static_cast<long double>((hbudget / hb).to_double());

    ProjectedLattice pl = projected_lattice(b.zbasis);
    std::vector<LVector> basis = pl.approx;
    std::vector<std::vector<long long>> t;
    lll_reduce(basis, t);

    GoingUpResult best;
    bool have = false;
    WorkBudget work;
    work.limit = 20000000;
    enumerate_short(
        basis, radius * radius * (1 + 1e-12L),
        [&](const std::vector<long long>& c, long double) {
            std::vector<Int> coeff(static_cast<std::size_t>(m), Int(0));
            for (int k = 0; k < m; ++k)
                for (int s = 0; s < m; ++s)
                    coeff[static_cast<std::size_t>(s)] += Int(static_cast<long>(c[static_cast<std::size_t>(k)])) *
                                                          Int(static_cast<long>(t[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]));
            if (content(coeff) != 1) return;
            IntMatrix mat(static_cast<std::size_t>(n), static_cast<std::size_t>(e + 1));
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k < e; ++k) mat(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = b.zbasis(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
                Int v = 0;
                for (int s = 0; s < m; ++s) v += coeff[static_cast<std::size_t>(s)] * pl.lifts(static_cast<std::size_t>(i), static_cast<std::size_t>(s));
                mat(static_cast<std::size_t>(i), static_cast<std::size_t>(e)) = v;
            }
            RationalSubspace cand = from_basis(mat);
            const Real h = cand.height(prec);
            if (h > hbudget) return;
            ++best.candidates;
            const Real ps = measured_psi(a, cand, j);
            const bool better = !have || ps < best.psi ||
                                (ps == best.psi && Rat(cand.height_squared) < Rat(best.c.height_squared));
            if (better) {
                best.c = std::move(cand);
                best.psi = ps;
                best.height = h;
                have = true;
            }
        },
        &work);
    if (!have) throw NotFoundError("going_up_search: no extension within the height budget");
    best.height_budget = hbudget;
    const Real pb = measured_psi(a, b, j);
    if (pb.sign() > 0 && hb > Real(1L, prec) && best.height > Real(1L, prec)) {
        const Real x = -log(pb) / log(hb);
        const Real xp = x * Real(Rat(m, m - 1), prec);
        best.transfer_ratio = best.psi * pow(best.height, xp);
        best.transfer_held = best.transfer_ratio <= Real(budget, prec);
    } else {
        best.transfer_ratio = Real(0L, prec);
        best.transfer_held = true;
    }
    return best;
}

// ---------------------------------------------------------------------------

Rat pipeline_exponent(int n, int d, int e, int j) {
    const long num = static_cast<long>(n - j) * (2L * j * n - 2L * j * d + 1L * j * j + j + 2);
    const long den = static_cast<long>(j) * j * (n - e) * (2L * n - 2L * d + j + 1);
    return reduce(Rat(num, den));
}

PipelineResult lower_bound_pipeline(const RealSubspace& f, int e, int j, const std::vector<std::uint64_t>& schedule,
                                    double going_up_budget) {
    const int n = f.n, d = f.d;
    if (e < 1 || d + e > n) throw ValidationError("lower_bound_pipeline: needs 1 <= e and d + e <= n");
    if (j < 1 || j > std::min(d, e)) throw ValidationError("lower_bound_pipeline: j out of range");
    const mpfr_prec_t prec = f.precision();
    PipelineResult res;
    res.n = n;
    res.d = d;
    res.e = e;
    res.j = j;
    res.beta = pipeline_exponent(n, d, e, j);

    // f_l in F, orthogonal to f_1..f_{l-1}, vanishing on the last d-l coordinates.
    for (int l = 1; l <= j; ++l) {
        const int zeros = d - l;
        RealMatrix cons(static_cast<std::size_t>((l - 1) + zeros), static_cast<std::size_t>(d), Real(0L, prec));
        for (int r = 0; r < l - 1; ++r)
            for (int k = 0; k < d; ++k) {
                Real s(0L, prec);
                for (int i = 0; i < n; ++i)
                    s += res.family[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] * f.onb(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
                cons(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) = s;
            }
        for (int z = 0; z < zeros; ++z)
            for (int k = 0; k < d; ++k)
                cons(static_cast<std::size_t>(l - 1 + z), static_cast<std::size_t>(k)) =
                    f.onb(static_cast<std::size_t>(n - zeros + z), static_cast<std::size_t>(k));
        RealVector c;
        if (cons.rows == 0) {
            c.assign(static_cast<std::size_t>(d), Real(0L, prec));
            c[0] = Real(1L, prec);
        } else {
            c = null_vector(cons);
        }
        RealVector v(static_cast<std::size_t>(n), Real(0L, prec));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) v[static_cast<std::size_t>(i)] += f.onb(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) * c[static_cast<std::size_t>(k)];
        for (int z = 0; z < zeros; ++z) v[static_cast<std::size_t>(n - zeros + z)] = Real(0L, prec);
        const Real nv = norm(v);
        for (auto& x : v) x /= nv;
        res.family.push_back(std::move(v));
    }
    std::vector<Real> x;
    for (int l = 1; l <= j; ++l)
        for (int i = 0; i < n - d + l; ++i) x.push_back(res.family[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(i)]);
    res.coordinates = static_cast<int>(x.size());

    for (std::uint64_t big_q : schedule) {
        const DirichletResult dr = dirichlet(x, big_q);
        IntMatrix pm(static_cast<std::size_t>(n), static_cast<std::size_t>(j), Int(0));
        std::size_t pos = 0;
        for (int l = 1; l <= j; ++l)
            for (int i = 0; i < n - d + l; ++i) pm(static_cast<std::size_t>(i), static_cast<std::size_t>(l - 1)) = dr.p[pos++];
        if (rank(pm) != static_cast<std::size_t>(j)) continue;
        RationalSubspace c = from_basis(pm);
        while (c.e < e) {
            double budget = going_up_budget;
            for (;;) {
                try {
                    c = going_up_search(f, c, j, budget).c;
                    break;
                } catch (const NotFoundError&) {
                    budget *= 2;
                    if (budget > 1e6) throw std::logic_error("lower_bound_pipeline: going-up failed");
                }
            }
        }
        PipelineEmission em;
        em.big_q = big_q;
        em.q = dr.q;
        em.dirichlet_verified = dr.verified;
        em.psi = measured_psi(f, c, j);
        em.height = c.height(prec);
        em.scaled = em.psi * pow(em.height, Real(res.beta, prec));
        em.exponent = (em.height > Real(1L, prec) && em.psi.sign() > 0)
                          ? (-log(em.psi) / log(em.height)).to_double()
                          : 0.0;
        em.c = std::move(c);
        res.emissions.push_back(std::move(em));
    }
    return res;
}

// ---------------------------------------------------------------------------

Int spectrum_theta(int ell) {
    if (ell < 1) throw ValidationError("spectrum_theta: needs l >= 1");
    Int t = 1;
    for (int k = 2; k <= ell; ++k) t *= k;
    for (int k = 0; k < ell; ++k) t *= (2 * ell + 1);
    Int p;
    mpz_nextprime(p.get_mpz_t(), t.get_mpz_t());
    return p;
}

Int floor_power(const Rat& alpha, int k) {
    if (k < 0) throw ValidationError("floor_power: negative exponent");
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), alpha.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(den.get_mpz_t(), alpha.get_den_mpz_t(), static_cast<unsigned long>(k));
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return f;
}

namespace {

std::vector<Int> spectrum_exponents(const SpectrumConfig& cfg, const Rat& alpha, int count) {
    std::vector<Int> a;
    for (int k = 0; k < count; ++k) {
        if (cfg.infinite_variant) {
            Int v;
            mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(k));
            if (k == 0) v = 1;
            a.push_back(v);
        } else {
            a.push_back(floor_power(alpha, k));
        }
    }
    return a;
}

}  // namespace

mpfr_prec_t spectrum_required_precision(const SpectrumConfig& cfg, int truncation) {
    const Int theta = cfg.infinite_variant ? Int(3) : spectrum_theta(cfg.ell);
    const Rat alpha = Rat(cfg.ell) * cfg.beta;
    const auto a = spectrum_exponents(cfg, alpha, truncation + 2);
    const long double bits = static_cast<long double>(a.back().get_d()) * std::log2(static_cast<long double>(theta.get_d()));
    return static_cast<mpfr_prec_t>(64 + std::ceil(bits * (1 + 1e-12L)) + 1);
}

SpectrumState spectrum_build(const SpectrumConfig& cfg, int truncation) {
    if (cfg.ell < 1) throw ValidationError("spectrum_build: needs l >= 1");
    if (truncation < 1) throw ValidationError("spectrum_build: truncation must be at least 1");
    SpectrumState s;
    s.config = cfg;
    s.truncation = truncation;
    const int ell = cfg.ell;
    if (cfg.infinite_variant) {
        s.theta = 3;
        s.alpha = 0;
    } else {
        const SpectrumThreshold th = spectrum_threshold(ell);
        const Rat diff = cfg.beta - th.rational_part;
        if (diff < 0 || diff * diff < th.coefficient * th.coefficient * Rat(th.radicand))
            throw ValidationError("spectrum_build: beta below the threshold " + th.exact_string());
        s.theta = spectrum_theta(ell);
        s.alpha = Rat(ell) * cfg.beta;
        s.alpha.canonicalize();
    }
    const mpfr_prec_t need = spectrum_required_precision(cfg, truncation);
    s.precision = cfg.precision == 0 ? need : cfg.precision;
    if (s.precision < need)
        throw ValidationError("spectrum_build: insufficient precision, need at least " + std::to_string(need) + " bits");
    s.exponents = spectrum_exponents(cfg, s.alpha, truncation + 2);

    s.digits.assign(static_cast<std::size_t>(ell), std::vector<std::vector<int>>(static_cast<std::size_t>(ell)));
    s.xi = RatMatrix(static_cast<std::size_t>(ell), static_cast<std::size_t>(ell), Rat(0));
    for (int i = 0; i < ell; ++i)
        for (int jj = 0; jj < ell; ++jj) {
            std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu), static_cast<std::uint32_t>(cfg.seed >> 32),
                              static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(jj)};
            std::mt19937_64 gen(seq);
            const int base = cfg.infinite_variant ? 1 : (i == jj ? 2 * ell : 1);
            auto& dg = s.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            Rat sum = 0;
            for (int k = 0; k <= truncation; ++k) {
                const int digit = base + static_cast<int>(gen() & 1u);
                dg.push_back(digit);
                Int den;
                mpz_pow_ui(den.get_mpz_t(), s.theta.get_mpz_t(), s.exponents[static_cast<std::size_t>(k)].get_ui());
                sum += Rat(Int(digit), den);
            }
            sum.canonicalize();
            s.xi(static_cast<std::size_t>(i), static_cast<std::size_t>(jj)) = sum;
        }
    RealMatrix m(2 * static_cast<std::size_t>(ell), static_cast<std::size_t>(ell), Real(0L, s.precision));
    for (int i = 0; i < ell; ++i) {
        m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Real(1L, s.precision);
        for (int jj = 0; jj < ell; ++jj)
            m(static_cast<std::size_t>(ell + i), static_cast<std::size_t>(jj)) = Real(s.xi(static_cast<std::size_t>(i), static_cast<std::size_t>(jj)), s.precision);
    }
    s.a = make_real_subspace(m, cfg.infinite_variant ? "spectrum-infinite" : "spectrum");
    return s;
}

SpectrumState spectrum_infinite_variant(int ell, int truncation, std::uint64_t seed, mpfr_prec_t prec) {
    SpectrumConfig cfg;
    cfg.ell = ell;
    cfg.beta = 0;
    cfg.seed = seed;
    cfg.precision = prec;
    cfg.infinite_variant = true;
    return spectrum_build(cfg, truncation);
}

SpectrumApproximant spectrum_B_N(const SpectrumState& s, int n_index) {
    if (n_index < 0 || n_index > s.truncation - 1)
        throw ValidationError("spectrum_B_N: N must lie in 0..K-1");
    const int ell = s.config.ell;
    const unsigned long aN = s.exponents[static_cast<std::size_t>(n_index)].get_ui();
    Int t;
    mpz_pow_ui(t.get_mpz_t(), s.theta.get_mpz_t(), aN);
    SpectrumApproximant out;
    out.index = n_index;
    out.basis = IntMatrix(2 * static_cast<std::size_t>(ell), static_cast<std::size_t>(ell), Int(0));
    for (int i = 0; i < ell; ++i) {
        out.basis(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = t;
        for (int jj = 0; jj < ell; ++jj) {
            Int f = 0;
            const auto& dg = s.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
            for (int k = 0; k <= n_index; ++k) {
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), s.theta.get_mpz_t(), aN - s.exponents[static_cast<std::size_t>(k)].get_ui());
                f += Int(dg[static_cast<std::size_t>(k)]) * pw;
            }
            out.basis(static_cast<std::size_t>(ell + i), static_cast<std::size_t>(jj)) = f;
        }
    }
    out.minor_gcd = content(maximal_minors(out.basis));
    out.b = from_basis(out.basis);
    return out;
}

Real spectrum_height_constant(int ell, mpfr_prec_t prec) {
    const Real base = Real(2L * (2 * ell + 1), prec) * sqrt(Real(2L * ell, prec));
    Real r(1L, prec);
    for (int k = 0; k < ell; ++k) r *= base;
    return r;
}

}  // namespace subapprox
