#include "subapprox/lattice.hpp"

#include <cmath>

namespace subapprox {

namespace {

RatMatrix inverse(RatMatrix m) {
    const std::size_t k = m.rows;
    RatMatrix inv(k, k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) inv(i, i) = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && m(p, c) == 0) ++p;
        if (p == k) throw ValidationError("inverse: singular matrix");
        for (std::size_t j = 0; j < k; ++j) {
            std::swap(m(p, j), m(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        const Rat piv = m(c, c);
        for (std::size_t j = 0; j < k; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (i == c || m(i, c) == 0) continue;
            const Rat f = m(i, c);
            for (std::size_t j = 0; j < k; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

void gram_schmidt(const std::vector<LVector>& b, std::vector<LVector>& mu, LVector& bstar) {
    const std::size_t r = b.size();
    std::vector<LVector> star(r);
    mu.assign(r, LVector(r, 0.0L));
    bstar.assign(r, 0.0L);
    for (std::size_t i = 0; i < r; ++i) {
        star[i] = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            mu[i][j] = bstar[j] > 0 ? dot(b[i], star[j]) / bstar[j] : 0.0L;
            for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
        }
        bstar[i] = dot(star[i], star[i]);
    }
}

}  // namespace

long double dot(const LVector& x, const LVector& y) {
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

ProjectedLattice projected_lattice(const IntMatrix& y) {
    const std::size_t n = y.rows;
    const std::size_t e = y.cols;
    if (e > n) throw ValidationError("projected_lattice: more columns than rows");
    ProjectedLattice pl;
    pl.n = static_cast<int>(n);
    pl.rank = static_cast<int>(n - e);
    const IntMatrix v = e == 0 ? IntMatrix(n, n, Int(0)) : saturation_transform(y);
    pl.lifts = IntMatrix(n, n - e);
    if (e == 0) {
        for (std::size_t i = 0; i < n; ++i) pl.lifts(i, i) = 1;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n - e; ++k) pl.lifts(i, k) = v(i, e + k);
    }
    pl.basis = to_rational(pl.lifts);
    if (e > 0) {
        RatMatrix ys(n, e);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < e; ++j) ys(i, j) = v(i, j);
        RatMatrix yt(e, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < e; ++j) yt(j, i) = ys(i, j);
        const RatMatrix ginv = inverse(multiply(yt, ys));
        const RatMatrix proj = multiply(ys, multiply(ginv, yt));
        const RatMatrix sub = multiply(proj, pl.basis);
        for (std::size_t i = 0; i < pl.basis.a.size(); ++i) pl.basis.a[i] -= sub.a[i];
    }
    pl.approx.assign(n - e, LVector(n));
    for (std::size_t k = 0; k < n - e; ++k)
        for (std::size_t i = 0; i < n; ++i) pl.approx[k][i] = static_cast<long double>(pl.basis(i, k).get_d());
    return pl;
}

void lll_reduce(std::vector<LVector>& b, std::vector<std::vector<long long>>& t, long double delta) {
    const std::size_t r = b.size();
    if (t.size() != r) {
        t.assign(r, std::vector<long long>(r, 0));
        for (std::size_t i = 0; i < r; ++i) t[i][i] = 1;
    }
    std::vector<LVector> mu;
    LVector bs;
    gram_schmidt(b, mu, bs);
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < r) {
        if (++guard > 100000) break;
        for (std::size_t jj = k; jj-- > 0;) {
            const long double q = std::round(mu[k][jj]);
            if (q == 0) continue;
            const long long qi = static_cast<long long>(q);
            for (std::size_t s = 0; s < b[k].size(); ++s) b[k][s] -= q * b[jj][s];
            for (std::size_t s = 0; s < t[k].size(); ++s) t[k][s] -= qi * t[jj][s];
            for (std::size_t s = 0; s <= jj; ++s) mu[k][s] -= q * (s == jj ? 1.0L : mu[jj][s]);
        }
        if (bs[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            std::swap(t[k], t[k - 1]);
            gram_schmidt(b, mu, bs);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

void enumerate_short(const std::vector<LVector>& b, long double r2,
                     const std::function<void(const std::vector<long long>&, long double)>& visit,
                     WorkBudget* budget) {
    const std::size_t r = b.size();
    if (r == 0) return;
    std::vector<LVector> mu;
    LVector bs;
    gram_schmidt(b, mu, bs);
    for (long double x : bs)
        if (!(x > 0)) throw ValidationError("enumerate_short: dependent vectors");
    std::vector<long long> x(r, 0);
    const long double slack = r2 * 1e-15L;
    std::function<void(std::size_t, long double, bool)> level = [&](std::size_t k, long double partial,
                                                                     bool higher_zero) {
        if (budget) budget->add();
        long double c = 0;
        for (std::size_t i = k + 1; i < r; ++i) c -= mu[i][k] * static_cast<long double>(x[i]);
        const long double rem = r2 + slack - partial;
        if (rem < 0) return;
        const long double w = std::sqrt(rem / bs[k]);
        long long lo = static_cast<long long>(std::ceil(c - w));
        const long long hi = static_cast<long long>(std::floor(c + w));
        if (higher_zero && lo < 0) lo = 0;
        for (long long v = lo; v <= hi; ++v) {
            const long double d = static_cast<long double>(v) - c;
            const long double nk = partial + bs[k] * d * d;
            if (nk > r2 + slack) continue;
            x[k] = v;
            const bool zero = higher_zero && v == 0;
            if (k == 0) {
                if (!zero) visit(x, nk);
            } else {
                level(k - 1, nk, zero);
            }
        }
        x[k] = 0;
    };
    level(r - 1, 0.0L, true);
}

}  // namespace subapprox
