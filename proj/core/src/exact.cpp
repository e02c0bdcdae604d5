#include "subapprox/exact.hpp"

#include <algorithm>
#include <numeric>

namespace subapprox {

bool valid_index_set(const IndexSet& s, int n) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > n) return false;
        if (i > 0 && s[i] <= s[i - 1]) return false;
    }
    return true;
}

std::vector<IndexSet> subsets_lex(int r, int n) {
    std::vector<IndexSet> out;
    if (r < 0 || r > n) return out;
    IndexSet s(static_cast<std::size_t>(r));
    std::iota(s.begin(), s.end(), 1);
    while (true) {
        out.push_back(s);
        int i = r - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == n - r + i + 1) --i;
        if (i < 0) break;
        ++s[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < r; ++k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] + 1;
    }
    return out;
}

std::size_t binomial_size(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::size_t lex_rank(const IndexSet& s, int n) {
    const int r = static_cast<int>(s.size());
    std::size_t rank = 0;
    int prev = 0;
    for (int t = 0; t < r; ++t) {
        for (int v = prev + 1; v < s[static_cast<std::size_t>(t)]; ++v) rank += binomial_size(n - v, r - t - 1);
        prev = s[static_cast<std::size_t>(t)];
    }
    return rank;
}

IndexSet complement(const IndexSet& s, int n) {
    IndexSet c;
    std::size_t k = 0;
    for (int v = 1; v <= n; ++v) {
        if (k < s.size() && s[k] == v) {
            ++k;
        } else {
            c.push_back(v);
        }
    }
    return c;
}

long inversion_count(const IndexSet& I, const IndexSet& J) {
    long c = 0;
    for (int i : I)
        for (int j : J)
            if (i > j) ++c;
    return c;
}

long ell(const IndexSet& I, int n) { return inversion_count(I, complement(I, n)); }

// ---------------------------------------------------------------------------

Int determinant(const IntMatrix& m0) {
    if (m0.rows != m0.cols) throw ValidationError("determinant of a non-square matrix");
    const std::size_t n = m0.rows;
    if (n == 0) return Int(1);
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
    if (m.rows != m.cols) throw ValidationError("determinant of a non-square matrix");
    IntMatrix z(m.rows, m.cols);
    Rat scale = 1;
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols; ++j) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
        scale *= l;
    }
    Rat d(determinant(z));
    d /= scale;
    d.canonicalize();
    return d;
}

Real determinant(const Matrix<Real>& m0) {
    if (m0.rows != m0.cols) throw ValidationError("determinant of a non-square matrix");
    const std::size_t n = m0.rows;
    mpfr_prec_t prec = n ? m0.a[0].precision() : kDefaultPrecision;
    if (n == 0) return Real(1L, prec);
    Matrix<Real> m = m0;
    Real det(1L, prec);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (abs(m(i, k)) > abs(m(p, k))) p = i;
        if (m(p, k).is_zero()) return Real(0L, prec);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Real f = m(i, k) / m(k, k);
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

Int determinant_cofactor(const IntMatrix& m) {
    const std::size_t n = m.rows;
    if (n == 0) return Int(1);
    if (n == 1) return m(0, 0);
    Int d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t c = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, c++) = m(i, k);
            }
        }
        Int t = m(0, j) * determinant_cofactor(minor);
        if (j % 2) d -= t; else d += t;
    }
    return d;
}

namespace {

template <class T>
Matrix<T> submatrix_impl(const Matrix<T>& m, const IndexSet& rows, const IndexSet& cols) {
    Matrix<T> s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s(i, j) = m(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[j] - 1));
    return s;
}

IndexSet iota_set(std::size_t r) {
    IndexSet s(r);
    std::iota(s.begin(), s.end(), 1);
    return s;
}

template <class T>
std::vector<T> minors_impl(const Matrix<T>& m) {
    if (m.cols > m.rows) throw ValidationError("more columns than rows");
    const IndexSet all_cols = iota_set(m.cols);
    std::vector<T> out;
    for (const auto& I : subsets_lex(static_cast<int>(m.cols), static_cast<int>(m.rows)))
        out.push_back(determinant(submatrix_impl(m, I, all_cols)));
    return out;
}

}  // namespace

IntMatrix submatrix(const IntMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    return submatrix_impl(m, rows, cols);
}
RatMatrix submatrix(const RatMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    return submatrix_impl(m, rows, cols);
}

std::vector<Int> maximal_minors(const IntMatrix& m) { return minors_impl(m); }
std::vector<Rat> maximal_minors(const RatMatrix& m) { return minors_impl(m); }
std::vector<Real> maximal_minors(const Matrix<Real>& m) { return minors_impl(m); }

std::vector<int> laplace_signs(int n, const IndexSet& J) {
    const long lj = ell(J, n);
    std::vector<int> s;
    for (const auto& I : subsets_lex(static_cast<int>(J.size()), n)) s.push_back(((ell(I, n) + lj) % 2) ? -1 : 1);
    return s;
}

Rat laplace_determinant(const RatMatrix& m, const IndexSet& J) {
    if (m.rows != m.cols) throw ValidationError("laplace_determinant needs a square matrix");
    const int n = static_cast<int>(m.rows);
    if (!valid_index_set(J, n)) throw ValidationError("invalid column index set");
    const IndexSet Jc = complement(J, n);
    const auto signs = laplace_signs(n, J);
    const auto sets = subsets_lex(static_cast<int>(J.size()), n);
    Rat total = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const IndexSet Ic = complement(sets[k], n);
        Rat t = determinant(submatrix(m, sets[k], J)) * determinant(submatrix(m, Ic, Jc));
        if (signs[k] < 0) total -= t; else total += t;
    }
    return total;
}

std::vector<int> pairing_signs(int n, int a) {
    std::vector<int> s;
    for (const auto& I : subsets_lex(a, n)) s.push_back(ell(I, n) % 2 ? -1 : 1);
    return s;
}

namespace {

std::vector<std::size_t> pairing_partners(int n, int a) {
    std::vector<std::size_t> p;
    for (const auto& I : subsets_lex(a, n)) p.push_back(lex_rank(complement(I, n), n));
    return p;
}

void check_pairing_sizes(std::size_t nz, std::size_t ne, int n, int a) {
    if (a < 0 || a > n || nz != binomial_size(n, a) || ne != binomial_size(n, n - a))
        throw ValidationError("pairing_determinant: coordinate vector sizes do not match C(n,a), C(n,n-a)");
}

}  // namespace

Rat pairing_determinant(const std::vector<Rat>& zeta, const std::vector<Rat>& eta, int n, int a) {
    check_pairing_sizes(zeta.size(), eta.size(), n, a);
    const auto s = pairing_signs(n, a);
    const auto p = pairing_partners(n, a);
    Rat total = 0;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        if (s[i] < 0) total -= zeta[i] * eta[p[i]]; else total += zeta[i] * eta[p[i]];
    }
    return total;
}

Int pairing_determinant(const std::vector<Int>& zeta, const std::vector<Int>& eta, int n, int a) {
    check_pairing_sizes(zeta.size(), eta.size(), n, a);
    const auto s = pairing_signs(n, a);
    const auto p = pairing_partners(n, a);
    Int total = 0;
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        if (s[i] < 0) total -= zeta[i] * eta[p[i]]; else total += zeta[i] * eta[p[i]];
    }
    return total;
}

Real pairing_determinant(const std::vector<Real>& zeta, const std::vector<Int>& eta, int n, int a) {
    check_pairing_sizes(zeta.size(), eta.size(), n, a);
    const auto s = pairing_signs(n, a);
    const auto p = pairing_partners(n, a);
    const mpfr_prec_t prec = zeta.empty() ? kDefaultPrecision : zeta[0].precision();
    Real total(prec);
    for (std::size_t i = 0; i < zeta.size(); ++i) {
        Real t = zeta[i] * Real(eta[p[i]], prec);
        if (s[i] < 0) total -= t; else total += t;
    }
    return total;
}

// ---------------------------------------------------------------------------

Real GramValue::value(mpfr_prec_t prec) const { return sqrt(Real(value_squared, prec)); }

GramValue generalized_determinant(const std::vector<std::vector<Rat>>& family) {
    const std::size_t l = family.size();
    if (l == 0) return GramValue{Rat(1)};
    const std::size_t n = family[0].size();
    for (const auto& v : family)
        if (v.size() != n) throw ValidationError("generalized_determinant: vectors of unequal length");
    RatMatrix g(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i; j < l; ++j) {
            Rat s = 0;
            for (std::size_t k = 0; k < n; ++k) s += family[i][k] * family[j][k];
            g(i, j) = s;
            g(j, i) = s;
        }
    return GramValue{determinant(g)};
}

Real generalized_determinant(const std::vector<std::vector<Real>>& family) {
    const std::size_t l = family.size();
    if (l == 0) return Real(1L, kDefaultPrecision);
    const std::size_t n = family[0].size();
    const mpfr_prec_t prec = n ? family[0][0].precision() : kDefaultPrecision;
    std::vector<std::vector<Real>> q = family;
    Real d(1L, prec);
    for (std::size_t k = 0; k < l; ++k) {
        if (q[k].size() != n) throw ValidationError("generalized_determinant: vectors of unequal length");
        // Two passes of modified Gram-Schmidt against earlier unit vectors.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < k; ++i) {
                Real dot(prec);
                for (std::size_t t = 0; t < n; ++t) dot += q[i][t] * q[k][t];
                for (std::size_t t = 0; t < n; ++t) q[k][t] -= dot * q[i][t];
            }
        }
        Real nrm(prec);
        for (std::size_t t = 0; t < n; ++t) nrm += q[k][t] * q[k][t];
        nrm = sqrt(nrm);
        d *= nrm;
        if (nrm.is_zero()) return Real(0L, prec);
        for (std::size_t t = 0; t < n; ++t) q[k][t] /= nrm;
    }
    return d;
}

RatMatrix multiply(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols != y.rows) throw ValidationError("multiply: dimension mismatch");
    RatMatrix r(x.rows, y.cols, Rat(0));
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k)
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw ValidationError("multiply: dimension mismatch");
    IntMatrix r(x.rows, y.cols, Int(0));
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k)
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (std::size_t k = 0; k < m.a.size(); ++k) r.a[k] = Rat(m.a[k]);
    return r;
}

Rat block_determinant_commuting(const RatMatrix& a1, const RatMatrix& a2, const RatMatrix& a3,
                                const RatMatrix& a4) {
    const std::size_t l = a1.rows;
    for (const RatMatrix* b : {&a1, &a2, &a3, &a4})
        if (b->rows != l || b->cols != l) throw ValidationError("block_determinant_commuting: blocks must be l x l");
    if (!(multiply(a1, a2) == multiply(a2, a1))) throw ValidationError("block_determinant_commuting: A1 A2 != A2 A1");
    RatMatrix p = multiply(a4, a1);
    RatMatrix q = multiply(a3, a2);
    for (std::size_t k = 0; k < p.a.size(); ++k) p.a[k] -= q.a[k];
    return determinant(p);
}

// ---------------------------------------------------------------------------

std::size_t rank(const RatMatrix& m0) {
    RatMatrix m = m0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

IntMatrix clear_denominators(const RatMatrix& m) {
    IntMatrix z(m.rows, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
        Int l = 1;
        for (std::size_t i = 0; i < m.rows; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t i = 0; i < m.rows; ++i) z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    return z;
}

Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

namespace {

// Row Hermite normal form of the row lattice of t (in place); returns the rank.
std::size_t row_hermite_inplace(IntMatrix& t) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < t.cols && r < t.rows; ++c) {
        while (true) {
            std::size_t best = t.rows;
            for (std::size_t i = r; i < t.rows; ++i) {
                if (t(i, c) == 0) continue;
                if (best == t.rows || abs(t(i, c)) < abs(t(best, c))) best = i;
            }
            if (best == t.rows) break;
            if (best != r)
                for (std::size_t j = 0; j < t.cols; ++j) std::swap(t(r, j), t(best, j));
            bool done = true;
            for (std::size_t i = r + 1; i < t.rows; ++i) {
                if (t(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), t(i, c).get_mpz_t(), t(r, c).get_mpz_t());
                for (std::size_t j = c; j < t.cols; ++j) t(i, j) -= q * t(r, j);
                if (t(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (t(r, c) == 0) continue;
        if (t(r, c) < 0)
            for (std::size_t j = 0; j < t.cols; ++j) t(r, j) = -t(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), t(i, c).get_mpz_t(), t(r, c).get_mpz_t());
            if (q != 0)
                for (std::size_t j = c; j < t.cols; ++j) t(i, j) -= q * t(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

IntMatrix column_hermite_form(const IntMatrix& m) {
    IntMatrix t = transpose(m);
    const std::size_t r = row_hermite_inplace(t);
    if (r != m.cols) throw ValidationError("column_hermite_form: columns are dependent");
    return transpose(t);
}

IntMatrix saturation_transform(const IntMatrix& m) {
    const std::size_t n = m.rows;
    const std::size_t e = m.cols;
    if (e > n) throw ValidationError("saturate_lattice: more columns than rows");
    IntMatrix w = m;
    IntMatrix v(n, n, Int(0));
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1;
    // Row operations on w, mirrored as inverse column operations on v.
    for (std::size_t c = 0; c < e; ++c) {
        const std::size_t r = c;
        while (true) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i) {
                if (w(i, c) == 0) continue;
                if (best == n || abs(w(i, c)) < abs(w(best, c))) best = i;
            }
            if (best == n) throw ValidationError("saturate_lattice: rank-deficient input");
            if (best != r) {
                for (std::size_t j = 0; j < e; ++j) std::swap(w(r, j), w(best, j));
                for (std::size_t i = 0; i < n; ++i) std::swap(v(i, r), v(i, best));
            }
            bool done = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (w(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w(i, c).get_mpz_t(), w(r, c).get_mpz_t());
                for (std::size_t j = c; j < e; ++j) w(i, j) -= q * w(r, j);
                for (std::size_t k = 0; k < n; ++k) v(k, r) += q * v(k, i);
                if (w(i, c) != 0) done = false;
            }
            if (done) break;
        }
    }
    return v;
}

IntMatrix saturate_lattice(const IntMatrix& m) {
    const IntMatrix v = saturation_transform(m);
    IntMatrix basis(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) basis(i, j) = v(i, j);
    return column_hermite_form(basis);
}

Int gram_determinant(const IntMatrix& m) { return determinant(multiply(transpose(m), m)); }

std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace subapprox
