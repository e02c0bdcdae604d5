#include "subapprox/angles.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace subapprox {

namespace {

RealVector column_of(const RealMatrix& m, std::size_t j) { return m.column(j); }

void axpy(RealVector& y, const Real& a, const RealVector& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= a * x[i];
}

}  // namespace

Real dot(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) throw ValidationError("dot: length mismatch");
    mpfr_prec_t prec = a.empty() ? kDefaultPrecision : a[0].precision();
    Real s(prec);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Real norm(const RealVector& a) { return sqrt(dot(a, a)); }

RealVector to_real_vector(const std::vector<Int>& v, mpfr_prec_t prec) {
    RealVector r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x, prec);
    return r;
}

RealVector to_real_vector(const std::vector<Rat>& v, mpfr_prec_t prec) {
    RealVector r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x, prec);
    return r;
}

RealSubspace make_real_subspace(const RealMatrix& columns, std::string provenance) {
    if (columns.cols == 0 || columns.cols > columns.rows)
        throw ValidationError("make_real_subspace: need 1 <= d <= n columns");
    const mpfr_prec_t prec = columns.a[0].precision();
    const Real dep_tol = pow2(32 - static_cast<long>(prec), prec);
    std::vector<RealVector> q;
    for (std::size_t j = 0; j < columns.cols; ++j) {
        RealVector v = column_of(columns, j);
        Real n0 = norm(v);
        if (n0.is_zero()) throw ValidationError("make_real_subspace: zero column");
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) axpy(v, dot(u, v), u);
        Real n1 = norm(v);
        if (n1 <= dep_tol * n0) throw ValidationError("make_real_subspace: dependent columns");
        for (auto& x : v) x /= n1;
        q.push_back(std::move(v));
    }
    RealSubspace s;
    s.n = static_cast<int>(columns.rows);
    s.d = static_cast<int>(columns.cols);
    s.onb = RealMatrix::from_columns(q);
    s.provenance = std::move(provenance);
    return s;
}

RealSubspace to_real_subspace(const RationalSubspace& b, mpfr_prec_t prec) {
    RealMatrix m(b.zbasis.rows, b.zbasis.cols);
    for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] = Real(b.zbasis.a[k], prec);
    return make_real_subspace(m, "rational");
}

Real orthonormality_defect(const RealSubspace& a) {
    const mpfr_prec_t prec = a.precision();
    Real worst(0L, prec);
    for (std::size_t i = 0; i < a.onb.cols; ++i)
        for (std::size_t j = 0; j < a.onb.cols; ++j) {
            Real g = dot(a.onb.column(i), a.onb.column(j));
            if (i == j) g -= Real(1L, prec);
            g = abs(g);
            if (g > worst) worst = g;
        }
    return worst;
}

Real vector_angle(const RealVector& x, const RealVector& y) {
    Real nx = norm(x), ny = norm(y);
    if (nx.is_zero() || ny.is_zero()) throw ValidationError("vector_angle: zero vector");
    Real c = dot(x, y) / (ny * ny);
    RealVector r = x;
    axpy(r, c, y);
    Real s = norm(r) / nx;
    Real one(1L, s.precision());
    return s > one ? one : s;
}

void jacobi_svd(RealMatrix& w, RealMatrix& v, std::vector<Real>& sigma) {
    const std::size_t m = w.rows, k = w.cols;
    const mpfr_prec_t prec = w.a.empty() ? kDefaultPrecision : w.a[0].precision();
    v = RealMatrix(k, k, Real(0L, prec));
    for (std::size_t i = 0; i < k; ++i) v(i, i) = Real(1L, prec);
    const Real tol = pow2(10 - static_cast<long>(prec), prec);
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                Real alpha(prec), beta(prec), gamma(prec);
                for (std::size_t r = 0; r < m; ++r) {
                    alpha += w(r, i) * w(r, i);
                    beta += w(r, j) * w(r, j);
                    gamma += w(r, i) * w(r, j);
                }
                if (gamma.is_zero() || abs(gamma) <= tol * sqrt(alpha * beta)) continue;
                rotated = true;
                Real zeta = (beta - alpha) / (gamma * 2L);
                Real t = Real(1L, prec) / (abs(zeta) + sqrt(Real(1L, prec) + zeta * zeta));
                if (zeta.sign() < 0) t = -t;
                Real c = Real(1L, prec) / sqrt(Real(1L, prec) + t * t);
                Real s = c * t;
                for (std::size_t r = 0; r < m; ++r) {
                    Real wi = w(r, i), wj = w(r, j);
                    w(r, i) = c * wi - s * wj;
                    w(r, j) = s * wi + c * wj;
                }
                for (std::size_t r = 0; r < k; ++r) {
                    Real vi = v(r, i), vj = v(r, j);
                    v(r, i) = c * vi - s * vj;
                    v(r, j) = s * vi + c * vj;
                }
            }
        if (!rotated) break;
    }
    sigma.clear();
    for (std::size_t j = 0; j < k; ++j) {
        Real s(prec);
        for (std::size_t r = 0; r < m; ++r) s += w(r, j) * w(r, j);
        sigma.push_back(sqrt(s));
    }
}

namespace {

AngleProfile angles_ordered(const RealSubspace& a, const RealSubspace& b) {
    // requires a.d <= b.d
    const std::size_t n = static_cast<std::size_t>(a.n);
    const std::size_t d = static_cast<std::size_t>(a.d), e = static_cast<std::size_t>(b.d);
    const mpfr_prec_t prec = std::max(a.precision(), b.precision());
    RealMatrix c(e, d, Real(0L, prec));
    for (std::size_t i = 0; i < e; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Real s(prec);
            for (std::size_t r = 0; r < n; ++r) s += b.onb(r, i) * a.onb(r, j);
            c(i, j) = s;
        }
    RealMatrix res(n, d, Real(0L, prec));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < d; ++j) {
            Real s = a.onb(r, j);
            for (std::size_t i = 0; i < e; ++i) s -= b.onb(r, i) * c(i, j);
            res(r, j) = s;
        }
    RealMatrix v;
    std::vector<Real> sigma;
    jacobi_svd(res, v, sigma);
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] < sigma[y]; });

    AngleProfile p;
    p.t = static_cast<int>(d);
    const Real one(1L, prec);
    const Real tiny = pow2(16 - static_cast<long>(prec), prec);
    for (std::size_t idx : order) {
        Real s = sigma[idx] > one ? one : sigma[idx];
        p.psis.push_back(s);
        RealVector x(n, Real(0L, prec));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < d; ++j) x[r] += a.onb(r, j) * v(j, idx);
        Real nx = norm(x);
        for (auto& t : x) t /= nx;
        RealVector y(n, Real(0L, prec));
        for (std::size_t i = 0; i < e; ++i) {
            Real ci(prec);
            for (std::size_t j = 0; j < d; ++j) ci += c(i, j) * v(j, idx);
            for (std::size_t r = 0; r < n; ++r) y[r] += b.onb(r, i) * ci;
        }
        Real ny = norm(y);
        if (ny <= tiny) {
            // X is orthogonal to B: take any unit vector of B orthogonal to earlier witnesses.
            for (std::size_t i = 0; i < e; ++i) {
                RealVector cand = b.onb.column(i);
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& u : p.y) axpy(cand, dot(u, cand), u);
                Real nc = norm(cand);
                if (nc > Real(0.5, prec)) {
                    y = cand;
                    ny = nc;
                    break;
                }
            }
        }
        for (auto& t : y) t /= ny;
        p.x.push_back(std::move(x));
        p.y.push_back(std::move(y));
    }
    return p;
}

}  // namespace

AngleProfile principal_angles(const RealSubspace& a, const RealSubspace& b) {
    if (a.n != b.n) throw ValidationError("principal_angles: ambient dimension mismatch");
    if (a.d < 1 || b.d < 1) throw ValidationError("principal_angles: empty subspace");
    if (a.d <= b.d) return angles_ordered(a, b);
    AngleProfile p = angles_ordered(b, a);
    std::swap(p.x, p.y);
    return p;
}

AngleProfile principal_angles(const RealSubspace& a, const RationalSubspace& b) {
    return principal_angles(a, to_real_subspace(b, a.precision()));
}

AngleProfile principal_angles(const RationalSubspace& a, const RationalSubspace& b, mpfr_prec_t prec) {
    if (a.n != b.n) throw ValidationError("principal_angles: ambient dimension mismatch");
    AngleProfile p = principal_angles(to_real_subspace(a, prec), to_real_subspace(b, prec));
    IntMatrix both(static_cast<std::size_t>(a.n), static_cast<std::size_t>(a.e + b.e));
    for (std::size_t i = 0; i < both.rows; ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(a.e); ++j) both(i, j) = a.zbasis(i, j);
        for (std::size_t j = 0; j < static_cast<std::size_t>(b.e); ++j) both(i, j + static_cast<std::size_t>(a.e)) = b.zbasis(i, j);
    }
    const int inter = a.e + b.e - static_cast<int>(rank(both));
    p.exact_zero_count = inter;
    for (int i = 0; i < inter && i < p.t; ++i) p.psis[static_cast<std::size_t>(i)] = Real(0L, prec);
    return p;
}

Real psi(const RealSubspace& a, const RationalSubspace& b, int j) {
    AngleProfile p = principal_angles(a, b);
    if (j < 1 || j > p.t) throw ValidationError("psi: index out of range");
    return p.psis[static_cast<std::size_t>(j - 1)];
}

PhiValue phi(const RealSubspace& a, const RealSubspace& b) {
    if (a.d + b.d > a.n) throw ValidationError("phi: requires d + e <= n");
    AngleProfile p = principal_angles(a, b);
    const mpfr_prec_t prec = std::max(a.precision(), b.precision());
    PhiValue out;
    out.by_product = Real(1L, prec);
    for (const auto& s : p.psis) out.by_product *= s;
    std::vector<RealVector> fx, fy, fall;
    for (std::size_t j = 0; j < a.onb.cols; ++j) fx.push_back(a.onb.column(j));
    for (std::size_t j = 0; j < b.onb.cols; ++j) fy.push_back(b.onb.column(j));
    fall = fx;
    fall.insert(fall.end(), fy.begin(), fy.end());
    out.value = generalized_determinant(fall) / (generalized_determinant(fx) * generalized_determinant(fy));
    return out;
}

PhiValue phi(const RealSubspace& a, const RationalSubspace& b) { return phi(a, to_real_subspace(b, a.precision())); }

Real phi_complementary(const RealSubspace& a, const RationalSubspace& b) {
    if (a.n != b.n || a.d + b.e != a.n) throw ValidationError("phi_complementary: requires d + e = n");
    const mpfr_prec_t prec = a.precision();
    const std::size_t n = static_cast<std::size_t>(a.n);
    RealMatrix m(n, n);
    std::vector<RealVector> fx;
    for (std::size_t j = 0; j < a.onb.cols; ++j) fx.push_back(a.onb.column(j));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(a.d); ++j) m(r, j) = a.onb(r, j);
        for (std::size_t j = 0; j < static_cast<std::size_t>(b.e); ++j)
            m(r, j + static_cast<std::size_t>(a.d)) = Real(b.zbasis(r, j), prec);
    }
    Real c = Real(1L, prec) / generalized_determinant(fx);
    return abs(determinant(m)) * c / b.height(prec);
}

Projection project_onto(const RealSubspace& f, const RealVector& x) {
    if (x.size() != static_cast<std::size_t>(f.n)) throw ValidationError("project_onto: length mismatch");
    const mpfr_prec_t prec = std::max(f.precision(), x.empty() ? kDefaultPrecision : x[0].precision());
    Projection p;
    p.image.assign(x.size(), Real(0L, prec));
    for (std::size_t j = 0; j < f.onb.cols; ++j) {
        RealVector q = f.onb.column(j);
        Real c = dot(q, x);
        for (std::size_t i = 0; i < x.size(); ++i) p.image[i] += c * q[i];
    }
    Real nx = norm(x);
    if (nx.is_zero()) throw ValidationError("project_onto: zero vector");
    if (norm(p.image) <= pow2(16 - static_cast<long>(prec), prec) * nx)
        throw ValidationError("project_onto: X is orthogonal to F, angle undefined");
    RealVector r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= p.image[i];
    p.angle = norm(r) / nx;
    return p;
}

int probable_intersection_dimension(const AngleProfile& p, mpfr_prec_t prec) {
    const Real thr = pow2(64 - static_cast<long>(prec), prec);
    int k = 0;
    for (const auto& s : p.psis) {
        if (s < thr) ++k; else break;
    }
    return k;
}

std::string to_json(const AngleProfile& p) {
    nlohmann::ordered_json j;
    j["t"] = p.t;
    std::vector<std::string> ps;
    for (const auto& s : p.psis) ps.push_back(s.to_hex());
    j["psis"] = ps;
    auto vecs = [](const std::vector<RealVector>& vs) {
        std::vector<std::vector<std::string>> out;
        for (const auto& v : vs) {
            std::vector<std::string> row;
            for (const auto& x : v) row.push_back(x.to_hex());
            out.push_back(row);
        }
        return out;
    };
    j["x"] = vecs(p.x);
    j["y"] = vecs(p.y);
    j["exact_zero_count"] = p.exact_zero_count;
    return j.dump();
}

}  // namespace subapprox
