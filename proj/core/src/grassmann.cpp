#include "subapprox/grassmann.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace subapprox {

bool operator<(const PluckerVector& x, const PluckerVector& y) {
    if (x.n != y.n) return x.n < y.n;
    if (x.r != y.r) return x.r < y.r;
    return std::lexicographical_compare(x.coords.begin(), x.coords.end(), y.coords.begin(), y.coords.end());
}

Real RationalSubspace::height(mpfr_prec_t prec) const { return sqrt(Real(height_squared, prec)); }

std::string format_relation(const PluckerRelation& rel, const std::string& var) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : rel) {
        int c = t.coef;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (std::abs(c) != 1) os << std::abs(c) << "*";
        os << var << (t.a + 1) << "*" << var << (t.b + 1);
        first = false;
    }
    return os.str();
}

std::vector<Int> normalize_plucker(std::vector<Int> v) {
    Int g = content(v);
    if (g == 0) return v;
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

RationalSubspace from_basis(const IntMatrix& m) {
    if (m.cols == 0 || m.cols > m.rows) throw ValidationError("from_basis: need 1 <= e <= n columns");
    if (rank(m) != m.cols) throw ValidationError("from_basis: dependent columns");
    RationalSubspace b;
    b.n = static_cast<int>(m.rows);
    b.e = static_cast<int>(m.cols);
    b.zbasis = saturate_lattice(m);
    b.plucker.n = b.n;
    b.plucker.r = b.e;
    b.plucker.coords = normalize_plucker(maximal_minors(b.zbasis));
    b.height_squared = 0;
    for (const auto& x : b.plucker.coords) b.height_squared += x * x;
    return b;
}

RationalSubspace from_basis(const RatMatrix& m) { return from_basis(clear_denominators(m)); }

RationalSubspace from_plucker(const std::vector<Int>& coords, int n, int r) {
    if (r < 1 || r > n || coords.size() != binomial_size(n, r))
        throw ValidationError("from_plucker: wrong number of coordinates");
    if (is_degenerate(coords)) throw ValidationError("from_plucker: zero vector");
    const auto sets = subsets_lex(r, n);
    std::size_t pivot = 0;
    while (coords[pivot] == 0) ++pivot;
    const IndexSet& I = sets[pivot];
    // Contractions w_J for J = I minus one element span the subspace.
    std::vector<std::vector<Int>> cols;
    for (std::size_t s = 0; s < I.size(); ++s) {
        IndexSet J;
        for (std::size_t t = 0; t < I.size(); ++t)
            if (t != s) J.push_back(I[t]);
        std::vector<Int> w(static_cast<std::size_t>(n), Int(0));
        for (int k = 1; k <= n; ++k) {
            if (std::find(J.begin(), J.end(), k) != J.end()) continue;
            IndexSet K = J;
            K.insert(std::upper_bound(K.begin(), K.end(), k), k);
            long above = 0;
            for (int j : J)
                if (j > k) ++above;
            Int x = coords[lex_rank(K, n)];
            w[static_cast<std::size_t>(k - 1)] = (above % 2) ? Int(-x) : x;
        }
        cols.push_back(std::move(w));
    }
    RationalSubspace b = from_basis(IntMatrix::from_columns(cols));
    if (b.plucker.coords != normalize_plucker(coords))
        throw ValidationError("from_plucker: vector does not satisfy the Plücker relations");
    return b;
}

PluckerRelationSet plucker_relations(int r, int n) {
    if (r < 1 || r > n - 1) throw ValidationError("plucker_relations: need 1 <= r <= n-1");
    PluckerRelationSet out;
    out.r = r;
    out.n = n;
    std::set<PluckerRelation> seen;
    for (const auto& I : subsets_lex(r - 1, n)) {
        for (const auto& J : subsets_lex(r + 1, n)) {
            std::map<std::pair<int, int>, int> acc;
            for (std::size_t k = 0; k < J.size(); ++k) {
                const int jk = J[k];
                if (std::find(I.begin(), I.end(), jk) != I.end()) continue;
                IndexSet left = I;
                left.insert(std::upper_bound(left.begin(), left.end(), jk), jk);
                IndexSet right;
                for (int j : J)
                    if (j != jk) right.push_back(j);
                const long expo = static_cast<long>(k + 1) + inversion_count(I, IndexSet{jk});
                const int sign = (expo % 2) ? -1 : 1;
                int a = static_cast<int>(lex_rank(left, n));
                int b = static_cast<int>(lex_rank(right, n));
                if (a > b) std::swap(a, b);
                acc[{a, b}] += sign;
            }
            PluckerRelation rel;
            for (const auto& [ab, c] : acc)
                if (c != 0) rel.push_back(PluckerTerm{c, ab.first, ab.second});
            if (rel.empty()) continue;
            std::sort(rel.begin(), rel.end());
            if (rel.front().coef < 0)
                for (auto& t : rel) t.coef = -t.coef;
            if (seen.insert(rel).second) out.relations.push_back(rel);
        }
    }
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

bool is_degenerate(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool check_relations(const std::vector<Int>& v, const PluckerRelationSet& rels) {
    if (v.size() != binomial_size(rels.n, rels.r)) throw ValidationError("check_relations: wrong length");
    for (const auto& rel : rels.relations) {
        Int s = 0;
        for (const auto& t : rel) s += t.coef * v[static_cast<std::size_t>(t.a)] * v[static_cast<std::size_t>(t.b)];
        if (s != 0) return false;
    }
    return true;
}

RelationCheck check_relations(const std::vector<Real>& v, const PluckerRelationSet& rels, const Real& tolerance) {
    if (v.size() != binomial_size(rels.n, rels.r)) throw ValidationError("check_relations: wrong length");
    const mpfr_prec_t prec = v.empty() ? kDefaultPrecision : v[0].precision();
    RelationCheck rc;
    rc.max_residual = Real(0L, prec);
    rc.tolerance = tolerance;
    rc.degenerate = std::all_of(v.begin(), v.end(), [](const Real& x) { return x.is_zero(); });
    for (const auto& rel : rels.relations) {
        Real s(prec);
        for (const auto& t : rel)
            s += v[static_cast<std::size_t>(t.a)] * v[static_cast<std::size_t>(t.b)] * static_cast<long>(t.coef);
        s = abs(s);
        if (s > rc.max_residual) rc.max_residual = s;
    }
    rc.ok = rc.max_residual <= tolerance;
    return rc;
}

RelationCheck check_relations(const std::vector<Real>& v, const PluckerRelationSet& rels) {
    const mpfr_prec_t prec = v.empty() ? kDefaultPrecision : v[0].precision();
    return check_relations(v, rels, pow2(32 - static_cast<long>(prec), prec));
}

RatMatrix compound_matrix(const RatMatrix& phi, int e) {
    const int n = static_cast<int>(phi.rows);
    if (phi.cols != phi.rows) throw ValidationError("compound_matrix: square matrix expected");
    const auto sets = subsets_lex(e, n);
    RatMatrix c(sets.size(), sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) c(i, j) = determinant(submatrix(phi, sets[i], sets[j]));
    return c;
}

ImageResult image_subspace(const RatMatrix& phi, const RationalSubspace& b) {
    if (phi.rows != static_cast<std::size_t>(b.n) || phi.cols != phi.rows)
        throw ValidationError("image_subspace: phi must be n x n");
    RatMatrix img = multiply(phi, to_rational(b.zbasis));
    if (rank(img) != static_cast<std::size_t>(b.e))
        throw ValidationError("image_subspace: phi drops the dimension of B");
    ImageResult res;
    res.image = from_basis(img);
    // c = k * ||Lambda^e phi||_2 bound, k the lcm of the compound's denominators.
    RatMatrix comp = compound_matrix(phi, b.e);
    Int k = 1;
    for (const auto& x : comp.a) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.get_den_mpz_t());
    Rat norm1 = 0, norminf = 0, frob = 0;
    for (std::size_t i = 0; i < comp.rows; ++i) {
        Rat row = 0;
        for (std::size_t j = 0; j < comp.cols; ++j) {
            row += abs(comp(i, j));
            frob += comp(i, j) * comp(i, j);
        }
        norminf = std::max(norminf, row);
    }
    for (std::size_t j = 0; j < comp.cols; ++j) {
        Rat col = 0;
        for (std::size_t i = 0; i < comp.rows; ++i) col += abs(comp(i, j));
        norm1 = std::max(norm1, col);
    }
    Rat prod = norm1 * norminf;
    Rat op2 = std::min(prod, frob);
    res.c_squared = Rat(k * k) * op2;
    res.c = sqrt(Real(res.c_squared, kDefaultPrecision));
    res.bound_holds = Rat(res.image.height_squared) <= res.c_squared * Rat(b.height_squared);
    return res;
}

bool canonical_equal(const RationalSubspace& b1, const RationalSubspace& b2) {
    if (b1.n != b2.n || b1.e != b2.e) throw ValidationError("canonical_equal: dimension mismatch");
    return b1.plucker.coords == b2.plucker.coords;
}

std::string to_json(const RationalSubspace& b) {
    nlohmann::ordered_json j;
    j["n"] = b.n;
    j["e"] = b.e;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < b.zbasis.rows; ++i) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < b.zbasis.cols; ++c) row.push_back(b.zbasis(i, c).get_str());
        rows.push_back(row);
    }
    j["zbasis"] = rows;
    std::vector<std::string> pl;
    for (const auto& x : b.plucker.coords) pl.push_back(x.get_str());
    j["plucker"] = pl;
    j["height_squared"] = b.height_squared.get_str();
    return j.dump();
}

RationalSubspace rational_subspace_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("invalid JSON: ") + ex.what());
    }
    const int n = j.at("n").get<int>();
    const int e = j.at("e").get<int>();
    const auto rows = j.at("zbasis").get<std::vector<std::vector<std::string>>>();
    if (rows.size() != static_cast<std::size_t>(n)) throw ValidationError("zbasis row count != n");
    IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(e));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(e)) throw ValidationError("zbasis column count != e");
        for (std::size_t c = 0; c < rows[i].size(); ++c) m(i, c) = Int(rows[i][c]);
    }
    RationalSubspace b = from_basis(m);
    if (j.contains("plucker")) {
        std::vector<Int> pl;
        for (const auto& s : j["plucker"].get<std::vector<std::string>>()) pl.emplace_back(s);
        if (pl != b.plucker.coords) throw ValidationError("plucker field disagrees with zbasis");
    }
    if (j.contains("height_squared") && Int(j["height_squared"].get<std::string>()) != b.height_squared)
        throw ValidationError("height_squared field disagrees with zbasis");
    return b;
}

}  // namespace subapprox
