#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subapprox/real.hpp"

namespace subapprox {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix.
template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> v;
        v.reserve(rows);
        for (std::size_t i = 0; i < rows; ++i) v.push_back((*this)(i, j));
        return v;
    }
    void set_column(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols_) {
        if (cols_.empty()) return Matrix();
        Matrix m(cols_[0].size(), cols_.size());
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            if (cols_[j].size() != m.rows) throw ValidationError("columns of unequal length");
            m.set_column(j, cols_[j]);
        }
        return m;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// ---------------------------------------------------------------------------
// Index sets: strictly increasing 1-based subsets of {1..n}.

using IndexSet = std::vector<int>;

bool valid_index_set(const IndexSet& s, int n);
// All r-subsets of {1..n} in lexicographic order.
std::vector<IndexSet> subsets_lex(int r, int n);
// Position of s in subsets_lex(|s|, n), 0-based.
std::size_t lex_rank(const IndexSet& s, int n);
IndexSet complement(const IndexSet& s, int n);
Int binomial(unsigned long n, unsigned long k);
std::size_t binomial_size(int n, int k);

// #{(i,j) in I x J : i > j}
long inversion_count(const IndexSet& I, const IndexSet& J);
// inversion_count(I, complement(I))
long ell(const IndexSet& I, int n);

// ---------------------------------------------------------------------------
// Determinants and minors.

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
// Gaussian elimination at the operands' precision.
Real determinant(const Matrix<Real>& m);
// Cofactor expansion; used only as an independent test oracle.
Int determinant_cofactor(const IntMatrix& m);

IntMatrix submatrix(const IntMatrix& m, const IndexSet& rows, const IndexSet& cols);
RatMatrix submatrix(const RatMatrix& m, const IndexSet& rows, const IndexSet& cols);

// All r x r minors of an n x r matrix, rows chosen in lexicographic order.
std::vector<Int> maximal_minors(const IntMatrix& m);
std::vector<Rat> maximal_minors(const RatMatrix& m);
std::vector<Real> maximal_minors(const Matrix<Real>& m);

// Signs (-1)^{ell(I)+ell(J)} of the Laplace terms, I over Lambda(|J|, n) in lex order.
std::vector<int> laplace_signs(int n, const IndexSet& J);
Rat laplace_determinant(const RatMatrix& m, const IndexSet& J);

// det(M_A | M_B) from the maximal minors of M_A (n x a) and M_B (n x b), a + b = n.
Rat pairing_determinant(const std::vector<Rat>& zeta, const std::vector<Rat>& eta, int n, int a);
Int pairing_determinant(const std::vector<Int>& zeta, const std::vector<Int>& eta, int n, int a);
Real pairing_determinant(const std::vector<Real>& zeta, const std::vector<Int>& eta, int n, int a);
// Sign of the i-th term in the pairing sum.
std::vector<int> pairing_signs(int n, int a);

// ---------------------------------------------------------------------------
// Generalized determinant D(X_1..X_l) = sqrt(det(M^t M)).

struct GramValue {
    Rat value_squared;
    Real value(mpfr_prec_t prec) const;
};

GramValue generalized_determinant(const std::vector<std::vector<Rat>>& family);
// Real path: returns D itself.
Real generalized_determinant(const std::vector<std::vector<Real>>& family);

// det [[A1, A2], [A3, A4]] = det(A4 A1 - A3 A2) when A1 A2 = A2 A1.
Rat block_determinant_commuting(const RatMatrix& a1, const RatMatrix& a2, const RatMatrix& a3,
                                const RatMatrix& a4);

RatMatrix multiply(const RatMatrix& x, const RatMatrix& y);
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
IntMatrix transpose(const IntMatrix& m);
RatMatrix to_rational(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Lattices.

// Rank over Q.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
// Multiplies each column by the lcm of its denominators.
IntMatrix clear_denominators(const RatMatrix& m);
// Canonical column Hermite form of the lattice spanned by the columns (full column rank).
IntMatrix column_hermite_form(const IntMatrix& m);
// Unimodular n x n V whose first e columns are a Z-basis of span_Q(M) cap Z^n.
IntMatrix saturation_transform(const IntMatrix& m);
// Z-basis of span_Q(M) cap Z^n, returned in column Hermite form.
IntMatrix saturate_lattice(const IntMatrix& m);
Int content(const std::vector<Int>& v);
// Exact integer Gram matrix and determinant.
Int gram_determinant(const IntMatrix& m);

std::string to_string(const Rat& q);

}  // namespace subapprox
