#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace subapprox {

// Precision is always given in bits.
constexpr mpfr_prec_t kDefaultPrecision = 128;

// Thin RAII value type over mpfr_t. Binary operations produce a result at the
// larger precision of the two operands; mixed operations with plain integers
// or doubles keep the precision of the Real operand.
class Real {
public:
    explicit Real(mpfr_prec_t prec = kDefaultPrecision);
    Real(int v, mpfr_prec_t prec) : Real(static_cast<long>(v), prec) {}
    Real(long v, mpfr_prec_t prec);
    Real(double v, mpfr_prec_t prec);
    Real(const mpz_class& v, mpfr_prec_t prec);
    Real(const mpq_class& v, mpfr_prec_t prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    ~Real();

    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;

    // Parses decimal or hex-float text ("0x1.8p+1").
    static Real parse(const std::string& text, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    // Rounds to a new precision in place.
    void set_precision(mpfr_prec_t prec);

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact binary value as a rational.
    mpq_class to_rational() const;
    // Hex-float text; bit-exact round trip through parse().
    std::string to_hex() const;
    std::string to_decimal(int digits = 20) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long k);
    Real& operator/=(long k);

    friend Real operator-(const Real& a);
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator*(const Real& a, long k);
    friend Real operator*(long k, const Real& a);
    friend Real operator/(const Real& a, long k);
    friend Real operator+(const Real& a, long k);
    friend Real operator-(const Real& a, long k);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

private:
    mpfr_t v_;
};

Real sqrt(const Real& x);
Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real hypot(const Real& x, const Real& y);
Real pi(mpfr_prec_t prec);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// 2^k at the given precision.
Real pow2(long k, mpfr_prec_t prec);
// Nearest integer, ties away from zero.
mpz_class round_to_integer(const Real& x);
mpz_class floor_to_integer(const Real& x);

}  // namespace subapprox
