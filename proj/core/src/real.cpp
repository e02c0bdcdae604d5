#include "subapprox/real.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <vector>

namespace subapprox {

namespace {

mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real Real::parse(const std::string& text, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, text.c_str(), 0, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a real number: " + text);
    }
    return r;
}

void Real::set_precision(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

mpq_class Real::to_rational() const {
    if (mpfr_zero_p(v_)) return mpq_class(0);
    if (!mpfr_number_p(v_)) throw std::domain_error("non-finite real");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return q;
}

std::string Real::to_hex() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::string Real::to_decimal(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return LONG_MIN / 2;
    return static_cast<long>(mpfr_get_exp(v_));
}

Real& Real::operator+=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
}

Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(pmax(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, long k) {
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

Real operator*(long k, const Real& a) { return a * k; }

Real operator/(const Real& a, long k) {
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long k) {
    Real r(a.precision());
    mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long k) {
    Real r(a.precision());
    mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(std::max(x.precision(), y.precision()));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real floor(const Real& x) {
    Real r(x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real pow2(long k, mpfr_prec_t prec) {
    Real r(1L, prec);
    mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
    return r;
}

mpz_class round_to_integer(const Real& x) {
    mpz_class z;
    Real t(x.precision());
    mpfr_round(t.get(), x.get());
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
    return z;
}

mpz_class floor_to_integer(const Real& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
    return z;
}

}  // namespace subapprox
