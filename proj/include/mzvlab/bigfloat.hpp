#ifndef MZVLAB_BIGFLOAT_HPP
#define MZVLAB_BIGFLOAT_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "mzvlab/rational.hpp"

namespace mzv {

// RAII wrapper around mpfr_t with explicit per-value precision in bits.
// Binary operations round to the wider of the two operand precisions.
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit BigFloat(long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_zero(v_, 1); }
    BigFloat(long x, long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(int x, long prec) : BigFloat(static_cast<long>(x), prec) {}
    BigFloat(double x, long prec) { mpfr_init2(v_, clamp(prec)); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const Rat& q, long prec) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const std::string& s, long prec) {
        mpfr_init2(v_, clamp(prec));
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(v_))
            throw std::invalid_argument("bad float literal: " + s);
    }

    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_neg() const { return mpfr_sgn(v_) < 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static BigFloat pi(long prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat pow2(long e, long prec = 64) {
        BigFloat r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wide(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wide(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wide(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wide(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sin(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow_si(const BigFloat& a, long e) {
        BigFloat r(a.prec());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend BigFloat mul_2si(const BigFloat& a, long e) {
        BigFloat r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }

    std::string str(int digits = 0) const;

  private:
    static long clamp(long p) { return p < 8 ? 8 : p; }
    static long wide(const BigFloat& a, const BigFloat& b) {
        long pa = a.prec(), pb = b.prec();
        return pa > pb ? pa : pb;
    }
    mpfr_t v_;
};

// Upper-bound arithmetic for error accounting: nonnegative values at a small
// fixed precision, always rounded up.
namespace bnd {
constexpr long kPrec = 48;

BigFloat from(double x);
BigFloat add(const BigFloat& a, const BigFloat& b);
BigFloat mul(const BigFloat& a, const BigFloat& b);
BigFloat div_up(const BigFloat& a, const BigFloat& b);  // a/b rounded up
BigFloat of_abs(const BigFloat& x);                     // |x| rounded up to kPrec
BigFloat pow2(long e);                                  // 2^e
// q^n * n^D tail: sum_{m>N} m^D q^m bounded via the ratio test; throws if the
// ratio bound is >= 1.
BigFloat geometric_poly_tail(const BigFloat& q, long D, long N);
}  // namespace bnd

}  // namespace mzv

#endif
