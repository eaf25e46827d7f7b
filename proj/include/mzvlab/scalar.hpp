#ifndef MZVLAB_SCALAR_HPP
#define MZVLAB_SCALAR_HPP

#include <string>

#include "mzvlab/bigfloat.hpp"
#include "mzvlab/rational.hpp"

namespace mzv {

// Complex value at a fixed working precision.
struct CNum {
    BigFloat re, im;

    CNum() = default;
    explicit CNum(long prec) : re(prec), im(prec) {}
    CNum(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    long prec() const { return re.prec(); }
    bool is_real() const { return im.is_zero(); }
};

// Dual-mode number: exact rational, or arbitrary-precision complex float
// carrying an upper bound on |true value - stored value|. All arithmetic
// propagates the bound; exact op exact stays exact.
class Scalar {
  public:
    Scalar() : exact_(true), q_(0), err_(bnd::kPrec), prec_(0) {}

    static Scalar exact(Rat q) {
        Scalar s;
        s.exact_ = true;
        s.q_ = std::move(q);
        return s;
    }
    static Scalar exact(long n) { return exact(Rat(n)); }
    static Scalar zero() { return exact(0L); }
    static Scalar one() { return exact(1L); }

    static Scalar from_cnum(CNum z, BigFloat err);
    static Scalar float_of(const Rat& q, long prec);   // exact conversion, err 0
    static Scalar float_of(const Coef& c, long prec);
    static Scalar float_of(double d, long prec);

    bool is_exact() const { return exact_; }
    bool exact_zero() const { return exact_ && q_ == 0; }
    const Rat& rat() const;
    const CNum& cnum() const;
    const BigFloat& err() const { return err_; }
    long prec() const { return exact_ ? 0 : prec_; }

    // Promote to float mode at the given precision (no-op for floats).
    Scalar to_float(long prec) const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar pow_int(long e) const;

    // Upper bound on |value| including the error bound.
    BigFloat abs_upper() const;
    // Upper bound on |value - other| assuming both were exact (bounds added
    // separately by the caller).
    double to_double_re() const { return exact_ ? q_.get_d() : cnum().re.to_double(); }

    // Widen the error bound (used when a truncation tail is accounted for).
    void add_error(const BigFloat& e);

    std::string str(int digits = 0) const;

  private:
    bool exact_;
    Rat q_;
    CNum z_;
    BigFloat err_;
    long prec_;
};

// |a - b| upper bound treating stored values as exact (bounds excluded).
BigFloat abs_diff_upper(const Scalar& a, const Scalar& b, long prec);

// Elementary functions on float scalars with propagated bounds.
Scalar scalar_exp(const Scalar& z);
// Natural log of a positive real scalar.
Scalar scalar_log_pos(const Scalar& x);
// Principal power base^expo for positive real base.
Scalar scalar_pow(const Scalar& base, const Scalar& expo);

}  // namespace mzv

#endif
