#include "mzvlab/scalar.hpp"

#include <stdexcept>

namespace mzv {

namespace {

BigFloat upabs(const CNum& z) {
    return bnd::add(bnd::of_abs(z.re), bnd::of_abs(z.im));
}

// Per-operation rounding slack: a few ulps relative to the quoted magnitude.
BigFloat ulp_slack(const BigFloat& mag, long prec) {
    return bnd::mul(mag, bnd::pow2(-prec + 4));
}

}  // namespace

Scalar Scalar::from_cnum(CNum z, BigFloat err) {
    Scalar s;
    s.exact_ = false;
    s.prec_ = z.prec();
    s.z_ = std::move(z);
    s.err_ = std::move(err);
    return s;
}

Scalar Scalar::float_of(const Rat& q, long prec) {
    CNum z(prec);
    z.re = BigFloat(q, prec);
    z.im = BigFloat(0L, prec);
    // one correctly rounded conversion
    return from_cnum(std::move(z), ulp_slack(bnd::of_abs(BigFloat(q, bnd::kPrec)), prec));
}

Scalar Scalar::float_of(const Coef& c, long prec) {
    CNum z(prec);
    z.re = BigFloat(c.re, prec);
    z.im = BigFloat(c.im, prec);
    BigFloat mag = bnd::add(bnd::of_abs(z.re), bnd::of_abs(z.im));
    return from_cnum(std::move(z), ulp_slack(mag, prec));
}

Scalar Scalar::float_of(double d, long prec) {
    CNum z(prec);
    z.re = BigFloat(d, prec);
    z.im = BigFloat(0L, prec);
    return from_cnum(std::move(z), BigFloat(0L, bnd::kPrec));
}

const Rat& Scalar::rat() const {
    if (!exact_) throw std::logic_error("rat() on float scalar");
    return q_;
}

const CNum& Scalar::cnum() const {
    if (exact_) throw std::logic_error("cnum() on exact scalar");
    return z_;
}

Scalar Scalar::to_float(long prec) const {
    if (!exact_) return *this;
    return float_of(q_, prec);
}

Scalar Scalar::operator-() const {
    if (exact_) return exact(-q_);
    Scalar s = *this;
    s.z_.re = -s.z_.re;
    s.z_.im = -s.z_.im;
    return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar::exact(a.q_ + b.q_);
    long prec = std::max(a.prec(), b.prec());
    Scalar x = a.to_float(prec), y = b.to_float(prec);
    CNum z(prec);
    z.re = x.z_.re + y.z_.re;
    z.im = x.z_.im + y.z_.im;
    BigFloat err = bnd::add(x.err_, y.err_);
    err = bnd::add(err, ulp_slack(bnd::add(upabs(x.z_), upabs(y.z_)), prec));
    return Scalar::from_cnum(std::move(z), std::move(err));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar::exact(a.q_ * b.q_);
    long prec = std::max(a.prec(), b.prec());
    Scalar x = a.to_float(prec), y = b.to_float(prec);
    CNum z(prec);
    z.re = x.z_.re * y.z_.re - x.z_.im * y.z_.im;
    z.im = x.z_.re * y.z_.im + x.z_.im * y.z_.re;
    BigFloat ma = upabs(x.z_), mb = upabs(y.z_);
    BigFloat err = bnd::add(bnd::mul(x.err_, mb), bnd::mul(y.err_, ma));
    err = bnd::add(err, bnd::mul(x.err_, y.err_));
    err = bnd::add(err, ulp_slack(bnd::mul(ma, mb), prec));
    return Scalar::from_cnum(std::move(z), std::move(err));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) {
        if (b.q_ == 0) throw std::domain_error("exact division by zero");
        return Scalar::exact(a.q_ / b.q_);
    }
    long prec = std::max(a.prec(), b.prec());
    Scalar x = a.to_float(prec), y = b.to_float(prec);
    // |b| lower bound must clear its own error bound
    BigFloat babs(prec);
    {
        BigFloat t = y.z_.re * y.z_.re + y.z_.im * y.z_.im;
        babs = sqrt(t);
    }
    BigFloat lo(bnd::kPrec);
    mpfr_sub(lo.raw(), babs.raw(), y.err_.raw(), MPFR_RNDD);
    mpfr_mul_d(lo.raw(), lo.raw(), 0.999, MPFR_RNDD);
    if (!(lo > BigFloat(0L, bnd::kPrec)))
        throw std::domain_error("division by a value not bounded away from zero");

    BigFloat n2 = y.z_.re * y.z_.re + y.z_.im * y.z_.im;
    CNum z(prec);
    z.re = (x.z_.re * y.z_.re + x.z_.im * y.z_.im) / n2;
    z.im = (x.z_.im * y.z_.re - x.z_.re * y.z_.im) / n2;

    BigFloat inv_lo = bnd::div_up(BigFloat(1L, bnd::kPrec), lo);
    BigFloat err = bnd::mul(bnd::add(x.err_, bnd::mul(upabs(z), y.err_)), inv_lo);
    err = bnd::add(err, ulp_slack(bnd::add(upabs(z), bnd::mul(upabs(x.z_), inv_lo)), prec));
    return Scalar::from_cnum(std::move(z), std::move(err));
}

Scalar Scalar::pow_int(long e) const {
    if (e == 0) return Scalar::one();
    bool inv = e < 0;
    unsigned long n = static_cast<unsigned long>(inv ? -e : e);
    Scalar r = Scalar::one(), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    if (inv) {
        if (r.is_exact()) return Scalar::exact(Rat(1) / r.rat());
        return Scalar::float_of(Rat(1), r.prec()) / r;
    }
    return r;
}

BigFloat Scalar::abs_upper() const {
    if (exact_) return bnd::of_abs(BigFloat(q_, bnd::kPrec));
    return bnd::add(upabs(z_), err_);
}

void Scalar::add_error(const BigFloat& e) {
    if (exact_) throw std::logic_error("add_error on exact scalar");
    err_ = bnd::add(err_, e);
}

std::string Scalar::str(int digits) const {
    if (exact_) return rat_to_string(q_);
    std::string s = z_.re.str(digits);
    if (!z_.im.is_zero()) s += (z_.im.is_neg() ? "" : "+") + z_.im.str(digits) + "i";
    return s;
}

BigFloat abs_diff_upper(const Scalar& a, const Scalar& b, long prec) {
    Scalar x = a.to_float(prec), y = b.to_float(prec);
    BigFloat dr = x.cnum().re - y.cnum().re;
    BigFloat di = x.cnum().im - y.cnum().im;
    return bnd::add(bnd::of_abs(dr), bnd::of_abs(di));
}

Scalar scalar_exp(const Scalar& zin) {
    long prec = zin.is_exact() ? 128 : zin.prec();
    Scalar z = zin.to_float(prec);
    CNum w(prec);
    BigFloat er = exp(z.cnum().re);
    w.re = er * cos(z.cnum().im);
    w.im = er * sin(z.cnum().im);
    // |exp(z) - exp(zh)| <= |exp(zh)| (e^err - 1) <= 2 |exp(zh)| err for err <= 1/2
    BigFloat mag = bnd::add(bnd::of_abs(w.re), bnd::of_abs(w.im));
    if (!(z.err() < BigFloat(0.5, bnd::kPrec)))
        throw std::domain_error("exp: argument error bound too large");
    BigFloat err = bnd::mul(bnd::mul(mag, z.err()), BigFloat(2L, bnd::kPrec));
    err = bnd::add(err, bnd::mul(mag, bnd::pow2(-prec + 5)));
    return Scalar::from_cnum(std::move(w), std::move(err));
}

Scalar scalar_log_pos(const Scalar& xin) {
    long prec = xin.is_exact() ? 128 : xin.prec();
    Scalar x = xin.to_float(prec);
    if (!x.cnum().im.is_zero() || !(x.cnum().re > BigFloat(0L, prec)))
        throw std::domain_error("log restricted to positive reals");
    BigFloat lo(bnd::kPrec);
    mpfr_sub(lo.raw(), x.cnum().re.raw(), x.err().raw(), MPFR_RNDD);
    if (!(lo > BigFloat(0L, bnd::kPrec)))
        throw std::domain_error("log: argument not bounded away from zero");
    CNum w(prec);
    w.re = log(x.cnum().re);
    w.im = BigFloat(0L, prec);
    BigFloat err = bnd::div_up(x.err(), lo);
    err = bnd::add(err, bnd::mul(bnd::of_abs(w.re), bnd::pow2(-prec + 4)));
    return Scalar::from_cnum(std::move(w), std::move(err));
}

Scalar scalar_pow(const Scalar& base, const Scalar& expo) {
    if (expo.is_exact() && expo.rat().get_den() == 1) {
        long e = static_cast<long>(mpz_get_si(expo.rat().get_num().get_mpz_t()));
        return base.pow_int(e);
    }
    return scalar_exp(expo * scalar_log_pos(base));
}

}  // namespace mzv
