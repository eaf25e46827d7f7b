#include "mzvlab/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace mzv {

std::string BigFloat::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 2;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    int need = mpfr_snprintf(nullptr, 0, fmt, v_);
    std::vector<char> buf(static_cast<size_t>(need) + 2);
    mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
    return std::string(buf.data());
}

namespace bnd {

BigFloat from(double x) {
    BigFloat r(kPrec);
    mpfr_set_d(r.raw(), x < 0 ? -x : x, MPFR_RNDU);
    return r;
}

BigFloat add(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kPrec);
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat mul(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kPrec);
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat div_up(const BigFloat& a, const BigFloat& b) {
    BigFloat r(kPrec);
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
    return r;
}

BigFloat of_abs(const BigFloat& x) {
    BigFloat r(kPrec);
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDU);
    // widening |x| to kPrec rounds up, so this is a true upper bound
    mpfr_prec_round(r.raw(), kPrec, MPFR_RNDU);
    return r;
}

BigFloat pow2(long e) {
    BigFloat r(1L, kPrec);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDU);
    return r;
}

BigFloat geometric_poly_tail(const BigFloat& q, long D, long N) {
    // a_m = m^D q^m, ratio a_{m+1}/a_m = q (1+1/m)^D <= q (1+1/(N+1))^D =: rho
    BigFloat rho(kPrec);
    mpfr_set_d(rho.raw(), 1.0 + 1.0 / static_cast<double>(N + 1), MPFR_RNDU);
    BigFloat rpow(1L, kPrec);
    for (long i = 0; i < D; ++i) rpow = mul(rpow, rho);
    rho = mul(of_abs(q), rpow);
    if (!(rho < BigFloat(1L, kPrec)))
        throw std::domain_error("tail ratio bound not < 1; increase truncation");
    // first term (N+1)^D q^(N+1)
    BigFloat first(kPrec);
    mpfr_set_si(first.raw(), N + 1, MPFR_RNDU);
    BigFloat fp(1L, kPrec);
    for (long i = 0; i < D; ++i) fp = mul(fp, first);
    BigFloat qq = of_abs(q);
    BigFloat qn(1L, kPrec);
    long e = N + 1;
    BigFloat base = qq;
    while (e) {  // upper-rounded power
        if (e & 1) qn = mul(qn, base);
        base = mul(base, base);
        e >>= 1;
    }
    BigFloat one_minus(kPrec);
    mpfr_si_sub(one_minus.raw(), 1, rho.raw(), MPFR_RNDD);
    return div_up(mul(fp, qn), one_minus);
}

}  // namespace bnd
}  // namespace mzv
