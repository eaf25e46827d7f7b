#ifndef MZVLAB_RATIONAL_HPP
#define MZVLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mzv {

// Exact rational scalar. gmpxx keeps results canonical under arithmetic.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p/q", integers, and plain decimal strings ("0.25", "-1.5e-2").
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

// Exact binomial coefficient.
mpz_class binomial(unsigned long n, unsigned long k);

// Complex number with exact rational parts. Used for labels (sign vectors,
// disk variables): every label the CLI or the test grids produce is of this
// form, so label arithmetic (the sign-transform maps, cumulative products)
// stays exact in both evaluation modes.
struct Coef {
    Rat re, im;

    Coef() : re(0), im(0) {}
    explicit Coef(const Rat& r) : re(r), im(0) {}
    Coef(const Rat& r, const Rat& i) : re(r), im(i) {}
    explicit Coef(long n) : re(n), im(0) {}

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return im == 0 && re == 1; }

    // |z|^2 as an exact rational.
    Rat norm2() const { return re * re + im * im; }

    bool operator==(const Coef& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Coef& o) const { return !(*this == o); }

    Coef operator-() const { return Coef(-re, -im); }
    Coef operator+(const Coef& o) const { return Coef(re + o.re, im + o.im); }
    Coef operator-(const Coef& o) const { return Coef(re - o.re, im - o.im); }
    Coef operator*(const Coef& o) const {
        return Coef(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    Coef operator/(const Coef& o) const {
        Rat n2 = o.norm2();
        if (n2 == 0) throw std::domain_error("division by zero label");
        return Coef((re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2);
    }

    Coef pow(unsigned long e) const {
        Coef r(Rat(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const;
};

Coef coef_from_string(const std::string& s);

}  // namespace mzv

#endif
