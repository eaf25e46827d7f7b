#include "mzvlab/rational.hpp"

#include <cctype>

namespace mzv {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;

    if (t.find('/') != std::string::npos) {
        Rat q;
        if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q.canonicalize();
        return q;
    }

    // Decimal literal, possibly with exponent. Decimal strings are exact
    // rationals, so no precision is lost here.
    std::string mant = t;
    long expo = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = t.substr(0, epos);
        expo = std::stol(t.substr(epos + 1));
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, neg = false;
    size_t i = 0;
    if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) {
        neg = mant[i] == '-';
        ++i;
    }
    for (; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad numeric literal: " + s);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (seen_dot) ++frac_digits;
        } else {
            throw std::invalid_argument("bad numeric literal: " + s);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad numeric literal: " + s);

    mpz_class num(digits);
    if (neg) num = -num;
    long e10 = expo - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    Rat q;
    if (e10 >= 0)
        q = Rat(num * pow10);
    else
        q = Rat(num, pow10);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::string Coef::str() const {
    if (is_real()) return rat_to_string(re);
    return rat_to_string(re) + (im >= 0 ? "+" : "") + rat_to_string(im) + "i";
}

Coef coef_from_string(const std::string& s) {
    // "a", "a+bi", "bi"
    auto ipos = s.find('i');
    if (ipos == std::string::npos) return Coef(rat_from_string(s));
    std::string body = s.substr(0, ipos);
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E' &&
            body[i - 1] != '/') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        std::string imp = body.empty() || body == "+" ? "1" : (body == "-" ? "-1" : body);
        return Coef(Rat(0), rat_from_string(imp));
    }
    std::string repart = body.substr(0, split);
    std::string impart = body.substr(split);
    if (impart == "+") impart = "1";
    if (impart == "-") impart = "-1";
    return Coef(rat_from_string(repart), rat_from_string(impart));
}

}  // namespace mzv
