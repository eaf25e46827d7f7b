#include "mzvlab/nested_sums.hpp"

#include <cmath>
#include <stdexcept>

namespace mzv {

namespace {

bool is_integer(const Scalar& a) { return a.is_exact() && a.rat().get_den() == 1; }

Scalar coef_scalar(const Coef& c, bool exact, long prec) {
    if (exact) {
        if (!c.is_real()) throw std::invalid_argument("exact mode requires real rational labels");
        return Scalar::exact(c.re);
    }
    return Scalar::float_of(c, prec);
}

// x^a for the stream initialisation (a may be a non-integer scalar).
Scalar base_power(const Coef& x, const Scalar& a, bool exact, long prec) {
    if (is_integer(a)) {
        long e = static_cast<long>(mpz_get_si(a.rat().get_num().get_mpz_t()));
        if (exact) {
            if (!x.is_real()) throw std::invalid_argument("exact mode requires real labels");
            if (e < 0) {
                if (x.is_zero()) throw std::domain_error("0 to negative power");
                return Scalar::exact(Rat(1)) / Scalar::exact(x.re).pow_int(-e);
            }
            return Scalar::exact(x.re).pow_int(e);
        }
        return Scalar::float_of(x, prec).pow_int(e);
    }
    // Non-integer shift: principal power, label restricted to positive reals.
    if (!(x.is_real() && x.re > 0))
        throw std::domain_error("non-integer parameter needs positive real labels");
    if (x.is_one()) return Scalar::float_of(Rat(1), prec);
    return scalar_pow(Scalar::float_of(x, prec), a.to_float(prec));
}

}  // namespace

SumStream::SumStream(Config cfg) : cfg_(std::move(cfg)), one_(Scalar::one()) {
    const int r = cfg_.k.depth();
    if (!cfg_.x.empty() && static_cast<int>(cfg_.x.size()) != r)
        throw std::invalid_argument("label vector length mismatch");
    if (cfg_.family == SumFamily::M && static_cast<int>(cfg_.signs.size()) != r)
        throw std::invalid_argument("sign vector length mismatch");
    if (cfg_.exact && !is_integer(cfg_.a))
        throw std::invalid_argument("exact mode requires an integer parameter");
    if (cfg_.exact && is_integer(cfg_.a) && cfg_.a.rat() < 0)
        throw std::invalid_argument("exact mode requires a nonnegative integer parameter");

    Scalar zero = cfg_.exact ? Scalar::zero() : Scalar::float_of(Rat(0), cfg_.prec);
    one_ = cfg_.exact ? Scalar::one() : Scalar::float_of(Rat(1), cfg_.prec);
    levels_.assign(static_cast<size_t>(r), zero);

    if (cfg_.family == SumFamily::Zeta) {
        pows_.reserve(static_cast<size_t>(r));
        for (int j = 0; j < r; ++j) {
            Coef xj = cfg_.x.empty() ? Coef(1L) : cfg_.x[static_cast<size_t>(j)];
            pows_.push_back(xj.is_one() ? one_ : base_power(xj, cfg_.a, cfg_.exact, cfg_.prec));
        }
    }
    inner_pow_ = one_;

    // growth metadata
    double c = 1.0;
    double cum = 1.0;
    for (int j = 0; j < r; ++j) {
        if (!cfg_.x.empty()) cum *= std::sqrt(cfg_.x[static_cast<size_t>(j)].norm2().get_d());
        if (cum > cmax_) cmax_ = cum;
        if (cfg_.k[j] == 1)
            ++log_slots_;
        else
            c *= 2.0;
        if (cfg_.family == SumFamily::M) c *= 2.0;
    }
    if (cfg_.inner_x) {
        double ix = std::sqrt(cfg_.inner_x->norm2().get_d());
        if (ix > 1.0) cmax_ = std::max(cmax_, cum * ix);
    }
    const_factor_ = c;
}

Scalar SumStream::weight(int j) const {
    const long i = n_;
    switch (cfg_.family) {
        case SumFamily::Zeta: {
            Scalar den;
            if (is_integer(cfg_.a)) {
                long av = static_cast<long>(mpz_get_si(cfg_.a.rat().get_num().get_mpz_t()));
                if (i + av == 0) throw std::domain_error("pole: index plus parameter vanishes");
                den = cfg_.exact ? Scalar::exact(i + av)
                                 : Scalar::float_of(Rat(i + av), cfg_.prec);
            } else {
                den = cfg_.a.to_float(cfg_.prec) + Scalar::float_of(Rat(i), cfg_.prec);
            }
            Scalar w = one_ / den.pow_int(cfg_.k[j]);
            if (!pows_.empty() && !(cfg_.x.empty() || cfg_.x[static_cast<size_t>(j)].is_one()))
                w = w * pows_[static_cast<size_t>(j)];
            if (cfg_.inner_x && j == cfg_.k.depth() - 1) w = w * inner_pow_;
            return w;
        }
        case SumFamily::T: {
            Scalar den = cfg_.exact ? Scalar::exact(2 * i - 1)
                                    : Scalar::float_of(Rat(2 * i - 1), cfg_.prec);
            Scalar w = one_ / den.pow_int(cfg_.k[j]);
            if (cfg_.inner_x && j == cfg_.k.depth() - 1) w = w * inner_pow_;
            return w;
        }
        case SumFamily::M: {
            int s = cfg_.signs[static_cast<size_t>(j)];
            long num = (i % 2 == 0) ? 1 + s : 1 - s;  // 1 + s(-1)^i
            if (num == 0) return cfg_.exact ? Scalar::zero() : Scalar::float_of(Rat(0), cfg_.prec);
            Scalar w = (cfg_.exact ? Scalar::exact(num) : Scalar::float_of(Rat(num), cfg_.prec)) /
                       (cfg_.exact ? Scalar::exact(i) : Scalar::float_of(Rat(i), cfg_.prec))
                           .pow_int(cfg_.k[j]);
            if (cfg_.inner_x && j == cfg_.k.depth() - 1) w = w * inner_pow_;
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

void SumStream::advance() {
    ++n_;
    const int r = cfg_.k.depth();
    // running powers
    if (cfg_.family == SumFamily::Zeta) {
        for (int j = 0; j < r; ++j) {
            const Coef& xj = cfg_.x.empty() ? Coef(1L) : cfg_.x[static_cast<size_t>(j)];
            if (!xj.is_one())
                pows_[static_cast<size_t>(j)] =
                    pows_[static_cast<size_t>(j)] * coef_scalar(xj, cfg_.exact, cfg_.prec);
        }
    }
    if (cfg_.inner_x) {
        const Coef& x = *cfg_.inner_x;
        Scalar xs = coef_scalar(x, cfg_.exact, cfg_.prec);
        if (cfg_.family == SumFamily::T) {
            // x^{2n-1}
            inner_pow_ = (n_ == 1) ? xs : inner_pow_ * xs * xs;
        } else {
            inner_pow_ = (n_ == 1) ? xs : inner_pow_ * xs;
        }
    }
    if (r == 0) return;

    if (!cfg_.star) {
        // strict chains: new top index n_, inner bounded by n_-1 (old levels)
        for (int j = 0; j < r; ++j) {
            Scalar w = weight(j);
            const Scalar& inner = (j + 1 < r) ? levels_[static_cast<size_t>(j + 1)] : one_;
            levels_[static_cast<size_t>(j)] = levels_[static_cast<size_t>(j)] + w * inner;
        }
    } else {
        // weak chains: inner bounded by n_ (new levels), innermost first
        for (int j = r - 1; j >= 0; --j) {
            Scalar w = weight(j);
            const Scalar& inner = (j + 1 < r) ? levels_[static_cast<size_t>(j + 1)] : one_;
            levels_[static_cast<size_t>(j)] = levels_[static_cast<size_t>(j)] + w * inner;
        }
    }
}

ChainStream::ChainStream(Composition m, std::vector<int> signs, Base base, Coef x, long prec)
    : m_(std::move(m)), signs_(std::move(signs)), base_(base), x_(x), prec_(prec) {
    if (static_cast<int>(signs_.size()) != m_.depth())
        throw std::invalid_argument("chain sign length mismatch");
    Scalar zero = Scalar::float_of(Rat(0), prec_);
    tables_.assign(static_cast<size_t>(m_.depth()), {zero, zero});
    xpow_ = Scalar::float_of(Rat(1), prec_);
}

double ChainStream::const_factor() const {
    double c = base_ == Base::OddProj ? 2.0 : 1.0;
    for (int j = 0; j < m_.depth(); ++j) c *= (m_[j] >= 2 ? 4.0 : 2.0);
    return c;
}

void ChainStream::advance() {
    ++n_;
    xpow_ = (n_ == 1) ? Scalar::float_of(x_, prec_) : xpow_ * Scalar::float_of(x_, prec_);
    const int p = m_.depth();
    const int parity_n = static_cast<int>(n_ % 2);
    // innermost base value at index n_
    auto base_val = [&](void) -> Scalar {
        switch (base_) {
            case Base::One:
                return Scalar::float_of(Rat(1), prec_);
            case Base::PowX:
                return xpow_;
            case Base::OddProj:
                return Scalar::float_of(Rat(parity_n == 1 ? 2 : 0), prec_);
        }
        throw std::logic_error("unreachable");
    };
    for (int j = p - 1; j >= 0; --j) {
        Scalar inner = (j + 1 < p) ? tables_[static_cast<size_t>(j + 1)][parity_n] : base_val();
        Scalar denk = Scalar::float_of(Rat(n_), prec_).pow_int(m_[j]);
        for (int par = 0; par < 2; ++par) {
            // 1 + s_j(-1)^{par + n_}
            long num = ((par + n_) % 2 == 0) ? 1 + signs_[static_cast<size_t>(j)]
                                             : 1 - signs_[static_cast<size_t>(j)];
            if (num == 0) continue;
            tables_[static_cast<size_t>(j)][par] =
                tables_[static_cast<size_t>(j)][par] +
                Scalar::float_of(Rat(num), prec_) / denk * inner;
        }
    }
}

Scalar ChainStream::value(int ref_parity) const {
    if (m_.depth() == 0) {
        switch (base_) {
            case Base::One:
                return Scalar::float_of(Rat(1), prec_);
            case Base::PowX:
                return xpow_;
            case Base::OddProj:
                return Scalar::float_of(Rat(n_ % 2 == 1 ? 2 : 0), prec_);
        }
    }
    return tables_[0][ref_parity];
}

namespace {

SumStream make_stream(const SumSpec& spec, bool exact, long prec) {
    SumStream::Config cfg;
    cfg.family = spec.family;
    cfg.star = spec.star;
    cfg.k = spec.k;
    if (spec.x) {
        if (spec.x->size() != spec.k.depth())
            throw std::invalid_argument("label/composition length mismatch");
        cfg.x = spec.x->entries();
    }
    cfg.inner_x = spec.inner_x;
    if (spec.family == SumFamily::M) {
        if (spec.signs.size() != spec.k.depth())
            throw std::invalid_argument("sign/composition length mismatch");
        for (const Coef& c : spec.signs.entries()) {
            if (!(c.is_real() && (c.re == 1 || c.re == -1)))
                throw std::invalid_argument("M sums need +-1 signs");
            cfg.signs.push_back(c.re == 1 ? 1 : -1);
        }
    }
    if (spec.a) cfg.a = *spec.a;
    cfg.exact = exact;
    cfg.prec = prec;
    return SumStream(std::move(cfg));
}

Scalar run_stream(SumStream&& st, long n) {
    if (n < 0) throw std::invalid_argument("negative upper limit");
    for (long i = 0; i < n; ++i) st.advance();
    return st.value();
}

}  // namespace

Scalar harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact) {
    if (spec.family != SumFamily::Zeta) throw std::invalid_argument("family must be zeta");
    if (exact && spec.x)
        for (const Coef& c : spec.x->entries())
            if (!c.is_real()) throw std::invalid_argument("exact mode requires rational labels");
    return run_stream(make_stream(spec, exact, ctx.prec), spec.n);
}

Scalar t_harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact) {
    if (spec.family != SumFamily::T) throw std::invalid_argument("family must be t");
    if (spec.inner_x && !spec.star)
        throw std::invalid_argument("the x-weighted t-sum is defined for the star variant only");
    if (spec.x) throw std::invalid_argument("t sums take no per-slot labels");
    return run_stream(make_stream(spec, exact, ctx.prec), spec.n);
}

Scalar m_harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact) {
    if (spec.family != SumFamily::M) throw std::invalid_argument("family must be M");
    return run_stream(make_stream(spec, exact, ctx.prec), spec.n);
}

Scalar zeta_n(long n, const Composition& k, const LabelVector& x, bool star, bool exact,
              long prec) {
    SumSpec s;
    s.family = SumFamily::Zeta;
    s.star = star;
    s.k = k;
    if (!x.empty()) s.x = x;
    s.n = n;
    EvalCtx ctx(prec);
    return harmonic_sum(s, ctx, exact);
}

Scalar zeta_n_a(long n, const Composition& k, const LabelVector& x, const Scalar& a, bool star,
                bool exact, long prec) {
    SumSpec s;
    s.family = SumFamily::Zeta;
    s.star = star;
    s.k = k;
    if (!x.empty()) s.x = x;
    s.a = a;
    s.n = n;
    EvalCtx ctx(prec);
    return harmonic_sum(s, ctx, exact);
}

Scalar zeta_star_n_inner_x(long n, const Composition& k, const Coef& x, bool exact, long prec) {
    SumSpec s;
    s.family = SumFamily::Zeta;
    s.star = true;
    s.k = k;
    s.inner_x = x;
    s.n = n;
    EvalCtx ctx(prec);
    return harmonic_sum(s, ctx, exact);
}

Scalar t_n(long n, const Composition& k, bool star, bool exact, long prec) {
    SumSpec s;
    s.family = SumFamily::T;
    s.star = star;
    s.k = k;
    s.n = n;
    EvalCtx ctx(prec);
    return t_harmonic_sum(s, ctx, exact);
}

Scalar t_star_n_inner_x(long n, const Composition& k, const Coef& x, bool exact, long prec) {
    SumSpec s;
    s.family = SumFamily::T;
    s.star = true;
    s.k = k;
    s.inner_x = x;
    s.n = n;
    EvalCtx ctx(prec);
    return t_harmonic_sum(s, ctx, exact);
}

Scalar m_n(long n, const Composition& k, const LabelVector& signs, bool star, bool exact,
           long prec) {
    SumSpec s;
    s.family = SumFamily::M;
    s.star = star;
    s.k = k;
    s.signs = signs;
    s.n = n;
    EvalCtx ctx(prec);
    return m_harmonic_sum(s, ctx, exact);
}

Scalar m_chain_sum(long n, const Composition& m, const std::vector<int>& signs, const Coef& x,
                   long prec) {
    ChainStream cs(m, signs, x.is_one() ? ChainStream::Base::One : ChainStream::Base::PowX, x,
                   prec);
    for (long i = 0; i < n; ++i) cs.advance();
    return cs.value(static_cast<int>(n % 2));
}

}  // namespace mzv
