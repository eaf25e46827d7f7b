#include "mzvlab/values.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mzv {

namespace {

double target_or_default(double t, long prec) {
    return t > 0 ? t : std::pow(2.0, -static_cast<double>(prec - 10));
}

std::vector<Coef> cumulatives(const LabelVector& z) {
    std::vector<Coef> c;
    Coef run(1L);
    for (const Coef& e : z.entries()) {
        run = run * e;
        c.push_back(run);
    }
    return c;
}

double mag(const Coef& c) { return std::sqrt(c.norm2().get_d()); }

// value cache (boundary values recur heavily across identities)
std::mutex g_cache_mu;
std::map<std::string, Scalar>& cache() {
    static std::map<std::string, Scalar> m;
    return m;
}

bool cache_get(const std::string& key, Scalar& out) {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = cache().find(key);
    if (it == cache().end()) return false;
    out = it->second;
    return true;
}

void cache_put(const std::string& key, const Scalar& v) {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    cache().emplace(key, v);
}

std::string key_of(const std::string& tag, const Composition& k, const std::string& rest,
                   const EvalCtx& ctx) {
    std::ostringstream os;
    os << tag << '|' << k.str() << '|' << rest << '|' << ctx.prec << '|' << ctx.conv_n_max;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Outer series engine.
// ---------------------------------------------------------------------------

Scalar outer_series(const OuterSeries& os, const EvalCtx& ctx, double target_err) {
    const long prec = ctx.prec;
    const double target = target_or_default(target_err, prec);

    std::optional<SumStream> F, G;
    std::optional<ChainStream> GC;
    double cmax = mag(os.pow_mult), cf = mag(os.pow_init);
    int D = 0;
    if (os.pow_mult.norm2() != 0 && mag(os.pow_mult) > 0) cf /= mag(os.pow_mult);
    if (os.F) {
        F.emplace(*os.F);
        cmax *= F->cmax();
        cf *= F->const_factor();
        D += F->log_slots();
    }
    if (os.G) {
        G.emplace(*os.G);
        cmax *= G->cmax();
        cf *= G->const_factor();
        D += G->log_slots();
    }
    if (os.Gchain) {
        GC.emplace(os.Gchain->m, os.Gchain->signs, os.Gchain->base, os.Gchain->x, prec);
        cf *= GC->const_factor();
        D += GC->log_slots();
    }
    for (int p : os.parity) cf *= 1.0 + std::abs(p);
    if (os.half) cf *= 0.5;
    cf *= 2.0;       // safety margin
    cf *= std::pow(2.0, D);  // shifted-denominator log fudge

    const bool geometric = cmax < 1.0 - 1e-9;
    if (!geometric && cmax > 1.0 + 1e-9)
        throw std::domain_error("outer series not certified convergent (growth ratio > 1)");
    if (!geometric && os.s < 2)
        throw std::domain_error("outer series requires exponent >= 2 at unit ratio");

    double shift_abs = 0.0;
    if (os.den == OuterSeries::Den::ShiftN) {
        shift_abs = os.shift.abs_upper().to_double();
        if (os.shift.is_exact() && os.shift.rat().get_den() == 1 && os.shift.rat() < 0)
            throw std::domain_error("pole: negative integer shift");
    }

    Scalar acc = Scalar::float_of(Rat(0), prec);
    Scalar powcur = Scalar::float_of(os.pow_init, prec);
    Scalar powmul = Scalar::float_of(os.pow_mult, prec);
    Scalar shift_f = os.den == OuterSeries::Den::ShiftN ? os.shift.to_float(prec) : Scalar::zero();

    auto tail_bound = [&](long n) -> double {
        try {
            if (geometric) {
                BigFloat t = bnd::geometric_poly_tail(BigFloat(cmax, bnd::kPrec), D, n);
                return cf * t.to_double();
            }
            long nn = n - static_cast<long>(std::ceil(shift_abs)) - 1;
            if (nn < 8) return 1e300;
            double lnn = 1.0 + std::log(static_cast<double>(nn));
            double sum = 0.0, fact = 1.0;
            for (int i = 0; i <= D; ++i) {
                sum += fact * std::pow(lnn, D - i) / std::pow(os.s - 1.0, i + 1);
                fact *= (D - i);
            }
            return cf * sum * std::pow(static_cast<double>(nn), 1.0 - os.s);
        } catch (const std::exception&) {
            return 1e300;
        }
    };

    const long cap = geometric ? 4000000 : ctx.conv_n_max;
    double tail = 1e300;
    long n = 0;
    while (true) {
        ++n;
        if (G) G->advance();
        if (GC) GC->advance();
        // parity factor
        long pf = 1;
        for (int p : os.parity) pf *= (n % 2 == 0) ? 1 + p : 1 - p;
        if (pf != 0) {
            Scalar den;
            switch (os.den) {
                case OuterSeries::Den::N:
                    den = Scalar::float_of(Rat(n), prec);
                    break;
                case OuterSeries::Den::Odd:
                    den = Scalar::float_of(Rat(2 * n - 1), prec);
                    break;
                case OuterSeries::Den::ShiftN:
                    den = shift_f + Scalar::float_of(Rat(n), prec);
                    break;
            }
            Scalar term = powcur / den.pow_int(os.s);
            if (pf != 1) term = term * Scalar::float_of(Rat(pf), prec);
            if (os.half) term = term / Scalar::float_of(Rat(2), prec);
            if (F) term = term * F->value();
            if (G) term = term * G->value();
            if (GC) term = term * GC->value(static_cast<int>(n % 2));
            acc = acc + term;
        }
        if (F) F->advance();  // F trails at n-1 for the next term
        powcur = powcur * powmul;

        if (n % 32 == 0 || n >= cap) {
            tail = tail_bound(n);
            if (tail <= target || n >= cap) break;
        }
    }
    acc.add_error(bnd::from(tail));
    return acc;
}

// ---------------------------------------------------------------------------
// Multiple polylogarithms.
// ---------------------------------------------------------------------------

namespace {

void check_mpl_admissible(const Composition& k, const std::vector<Coef>& cums) {
    for (const Coef& c : cums)
        if (c.norm2() > 1)
            throw std::domain_error("inadmissible: cumulative label leaves the unit disk");
    if (!k.empty() && k.first() == 1 && !cums.empty() && cums.front().is_one())
        throw std::domain_error("inadmissible: (k1, z1) = (1, 1)");
}

// Star values as sums of plain values over coarsenings (merging adjacent
// slots; the merged cumulative is the one at the block end).
template <typename PlainEval>
Scalar star_by_contraction(const Composition& k, const std::vector<Coef>& cums,
                           PlainEval&& plain) {
    const int r = k.depth();
    Scalar total = Scalar::zero();
    const int cuts = r - 1;
    for (long mask = 0; mask < (1L << cuts); ++mask) {
        // bit j set = keep the boundary between slot j and j+1
        std::vector<int> parts;
        std::vector<Coef> mcums;
        int acc = 0;
        for (int j = 0; j < r; ++j) {
            acc += k[j];
            bool boundary = (j == r - 1) || (mask & (1L << j));
            if (boundary) {
                parts.push_back(acc);
                mcums.push_back(cums[static_cast<size_t>(j)]);
                acc = 0;
            }
        }
        total = total + plain(Composition(parts), mcums);
    }
    return total;
}

Scalar mpl_plain_from_cums(const Composition& k, const std::vector<Coef>& cums,
                           const EvalCtx& ctx, double target);

Scalar mpl_from_cums(const Composition& k, const std::vector<Coef>& cums, bool star,
                     const EvalCtx& ctx, double target) {
    if (k.empty()) return Scalar::float_of(Rat(1), ctx.prec);
    for (const Coef& c : cums)
        if (c.is_zero()) return Scalar::float_of(Rat(0), ctx.prec);
    check_mpl_admissible(k, cums);
    if (!star) return mpl_plain_from_cums(k, cums, ctx, target);

    double q = 0.0;
    for (const Coef& c : cums) q = std::max(q, mag(c));
    if (q <= 0.75) {
        // direct star series
        OuterSeries os;
        os.den = OuterSeries::Den::N;
        os.s = k.first();
        os.pow_init = cums.front();
        os.pow_mult = cums.front();
        SumStream::Config g;
        g.family = SumFamily::Zeta;
        g.star = true;
        g.k = slice(k, SliceMode::Forward, 2, k.depth());
        for (size_t j = 1; j < cums.size(); ++j)
            g.x.push_back(cums[j] / cums[j - 1]);
        g.prec = ctx.prec;
        os.G = g;
        return outer_series(os, ctx, target);
    }
    // boundary: expand into plain values
    return star_by_contraction(k, cums, [&](const Composition& mk, const std::vector<Coef>& mc) {
        return mpl_plain_from_cums(mk, mc, ctx, target);
    });
}

Scalar mpl_plain_from_cums(const Composition& k, const std::vector<Coef>& cums,
                           const EvalCtx& ctx, double target) {
    std::string ckey;
    {
        std::ostringstream os;
        os << k.str() << '#';
        for (const Coef& c : cums) os << c.str() << ';';
        ckey = key_of("mpl", k, os.str(), ctx);
    }
    Scalar out;
    if (cache_get(ckey, out)) return out;

    double q = 0.0;
    for (const Coef& c : cums) q = std::max(q, mag(c));
    if (q <= 0.75) {
        OuterSeries os;
        os.den = OuterSeries::Den::N;
        os.s = k.first();
        os.pow_init = cums.front();
        os.pow_mult = cums.front();
        SumStream::Config f;
        f.family = SumFamily::Zeta;
        f.star = false;
        f.k = slice(k, SliceMode::Forward, 2, k.depth());
        for (size_t j = 1; j < cums.size(); ++j)
            f.x.push_back(cums[j] / cums[j - 1]);
        f.prec = ctx.prec;
        os.F = f;
        out = outer_series(os, ctx, target);
    } else {
        // word over [0,1] with the cumulative kernels, composed through
        // interior breakpoints
        IntegralWord w;
        const int r = k.depth();
        for (int j = r - 1; j >= 0; --j) {
            w.forms.push_back(OneForm::kernel(cums[static_cast<size_t>(j)]));
            for (int t = 1; t < k[j]; ++t) w.forms.push_back(OneForm::omega0());
        }
        out = eval_word_series(w, ctx, target);
    }
    cache_put(ckey, out);
    return out;
}

std::vector<Coef> slots_to_cums(const LabelVector& z) { return cumulatives(z); }

}  // namespace

Scalar mpl(const Composition& k, const LabelVector& z, bool star, const EvalCtx& ctx,
           double target_err) {
    if (z.size() != k.depth()) throw std::invalid_argument("label/composition length mismatch");
    double target = target_or_default(target_err, ctx.prec);
    return mpl_from_cums(k, slots_to_cums(z), star, ctx, target);
}

Scalar mpl_single(const Composition& k, const Coef& x, bool star, const EvalCtx& ctx,
                  double target_err) {
    std::vector<Coef> slots(static_cast<size_t>(k.depth()), Coef(1L));
    if (!slots.empty()) slots[0] = x;
    return mpl(k, LabelVector::disk(slots), star, ctx, target_err);
}

Scalar parametric_mpl(const Composition& k, const LabelVector& z, const Scalar& a, bool star,
                      const EvalCtx& ctx, double target_err) {
    if (z.size() != k.depth()) throw std::invalid_argument("label/composition length mismatch");
    if (k.empty()) return Scalar::float_of(Rat(1), ctx.prec);
    if (a.is_exact() && a.rat().get_den() == 1 && a.rat() < 0)
        throw std::domain_error("pole: the parameter is a negative integer");
    auto cums = cumulatives(z);
    for (const Coef& c : cums)
        if (c.is_zero()) return Scalar::float_of(Rat(0), ctx.prec);
    check_mpl_admissible(k, cums);
    double target = target_or_default(target_err, ctx.prec);

    OuterSeries os;
    os.den = OuterSeries::Den::ShiftN;
    os.shift = a;
    os.s = k.first();
    os.pow_init = cums.front();  // adjusted below: x^{1+a} handled by the stream-free factor
    os.pow_mult = cums.front();
    SumStream::Config inner;
    inner.family = SumFamily::Zeta;
    inner.star = star;
    inner.k = slice(k, SliceMode::Forward, 2, k.depth());
    for (size_t j = 1; j < cums.size(); ++j) inner.x.push_back(cums[j] / cums[j - 1]);
    inner.a = a;
    inner.prec = ctx.prec;
    if (star)
        os.G = inner;
    else
        os.F = inner;
    Scalar base = outer_series(os, ctx, target);
    // the outer factor must be z1^{n+a} = z1^a * z1^n
    if (!cums.front().is_one()) {
        Scalar za;
        if (a.is_exact() && a.rat().get_den() == 1) {
            long e = static_cast<long>(mpz_get_si(a.rat().get_num().get_mpz_t()));
            za = Scalar::float_of(cums.front(), ctx.prec).pow_int(e);
        } else {
            if (!(cums.front().is_real() && cums.front().re > 0))
                throw std::domain_error("non-integer parameter needs a positive real first label");
            za = scalar_pow(Scalar::float_of(cums.front(), ctx.prec), a.to_float(ctx.prec));
        }
        base = base * za;
    }
    return base;
}

Scalar t_value(const Composition& k, const Coef& x, bool star, const EvalCtx& ctx,
               double target_err) {
    if (k.empty()) return Scalar::float_of(Rat(1), ctx.prec);
    double target = target_or_default(target_err, ctx.prec);
    if (star) {
        if (!x.is_one()) throw std::invalid_argument("star t-values are defined at x = 1");
        if (k.first() < 2) throw std::domain_error("inadmissible star t-value");
        std::vector<Coef> ones(static_cast<size_t>(k.depth()), Coef(1L));
        return star_by_contraction(k, ones,
                                   [&](const Composition& mk, const std::vector<Coef>&) {
                                       return t_value(mk, Coef(1L), false, ctx, target_err);
                                   });
    }
    if (x.is_one()) {
        if (k.first() < 2) throw std::domain_error("inadmissible t-value");
        std::string ckey = key_of("tval", k, "1", ctx);
        Scalar out;
        if (cache_get(ckey, out)) return out;
        // t(k) = 2^{-r} M(k; -1,...,-1)
        std::vector<int> eps(static_cast<size_t>(k.depth()), -1);
        out = m_value(k, eps, Coef(1L), ctx, target_err);
        Rat half(1, 2);
        Rat f(1);
        for (int j = 0; j < k.depth(); ++j) f *= half;
        out = out * Scalar::exact(f);
        cache_put(ckey, out);
        return out;
    }
    if (x.norm2() > 1) throw std::domain_error("t-polylogarithm needs |x| <= 1");
    if (k.first() == 1 && x.is_one()) throw std::domain_error("inadmissible");
    // interior: sum_n x^{2n-1}/(2n-1)^{k1} t_{n-1}(k2..)
    OuterSeries os;
    os.den = OuterSeries::Den::Odd;
    os.s = k.first();
    os.pow_init = x;
    os.pow_mult = x * x;
    SumStream::Config f;
    f.family = SumFamily::T;
    f.star = false;
    f.k = slice(k, SliceMode::Forward, 2, k.depth());
    f.prec = ctx.prec;
    os.F = f;
    return outer_series(os, ctx, target);
}

Scalar m_value(const Composition& k, const std::vector<int>& eps, const Coef& x,
               const EvalCtx& ctx, double target_err) {
    const int r = k.depth();
    if (static_cast<int>(eps.size()) != r) throw std::invalid_argument("sign length mismatch");
    if (r == 0) return Scalar::float_of(Rat(1), ctx.prec);
    if (x.is_one() && k.first() < 2)
        throw std::domain_error("inadmissible mixed value at x = 1");
    if (x.norm2() > 1) throw std::domain_error("M-polylogarithm needs |x| <= 1");
    if (k.first() == 1 && x.is_one()) throw std::domain_error("inadmissible");

    std::ostringstream extra;
    for (int e : eps) extra << (e > 0 ? '+' : '-');
    extra << '@' << x.str();
    std::string ckey = key_of("mval", k, extra.str(), ctx);
    Scalar out;
    if (cache_get(ckey, out)) return out;

    // expansion over sign subsets into polylogarithms at signed labels
    Scalar total = Scalar::zero();
    for (long mask = 0; mask < (1L << r); ++mask) {
        int sign_coeff = 1;
        std::vector<Coef> slots(static_cast<size_t>(r), Coef(1L));
        for (int j = 0; j < r; ++j) {
            if (mask & (1L << j)) {
                sign_coeff *= eps[static_cast<size_t>(j)];
                slots[static_cast<size_t>(j)] = Coef(-1L);
            }
        }
        slots[0] = slots[0] * x;
        Scalar term = mpl(k, LabelVector::disk(slots), false, ctx, target_err);
        total = total + (sign_coeff == 1 ? term : -term);
    }
    cache_put(ckey, total);
    return total;
}

// ---------------------------------------------------------------------------
// Convoluted families.
// ---------------------------------------------------------------------------

namespace {

void conv_guard(const Composition& k, const Composition& l) {
    if (k.empty() || l.empty()) throw std::invalid_argument("convolution needs nonempty indices");
    if (k.first() + l.first() < 2) throw std::domain_error("divergent convolution");
}

}  // namespace

Scalar conv_zeta(const Composition& k, const Composition& l, const EvalCtx& ctx,
                 double target_err) {
    conv_guard(k, l);
    std::string ckey = key_of("convz", k, l.str(), ctx);
    Scalar out;
    if (cache_get(ckey, out)) return out;
    OuterSeries os;
    os.den = OuterSeries::Den::N;
    os.s = k.first() + l.first();
    SumStream::Config f;
    f.family = SumFamily::Zeta;
    f.k = slice(k, SliceMode::Forward, 2, k.depth());
    f.prec = ctx.prec;
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::Zeta;
    g.star = true;
    g.k = slice(l, SliceMode::Forward, 2, l.depth());
    g.prec = ctx.prec;
    os.G = g;
    out = outer_series(os, ctx, target_err);
    cache_put(ckey, out);
    return out;
}

Scalar conv_zeta_labeled(const Composition& k, const LabelVector& albl, const Composition& l,
                         const LabelVector& blbl, const EvalCtx& ctx, double target_err) {
    conv_guard(k, l);
    if (albl.size() != k.depth() || blbl.size() != l.depth())
        throw std::invalid_argument("label length mismatch");
    std::string ckey = key_of("convzl", k, l.str() + "#" + albl.str() + "#" + blbl.str(), ctx);
    Scalar out;
    if (cache_get(ckey, out)) return out;
    OuterSeries os;
    os.den = OuterSeries::Den::N;
    os.s = k.first() + l.first();
    Coef q = albl[0] * blbl[0];
    os.pow_init = q;
    os.pow_mult = q;
    SumStream::Config f;
    f.family = SumFamily::Zeta;
    f.k = slice(k, SliceMode::Forward, 2, k.depth());
    for (int j = 1; j < k.depth(); ++j) f.x.push_back(albl[j]);
    f.prec = ctx.prec;
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::Zeta;
    g.star = true;
    g.k = slice(l, SliceMode::Forward, 2, l.depth());
    for (int j = 1; j < l.depth(); ++j) g.x.push_back(blbl[j]);
    g.prec = ctx.prec;
    os.G = g;
    out = outer_series(os, ctx, target_err);
    cache_put(ckey, out);
    return out;
}

Scalar conv_t(const Composition& k, const Composition& l, const EvalCtx& ctx, double target_err) {
    conv_guard(k, l);
    std::string ckey = key_of("convt", k, l.str(), ctx);
    Scalar out;
    if (cache_get(ckey, out)) return out;
    OuterSeries os;
    os.den = OuterSeries::Den::Odd;
    os.s = k.first() + l.first();
    SumStream::Config f;
    f.family = SumFamily::T;
    f.k = slice(k, SliceMode::Forward, 2, k.depth());
    f.prec = ctx.prec;
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::T;
    g.star = true;
    g.k = slice(l, SliceMode::Forward, 2, l.depth());
    g.prec = ctx.prec;
    os.G = g;
    out = outer_series(os, ctx, target_err);
    cache_put(ckey, out);
    return out;
}

Scalar conv_m(const Composition& k, const std::vector<int>& eta, const Composition& l,
              const std::vector<int>& eps, const EvalCtx& ctx, double target_err) {
    conv_guard(k, l);
    if (static_cast<int>(eta.size()) != k.depth() || static_cast<int>(eps.size()) != l.depth())
        throw std::invalid_argument("sign length mismatch");
    const int e1 = eta[0], s1 = eps[0];
    if (e1 < -1 || e1 > 1 || s1 < -1 || s1 > 1)
        throw std::invalid_argument("first-slot signs must lie in {-1,0,+1}");
    if (e1 == 0 && s1 == 0) throw std::invalid_argument("first-slot signs must not both vanish");
    for (size_t j = 1; j < eta.size(); ++j)
        if (eta[j] != 1 && eta[j] != -1) throw std::invalid_argument("trailing signs must be +-1");
    for (size_t j = 1; j < eps.size(); ++j)
        if (eps[j] != 1 && eps[j] != -1) throw std::invalid_argument("trailing signs must be +-1");
    if (e1 != 0 && s1 != 0 && e1 != s1) return Scalar::zero();  // the parity projectors clash

    std::ostringstream extra;
    extra << l.str() << '#';
    for (int v : eta) extra << v << ',';
    extra << '#';
    for (int v : eps) extra << v << ',';
    std::string ckey = key_of("convm", k, extra.str(), ctx);
    Scalar out;
    if (cache_get(ckey, out)) return out;

    OuterSeries os;
    os.den = OuterSeries::Den::N;
    os.s = k.first() + l.first();
    os.parity = {e1, s1};
    os.half = true;
    SumStream::Config f;
    f.family = SumFamily::M;
    f.k = slice(k, SliceMode::Forward, 2, k.depth());
    f.signs.assign(eta.begin() + 1, eta.end());
    f.prec = ctx.prec;
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::M;
    g.star = true;
    g.k = slice(l, SliceMode::Forward, 2, l.depth());
    g.signs.assign(eps.begin() + 1, eps.end());
    g.prec = ctx.prec;
    os.G = g;
    out = outer_series(os, ctx, target_err);
    cache_put(ckey, out);
    return out;
}

// ---------------------------------------------------------------------------

Scalar eval_value(const ValueSpec& spec, const EvalCtx& ctx, double target_err) {
    switch (spec.family) {
        case ValueFamily::Mpl:
            return mpl(spec.k, spec.x, false, ctx, target_err);
        case ValueFamily::MplStar:
            return mpl(spec.k, spec.x, true, ctx, target_err);
        case ValueFamily::TPoly:
            return t_value(spec.k, spec.x.empty() ? Coef(1L) : spec.x[0], false, ctx, target_err);
        case ValueFamily::TPolyStar:
            return t_value(spec.k, spec.x.empty() ? Coef(1L) : spec.x[0], true, ctx, target_err);
        case ValueFamily::MPoly: {
            std::vector<int> eps;
            for (const Coef& c : spec.eta.entries()) eps.push_back(c.re == 1 ? 1 : -1);
            return m_value(spec.k, eps, spec.x.empty() ? Coef(1L) : spec.x[0], ctx, target_err);
        }
        case ValueFamily::ConvZeta:
            return conv_zeta(spec.k, spec.l, ctx, target_err);
        case ValueFamily::ConvT:
            return conv_t(spec.k, spec.l, ctx, target_err);
        case ValueFamily::ConvM: {
            std::vector<int> eta, eps;
            for (const Coef& c : spec.eta.entries())
                eta.push_back(c.re == 0 ? 0 : (c.re == 1 ? 1 : -1));
            for (const Coef& c : spec.eps.entries())
                eps.push_back(c.re == 0 ? 0 : (c.re == 1 ? 1 : -1));
            return conv_m(spec.k, eta, spec.l, eps, ctx, target_err);
        }
        case ValueFamily::ParametricMpl:
            return parametric_mpl(spec.k, spec.x, spec.a.value_or(Scalar::zero()), false, ctx,
                                  target_err);
        case ValueFamily::ParametricMplStar:
            return parametric_mpl(spec.k, spec.x, spec.a.value_or(Scalar::zero()), true, ctx,
                                  target_err);
    }
    throw std::logic_error("unreachable");
}

IntegralWord word_from_value(const ValueSpec& spec) {
    switch (spec.family) {
        case ValueFamily::Mpl:
            return word_for_mpl(spec.k, spec.x);
        case ValueFamily::TPoly:
            return word_for_tpoly(spec.k, spec.x.empty() ? Coef(1L) : spec.x[0]);
        case ValueFamily::MPoly: {
            std::vector<int> eps;
            for (const Coef& c : spec.eta.entries()) eps.push_back(c.re == 1 ? 1 : -1);
            return word_for_mpoly(spec.k, eps, spec.x.empty() ? Coef(1L) : spec.x[0]);
        }
        default:
            throw std::invalid_argument(
                "no single-word representation for this family");
    }
}

}  // namespace mzv
