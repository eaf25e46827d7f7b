#include "mzvlab/words.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mzv {

OneForm OneForm::kernel(Coef s) {
    if (s.is_zero()) throw std::invalid_argument("Kernel parameter must be nonzero");
    return {FormKind::Kernel, std::move(s), 1};
}

OneForm OneForm::pow(int n) {
    if (n < 1) throw std::invalid_argument("Pow exponent must be >= 1");
    return {FormKind::Pow, Coef(1L), n};
}

OneForm OneForm::cauchy(Coef a) {
    return {FormKind::CauchyShift, std::move(a), 1};
}

std::string OneForm::str() const {
    switch (kind) {
        case FormKind::Omega0: return "O";
        case FormKind::Kernel: return "K(" + param.str() + ")";
        case FormKind::Pow: return "P(" + std::to_string(n) + ")";
        case FormKind::Wminus: return "W-";
        case FormKind::Wplus: return "W+";
        case FormKind::CauchyShift: return "CS(" + param.str() + ")";
    }
    return "?";
}

OneForm OneForm::parse(const std::string& s) {
    if (s == "O") return omega0();
    if (s == "W-") return wminus();
    if (s == "W+") return wplus();
    auto inner = [&](size_t at) { return s.substr(at + 1, s.size() - at - 2); };
    if (s.rfind("K(", 0) == 0 && s.back() == ')') return kernel(coef_from_string(inner(1)));
    if (s.rfind("P(", 0) == 0 && s.back() == ')') return pow(std::stoi(inner(1)));
    if (s.rfind("CS(", 0) == 0 && s.back() == ')') return cauchy(coef_from_string(inner(2)));
    throw std::invalid_argument("bad 1-form: " + s);
}

std::string IntegralWord::str() const {
    std::string s;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (i) s += ' ';
        s += forms[i].str();
    }
    s += " @[" + rat_to_string(lower) + "," + upper.str() + "]";
    if (coeff != 1) s += " *" + rat_to_string(coeff);
    return s;
}

std::string IntegralWord::key() const { return str(); }

IntegralWord parse_word(const std::string& text) {
    IntegralWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("@[", 0) == 0) {
            std::string body = tok.substr(2, tok.size() - 3);
            auto comma = body.find(',');
            w.lower = rat_from_string(body.substr(0, comma));
            w.upper = coef_from_string(body.substr(comma + 1));
        } else if (tok[0] == '*') {
            w.coeff = rat_from_string(tok.substr(1));
        } else {
            w.forms.push_back(OneForm::parse(tok));
        }
    }
    return w;
}

void check_word_admissible(const IntegralWord& w) {
    if (w.forms.empty()) return;
    const OneForm& first = w.forms.front();
    if (w.lower == 0 && first.kind == FormKind::Omega0)
        throw std::domain_error("divergent word: dt/t nearest the lower endpoint 0");
    const OneForm& last = w.forms.back();
    if (last.kind == FormKind::Kernel && (last.param * w.upper).is_one())
        throw std::domain_error("divergent word: kernel singular at the upper endpoint");
    if ((last.kind == FormKind::Wminus || last.kind == FormKind::Wplus) && w.upper.is_one())
        throw std::domain_error("divergent word: w-form singular at the upper endpoint");
    if (last.kind == FormKind::CauchyShift && last.param == w.upper)
        throw std::domain_error("divergent word: Cauchy kernel singular at the upper endpoint");
}

// ---------------------------------------------------------------------------
// Series engine: coefficient pipelines around a segment anchor.
// ---------------------------------------------------------------------------

namespace {

// Primitive alternative after local expansion: coeff * (Kernel(kappa) | Omega0 | Pow(pw)).
struct PrimAlt {
    Rat coeff;
    enum class P { K, O, POW } kind;
    Coef kappa;
    int pw = 1;
};

std::vector<PrimAlt> base_alts(const OneForm& f) {
    switch (f.kind) {
        case FormKind::Omega0:
            return {{Rat(1), PrimAlt::P::O, Coef(), 1}};
        case FormKind::Kernel:
            return {{Rat(1), PrimAlt::P::K, f.param, 1}};
        case FormKind::Pow:
            return {{Rat(1), PrimAlt::P::POW, Coef(), f.n}};
        case FormKind::Wminus:  // 2/(1-t^2) = K(1) - K(-1)
            return {{Rat(1), PrimAlt::P::K, Coef(1L), 1}, {Rat(-1), PrimAlt::P::K, Coef(-1L), 1}};
        case FormKind::Wplus:  // 2t/(1-t^2) = K(1) + K(-1)
            return {{Rat(1), PrimAlt::P::K, Coef(1L), 1}, {Rat(1), PrimAlt::P::K, Coef(-1L), 1}};
        case FormKind::CauchyShift: {
            if (f.param.is_zero())  // dt/(0-t) = -dt/t
                return {{Rat(-1), PrimAlt::P::O, Coef(), 1}};
            return {{Rat(1), PrimAlt::P::K, Coef(1L) / f.param, 1}};
        }
    }
    throw std::logic_error("unreachable");
}

// Shift t = a + s. Valid for rational anchors a >= 0.
std::vector<PrimAlt> shift_alts(const std::vector<PrimAlt>& alts, const Rat& a) {
    if (a == 0) return alts;
    std::vector<PrimAlt> out;
    for (const PrimAlt& p : alts) {
        switch (p.kind) {
            case PrimAlt::P::O: {
                // dt/t -> -K(-1/a)
                PrimAlt q{p.coeff * Rat(-1), PrimAlt::P::K, Coef(Rat(-1) / a), 1};
                out.push_back(std::move(q));
                break;
            }
            case PrimAlt::P::K: {
                Coef den = Coef(Rat(1)) - p.kappa * Coef(a);
                if (den.is_zero()) throw std::domain_error("kernel singular at segment anchor");
                out.push_back({p.coeff, PrimAlt::P::K, p.kappa / den, 1});
                break;
            }
            case PrimAlt::P::POW: {
                // (a+s)^{n-1} = sum_i C(n-1,i) a^{n-1-i} s^i
                for (int i = 0; i < p.pw; ++i) {
                    Rat c = p.coeff * Rat(binomial(static_cast<unsigned long>(p.pw - 1),
                                                   static_cast<unsigned long>(i)));
                    Rat apow(1);
                    for (int t = 0; t < p.pw - 1 - i; ++t) apow *= a;
                    out.push_back({c * apow, PrimAlt::P::POW, Coef(), i + 1});
                }
                break;
            }
        }
    }
    return out;
}

// Reflection t = up - s for a real upper point.
std::vector<PrimAlt> reflect_alts(const std::vector<PrimAlt>& alts, const Rat& up) {
    std::vector<PrimAlt> out;
    for (const PrimAlt& p : alts) {
        switch (p.kind) {
            case PrimAlt::P::O:  // dt/t -> K(1/up)
                out.push_back({p.coeff, PrimAlt::P::K, Coef(Rat(1) / up), 1});
                break;
            case PrimAlt::P::K: {
                Coef su = p.kappa * Coef(up);
                if (su.is_one()) {
                    out.push_back({p.coeff, PrimAlt::P::O, Coef(), 1});
                } else {
                    Coef den = su - Coef(1L);
                    out.push_back({p.coeff * Rat(-1), PrimAlt::P::K, p.kappa / den, 1});
                }
                break;
            }
            case PrimAlt::P::POW: {
                // (up-s)^{n-1} = sum_i C(n-1,i) up^{n-1-i} (-s)^i
                for (int i = 0; i < p.pw; ++i) {
                    Rat c = p.coeff * Rat(binomial(static_cast<unsigned long>(p.pw - 1),
                                                   static_cast<unsigned long>(i)));
                    Rat upw(1);
                    for (int t = 0; t < p.pw - 1 - i; ++t) upw *= up;
                    if (i % 2 == 1) c = -c;
                    out.push_back({c * upw, PrimAlt::P::POW, Coef(), i + 1});
                }
                break;
            }
        }
    }
    return out;
}

double alt_kappa_max(const std::vector<PrimAlt>& alts) {
    double m = 0.0;
    for (const PrimAlt& p : alts)
        if (p.kind == PrimAlt::P::K) m = std::max(m, std::sqrt(p.kappa.norm2().get_d()));
    return m;
}

struct CVec {
    std::vector<BigFloat> re, im;
    explicit CVec(size_t n, long prec)
        : re(n, BigFloat(0L, prec)), im(n, BigFloat(0L, prec)) {}
};

// One pipeline step: out += coeff * apply(alt, g). ghat tracks magnitudes.
void apply_alts(const std::vector<PrimAlt>& alts, const CVec& g, const std::vector<double>& ghat,
                CVec& out, std::vector<double>& ohat, long prec) {
    const size_t M = g.re.size();
    for (const PrimAlt& p : alts) {
        BigFloat cr(p.coeff, prec);
        double cd = std::abs(p.coeff.get_d());
        switch (p.kind) {
            case PrimAlt::P::O: {
                for (size_t j = 1; j < M; ++j) {
                    BigFloat t = cr / BigFloat(static_cast<long>(j), prec);
                    out.re[j] += g.re[j] * t;
                    out.im[j] += g.im[j] * t;
                    ohat[j] += ghat[j] * cd / static_cast<double>(j);
                }
                break;
            }
            case PrimAlt::P::POW: {
                for (size_t j = 0; j + static_cast<size_t>(p.pw) < M; ++j) {
                    size_t d = j + static_cast<size_t>(p.pw);
                    BigFloat t = cr / BigFloat(static_cast<long>(d), prec);
                    out.re[d] += g.re[j] * t;
                    out.im[d] += g.im[j] * t;
                    ohat[d] += ghat[j] * cd / static_cast<double>(d);
                }
                break;
            }
            case PrimAlt::P::K: {
                BigFloat kr(p.kappa.re, prec), ki(p.kappa.im, prec);
                double kd = std::sqrt(p.kappa.norm2().get_d());
                BigFloat hr(0L, prec), hi(0L, prec);
                double hh = 0.0;
                for (size_t j = 1; j < M; ++j) {
                    BigFloat sr = hr + g.re[j - 1];
                    BigFloat si = hi + g.im[j - 1];
                    hr = kr * sr - ki * si;
                    hi = kr * si + ki * sr;
                    hh = kd * (hh + ghat[j - 1]);
                    BigFloat jj(static_cast<long>(j), prec);
                    out.re[j] += cr * hr / jj;
                    out.im[j] += cr * hi / jj;
                    ohat[j] += cd * hh / static_cast<double>(j);
                }
                break;
            }
        }
    }
}

enum class SegKind { Forward, Reflected };

struct Segment {
    SegKind kind;
    Rat anchor;  // forward: left endpoint; reflected: the (real) upper point
    Rat length;
};

// Evaluates all prefix integrals of a form pipeline over one segment.
// For Forward segments: values[i] = integral of forms[start..start+i) over the
// segment, i = 0..count. For Reflected: forms are consumed from the back; the
// caller interprets values accordingly.
class SegmentPipeline {
  public:
    SegmentPipeline(const Segment& seg, long prec, double target, int total_forms)
        : seg_(seg), prec_(prec), target_(target), total_forms_(total_forms) {}

    // Runs the pipeline over the given transformed alternatives (already in
    // local coordinates), capturing the value after each form.
    std::vector<Scalar> run(const std::vector<std::vector<PrimAlt>>& alt_seq) {
        double len = std::abs(seg_.length.get_d());
        double kmax = 0.0;
        for (const auto& a : alt_seq) kmax = std::max(kmax, alt_kappa_max(a));
        double ratio = len * std::max(kmax, 1e-30);
        size_t M = pick_m(ratio);
        for (int attempt = 0; attempt < 3; ++attempt) {
            bool ok = true;
            auto vals = run_once(alt_seq, M, ratio, ok);
            if (ok) return vals;
            M *= 2;
            if (M > 20000) break;
        }
        throw std::domain_error("series segment did not reach the requested accuracy");
    }

  private:
    size_t pick_m(double ratio) const {
        if (ratio >= 0.95) throw std::domain_error("segment expansion ratio too close to 1");
        double t = target_ > 0 ? target_ : std::pow(2.0, -static_cast<double>(prec_));
        double m = 48.0;
        if (ratio > 1e-12) m = std::log(t) / std::log(ratio);
        return static_cast<size_t>(std::min(6000.0, std::max(48.0, m + 16.0 + 8.0 * total_forms_)));
    }

    std::vector<Scalar> run_once(const std::vector<std::vector<PrimAlt>>& alt_seq, size_t M,
                                 double ratio, bool& ok) {
        CVec g(M + 1, prec_);
        std::vector<double> ghat(M + 1, 0.0);
        g.re[0] = BigFloat(1L, prec_);
        ghat[0] = 1.0;
        std::vector<Scalar> out;
        out.reserve(alt_seq.size() + 1);
        out.push_back(capture(g, ghat, M, ratio, 0, ok));
        int applied = 0;
        for (const auto& alts : alt_seq) {
            for (const PrimAlt& p : alts)
                if (p.kind == PrimAlt::P::O && ghat[0] != 0.0)
                    throw std::domain_error("divergent word: dt/t at the segment anchor");
            CVec ng(M + 1, prec_);
            std::vector<double> nhat(M + 1, 0.0);
            apply_alts(alts, g, ghat, ng, nhat, prec_);
            g = std::move(ng);
            ghat = std::move(nhat);
            ++applied;
            out.push_back(capture(g, ghat, M, ratio, applied, ok));
            if (!ok) return out;
        }
        return out;
    }

    Scalar capture(const CVec& g, const std::vector<double>& ghat, size_t M, double ratio,
                   int applied, bool& ok) {
        // Horner at the segment length (real, positive).
        BigFloat pt(seg_.length, prec_);
        BigFloat vr(0L, prec_), vi(0L, prec_);
        for (size_t j = M + 1; j-- > 0;) {
            vr = vr * pt + g.re[j];
            vi = vi * pt + g.im[j];
        }
        // tail bound from the magnitude pipeline
        double len = std::abs(seg_.length.get_d());
        double lp = std::pow(len, static_cast<double>(M));
        double aM = ghat[M] * lp;
        double rho = ratio * std::pow(1.0 + 1.0 / static_cast<double>(M),
                                      static_cast<double>(total_forms_ + 1));
        double tail = 0.0;
        if (applied > 0) {
            if (rho >= 0.999) {
                ok = false;
                return Scalar::zero();
            }
            tail = 4.0 * aM * rho / (1.0 - rho);
            double t = target_ > 0 ? target_ : std::pow(2.0, -static_cast<double>(prec_ - 8));
            if (tail > t && tail > 1e-300) {
                ok = false;
                return Scalar::zero();
            }
        }
        double vhat = 0.0, lpow = 1.0;
        for (size_t j = 0; j <= M; ++j) {
            vhat += ghat[j] * lpow;
            lpow *= len;
        }
        CNum z(prec_);
        z.re = vr;
        z.im = vi;
        BigFloat err = bnd::from(tail);
        // linear pipeline rounding allowance
        err = bnd::add(err, bnd::mul(bnd::from(vhat + 1.0),
                                     bnd::mul(bnd::from(static_cast<double>((applied + 1) * (M + 1))),
                                              bnd::pow2(-prec_ + 6))));
        return Scalar::from_cnum(std::move(z), std::move(err));
    }

    Segment seg_;
    long prec_;
    double target_;
    int total_forms_;
};

std::vector<std::vector<PrimAlt>> local_alt_seq(const std::vector<OneForm>& forms, size_t b,
                                                size_t e, const Segment& seg) {
    std::vector<std::vector<PrimAlt>> seq;
    if (seg.kind == SegKind::Forward) {
        for (size_t i = b; i < e; ++i) seq.push_back(shift_alts(base_alts(forms[i]), seg.anchor));
    } else {
        for (size_t i = e; i-- > b;) seq.push_back(reflect_alts(base_alts(forms[i]), seg.anchor));
    }
    return seq;
}

std::vector<std::complex<double>> word_singularities(const IntegralWord& w) {
    std::vector<std::complex<double>> s;
    for (const OneForm& f : w.forms) {
        for (const PrimAlt& p : base_alts(f)) {
            if (p.kind == PrimAlt::P::K) {
                std::complex<double> kappa(p.kappa.re.get_d(), p.kappa.im.get_d());
                s.push_back(1.0 / kappa);
            } else if (p.kind == PrimAlt::P::O) {
                s.emplace_back(0.0, 0.0);
            }
        }
    }
    return s;
}

double dist_to_sing(const std::vector<std::complex<double>>& sing, double x) {
    double d = 1e9;
    for (const auto& s : sing) {
        double dd = std::abs(s - std::complex<double>(x, 0.0));
        if (dd > 1e-9) d = std::min(d, dd);
    }
    return d;
}

Rat snap(double x) {
    long num = std::lround(x * 64.0);
    return Rat(num, 64);
}

// Multi-segment evaluation over [0, up] (real upper), with the last segment
// expanded from the upper endpoint by reflection.
Scalar eval_multi(const IntegralWord& w, const std::vector<Rat>& breaks, const EvalCtx& ctx,
                  double target) {
    const size_t L = w.forms.size();
    const Rat up = w.upper.re;
    std::vector<Segment> segs;
    Rat prev(0);
    for (const Rat& c : breaks) {
        segs.push_back({SegKind::Forward, prev, c - prev});
        prev = c;
    }
    segs.push_back({SegKind::Reflected, up, up - prev});
    const size_t m = segs.size();

    // I[t][b][e] = integral of forms[b..e) over segment t
    std::vector<std::vector<std::vector<Scalar>>> I(
        m, std::vector<std::vector<Scalar>>(L + 1, std::vector<Scalar>(L + 1)));
    for (size_t t = 0; t < m; ++t) {
        if (segs[t].kind == SegKind::Forward) {
            // segment 0 only ever takes prefixes starting at form 0
            const size_t bmax = (t == 0) ? 0 : L;
            for (size_t b = 0; b <= bmax; ++b) {
                auto seq = local_alt_seq(w.forms, b, L, segs[t]);
                SegmentPipeline pipe(segs[t], ctx.prec, target, static_cast<int>(L));
                auto vals = pipe.run(seq);
                for (size_t e = b; e <= L; ++e) I[t][b][e] = vals[e - b];
            }
        } else {
            // one reversed pipeline: prefix i of the reversed word = forms[L-i..L)
            auto seq = local_alt_seq(w.forms, 0, L, segs[t]);
            SegmentPipeline pipe(segs[t], ctx.prec, target, static_cast<int>(L));
            auto vals = pipe.run(seq);
            for (size_t i = 0; i <= L; ++i)
                I[t][L - i][L] = vals[i];
            // sub-ranges not ending at L are never needed for the last segment
        }
    }

    // V[t][i] = value of forms[0..i) distributed over segments 0..t
    std::vector<Scalar> V(L + 1);
    for (size_t i = 0; i <= L; ++i) V[i] = I[0][0][i];
    for (size_t t = 1; t + 1 < m; ++t) {
        std::vector<Scalar> NV(L + 1);
        for (size_t i = 0; i <= L; ++i) {
            Scalar acc = Scalar::float_of(Rat(0), ctx.prec);
            for (size_t j = 0; j <= i; ++j) acc = acc + V[j] * I[t][j][i];
            NV[i] = acc;
        }
        V = std::move(NV);
    }
    Scalar total = Scalar::float_of(Rat(0), ctx.prec);
    for (size_t j = 0; j <= L; ++j) total = total + V[j] * I[m - 1][j][L];
    return total * Scalar::exact(w.coeff);
}

std::vector<Rat> choose_breaks(const IntegralWord& w) {
    const double up = w.upper.re.get_d();
    auto sing = word_singularities(w);
    for (const auto& s : sing) {
        if (std::abs(s.imag()) < 1e-12 && s.real() > 1e-9 && s.real() < up - 1e-9)
            throw std::domain_error("form singular inside the integration interval");
    }
    double l0 = 0.72 * std::min(dist_to_sing(sing, 0.0), 2.0);
    double l1 = 0.72 * std::min(dist_to_sing(sing, up), 2.0);
    std::vector<Rat> breaks;
    if (l0 + l1 >= up * 1.1) {
        double c = std::clamp(up / 2.0, up - 0.95 * l1, 0.95 * l0);
        breaks.push_back(snap(c));
    } else {
        double c = 0.9 * l0;
        breaks.push_back(snap(c));
        c = breaks.back().get_d();
        int guard = 0;
        while (up - c > 0.9 * l1) {
            double step = 0.7 * dist_to_sing(sing, c);
            if (step < 0.02) throw std::domain_error("cannot segment around singularities");
            double nc = std::min(c + step, up - 0.6 * l1);
            if (nc <= c + 1.0 / 64.0) nc = c + 1.0 / 32.0;
            breaks.push_back(snap(nc));
            c = breaks.back().get_d();
            if (++guard > 12) throw std::domain_error("segmentation failed to converge");
        }
    }
    // sanity: strictly increasing, strictly interior
    std::vector<Rat> out;
    Rat prev(0);
    for (const Rat& b : breaks) {
        Rat v = b;
        if (v <= prev) continue;
        if (v >= w.upper.re) break;
        out.push_back(v);
        prev = v;
    }
    if (out.empty()) out.push_back(w.upper.re / 2);
    return out;
}

double word_direct_ratio(const IntegralWord& w) {
    double kmax = 0.0;
    for (const OneForm& f : w.forms) kmax = std::max(kmax, alt_kappa_max(base_alts(f)));
    double um = std::sqrt(w.upper.norm2().get_d());
    return kmax * um;
}

}  // namespace

Scalar eval_word_series(const IntegralWord& w, const EvalCtx& ctx, double target_err) {
    if (w.lower != 0) throw std::invalid_argument("series evaluation requires lower endpoint 0");
    check_word_admissible(w);
    if (w.forms.empty()) return Scalar::float_of(w.coeff, ctx.prec);
    if (w.upper.is_zero()) return Scalar::float_of(Rat(0), ctx.prec);

    if (word_direct_ratio(w) <= 0.75) {
        // single expansion around 0, evaluated at the (possibly complex) upper point
        Segment seg{SegKind::Forward, Rat(0), Rat(1)};
        std::vector<std::vector<PrimAlt>> seq;
        for (const OneForm& f : w.forms) seq.push_back(base_alts(f));
        // evaluate at the upper point via Horner: reuse pipeline with length
        // set to |upper| for the bound, then Horner at the complex point.
        // For simplicity: if upper is real use the standard path.
        if (w.upper.is_real() && w.upper.re > 0) {
            seg.length = w.upper.re;
            SegmentPipeline pipe(seg, ctx.prec, target_err, static_cast<int>(w.size()));
            auto vals = pipe.run(seq);
            return vals.back() * Scalar::exact(w.coeff);
        }
        // complex upper: expand with length = |upper| bound and evaluate by
        // a secondary Horner pass at the complex point
        throw std::domain_error("complex upper endpoints are not supported by this evaluator");
    }
    if (!(w.upper.is_real() && w.upper.re > 0 && w.upper.re <= 1))
        throw std::domain_error("boundary evaluation needs a real upper endpoint in (0,1]");
    return eval_multi(w, choose_breaks(w), ctx, target_err);
}

Scalar compose_paths(const IntegralWord& w, const Rat& c, const EvalCtx& ctx, double target_err) {
    if (w.lower != 0) throw std::invalid_argument("composition requires lower endpoint 0");
    if (!(w.upper.is_real() && w.upper.re > 0))
        throw std::invalid_argument("composition requires a real positive upper endpoint");
    if (!(c > 0 && c < w.upper.re))
        throw std::invalid_argument("split point must lie strictly inside the interval");
    check_word_admissible(w);
    auto sing = word_singularities(w);
    double cd = c.get_d();
    if (dist_to_sing(sing, cd) < 1e-9) throw std::domain_error("split point at a singularity");
    if (w.forms.empty()) return Scalar::float_of(w.coeff, ctx.prec);
    return eval_multi(w, {c}, ctx, target_err);
}

// ---------------------------------------------------------------------------
// Quadrature oracle.
// ---------------------------------------------------------------------------

namespace {

constexpr long kQuadPrec = 256;

struct GaussRule {
    std::vector<BigFloat> x, wt;                 // nodes/weights on [-1,1]
    std::vector<std::vector<BigFloat>> partial;  // partial[k][j] = int_{-1}^{x_k} l_j
};

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussRule r;
    r.x.assign(order, BigFloat(kQuadPrec));
    r.wt.assign(order, BigFloat(kQuadPrec));
    for (int i = 0; i < order; ++i) {
        // Newton iteration on P_n from the Chebyshev initial guess
        BigFloat t(std::cos(M_PI * (i + 0.75) / (order + 0.5)), kQuadPrec);
        for (int it2 = 0; it2 < 100; ++it2) {
            BigFloat p0(1L, kQuadPrec), p1 = t;
            for (int k = 2; k <= order; ++k) {
                BigFloat p2 = (BigFloat(2 * k - 1, kQuadPrec) * t * p1 -
                               BigFloat(k - 1, kQuadPrec) * p0) /
                              BigFloat(k, kQuadPrec);
                p0 = p1;
                p1 = p2;
            }
            BigFloat dp = BigFloat(order, kQuadPrec) * (t * p1 - p0) /
                          (t * t - BigFloat(1L, kQuadPrec));
            BigFloat dt = p1 / dp;
            t -= dt;
            if (abs(dt) < BigFloat::pow2(-kQuadPrec + 16, kQuadPrec)) break;
        }
        r.x[static_cast<size_t>(i)] = t;
        BigFloat p0(1L, kQuadPrec), p1 = t;
        for (int k = 2; k <= order; ++k) {
            BigFloat p2 = (BigFloat(2 * k - 1, kQuadPrec) * t * p1 -
                           BigFloat(k - 1, kQuadPrec) * p0) /
                          BigFloat(k, kQuadPrec);
            p0 = p1;
            p1 = p2;
        }
        BigFloat dp = BigFloat(order, kQuadPrec) * (t * p1 - p0) / (t * t - BigFloat(1L, kQuadPrec));
        r.wt[static_cast<size_t>(i)] =
            BigFloat(2L, kQuadPrec) / ((BigFloat(1L, kQuadPrec) - t * t) * dp * dp);
    }

    // Lagrange basis polynomials: coefficients of prod (t - x_i), then deflate.
    std::vector<BigFloat> master(static_cast<size_t>(order) + 1, BigFloat(0L, kQuadPrec));
    master[0] = BigFloat(1L, kQuadPrec);
    int deg = 0;
    for (int i = 0; i < order; ++i) {
        for (int d = deg + 1; d >= 1; --d)
            master[static_cast<size_t>(d)] = master[static_cast<size_t>(d - 1)] -
                                             r.x[static_cast<size_t>(i)] * master[static_cast<size_t>(d)];
        master[0] = -r.x[static_cast<size_t>(i)] * master[0];
        ++deg;
    }
    r.partial.assign(static_cast<size_t>(order),
                     std::vector<BigFloat>(static_cast<size_t>(order), BigFloat(0L, kQuadPrec)));
    for (int j = 0; j < order; ++j) {
        // deflate master by (t - x_j)
        std::vector<BigFloat> lj(static_cast<size_t>(order), BigFloat(0L, kQuadPrec));
        BigFloat carry(0L, kQuadPrec);
        for (int d = order; d >= 1; --d) {
            carry = master[static_cast<size_t>(d)] + r.x[static_cast<size_t>(j)] * carry;
            lj[static_cast<size_t>(d - 1)] = carry;
        }
        // scale so that lj(x_j) = 1
        BigFloat denom(0L, kQuadPrec);
        BigFloat xp(1L, kQuadPrec);
        for (int d = 0; d < order; ++d) {
            denom += lj[static_cast<size_t>(d)] * xp;
            xp *= r.x[static_cast<size_t>(j)];
        }
        for (int d = 0; d < order; ++d) lj[static_cast<size_t>(d)] /= denom;
        // partial integrals: int_{-1}^{x_k} l_j = sum_d lj_d (x_k^{d+1} - (-1)^{d+1})/(d+1)
        for (int k = 0; k < order; ++k) {
            BigFloat acc(0L, kQuadPrec);
            BigFloat xk = r.x[static_cast<size_t>(k)];
            BigFloat xkp = xk;
            for (int d = 0; d < order; ++d) {
                BigFloat mo((d + 1) % 2 == 0 ? 1L : -1L, kQuadPrec);
                acc += lj[static_cast<size_t>(d)] * (xkp - mo) / BigFloat(d + 1, kQuadPrec);
                xkp *= xk;
            }
            r.partial[static_cast<size_t>(k)][static_cast<size_t>(j)] = acc;
        }
    }
    return cache.emplace(order, std::move(r)).first->second;
}

BigFloat form_eval(const OneForm& f, const BigFloat& t) {
    const long p = kQuadPrec;
    switch (f.kind) {
        case FormKind::Omega0:
            return BigFloat(1L, p) / t;
        case FormKind::Kernel: {
            if (!f.param.is_real()) throw std::domain_error("quadrature needs real parameters");
            BigFloat s(f.param.re, p);
            return s / (BigFloat(1L, p) - s * t);
        }
        case FormKind::Pow:
            return pow_si(t, f.n - 1);
        case FormKind::Wminus:
            return BigFloat(2L, p) / (BigFloat(1L, p) - t * t);
        case FormKind::Wplus:
            return BigFloat(2L, p) * t / (BigFloat(1L, p) - t * t);
        case FormKind::CauchyShift: {
            if (!f.param.is_real()) throw std::domain_error("quadrature needs real parameters");
            return BigFloat(1L, p) / (BigFloat(f.param.re, p) - t);
        }
    }
    throw std::logic_error("unreachable");
}

bool singular_at(const OneForm& f, const Rat& pt) {
    switch (f.kind) {
        case FormKind::Omega0:
            return pt == 0;
        case FormKind::Kernel:
            return f.param.is_real() && !f.param.is_zero() && f.param.re * pt == 1;
        case FormKind::Pow:
            return false;
        case FormKind::Wminus:
        case FormKind::Wplus:
            return pt == 1 || pt == -1;
        case FormKind::CauchyShift:
            return f.param.is_real() && f.param.re == pt;
    }
    return false;
}

BigFloat quad_run(const IntegralWord& w, int order, int grade_depth, int mid_panels) {
    const long p = kQuadPrec;
    const GaussRule& rule = gauss_rule(order);
    const int ord = order;

    BigFloat lo(w.lower, p), hi(w.upper.re, p);
    bool sing_lo = false, sing_hi = false;
    for (const OneForm& f : w.forms) {
        sing_lo = sing_lo || singular_at(f, w.lower);
        sing_hi = sing_hi || singular_at(f, w.upper.re);
    }
    // panel edges
    std::vector<BigFloat> edges;
    edges.push_back(lo);
    BigFloat len = hi - lo;
    std::vector<BigFloat> lo_side, hi_side;
    if (sing_lo || w.lower == 0) {
        // geometric offsets from the lower end: len * 2^{-grade_depth} ... len/4
        for (int i = grade_depth; i >= 2; --i)
            lo_side.push_back(lo + mul_2si(len, -i));
    }
    if (sing_hi) {
        for (int i = 2; i <= grade_depth; ++i)
            hi_side.push_back(hi - mul_2si(len, -i));
    }
    BigFloat mid_lo = lo_side.empty() ? lo : lo_side.back();
    BigFloat mid_hi = hi_side.empty() ? hi : hi_side.front();
    for (const BigFloat& e : lo_side) edges.push_back(e);
    BigFloat step = (mid_hi - mid_lo) / BigFloat(mid_panels, p);
    for (int i = 1; i < mid_panels; ++i) edges.push_back(mid_lo + BigFloat(i, p) * step);
    for (const BigFloat& e : hi_side) edges.push_back(e);
    edges.push_back(hi);

    const size_t P = edges.size() - 1;
    const size_t L = w.forms.size();

    // node coordinates per panel
    std::vector<std::vector<BigFloat>> nodes(P, std::vector<BigFloat>(static_cast<size_t>(ord), BigFloat(0L, p)));
    std::vector<BigFloat> half(P, BigFloat(0L, p)), cent(P, BigFloat(0L, p));
    for (size_t q = 0; q < P; ++q) {
        half[q] = (edges[q + 1] - edges[q]) / BigFloat(2L, p);
        cent[q] = (edges[q + 1] + edges[q]) / BigFloat(2L, p);
        for (int j = 0; j < ord; ++j)
            nodes[q][static_cast<size_t>(j)] = cent[q] + half[q] * rule.x[static_cast<size_t>(j)];
    }

    // G at nodes, level by level
    std::vector<std::vector<BigFloat>> G(P, std::vector<BigFloat>(static_cast<size_t>(ord), BigFloat(1L, p)));
    for (size_t lev = 0; lev < L; ++lev) {
        const OneForm& f = w.forms[lev];
        std::vector<std::vector<BigFloat>> H(P, std::vector<BigFloat>(static_cast<size_t>(ord), BigFloat(0L, p)));
        BigFloat prefix(0L, p);
        for (size_t q = 0; q < P; ++q) {
            std::vector<BigFloat> integ(static_cast<size_t>(ord), BigFloat(0L, p));
            for (int j = 0; j < ord; ++j)
                integ[static_cast<size_t>(j)] =
                    form_eval(f, nodes[q][static_cast<size_t>(j)]) * G[q][static_cast<size_t>(j)];
            BigFloat panel_total(0L, p);
            for (int j = 0; j < ord; ++j)
                panel_total += rule.wt[static_cast<size_t>(j)] * integ[static_cast<size_t>(j)];
            panel_total *= half[q];
            for (int k = 0; k < ord; ++k) {
                BigFloat acc(0L, p);
                for (int j = 0; j < ord; ++j)
                    acc += rule.partial[static_cast<size_t>(k)][static_cast<size_t>(j)] *
                           integ[static_cast<size_t>(j)];
                H[q][static_cast<size_t>(k)] = prefix + half[q] * acc;
            }
            prefix += panel_total;
        }
        if (lev + 1 == L) return prefix;
        G = std::move(H);
    }
    return BigFloat(1L, p);  // empty word
}

}  // namespace

Scalar eval_word_quadrature(const IntegralWord& w, const EvalCtx& ctx, double target_err) {
    if (w.forms.size() > 6)
        throw std::invalid_argument("quadrature oracle limited to words of length <= 6");
    if (!w.upper.is_real()) throw std::invalid_argument("quadrature needs a real interval");
    for (const OneForm& f : w.forms) {
        // singularities strictly inside are not integrable here
        if (f.kind == FormKind::CauchyShift && f.param.is_real() && f.param.re > w.lower &&
            f.param.re < w.upper.re)
            throw std::domain_error("Cauchy kernel singular inside the interval");
        if (f.kind == FormKind::Kernel && f.param.is_real() && !f.param.is_zero()) {
            Rat s = Rat(1) / f.param.re;
            if (s > w.lower && s < w.upper.re)
                throw std::domain_error("kernel singular inside the interval");
        }
    }
    if (w.forms.empty()) return Scalar::float_of(w.coeff, ctx.prec);

    int grade = 72, mid = 12;
    for (int attempt = 0; attempt < 2; ++attempt) {
        BigFloat v1 = quad_run(w, 20, grade, mid);
        BigFloat v2 = quad_run(w, 28, grade, mid);
        BigFloat diff = abs(v1 - v2);
        BigFloat est = bnd::add(bnd::mul(bnd::of_abs(diff), BigFloat(4L, bnd::kPrec)),
                                bnd::pow2(-180));
        if (est < bnd::from(target_err) || attempt == 1) {
            if (!(est < bnd::from(target_err)))
                throw std::domain_error("quadrature did not converge to the requested accuracy");
            CNum z(ctx.prec);
            BigFloat v = v2 * BigFloat(w.coeff, kQuadPrec);
            mpfr_set(z.re.raw(), v.raw(), MPFR_RNDN);
            mpfr_set_zero(z.im.raw(), 1);
            BigFloat err = bnd::mul(est, bnd::of_abs(BigFloat(w.coeff, bnd::kPrec)));
            return Scalar::from_cnum(std::move(z), std::move(err));
        }
        grade += 24;
        mid *= 2;
    }
    throw std::domain_error("quadrature did not converge");
}

// ---------------------------------------------------------------------------
// Dictionary constructors.
// ---------------------------------------------------------------------------

IntegralWord word_for_mpl(const Composition& k, const LabelVector& slot_x) {
    if (slot_x.size() != k.depth()) throw std::invalid_argument("label length mismatch");
    const int r = k.depth();
    std::vector<Coef> cum(static_cast<size_t>(r));
    Coef run(1L);
    for (int j = 0; j < r; ++j) {
        run = run * slot_x[j];
        if (run.is_zero()) throw std::invalid_argument("zero slot label has no integral word");
        cum[static_cast<size_t>(j)] = run;
    }
    IntegralWord w;
    for (int j = r - 1; j >= 0; --j) {
        w.forms.push_back(OneForm::kernel(cum[static_cast<size_t>(j)]));
        for (int t = 1; t < k[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.lower = Rat(0);
    w.upper = Coef(1L);
    return w;
}

IntegralWord word_for_tpoly(const Composition& k, const Coef& x) {
    const int r = k.depth();
    if (r == 0) throw std::invalid_argument("empty composition");
    IntegralWord w;
    for (int j = r - 1; j >= 0; --j) {
        w.forms.push_back(j == r - 1 ? OneForm::wminus() : OneForm::wplus());
        for (int t = 1; t < k[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.lower = Rat(0);
    w.upper = x;
    w.coeff = Rat(1);
    for (int j = 0; j < r; ++j) w.coeff /= 2;
    return w;
}

IntegralWord word_for_mpoly(const Composition& k, const std::vector<int>& eps, const Coef& x) {
    const int r = k.depth();
    if (static_cast<int>(eps.size()) != r) throw std::invalid_argument("sign length mismatch");
    IntegralWord w;
    for (int j = r - 1; j >= 0; --j) {
        int s = (j == r - 1) ? eps[static_cast<size_t>(j)]
                             : eps[static_cast<size_t>(j)] * eps[static_cast<size_t>(j + 1)];
        w.forms.push_back(OneForm::w(s));
        for (int t = 1; t < k[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.lower = Rat(0);
    w.upper = x;
    return w;
}

}  // namespace mzv
