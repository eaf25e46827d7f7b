#include "mzvlab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "mzvlab/nested_sums.hpp"
#include "mzvlab/posets.hpp"
#include "mzvlab/values.hpp"
#include "mzvlab/words.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mzv {

namespace {

// ------------------------------------------------------------------ utilities

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    template <typename T>
    const T& choose(const std::vector<T>& v) {
        return v[static_cast<size_t>(next() % v.size())];
    }
    int sign() { return next() & 1 ? 1 : -1; }
};

long get_long(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    return std::get<long>(it->second);
}

Rat get_rat(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    if (auto* r = std::get_if<Rat>(&it->second)) return *r;
    if (auto* l = std::get_if<long>(&it->second)) return Rat(*l);
    throw std::invalid_argument("parameter " + k + " is not rational");
}

Coef get_coef(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    if (auto* c = std::get_if<Coef>(&it->second)) return *c;
    if (auto* r = std::get_if<Rat>(&it->second)) return Coef(*r);
    if (auto* l = std::get_if<long>(&it->second)) return Coef(Rat(*l));
    throw std::invalid_argument("parameter " + k + " is not a scalar");
}

Composition get_comp(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    return std::get<Composition>(it->second);
}

LabelVector get_labels(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    return std::get<LabelVector>(it->second);
}

std::string get_str(const ParamMap& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter " + k);
    return std::get<std::string>(it->second);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

std::string int_list_str(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> signs_of(const LabelVector& lv) {
    std::vector<int> out;
    for (const Coef& c : lv.entries()) {
        if (!c.is_real()) throw std::invalid_argument("expected a sign vector");
        if (c.re == 1)
            out.push_back(1);
        else if (c.re == -1)
            out.push_back(-1);
        else if (c.re == 0)
            out.push_back(0);
        else
            throw std::invalid_argument("expected entries in {-1,0,+1}");
    }
    return out;
}

// sign maps on +-1 vectors (suffix products, reversed prefix products,
// prefix products)
std::vector<int> pmap(const std::vector<int>& e) {
    std::vector<int> out(e.size());
    int acc = 1;
    for (size_t j = e.size(); j-- > 0;) {
        acc *= e[j];
        out[j] = acc;
    }
    return out;
}
std::vector<int> qmap(const std::vector<int>& e) {
    std::vector<int> rev(e.rbegin(), e.rend());
    return pmap(rev);
}
std::vector<int> rmap(const std::vector<int>& e) {
    std::vector<int> out(e.size());
    int acc = 1;
    for (size_t j = 0; j < e.size(); ++j) {
        acc *= e[j];
        out[j] = acc;
    }
    return out;
}
std::vector<int> take(const std::vector<int>& v, int a, int b) {  // 1-based inclusive
    std::vector<int> out;
    for (int i = a; i <= b; ++i) out.push_back(v[static_cast<size_t>(i - 1)]);
    return out;
}
std::vector<int> neg(std::vector<int> v) {
    for (int& x : v) x = -x;
    return v;
}
std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}
int prod(const std::vector<int>& v) {
    int p = 1;
    for (int x : v) p *= x;
    return p;
}

// u/v/w/y on Coef vectors (exact label arithmetic)
std::vector<Coef> umap(const std::vector<Coef>& e) {
    std::vector<Coef> out;
    for (size_t j = 0; j + 1 < e.size(); ++j) out.push_back(e[j] / e[j + 1]);
    if (!e.empty()) out.push_back(e.back());
    return out;
}
std::vector<Coef> vmap(const std::vector<Coef>& e) {
    std::vector<Coef> out;
    for (size_t j = 0; j + 1 < e.size(); ++j) out.push_back(e[j] / e[j + 1]);
    return out;
}
std::vector<Coef> wmap(const std::vector<Coef>& e) {
    std::vector<Coef> out;
    if (e.empty()) return out;
    out.push_back(e[0]);
    for (size_t j = 1; j < e.size(); ++j) out.push_back(e[j] / e[j - 1]);
    return out;
}
std::vector<Coef> ymap(const std::vector<Coef>& e) {
    std::vector<Coef> out;
    for (size_t j = 1; j < e.size(); ++j) out.push_back(e[j] / e[j - 1]);
    return out;
}

std::vector<Coef> cat_coef(std::vector<Coef> a, const std::vector<Coef>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

LabelVector lv(const std::vector<Coef>& v) { return LabelVector::free(v); }
LabelVector lv_signs(const std::vector<int>& v) {
    std::vector<Coef> c;
    for (int s : v) c.emplace_back(Rat(s));
    return LabelVector::free(c);
}

std::vector<Coef> coefs_of(const LabelVector& x) { return x.entries(); }

// positive compositions of total into exactly parts entries (empty if
// impossible; {[]} when parts == 0 and total == 0)
std::vector<std::vector<int>> pos_compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(parts), 1);
    std::function<void(int, int)> go = [&](int idx, int remaining) {
        if (idx == parts - 1) {
            if (remaining >= 1) {
                cur[static_cast<size_t>(idx)] = remaining;
                out.push_back(cur);
            }
            return;
        }
        for (int v = 1; v <= remaining - (parts - idx - 1); ++v) {
            cur[static_cast<size_t>(idx)] = v;
            go(idx + 1, remaining - v);
        }
    };
    go(0, total);
    return out;
}

// weak compositions (entries >= 0)
std::vector<std::vector<int>> weak_compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(parts), 0);
    std::function<void(int, int)> go = [&](int idx, int remaining) {
        if (idx == parts - 1) {
            cur[static_cast<size_t>(idx)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<size_t>(idx)] = v;
            go(idx + 1, remaining - v);
        }
    };
    go(0, total);
    return out;
}

// ------------------------------------------------------------ evaluation kit

struct Kit {
    EvalCtx ctx;
    bool exact = false;

    long prec() const { return ctx.prec; }
    Scalar S(long n) const { return exact ? Scalar::exact(n) : Scalar::float_of(Rat(n), prec()); }
    Scalar S(const Rat& q) const {
        return exact ? Scalar::exact(q) : Scalar::float_of(q, prec());
    }
    Scalar Sc(const Coef& c) const {
        if (exact) {
            if (!c.is_real()) throw std::invalid_argument("exact mode needs real labels");
            return Scalar::exact(c.re);
        }
        return Scalar::float_of(c, prec());
    }
    Scalar zero() const { return exact ? Scalar::zero() : Scalar::float_of(Rat(0), prec()); }

    // finite sums
    Scalar zn(long n, const Composition& k, const LabelVector& x, bool star) const {
        return zeta_n(n, k, x, star, exact, prec());
    }
    Scalar zn_a(long n, const Composition& k, const LabelVector& x, const Scalar& a,
                bool star) const {
        return zeta_n_a(n, k, x, a, star, exact, prec());
    }
    Scalar zsx(long n, const Composition& k, const Coef& x) const {
        return zeta_star_n_inner_x(n, k, x, exact, prec());
    }
    Scalar tn(long n, const Composition& k, bool star) const {
        return t_n(n, k, star, exact, prec());
    }
    Scalar tsx(long n, const Composition& k, const Coef& x) const {
        return t_star_n_inner_x(n, k, x, exact, prec());
    }
    Scalar mn(long n, const Composition& k, const std::vector<int>& s, bool star) const {
        return m_n(n, k, lv_signs(s), star, exact, prec());
    }

    // values (float only)
    Scalar Li(const Composition& k, const std::vector<Coef>& slots) const {
        return mpl(k, lv(slots), false, ctx);
    }
    Scalar Li1(const Composition& k, const Coef& x) const {
        return mpl_single(k, x, false, ctx);
    }
    Scalar MZV(const Composition& k) const { return mpl_single(k, Coef(1L), false, ctx); }
    Scalar Ti(const Composition& k, const Coef& x) const { return t_value(k, x, false, ctx); }
    Scalar Tv(const Composition& k) const { return t_value(k, Coef(1L), false, ctx); }
    Scalar Mv(const Composition& k, const std::vector<int>& s, const Coef& x) const {
        return m_value(k, s, x, ctx);
    }
    Scalar logx(const Coef& x) const {  // log of a positive real label
        if (!(x.is_real() && x.re > 0)) throw std::domain_error("log needs a positive real");
        return scalar_log_pos(Scalar::float_of(x, prec()));
    }
    Scalar factorial(long n) const {
        Rat f(1);
        for (long i = 2; i <= n; ++i) f *= i;
        return S(f);
    }
    Scalar power(const Scalar& b, long e) const { return b.pow_int(e); }
};

using Sides = std::pair<Scalar, Scalar>;
using Evaluator = std::function<Sides(const Kit&, const ParamMap&)>;

// ----------------------------------------------------------------- evaluators

Sides ev_ss2016(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    LabelVector x = get_labels(P, "x");
    long n = get_long(P, "n");
    const int r = k.depth();
    Scalar acc = K.zero();
    for (int j = 0; j <= r; ++j) {
        Scalar t = K.zn(n, take_front(k, j), take_front(x, j), false) *
                   K.zn(n, back_from(k, j + 1), back_from(x, j + 1), true);
        acc = acc + (j % 2 == 0 ? t : -t);
    }
    return {acc, K.zero()};
}

Sides ev_pmhns(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    LabelVector x = get_labels(P, "x");
    long n = get_long(P, "n");
    Scalar a = K.S(get_rat(P, "a"));
    const int r = k.depth();
    Scalar acc = K.zero();
    for (int j = 0; j <= r; ++j) {
        Scalar t = K.zn_a(n, take_front(k, j), take_front(x, j), a, false) *
                   K.zn_a(n, back_from(k, j + 1), back_from(x, j + 1), a, true);
        acc = acc + (j % 2 == 0 ? t : -t);
    }
    return {acc, K.zero()};
}

Sides ev_pmpls(const Kit& K, const ParamMap& P, bool star, bool with_a) {
    Composition k = get_comp(P, "k");
    LabelVector x = get_labels(P, "x");
    long n = get_long(P, "n");
    long l = get_long(P, "l");
    Scalar a = with_a ? K.S(get_rat(P, "a")) : K.S(0L);
    const int r = k.depth();
    // LHS: the (l+a)-shifted finite sum
    Scalar shift = a + K.S(Rat(l));
    Scalar lhs = K.zn_a(n, k, x, shift, star);
    Scalar rhs = K.zero();
    for (int j = 0; j <= r; ++j) {
        Scalar outer = star ? K.zn_a(n + l, take_front(k, j), take_front(x, j), a, true)
                            : K.zn_a(n + l, take_front(k, j), take_front(x, j), a, false);
        Scalar inner = star ? K.zn_a(l, back_from(k, j + 1), back_from(x, j + 1), a, false)
                            : K.zn_a(l, back_from(k, j + 1), back_from(x, j + 1), a, true);
        Scalar t = outer * inner;
        rhs = rhs + (j % 2 == 0 ? t : -t);
    }
    if (r % 2 == 1) rhs = -rhs;
    return {lhs, rhs};
}

Sides ev_itli1j(const Kit& K, const ParamMap& P) {
    long j = get_long(P, "j");
    Coef x = get_coef(P, "x");
    Scalar lhs = K.Li1(Composition::ones(static_cast<int>(j)), x);
    Scalar lg = K.logx(Coef(Rat(1)) - x);
    Scalar rhs = K.power(lg, j) / K.factorial(j);
    if (j % 2 == 1) rhs = -rhs;
    return {lhs, rhs};
}

Sides ev_mpl_rs(const Kit& K, const ParamMap& P) {
    long k = get_long(P, "k");
    long r = get_long(P, "r");
    Coef x = get_coef(P, "x");
    Coef omx = Coef(Rat(1)) - x;
    Composition lhs_k = Composition({static_cast<int>(k)}).concat(Composition::ones(static_cast<int>(r)));
    Scalar lhs = K.Li1(lhs_k, x);
    Scalar rhs = K.zero();
    for (long j = 0; j <= k - 2; ++j) {
        Composition zk = Composition({static_cast<int>(k - j)})
                             .concat(Composition::ones(static_cast<int>(r)));
        Scalar t = K.MZV(zk) * K.Li1(Composition::ones(static_cast<int>(j)), omx);
        rhs = rhs + (j % 2 == 0 ? t : -t);
    }
    Scalar tail = K.zero();
    for (long ell = 0; ell <= r + 1; ++ell) {
        for (const auto& i : pos_compositions(static_cast<int>(r + k - ell),
                                              static_cast<int>(k - 1))) {
            tail = tail + K.Li1(Composition::ones(static_cast<int>(ell)), x) *
                              K.Li1(Composition(i), omx);
        }
    }
    if (k % 2 == 0) rhs = rhs - tail;  // -(-1)^k
    else
        rhs = rhs + tail;
    return {lhs, rhs};
}

Sides ev_fii1(const Kit& K, const ParamMap& P) {
    Composition m = get_comp(P, "m");
    long n = get_long(P, "n");
    Coef x = get_coef(P, "x");
    const int p = m.depth();
    IntegralWord w;
    w.forms.push_back(OneForm::pow(static_cast<int>(n)));
    for (int j = 0; j < p; ++j) {
        w.forms.push_back(OneForm::kernel(Coef(1L)));
        for (int t = 1; t < m[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.upper = x;
    Scalar lhs = K.S(n) * eval_word_quadrature(w, K.ctx, 1e-11);
    Scalar rhs = K.zsx(n, m, x);
    if (p % 2 == 1) rhs = -rhs;
    for (int j = 1; j <= p; ++j) {
        Scalar t = K.zn(n, take_front(m, j - 1), LabelVector(), true) *
                   K.Li1(back_from(m, j), x);
        rhs = rhs - (j % 2 == 0 ? t : -t);
    }
    return {lhs, rhs};
}

Sides ev_fii2(const Kit& K, const ParamMap& P) {
    Composition m = get_comp(P, "m");
    long n = get_long(P, "n");
    Coef x = get_coef(P, "x");
    std::vector<Coef> sg = coefs_of(get_labels(P, "sigma"));
    const int p = m.depth();
    std::vector<Coef> s = sg;           // sigma_1..sigma_p
    s.push_back(Coef(Rat(1)) / x);      // sigma_{p+1} = 1/x
    IntegralWord w;
    w.forms.push_back(OneForm::pow(static_cast<int>(n)));
    for (int j = 0; j < p; ++j) {
        w.forms.push_back(OneForm::kernel(sg[static_cast<size_t>(j)]));
        for (int t = 1; t < m[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.upper = x;
    Scalar lhs = K.S(n) * eval_word_quadrature(w, K.ctx, 1e-11);

    Scalar rhs = K.zero();
    for (int j = 0; j <= p; ++j) {
        std::vector<Coef> zl;
        for (int t = 1; t <= j; ++t) zl.push_back(s[static_cast<size_t>(t - 1)] / s[static_cast<size_t>(t)]);
        std::vector<Coef> li;
        if (j < p) {
            li.push_back(sg[static_cast<size_t>(p - 1)] * x);
            for (int t = p - 1; t >= j + 1; --t)
                li.push_back(s[static_cast<size_t>(t - 1)] / s[static_cast<size_t>(t)]);
        }
        Scalar t = K.zn(n, take_front(m, j), lv(zl), true) *
                   (j < p ? K.Li(back_from(m, j + 1), li) : K.S(1L));
        rhs = rhs + (j % 2 == 0 ? t : -t);
    }
    Coef denom = sg[0].pow(static_cast<unsigned long>(n + 1));
    for (int t = 2; t <= p; ++t) denom = denom * sg[static_cast<size_t>(t - 1)];
    rhs = rhs / K.Sc(denom);
    return {lhs, rhs};
}

Sides ev_int_g(const Kit& K, const ParamMap& P) {
    std::vector<int> m = parse_int_list(get_str(P, "m"));
    long n = get_long(P, "n");
    std::vector<Coef> a = coefs_of(get_labels(P, "a"));
    const int p = static_cast<int>(m.size());
    if (m.empty() || m[0] < 1) throw std::invalid_argument("m1 must be >= 1");

    IntegralWord w;
    for (int t = 0; t < m[static_cast<size_t>(p - 1)]; ++t)
        w.forms.push_back(OneForm::kernel(Coef(1L)));
    for (int j = p - 1; j >= 1; --j) {
        w.forms.push_back(OneForm::cauchy(a[static_cast<size_t>(j - 1)]));
        for (int t = 0; t < m[static_cast<size_t>(j - 1)]; ++t)
            w.forms.push_back(OneForm::kernel(Coef(1L)));
    }
    w.forms.push_back(OneForm::pow(static_cast<int>(n)));
    if (!a.back().is_real()) throw std::invalid_argument("a_p must be real");
    w.lower = a.back().re;
    w.upper = Coef(1L);
    Scalar lhs = K.S(n) * eval_word_quadrature(w, K.ctx, 1e-8);
    if (p % 2 == 1) lhs = -lhs;

    auto mhat = [&](int j) {  // m_1 + ... + m_j + j - 1
        int acc = j - 1;
        for (int i = 1; i <= j; ++i) acc += m[static_cast<size_t>(i - 1)];
        return acc;
    };
    Scalar rhs = K.zero();
    Coef one(Rat(1));
    for (int j = 1; j <= p; ++j) {
        // Li factor over slots (1-a_p)/(1-a_{p-1}), ..., (1-a_{j+1})/(1-a_j)
        Scalar lif = K.S(1L);
        if (j < p) {
            std::vector<int> comp;
            std::vector<Coef> slots;
            for (int t = p; t >= j + 1; --t) {
                comp.push_back(m[static_cast<size_t>(t - 1)] + 1);
                slots.push_back((one - a[static_cast<size_t>(t - 1)]) /
                                (one - a[static_cast<size_t>(t - 2)]));
            }
            lif = K.Li(Composition(comp), slots);
        }
        // nested weak-chain sum
        const int L = mhat(j);
        std::vector<int> apos(static_cast<size_t>(j), 0);  // apos[i-1] = mhat(i)
        for (int i = 1; i < j; ++i) apos[static_cast<size_t>(i - 1)] = mhat(i);
        Scalar sum = K.zero();
        std::vector<long> kk(static_cast<size_t>(L), 1);
        std::function<void(int, long)> go = [&](int idx, long hi) {
            if (idx == L) {
                Scalar term = K.S(1L);
                Rat denom(1);
                for (int t = 0; t < L; ++t) denom *= kk[static_cast<size_t>(t)];
                Coef acoef(Rat(1));
                for (int i = 1; i < j; ++i) {
                    long e = kk[static_cast<size_t>(apos[static_cast<size_t>(i - 1)] - 1)] -
                             kk[static_cast<size_t>(apos[static_cast<size_t>(i - 1)])];
                    acoef = acoef * a[static_cast<size_t>(i - 1)].pow(static_cast<unsigned long>(e));
                }
                Coef last = one - a[static_cast<size_t>(j - 1)].pow(
                                      static_cast<unsigned long>(kk[static_cast<size_t>(L - 1)]));
                term = K.Sc(acoef * last) / K.S(denom);
                sum = sum + term;
                return;
            }
            for (long v = 1; v <= hi; ++v) {
                kk[static_cast<size_t>(idx)] = v;
                go(idx + 1, v);
            }
        };
        go(0, n);
        Scalar t = lif * sum;
        rhs = rhs + (j % 2 == 0 ? t : -t);
    }
    return {lhs, rhs};
}

Sides ev_imp2(const Kit& K, const ParamMap& P) {
    Composition m = get_comp(P, "m");
    long n = get_long(P, "n");
    Coef x = get_coef(P, "x");
    const int p = m.depth();
    Scalar lhs = K.zsx(n, hoffman_dual(m), x);
    for (int j = 1; j <= p; ++j) {
        Scalar t = K.zn(n, hoffman_dual(take_front(m, j)), LabelVector(), true) *
                   (j < p ? K.Li1(back_from(m, j + 1), Coef(Rat(1)) - x) : K.S(1L));
        if ((p - j) % 2 == 0)
            lhs = lhs - t;
        else
            lhs = lhs + t;
    }
    IntegralWord w;
    for (int j = p; j >= 2; --j) {
        for (int t = 1; t < m[j - 1]; ++t) w.forms.push_back(OneForm::kernel(Coef(1L)));
        w.forms.push_back(OneForm::cauchy(Coef(Rat(0))));
    }
    for (int t = 0; t < m[0]; ++t) w.forms.push_back(OneForm::kernel(Coef(1L)));
    w.forms.push_back(OneForm::pow(static_cast<int>(n)));
    if (!x.is_real()) throw std::invalid_argument("x must be real");
    w.lower = x.re;
    w.upper = Coef(1L);
    Scalar rhs = K.S(n) * eval_word_quadrature(w, K.ctx, 1e-10);
    if (p % 2 == 1) rhs = -rhs;
    return {lhs, rhs};
}

Sides ev_kymzv1(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition m = get_comp(P, "m");
    Coef x = get_coef(P, "x");
    std::vector<Coef> eps = coefs_of(get_labels(P, "eps"));      // r entries
    std::vector<Coef> sg = coefs_of(get_labels(P, "sigma"));     // p entries
    const int r = k.depth(), p = m.depth();
    if (static_cast<int>(eps.size()) != r || static_cast<int>(sg.size()) != p)
        throw std::invalid_argument("label lengths mismatch");

    auto make_F = [&]() {
        SumStream::Config f;
        f.family = SumFamily::Zeta;
        f.k = slice(k, SliceMode::Forward, 2, r);
        for (int i = 2; i <= r; ++i)
            f.x.push_back(eps[static_cast<size_t>(i - 1)] / eps[static_cast<size_t>(i - 2)]);
        f.prec = K.prec();
        return f;
    };
    auto series = [&](const Composition& gk, const std::vector<Coef>& gx) {
        OuterSeries os;
        os.den = OuterSeries::Den::N;
        os.s = k.first() + 1;
        os.pow_init = eps[0] / sg[0];
        os.pow_mult = eps[0] / sg[0];
        os.F = make_F();
        SumStream::Config g;
        g.family = SumFamily::Zeta;
        g.star = true;
        g.k = gk;
        g.x = gx;
        g.prec = K.prec();
        os.G = g;
        return outer_series(os, K.ctx);
    };

    Scalar lhs = K.zero();
    for (int j = 1; j <= p; ++j) {
        std::vector<Coef> li;
        li.push_back(sg[static_cast<size_t>(p - 1)] * x);
        for (int t = p - 1; t >= j; --t)
            li.push_back(sg[static_cast<size_t>(t - 1)] / sg[static_cast<size_t>(t)]);
        std::vector<Coef> gx;
        for (int t = 1; t <= j - 1; ++t)
            gx.push_back(sg[static_cast<size_t>(t - 1)] / sg[static_cast<size_t>(t)]);
        Scalar t = K.Li(back_from(m, j), li) * series(take_front(m, j - 1), gx);
        lhs = lhs + (j % 2 == 1 ? t : -t);
    }
    {
        std::vector<Coef> gx;
        for (int t = 1; t <= p - 1; ++t)
            gx.push_back(sg[static_cast<size_t>(t - 1)] / sg[static_cast<size_t>(t)]);
        gx.push_back(sg[static_cast<size_t>(p - 1)] * x);
        Scalar t = series(m, gx);
        lhs = lhs + (p % 2 == 0 ? t : -t);
    }

    std::vector<int> comp;
    for (int t = p; t >= 1; --t) comp.push_back(m[t - 1]);
    comp.push_back(k.first() + 1);
    for (int t = 2; t <= r; ++t) comp.push_back(k[t - 1]);
    std::vector<Coef> slots;
    slots.push_back(sg[static_cast<size_t>(p - 1)] * x);
    for (int t = p - 1; t >= 1; --t)
        slots.push_back(sg[static_cast<size_t>(t - 1)] / sg[static_cast<size_t>(t)]);
    slots.push_back(eps[0] / sg[0]);
    for (int t = 2; t <= r; ++t)
        slots.push_back(eps[static_cast<size_t>(t - 1)] / eps[static_cast<size_t>(t - 2)]);
    Scalar rhs = K.Li(Composition(comp), slots);
    return {lhs, rhs};
}

Sides ev_kymzv2(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition m = get_comp(P, "m");
    Coef x = get_coef(P, "x");
    const int r = k.depth(), p = m.depth();

    std::vector<int> comp;
    for (int t = p; t >= 1; --t) comp.push_back(m[t - 1]);
    comp.push_back(k.first() + 1);
    for (int t = 2; t <= r; ++t) comp.push_back(k[t - 1]);
    Scalar lhs = K.Li1(Composition(comp), x);

    OuterSeries os;
    os.den = OuterSeries::Den::N;
    os.s = k.first() + 1;
    SumStream::Config f;
    f.family = SumFamily::Zeta;
    f.k = slice(k, SliceMode::Forward, 2, r);
    f.prec = K.prec();
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::Zeta;
    g.star = true;
    g.k = m;
    g.inner_x = x;
    g.prec = K.prec();
    os.G = g;
    Scalar rhs = outer_series(os, K.ctx);
    if (p % 2 == 1) rhs = -rhs;
    for (int j = 1; j <= p; ++j) {
        Composition l = Composition({1}).concat(take_front(m, j - 1));
        Scalar t = K.Li1(back_from(m, j), x) * conv_zeta(k, l, K.ctx);
        rhs = rhs - (j % 2 == 0 ? t : -t);
    }
    return {lhs, rhs};
}

Sides ev_kymzv3(const Kit& K, const ParamMap& P) {
    std::vector<int> m = parse_int_list(get_str(P, "m"));  // m1 >= 1, rest >= 0
    long kk = get_long(P, "k");
    long r = get_long(P, "r");
    Coef x = get_coef(P, "x");
    const int p = static_cast<int>(m.size());
    if (m.empty() || m[0] < 1) throw std::invalid_argument("m1 must be >= 1");

    auto bumped = [&](int j) {  // (m_1, m_2+1, ..., m_j+1)
        std::vector<int> v;
        v.push_back(m[0]);
        for (int i = 2; i <= j; ++i) v.push_back(m[static_cast<size_t>(i - 1)] + 1);
        return Composition(v);
    };
    Composition dual_full = hoffman_dual(bumped(p));

    OuterSeries os;
    os.den = OuterSeries::Den::N;
    os.s = static_cast<int>(kk) + 1;
    SumStream::Config f;
    f.family = SumFamily::Zeta;
    f.k = Composition::ones(static_cast<int>(r - 1));
    f.prec = K.prec();
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::Zeta;
    g.star = true;
    g.k = dual_full;
    g.inner_x = x;
    g.prec = K.prec();
    os.G = g;
    Scalar lhs = outer_series(os, K.ctx);

    Coef omx = Coef(Rat(1)) - x;
    Scalar logomx = K.logx(omx);
    Scalar rhs = K.zero();
    // double sum over |j| + j_k = r
    for (const auto& jv : weak_compositions(static_cast<int>(r), static_cast<int>(kk))) {
        // jv = (j_1, ..., j_{k-1}, j_k)
        int jk = jv.back();
        for (const auto& iv : weak_compositions(jk, p + 1)) {
            // iv = (i_0, i_1, ..., i_p)
            int i0 = iv[0];
            Rat coeff(1);
            for (int l = 1; l <= p; ++l)
                coeff *= Rat(binomial(
                    static_cast<unsigned long>(m[static_cast<size_t>(l - 1)] + iv[static_cast<size_t>(l)]),
                    static_cast<unsigned long>(iv[static_cast<size_t>(l)])));
            std::vector<int> comp;
            for (int l = p; l >= 1; --l)
                comp.push_back(m[static_cast<size_t>(l - 1)] + iv[static_cast<size_t>(l)] + 1);
            for (int t = 0; t + 1 < static_cast<int>(kk); ++t)
                comp.push_back(jv[static_cast<size_t>(t)] + 1);
            Scalar term = K.S(coeff) * K.power(logomx, i0) / K.factorial(i0) *
                          K.Li1(Composition(comp), omx);
            if (i0 % 2 == 1) term = -term;
            rhs = rhs + term;
        }
    }
    if ((p + kk - 1) % 2 == 1) rhs = -rhs;

    Scalar t2 = K.zero();
    for (long j = 0; j <= kk - 2; ++j) {
        std::vector<int> comp;
        for (int l = p; l >= 1; --l) comp.push_back(m[static_cast<size_t>(l - 1)] + 1);
        for (long t = 0; t < j; ++t) comp.push_back(1);
        Composition zk = Composition({static_cast<int>(kk - j)})
                             .concat(Composition::ones(static_cast<int>(r - 1)));
        Scalar term = K.MZV(zk) * K.Li1(Composition(comp), omx);
        t2 = t2 + (j % 2 == 0 ? term : -term);
    }
    if (p % 2 == 1) t2 = -t2;
    rhs = rhs + t2;

    Composition kfull = Composition({static_cast<int>(kk)})
                            .concat(Composition::ones(static_cast<int>(r - 1)));
    for (int j = 1; j <= p; ++j) {
        Composition l = Composition({1}).concat(hoffman_dual(bumped(j)));
        std::vector<int> comp;  // reversed (m+1) sliced from j+1
        for (int t = p; t >= j + 1; --t) comp.push_back(m[static_cast<size_t>(t - 1)] + 1);
        Scalar term = conv_zeta(kfull, l, K.ctx) *
                      (j < p ? K.Li1(Composition(comp), omx) : K.S(1L));
        if ((p - j) % 2 == 1) term = -term;
        rhs = rhs + term;
    }
    return {lhs, rhs};
}

Sides ev_mpl_r2(const Kit& K, const ParamMap& P) {
    long p = get_long(P, "p");
    long r = get_long(P, "r");
    long kk = get_long(P, "k");
    Coef x = get_coef(P, "x");
    Coef omx = Coef(Rat(1)) - x;
    Composition lhs_k = Composition::ones(static_cast<int>(p))
                            .concat(Composition({static_cast<int>(kk + 1)}))
                            .concat(Composition::ones(static_cast<int>(r)));
    Scalar lhs = K.Li1(lhs_k, omx);
    if (p % 2 == 1) lhs = -lhs;

    Composition kfull = Composition({static_cast<int>(kk)})
                            .concat(Composition::ones(static_cast<int>(r)));
    Scalar logx = K.logx(x);
    Scalar rhs = K.zero();
    for (long j = 0; j <= p; ++j) {
        Scalar t = conv_zeta(kfull, Composition::ones(static_cast<int>(p + 1 - j)), K.ctx) *
                   K.power(logx, j) / K.factorial(j);
        rhs = rhs + t;
    }
    for (long j = 0; j <= kk - 2; ++j) {
        Composition zk = Composition({static_cast<int>(kk - j)})
                             .concat(Composition::ones(static_cast<int>(r)));
        Composition li = Composition({static_cast<int>(p + 1)})
                             .concat(Composition::ones(static_cast<int>(j)));
        Scalar t = K.MZV(zk) * K.Li1(li, x);
        rhs = rhs - (j % 2 == 0 ? t : -t);
    }
    Scalar t3 = K.zero();
    for (long ell = 0; ell <= r + 1; ++ell) {
        for (long j = 0; j + ell <= r + 1; ++j) {
            for (const auto& iv : pos_compositions(static_cast<int>(r + kk - j - ell),
                                                   static_cast<int>(kk - 1))) {
                Composition li = Composition({static_cast<int>(p + j + 1)}).concat(Composition(iv));
                Rat c = Rat(binomial(static_cast<unsigned long>(p + j),
                                     static_cast<unsigned long>(j)));
                Scalar term = K.S(c) * K.power(logx, ell) / K.factorial(ell) * K.Li1(li, x);
                if (ell % 2 == 1) term = -term;
                t3 = t3 + term;
            }
        }
    }
    rhs = rhs + (kk % 2 == 0 ? t3 : -t3);
    return {lhs, rhs};
}

Sides ev_mpl_r3(const Kit& K, const ParamMap& P) {
    long m = get_long(P, "m");
    long kk = get_long(P, "k");
    long r = get_long(P, "r");
    Coef x = get_coef(P, "x");
    Coef omx = Coef(Rat(1)) - x;
    Composition lhs_k = Composition({static_cast<int>(m), static_cast<int>(kk + 1)})
                            .concat(Composition::ones(static_cast<int>(r)));
    Scalar lhs = K.Li1(lhs_k, omx);

    Composition k1r = Composition({static_cast<int>(kk + 1)})
                          .concat(Composition::ones(static_cast<int>(r)));
    Scalar rhs = K.Li1(Composition({static_cast<int>(m)}), omx) * K.MZV(k1r);
    for (long j = 0; j <= kk - 2; ++j) {
        Composition zk = Composition({static_cast<int>(kk - j)})
                             .concat(Composition::ones(static_cast<int>(r)));
        Composition li = Composition::ones(static_cast<int>(m - 1))
                             .concat(Composition({2}))
                             .concat(Composition::ones(static_cast<int>(j)));
        Scalar t = K.MZV(zk) * K.Li1(li, x);
        rhs = rhs - ((m + j) % 2 == 0 ? t : -t);
    }
    // e_m = (0_m, 1, 0_{k-1}); i in N_0^{m+k} with |i| = r
    PaddedComposition em = PaddedComposition::zeros(static_cast<int>(m))
                               .concat(PaddedComposition({1}))
                               .concat(PaddedComposition::zeros(static_cast<int>(kk - 1)));
    Scalar t3 = K.zero();
    for (const auto& iv : weak_compositions(static_cast<int>(r), static_cast<int>(m + kk))) {
        PaddedComposition ip(iv);
        PaddedComposition ones = PaddedComposition(std::vector<int>(static_cast<size_t>(m + kk), 1));
        Composition li = (ip + ones + em).to_composition();
        t3 = t3 + K.Li1(li, x);
    }
    rhs = rhs + ((kk + m) % 2 == 0 ? t3 : -t3);

    Composition kfull = Composition({static_cast<int>(kk)})
                            .concat(Composition::ones(static_cast<int>(r)));
    Scalar logomx = K.logx(omx);
    for (long j = 1; j <= m; ++j) {
        Composition l({1, static_cast<int>(j)});
        Scalar t = conv_zeta(kfull, l, K.ctx) * K.power(logomx, m - j) / K.factorial(m - j);
        rhs = rhs - t;
    }
    return {lhs, rhs};
}

Sides ev_fiit1(const Kit& K, const ParamMap& P) {
    Composition m = get_comp(P, "m");
    long n = get_long(P, "n");
    Coef x = get_coef(P, "x");
    const int p = m.depth();
    IntegralWord w;
    w.forms.push_back(OneForm::pow(static_cast<int>(2 * n)));
    for (int j = 0; j < p; ++j) {
        w.forms.push_back(j == 0 ? OneForm::wminus() : OneForm::wplus());
        for (int t = 1; t < m[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.upper = x;
    w.coeff = Rat(1);
    for (int j = 0; j < p; ++j) w.coeff /= 2;
    Scalar lhs = K.S(2 * n) * eval_word_quadrature(w, K.ctx, 1e-11);

    Scalar rhs = K.zero();
    for (int j = 1; j <= p; ++j) {
        Scalar t = K.tn(n, take_front(m, j - 1), true) * K.Ti(back_from(m, j), x);
        rhs = rhs + (j % 2 == 1 ? t : -t);
    }
    Scalar t = K.tsx(n, m, x);
    rhs = rhs + (p % 2 == 0 ? t : -t);
    return {lhs, rhs};
}

Sides ev_t_kymzvx(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition m = get_comp(P, "m");
    Coef x = get_coef(P, "x");
    const int r = k.depth(), p = m.depth();
    std::vector<int> comp;
    for (int t = p; t >= 1; --t) comp.push_back(m[t - 1]);
    comp.push_back(k.first() + 1);
    for (int t = 2; t <= r; ++t) comp.push_back(k[t - 1]);
    Scalar lhs = K.Ti(Composition(comp), x);

    OuterSeries os;
    os.den = OuterSeries::Den::Odd;
    os.s = k.first() + 1;
    SumStream::Config f;
    f.family = SumFamily::T;
    f.k = slice(k, SliceMode::Forward, 2, r);
    f.prec = K.prec();
    os.F = f;
    SumStream::Config g;
    g.family = SumFamily::T;
    g.star = true;
    g.k = m;
    g.inner_x = x;
    g.prec = K.prec();
    os.G = g;
    Scalar rhs = outer_series(os, K.ctx);
    if (p % 2 == 1) rhs = -rhs;
    for (int j = 1; j <= p; ++j) {
        Composition l = Composition({1}).concat(take_front(m, j - 1));
        Scalar t = K.Ti(back_from(m, j), x) * conv_t(k, l, K.ctx);
        rhs = rhs - (j % 2 == 0 ? t : -t);
    }
    return {lhs, rhs};
}

Sides ev_t_kymzvxx(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition m = get_comp(P, "m");
    const int r = k.depth(), p = m.depth();
    Scalar lhs = K.zero();
    for (int j = 1; j <= p + 1; ++j) {
        Composition l = Composition({1}).concat(take_front(m, j - 1));
        Scalar t = (j <= p ? K.Tv(back_from(m, j)) : K.S(1L)) * conv_t(k, l, K.ctx);
        lhs = lhs + (j % 2 == 1 ? t : -t);
    }
    std::vector<int> comp;
    for (int t = p; t >= 1; --t) comp.push_back(m[t - 1]);
    comp.push_back(k.first() + 1);
    for (int t = 2; t <= r; ++t) comp.push_back(k[t - 1]);
    Scalar rhs = K.Tv(Composition(comp));
    return {lhs, rhs};
}

Sides ev_intx_mmvs(const Kit& K, const ParamMap& P) {
    Composition m = get_comp(P, "m");
    std::vector<int> eps = signs_of(get_labels(P, "eps"));
    long n = get_long(P, "n");
    Coef x = get_coef(P, "x");
    const int p = m.depth();

    IntegralWord w;
    w.forms.push_back(OneForm::pow(static_cast<int>(n)));
    for (int j = 0; j < p; ++j) {
        w.forms.push_back(OneForm::w(eps[static_cast<size_t>(j)]));
        for (int t = 1; t < m[j]; ++t) w.forms.push_back(OneForm::omega0());
    }
    w.upper = x;
    Scalar lhs = K.S(n) * eval_word_quadrature(w, K.ctx, 1e-11);

    Scalar rhs = m_chain_sum(n, m, eps, x, K.prec());
    if (p % 2 == 1) rhs = -rhs;
    for (int j = 1; j <= p; ++j) {
        int Ej = prod(take(eps, 1, j));
        long minus_f = (n % 2 == 0) ? 1 - Ej : 1 + Ej;  // 1 - Ej(-1)^n
        long plus_f = (n % 2 == 0) ? 1 + Ej : 1 - Ej;   // 1 + Ej(-1)^n
        std::vector<int> qtail = qmap(take(eps, j + 1, p));
        if (minus_f != 0) {
            Scalar t = K.Mv(back_from(m, j), cat(neg(qtail), {-1}), x) * K.S(minus_f) *
                       K.mn(n, take_front(m, j - 1), neg(pmap(take(eps, 2, j))), true);
            t = t / K.S(2L);
            rhs = rhs + (j % 2 == 1 ? t : -t);
        }
        if (plus_f != 0) {
            Scalar t = K.Mv(back_from(m, j), cat(qtail, {1}), x) * K.S(plus_f) *
                       K.mn(n, take_front(m, j - 1), pmap(take(eps, 2, j)), true);
            t = t / K.S(2L);
            rhs = rhs + (j % 2 == 1 ? t : -t);
        }
    }
    return {lhs, rhs};
}

Sides ev_intx_kymmvs(const Kit& K, const ParamMap& P, bool at_one) {
    Composition k = get_comp(P, "k");
    Composition m = get_comp(P, "m");
    std::vector<int> eta = signs_of(get_labels(P, "eta"));  // r entries
    std::vector<int> eps = signs_of(get_labels(P, "eps"));  // p entries
    Coef x = at_one ? Coef(1L) : get_coef(P, "x");
    const int r = k.depth(), p = m.depth();
    int etabar = prod(eta);

    std::vector<int> comp;
    for (int t = p; t >= 1; --t) comp.push_back(m[t - 1]);
    comp.push_back(k.first() + 1);
    for (int t = 2; t <= r; ++t) comp.push_back(k[t - 1]);
    std::vector<int> sgn;
    for (int v : qmap(eps)) sgn.push_back(etabar * v);
    sgn = cat(sgn, pmap(eta));
    Scalar lhs = K.Mv(Composition(comp), sgn, x);

    Scalar rhs = K.zero();
    if (!at_one) {
        OuterSeries os;
        os.den = OuterSeries::Den::N;
        os.s = k.first() + 1;
        os.parity = {etabar};
        SumStream::Config f;
        f.family = SumFamily::M;
        f.k = slice(k, SliceMode::Forward, 2, r);
        f.signs = pmap(take(eta, 2, r));
        f.prec = K.prec();
        os.F = f;
        OuterSeries::ChainCfg gc;
        gc.m = m;
        gc.signs = eps;
        gc.base = x.is_one() ? ChainStream::Base::One : ChainStream::Base::PowX;
        gc.x = x;
        os.Gchain = gc;
        rhs = outer_series(os, K.ctx);
        if (p % 2 == 1) rhs = -rhs;
        for (int j = 1; j <= p; ++j) {
            Composition l = Composition({1}).concat(take_front(m, j - 1));
            std::vector<int> qtail = qmap(take(eps, j + 1, p));
            Scalar t1 = K.Mv(back_from(m, j), cat(neg(qtail), {-1}), x) *
                        conv_m(k, pmap(eta), l, neg(pmap(take(eps, 1, j))), K.ctx);
            Scalar t2 = K.Mv(back_from(m, j), cat(qtail, {1}), x) *
                        conv_m(k, pmap(eta), l, pmap(take(eps, 1, j)), K.ctx);
            Scalar t = t1 + t2;
            rhs = rhs - (j % 2 == 0 ? t : -t);
        }
    } else {
        for (int j = 1; j <= p; ++j) {
            Composition l = Composition({1}).concat(take_front(m, j - 1));
            std::vector<int> qtail = qmap(take(eps, j + 1, p));
            Scalar t1 = K.Mv(back_from(m, j), cat(qtail, {1}), Coef(1L)) *
                        conv_m(k, pmap(eta), l, pmap(take(eps, 1, j)), K.ctx);
            Scalar t2 = K.Mv(back_from(m, j), cat(neg(qtail), {-1}), Coef(1L)) *
                        conv_m(k, pmap(eta), l, neg(pmap(take(eps, 1, j))), K.ctx);
            Scalar t = t1 + t2;
            rhs = rhs + (j % 2 == 1 ? t : -t);
        }
        Composition l = Composition({1}).concat(m);
        std::vector<int> lsigns = {0};
        for (int v : rmap(eps)) lsigns.push_back(etabar * v);
        Scalar t = K.S(2L) * conv_m(k, pmap(eta), l, lsigns, K.ctx);
        rhs = rhs + (p % 2 == 0 ? t : -t);
    }
    return {lhs, rhs};
}

Sides ev_pmpls3(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    LabelVector x = get_labels(P, "x");
    Scalar a = Scalar::float_of(get_rat(P, "a"), K.prec());
    const int r = k.depth();
    Scalar acc = K.zero();
    for (int j = 0; j <= r; ++j) {
        Scalar t = parametric_mpl(take_front(k, j), take_front(x, j), a, false, K.ctx) *
                   parametric_mpl(back_from(k, j + 1), back_from(x, j + 1), a, true, K.ctx);
        acc = acc + (j % 2 == 0 ? t : -t);
    }
    return {acc, K.zero()};
}

Sides ev_f2_mpls(const Kit& K, const ParamMap& P) {
    Composition l = get_comp(P, "l");
    std::vector<Coef> eps = coefs_of(get_labels(P, "eps"));
    long n = get_long(P, "n");
    const int s = l.depth();

    Diagram sq = squiggle_diagram(l, eps);
    Diagram leg = n_leg_diagram(static_cast<int>(n), sq);
    Scalar lhs = K.S(n) * eval_poset(leg.poset, K.ctx, 12);

    // coefficients computed exactly (labels are rational)
    Kit KE = K;
    KE.exact = true;
    Coef e1n = eps[0].pow(static_cast<unsigned long>(n));
    Coef c0 = Coef(Rat(1)) - Coef(Rat(1)) / e1n;
    Scalar rhs = K.zero();
    if (!c0.is_zero()) rhs = rhs + K.Sc(c0) * eval_poset(sq.poset, K.ctx, 12);
    {
        Scalar z = KE.zn(n, l, lv(umap(eps)), true);
        rhs = rhs + z.to_float(K.prec()) / K.Sc(e1n);
    }
    for (int j = 2; j <= s; ++j) {
        std::vector<Coef> etail(eps.begin(), eps.begin() + j);  // eps_1..eps_j
        std::vector<Coef> ehead(eps.begin(), eps.begin() + (j - 1));
        Scalar coeff = KE.zn(n, take_front(l, j - 1), lv(umap(ehead)), true) -
                       KE.zn(n, take_front(l, j - 1), lv(vmap(etail)), true);
        if (coeff.is_exact() && coeff.rat() == 0) continue;
        std::vector<Coef> seps(eps.begin() + (j - 1), eps.end());
        Diagram subsq = squiggle_diagram(slice(l, SliceMode::Forward, j, s), seps);
        rhs = rhs + coeff.to_float(K.prec()) / K.Sc(e1n) * eval_poset(subsq.poset, K.ctx, 12);
    }
    return {lhs, rhs};
}

Sides ev_int_ser_ampls(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition l = get_comp(P, "l");
    std::vector<Coef> eta = coefs_of(get_labels(P, "eta"));      // r entries
    std::vector<Coef> epst = coefs_of(get_labels(P, "eps"));     // entries eps_2..eps_s
    const int r = k.depth(), s = l.depth();
    if (static_cast<int>(epst.size()) != s - 1)
        throw std::invalid_argument("eps must have s-1 entries");

    Composition ltail = slice(l, SliceMode::Forward, 2, s);
    Scalar lhs = eval_poset(conv_shape_diagram(k, eta, l.first(), ltail, epst).poset, K.ctx, 12);

    // eps indexed 2..s
    auto epsat = [&](int i) { return epst[static_cast<size_t>(i - 2)]; };
    Composition khead({k.first() + l.first()});
    Composition kk = khead.concat(slice(k, SliceMode::Forward, 2, r));
    std::vector<Coef> weta = wmap(eta);
    std::vector<Coef> yeps;  // y(eps_2, eta)
    {
        std::vector<Coef> v;
        v.push_back(epsat(2));
        for (const Coef& e : eta) v.push_back(e);
        yeps = ymap(v);
    }
    Scalar term1 = (K.Li(kk, weta) - K.Li(kk, yeps)) *
                   eval_poset(squiggle_diagram(ltail, epst).poset, K.ctx, 12);
    Scalar rhs = term1;

    LabelVector albl = lv(cat_coef(std::vector<Coef>{Coef(1L)}, ymap(eta)));
    for (int j = 2; j <= s - 1; ++j) {
        std::vector<Coef> uv;
        uv.push_back(eta[0]);
        for (int i = 2; i <= j; ++i) uv.push_back(epsat(i));
        std::vector<Coef> vv;
        vv.push_back(eta[0]);
        for (int i = 2; i <= j + 1; ++i) vv.push_back(epsat(i));
        Scalar c = conv_zeta_labeled(k, albl, take_front(l, j), lv(umap(uv)), K.ctx) -
                   conv_zeta_labeled(k, albl, take_front(l, j), lv(vmap(vv)), K.ctx);
        std::vector<Coef> seps;
        for (int i = j + 1; i <= s; ++i) seps.push_back(epsat(i));
        rhs = rhs + c * eval_poset(squiggle_diagram(slice(l, SliceMode::Forward, j + 1, s), seps)
                                       .poset,
                                   K.ctx, 12);
    }
    {
        std::vector<Coef> uv;
        uv.push_back(eta[0]);
        for (int i = 2; i <= s; ++i) uv.push_back(epsat(i));
        rhs = rhs + conv_zeta_labeled(k, albl, l, lv(umap(uv)), K.ctx);
    }
    return {lhs, rhs};
}

Sides ev_f2_mmvs(const Kit& K, const ParamMap& P) {
    Composition l = get_comp(P, "l");
    std::vector<int> eps = signs_of(get_labels(P, "eps"));
    long n = get_long(P, "n");
    const int s = l.depth();

    Diagram leg = n_leg_diagram(static_cast<int>(n), squiggle_diagram_3(l, eps));
    Scalar lhs = K.S(n) * eval_poset(leg.poset, K.ctx, 12);

    Scalar rhs = m_chain_sum(n, l, eps, Coef(1L), K.prec());
    for (int j = 0; j <= s - 1; ++j) {
        // signed-root difference I(-1 root) - I(+1 root) = -2 * (K(-1) root)
        Composition subl = slice(l, SliceMode::Forward, j + 1, s);
        std::vector<OneForm> bullets;
        bullets.push_back(OneForm::kernel(Coef(-1L)));
        for (int i = j + 2; i <= s; ++i) bullets.push_back(OneForm::w(eps[static_cast<size_t>(i - 1)]));
        Scalar sd = K.S(-2L) * eval_poset(squiggle_diagram_general(subl, bullets).poset, K.ctx, 12);
        Scalar oddchain;
        if (j == 0) {
            oddchain = K.S(n % 2 == 1 ? 2L : 0L);
        } else {
            ChainStream cs(take_front(l, j), take(eps, 1, j), ChainStream::Base::OddProj,
                           Coef(1L), K.prec());
            for (long i = 0; i < n; ++i) cs.advance();
            oddchain = cs.value(static_cast<int>(n % 2));
        }
        Scalar t = K.S(eps[static_cast<size_t>(j)]) / K.S(2L) * sd * oddchain;
        rhs = rhs + t;
    }
    return {lhs, rhs};
}

Sides ev_int_ser_mmvs(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    Composition l = get_comp(P, "l");
    std::vector<int> eta = signs_of(get_labels(P, "eta"));
    std::vector<int> epst = signs_of(get_labels(P, "eps"));  // eps_2..eps_s
    const int r = k.depth(), s = l.depth();
    int etabar = prod(eta);
    auto epsat = [&](int i) { return epst[static_cast<size_t>(i - 2)]; };

    Composition ltail = slice(l, SliceMode::Forward, 2, s);
    Scalar lhs =
        eval_poset(conv_shape_diagram_3(k, eta, l.first(), ltail, epst).poset, K.ctx, 12);

    // 2 M((k;p(eta)) conv (l; 0, etabar r(eps))*)
    std::vector<int> lsigns = {0};
    for (int v : rmap(epst)) lsigns.push_back(etabar * v);
    Scalar rhs = K.S(2L) * conv_m(k, pmap(eta), l, lsigns, K.ctx);

    auto signed_diff = [&](int from) {  // sum_{e=+-1} e I(squiggle_3(l_from..l_s; e, eps_{from+1}..))
        Composition subl = slice(l, SliceMode::Forward, from, s);
        std::vector<OneForm> bullets;
        bullets.push_back(OneForm::kernel(Coef(-1L)));
        for (int i = from + 1; i <= s; ++i) bullets.push_back(OneForm::w(epsat(i)));
        return K.S(-2L) *
               eval_poset(squiggle_diagram_general(subl, bullets).poset, K.ctx, 12);
    };

    {
        long c = (1 - etabar);
        if (c != 0) {
            std::vector<int> sgn = {-1};
            for (int v : pmap(take(eta, 2, r))) sgn.push_back(v);
            Composition mk({k.first() + l.first()});
            Scalar t = K.S(epsat(2) * c) / K.S(2L) *
                       K.Mv(mk.concat(slice(k, SliceMode::Forward, 2, r)), sgn, Coef(1L)) *
                       signed_diff(2);
            rhs = rhs - t;
        }
    }
    for (int j = 2; j <= s - 1; ++j) {
        int pref = 1;
        for (int i = 2; i <= j; ++i) pref *= epsat(i);
        long c = 1 - etabar * pref;
        if (c == 0) continue;
        std::vector<int> gsigns = {0};
        std::vector<int> inner;
        for (int i = 2; i <= j - 1; ++i) inner.push_back(epsat(i));
        for (int v : rmap(inner)) gsigns.push_back(etabar * v);
        gsigns.push_back(-1);
        Scalar t = K.S(epsat(j + 1) * c) * conv_m(k, pmap(eta), take_front(l, j), gsigns, K.ctx) *
                   signed_diff(j + 1);
        rhs = rhs - t;
    }
    return {lhs, rhs};
}

Sides ev_int_ser_mmvs2(const Kit& K, const ParamMap& P) {
    Composition k = get_comp(P, "k");
    std::vector<int> eta = signs_of(get_labels(P, "eta"));
    long l1 = get_long(P, "l1");
    long l2 = get_long(P, "l2");
    long e = get_long(P, "eps");
    const int r = k.depth();
    int etabar = prod(eta);

    Composition ltail({static_cast<int>(l2)});
    Scalar lhs = eval_poset(
        conv_shape_diagram_3(k, eta, static_cast<int>(l1), ltail, {static_cast<int>(e)}).poset,
        K.ctx, 12);

    Composition l({static_cast<int>(l1), static_cast<int>(l2)});
    std::vector<int> lsigns = {0, static_cast<int>(e) * etabar};
    Scalar rhs = K.S(2L) * conv_m(k, pmap(eta), l, lsigns, K.ctx);
    long c = (1 - etabar);
    if (c != 0) {
        std::vector<int> sgn = {-1};
        for (int v : pmap(take(eta, 2, r))) sgn.push_back(v);
        Composition mk({k.first() + static_cast<int>(l1)});
        Scalar zbar = mpl_single(Composition({static_cast<int>(l2)}), Coef(-1L), false, K.ctx);
        rhs = rhs + K.S(e * c) * K.Mv(mk.concat(slice(k, SliceMode::Forward, 2, r)), sgn, Coef(1L)) * zbar;
    }
    return {lhs, rhs};
}

Sides ev_mmv_example(const Kit& K, const ParamMap& P) {
    int h = static_cast<int>(get_long(P, "eta"));
    int e = static_cast<int>(get_long(P, "eps"));
    Composition c32{3, 2}, c41{4, 1}, c5{5}, c3{3};
    Scalar lhs = K.S(2L) * K.Mv(c32, {e * h, h}, Coef(1L)) +
                 K.S(3L) * K.Mv(c41, {e * h, h}, Coef(1L)) +
                 K.S(3L) * K.Mv(c41, {h * e, e}, Coef(1L)) + K.Mv(c32, {h * e, e}, Coef(1L));
    Scalar zbar2 = mpl_single(Composition({2}), Coef(-1L), false, K.ctx);
    Scalar rhs = K.Mv(c32, {h, e * h}, Coef(1L)) +
                 K.S(1 + e) * K.Mv(c5, {h}, Coef(1L)) +
                 K.S(static_cast<long>(e) * (1 - h)) * K.Mv(c3, {-1}, Coef(1L)) * zbar2;
    return {lhs, rhs};
}

Sides ev_amzv_example(const Kit& K, const ParamMap& P) {
    long h1 = get_long(P, "eta1"), h2 = get_long(P, "eta2");
    Coef e1{Rat(h1)}, e2{Rat(h2)}, one{Rat(1)};
    Composition c311{3, 1, 1}, c221{2, 2, 1}, c212{2, 1, 2}, c23{2, 3}, c41{4, 1};
    Scalar lhs = K.S(2L) * K.Li(c311, {one, e1, e1 * e2}) +
                 K.S(2L) * K.Li(c311, {e1, e1, e2}) +
                 K.S(2L) * K.Li(c311, {e1, e1 * e2, e2}) + K.Li(c221, {e1, e1, e2}) +
                 K.Li(c221, {e1, e1 * e2, e2}) + K.Li(c212, {e1, e1 * e2, e2});
    Scalar rhs = K.Li(c212, {e1, e1 * e2, one}) + K.Li(c221, {e1, one, e1 * e2}) +
                 K.Li(c23, {e1, e1 * e2}) + K.Li(c41, {e1, e1 * e2});
    return {lhs, rhs};
}

Sides ev_poset_shuffle(const Kit& K, const ParamMap& P) {
    LabeledPoset X = LabeledPoset::from_text(get_str(P, "poset"));
    int a = static_cast<int>(get_long(P, "a"));
    int b = static_cast<int>(get_long(P, "b"));
    LabeledPoset Xab = X.adjoin(a, b);
    LabeledPoset Xba = X.adjoin(b, a);
    // exact combinatorial check: extension multisets
    auto keys = [](const LabeledPoset& Y) {
        std::vector<std::string> v;
        for (const IntegralWord& w : Y.linear_extensions()) v.push_back(w.key());
        std::sort(v.begin(), v.end());
        return v;
    };
    auto k0 = keys(X);
    auto k1 = keys(Xab);
    auto k2 = keys(Xba);
    k1.insert(k1.end(), k2.begin(), k2.end());
    std::sort(k1.begin(), k1.end());
    if (k0 != k1)
        throw std::logic_error("linear extension multisets do not split");
    Scalar lhs = eval_poset(X, K.ctx, 12);
    Scalar rhs = eval_poset(Xab, K.ctx, 12) + eval_poset(Xba, K.ctx, 12);
    return {lhs, rhs};
}

// ------------------------------------------------------------------ generators

const std::vector<Rat>& x_grid() {
    static const std::vector<Rat> g = {Rat(3, 10), Rat(1, 2), Rat(7, 10)};
    return g;
}

Composition random_comp(Rng& rng, const FuzzBounds& B, int min_first = 1, int min_depth = 1) {
    int depth = static_cast<int>(rng.pick(min_depth, B.max_depth));
    std::vector<int> parts(static_cast<size_t>(depth), 1);
    int budget = B.max_weight - depth;
    parts[0] = std::max(parts[0], min_first);
    budget -= parts[0] - 1;
    for (int i = 0; i < depth && budget > 0; ++i) {
        int add = static_cast<int>(rng.pick(0, std::min(2, budget)));
        parts[static_cast<size_t>(i)] += add;
        budget -= add;
    }
    return Composition(parts);
}

LabelVector random_x_labels(Rng& rng, int d, bool allow_one) {
    std::vector<Coef> v;
    for (int i = 0; i < d; ++i) {
        long roll = rng.pick(0, allow_one ? 3 : 2);
        if (roll == 3)
            v.emplace_back(Rat(1));
        else
            v.emplace_back(x_grid()[static_cast<size_t>(roll)]);
    }
    return LabelVector::disk(v);
}

LabelVector random_signs(Rng& rng, int d) {
    std::vector<int> v;
    for (int i = 0; i < d; ++i) v.push_back(rng.sign());
    return lv_signs(v);
}

std::string random_admissible_poset(Rng& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        int n = static_cast<int>(rng.pick(3, 6));
        std::vector<int> ids(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = i;
        std::vector<std::pair<int, int>> rel;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.pick(0, 9) < 4) rel.emplace_back(i, j);
        std::vector<OneForm> labels;
        const std::vector<Coef> kernels = {Coef(Rat(1)), Coef(Rat(-1)), Coef(Rat(1, 2)),
                                           Coef(Rat(-1, 2)), Coef(Rat(3, 10))};
        for (int i = 0; i < n; ++i) {
            long roll = rng.pick(0, 7);
            if (roll < 4)
                labels.push_back(OneForm::kernel(kernels[static_cast<size_t>(rng.pick(0, 4))]));
            else if (roll < 7)
                labels.push_back(OneForm::omega0());
            else
                labels.push_back(OneForm::pow(static_cast<int>(rng.pick(2, 4))));
        }
        try {
            LabeledPoset X(ids, labels, rel);
            if (!X.admissible()) continue;
            // need a non-comparable pair
            bool found = false;
            for (int a = 0; a < n && !found; ++a)
                for (int b = a + 1; b < n && !found; ++b)
                    if (!X.comparable(a, b)) found = true;
            if (!found) continue;
            return X.to_text();
        } catch (const std::exception&) {
            continue;
        }
    }
    throw std::runtime_error("failed to generate a random admissible poset");
}

ParamMap gen_params(const std::string& id, Rng& rng, const FuzzBounds& B, VerifyMode mode) {
    ParamMap P;
    auto pick_x = [&]() { return Coef(x_grid()[static_cast<size_t>(rng.pick(0, 2))]); };
    if (id == "SS2016-LEMMA" || id == "PMHNS") {
        Composition k = random_comp(rng, B);
        P["k"] = k;
        P["x"] = random_x_labels(rng, k.depth(), true);
        P["n"] = rng.pick(1, B.max_n);
        if (id == "PMHNS")
            P["a"] = mode == VerifyMode::Exact ? Rat(rng.pick(0, 2))
                                               : Rat(rng.pick(1, 5), 2);
    } else if (id == "PMPLS1" || id == "PMPLS2" || id == "NPMPLS1" || id == "NPMPLS2") {
        Composition k = random_comp(rng, B);
        P["k"] = k;
        P["x"] = random_x_labels(rng, k.depth(), true);
        P["n"] = rng.pick(1, B.max_n);
        P["l"] = rng.pick(0, B.max_l);
        if (id.rfind("N", 0) == 0)
            P["a"] = mode == VerifyMode::Exact ? Rat(rng.pick(0, 2))
                                               : Rat(rng.pick(1, 5), 2);
    } else if (id == "ITLI1J") {
        P["j"] = rng.pick(0, 6);
        P["x"] = pick_x();
    } else if (id == "MPL-RS") {
        P["k"] = rng.pick(2, 4);
        P["r"] = rng.pick(0, 3);
        P["x"] = pick_x();
    } else if (id == "FII1" || id == "FIIt1") {
        Composition m = random_comp(rng, B);
        P["m"] = m;
        P["n"] = rng.pick(1, std::min(4, B.max_n));
        P["x"] = pick_x();
    } else if (id == "FII2") {
        Composition m = random_comp(rng, B);
        P["m"] = m;
        P["n"] = rng.pick(1, std::min(4, B.max_n));
        P["x"] = pick_x();
        const std::vector<Rat> sg = {Rat(2, 5), Rat(1, 2), Rat(3, 5), Rat(7, 10)};
        std::vector<Coef> v;
        for (int i = 0; i < m.depth(); ++i)
            v.emplace_back(sg[static_cast<size_t>(rng.pick(0, 3))]);
        P["sigma"] = LabelVector::disk(v);
    } else if (id == "INT-G") {
        int p = static_cast<int>(rng.pick(1, 3));
        std::vector<int> m;
        m.push_back(static_cast<int>(rng.pick(1, 2)));
        for (int i = 1; i < p; ++i) m.push_back(static_cast<int>(rng.pick(0, 2)));
        P["m"] = int_list_str(m);
        P["n"] = rng.pick(1, 3);
        // ascending a's keep the polylogarithm arguments inside the disk
        std::vector<Coef> a;
        const std::vector<Rat> lows = {Rat(1, 10), Rat(1, 5), Rat(3, 10)};
        for (int i = 0; i + 1 < p; ++i)
            a.emplace_back(lows[static_cast<size_t>(rng.pick(0, 2))]);
        a.emplace_back(Rat(rng.pick(5, 8), 10));  // a_p in [0.5, 0.8]
        P["a"] = LabelVector::disk(a);
    } else if (id == "IMP-2") {
        Composition m = random_comp(rng, B);
        P["m"] = m;
        P["n"] = rng.pick(1, std::min(4, B.max_n));
        P["x"] = pick_x();
    } else if (id == "KYMZV1") {
        Composition k = random_comp(rng, B);
        Composition m = random_comp(rng, B);
        P["k"] = k;
        P["m"] = m;
        P["x"] = pick_x();
        const std::vector<Rat> sg = {Rat(1, 2), Rat(3, 5), Rat(7, 10), Rat(4, 5)};
        const std::vector<Rat> ep = {Rat(1, 5), Rat(-1, 5), Rat(3, 10), Rat(-3, 10)};
        std::vector<Coef> sv, ev;
        for (int i = 0; i < m.depth(); ++i)
            sv.emplace_back(sg[static_cast<size_t>(rng.pick(0, 3))]);
        for (int i = 0; i < k.depth(); ++i)
            ev.emplace_back(ep[static_cast<size_t>(rng.pick(0, 3))]);
        P["sigma"] = LabelVector::disk(sv);
        P["eps"] = LabelVector::disk(ev);
    } else if (id == "KYMZV2") {
        P["k"] = random_comp(rng, B, 2);
        P["m"] = random_comp(rng, B);
        P["x"] = pick_x();
    } else if (id == "KYMZV3") {
        int p = static_cast<int>(rng.pick(1, 3));
        std::vector<int> m;
        m.push_back(static_cast<int>(rng.pick(1, 2)));
        for (int i = 1; i < p; ++i) m.push_back(static_cast<int>(rng.pick(0, 2)));
        P["m"] = int_list_str(m);
        P["k"] = rng.pick(2, 3);
        P["r"] = rng.pick(1, 3);
        P["x"] = pick_x();
    } else if (id == "MPL-R2") {
        P["p"] = rng.pick(0, 3);
        P["r"] = rng.pick(0, 3);
        P["k"] = rng.pick(2, 4);
        P["x"] = pick_x();
    } else if (id == "MPL-R3") {
        P["m"] = rng.pick(1, 3);
        P["k"] = rng.pick(2, 3);
        P["r"] = rng.pick(0, 2);
        P["x"] = pick_x();
    } else if (id == "T-KYMZVX") {
        P["k"] = random_comp(rng, B, 2);
        P["m"] = random_comp(rng, B);
        P["x"] = pick_x();
    } else if (id == "T-KYMZVXX") {
        P["k"] = random_comp(rng, B, 2);
        Composition m = random_comp(rng, B);
        // m_p >= 2 so that every t-value factor is admissible
        std::vector<int> parts = m.parts();
        parts.back() = std::max(parts.back(), 2);
        P["m"] = Composition(parts);
    } else if (id == "INTX-MMVS") {
        Composition m = random_comp(rng, B);
        P["m"] = m;
        P["eps"] = random_signs(rng, m.depth());
        P["n"] = rng.pick(1, std::min(4, B.max_n));
        P["x"] = pick_x();
    } else if (id == "INTX-KYMMVS" || id == "INTX-KYMMVS-COR") {
        Composition k = random_comp(rng, B, 2);
        Composition m = random_comp(rng, B);
        if (id == "INTX-KYMMVS-COR") {
            std::vector<int> parts = m.parts();
            parts.back() = std::max(parts.back(), 2);
            m = Composition(parts);
        }
        P["k"] = k;
        P["m"] = m;
        P["eta"] = random_signs(rng, k.depth());
        P["eps"] = random_signs(rng, m.depth());
        if (id == "INTX-KYMMVS") P["x"] = pick_x();
    } else if (id == "PMPLS3") {
        Composition k = random_comp(rng, B);
        P["k"] = k;
        P["x"] = random_x_labels(rng, k.depth(), false);
        P["a"] = Rat(rng.pick(0, 5), 2);
    } else if (id == "F2-MPLS") {
        Composition l = random_comp(rng, B);
        P["l"] = l;
        const std::vector<Rat> ep = {Rat(1), Rat(-1), Rat(7, 10), Rat(-7, 10), Rat(1, 2)};
        std::vector<Coef> v;
        for (int i = 0; i < l.depth(); ++i)
            v.emplace_back(ep[static_cast<size_t>(rng.pick(0, 4))]);
        // (l_s, eps_s) != (1, 1): the final block must stay integrable
        if (l[l.depth() - 1] == 1 && v.back().is_one()) v.back() = Coef(Rat(-1));
        P["eps"] = LabelVector::disk(v);
        P["n"] = rng.pick(1, B.max_n);
    } else if (id == "INT-SER-AMPLS") {
        FuzzBounds Bk = B;  // keep the wedge small enough to enumerate quickly
        Bk.max_weight = 3;
        Bk.max_depth = 2;
        Composition k = random_comp(rng, Bk);
        int s = static_cast<int>(rng.pick(2, 3));
        std::vector<int> lparts;
        for (int i = 0; i < s; ++i) lparts.push_back(static_cast<int>(rng.pick(1, 2)));
        Composition l(lparts);
        P["k"] = k;
        P["l"] = l;
        // eta fractional only together with unit eps keeps every outer series
        // certified convergent
        bool frac = rng.pick(0, 3) == 0;
        std::vector<Coef> etav, epsv;
        for (int i = 0; i < k.depth(); ++i)
            etav.emplace_back(frac ? Rat(rng.sign(), 2) : Rat(rng.sign()));
        for (int i = 0; i + 1 < s; ++i) epsv.emplace_back(Rat(rng.sign()));
        if (l[s - 1] == 1 && s >= 2 && epsv.back().is_one()) epsv.back() = Coef(Rat(-1));
        P["eta"] = LabelVector::disk(etav);
        P["eps"] = LabelVector::disk(epsv);
    } else if (id == "F2-MMVS") {
        int s = static_cast<int>(rng.pick(1, 3));
        std::vector<int> lparts;
        for (int i = 0; i + 1 < s; ++i) lparts.push_back(static_cast<int>(rng.pick(1, 2)));
        lparts.push_back(static_cast<int>(rng.pick(2, 3)));  // l_s >= 2
        Composition l(lparts);
        P["l"] = l;
        P["eps"] = random_signs(rng, l.depth());
        P["n"] = rng.pick(1, B.max_n);
    } else if (id == "INT-SER-MMVS") {
        FuzzBounds Bk = B;
        Bk.max_weight = 3;
        Bk.max_depth = 2;
        Composition k = random_comp(rng, Bk);
        int s = static_cast<int>(rng.pick(2, 3));
        std::vector<int> lparts;
        for (int i = 0; i + 1 < s; ++i) lparts.push_back(static_cast<int>(rng.pick(1, 2)));
        lparts.push_back(static_cast<int>(rng.pick(2, 3)));
        P["k"] = k;
        P["l"] = Composition(lparts);
        P["eta"] = random_signs(rng, k.depth());
        P["eps"] = random_signs(rng, s - 1);
    } else if (id == "INT-SER-MMVS2") {
        Composition k = random_comp(rng, B);
        P["k"] = k;
        P["eta"] = random_signs(rng, k.depth());
        P["l1"] = rng.pick(1, 2);
        P["l2"] = rng.pick(2, 3);
        P["eps"] = static_cast<long>(rng.sign());
    } else if (id == "MMV-EXAMPLE") {
        P["eta"] = static_cast<long>(rng.sign());
        P["eps"] = static_cast<long>(rng.sign());
    } else if (id == "AMZV-EXAMPLE") {
        P["eta1"] = static_cast<long>(rng.sign());
        P["eta2"] = static_cast<long>(rng.sign());
    } else if (id == "POSET-SHUFFLE") {
        std::string text = random_admissible_poset(rng);
        LabeledPoset X = LabeledPoset::from_text(text);
        std::vector<std::pair<int, int>> pairs;
        for (size_t i = 0; i < X.ids().size(); ++i)
            for (size_t j = i + 1; j < X.ids().size(); ++j)
                if (!X.comparable(X.ids()[i], X.ids()[j]))
                    pairs.emplace_back(X.ids()[i], X.ids()[j]);
        auto pr = pairs[static_cast<size_t>(rng.pick(0, static_cast<long>(pairs.size()) - 1))];
        P["poset"] = text;
        P["a"] = static_cast<long>(pr.first);
        P["b"] = static_cast<long>(pr.second);
    } else {
        throw std::invalid_argument("unknown identity id: " + id);
    }
    return P;
}

}  // namespace

// ------------------------------------------------------------------ registry

const std::vector<IdentityInfo>& registry() {
    static const std::vector<IdentityInfo> table = {
        {"FII1", false, "m:composition n:int x:disk"},
        {"FII2", false, "m:composition n:int x:disk sigma:labels"},
        {"INT-G", false, "m:padded n:int a:labels"},
        {"IMP-2", false, "m:composition n:int x:disk"},
        {"KYMZV1", false, "k,m:composition x:disk eps,sigma:labels"},
        {"KYMZV2", false, "k,m:composition x:disk"},
        {"KYMZV3", false, "m:padded k,r:int x:disk"},
        {"MPL-R2", false, "p,r,k:int x:disk"},
        {"MPL-R3", false, "m,k,r:int x:disk"},
        {"FIIt1", false, "m:composition n:int x:disk"},
        {"T-KYMZVX", false, "k,m:composition x:disk"},
        {"T-KYMZVXX", false, "k,m:composition (m_p>=2)"},
        {"INTX-MMVS", false, "m:composition eps:signs n:int x:disk"},
        {"INTX-KYMMVS", false, "k,m:composition eta,eps:signs x:disk"},
        {"INTX-KYMMVS-COR", false, "k,m:composition eta,eps:signs (m_p>=2)"},
        {"SS2016-LEMMA", true, "k:composition x:labels n:int"},
        {"PMPLS1", true, "k:composition x:labels n,l:int"},
        {"PMPLS2", true, "k:composition x:labels n,l:int"},
        {"PMHNS", true, "k:composition x:labels n:int a:rational"},
        {"PMPLS3", false, "k:composition x:labels a:rational"},
        {"NPMPLS1", true, "k:composition x:labels n,l:int a:rational"},
        {"NPMPLS2", true, "k:composition x:labels n,l:int a:rational"},
        {"F2-MPLS", false, "l:composition eps:labels n:int"},
        {"INT-SER-AMPLS", false, "k,l:composition eta,eps:labels"},
        {"AMZV-EXAMPLE", false, "eta1,eta2:+-1"},
        {"F2-MMVS", false, "l:composition eps:signs n:int (l_s>=2)"},
        {"INT-SER-MMVS", false, "k,l:composition eta,eps:signs (l_s>=2)"},
        {"INT-SER-MMVS2", false, "k:composition eta:signs l1,l2:int eps:+-1"},
        {"MMV-EXAMPLE", false, "eta,eps:+-1"},
        {"POSET-SHUFFLE", false, "poset:text a,b:int"},
        {"ITLI1J", false, "j:int x:disk"},
        {"MPL-RS", false, "k,r:int x:disk"},
    };
    return table;
}

namespace {

const Evaluator& evaluator_for(const std::string& id) {
    static const std::map<std::string, Evaluator> table = {
        {"SS2016-LEMMA", [](const Kit& K, const ParamMap& P) { return ev_ss2016(K, P); }},
        {"PMHNS", [](const Kit& K, const ParamMap& P) { return ev_pmhns(K, P); }},
        {"PMPLS1", [](const Kit& K, const ParamMap& P) { return ev_pmpls(K, P, false, false); }},
        {"PMPLS2", [](const Kit& K, const ParamMap& P) { return ev_pmpls(K, P, true, false); }},
        {"NPMPLS1", [](const Kit& K, const ParamMap& P) { return ev_pmpls(K, P, false, true); }},
        {"NPMPLS2", [](const Kit& K, const ParamMap& P) { return ev_pmpls(K, P, true, true); }},
        {"ITLI1J", [](const Kit& K, const ParamMap& P) { return ev_itli1j(K, P); }},
        {"MPL-RS", [](const Kit& K, const ParamMap& P) { return ev_mpl_rs(K, P); }},
        {"FII1", [](const Kit& K, const ParamMap& P) { return ev_fii1(K, P); }},
        {"FII2", [](const Kit& K, const ParamMap& P) { return ev_fii2(K, P); }},
        {"INT-G", [](const Kit& K, const ParamMap& P) { return ev_int_g(K, P); }},
        {"IMP-2", [](const Kit& K, const ParamMap& P) { return ev_imp2(K, P); }},
        {"KYMZV1", [](const Kit& K, const ParamMap& P) { return ev_kymzv1(K, P); }},
        {"KYMZV2", [](const Kit& K, const ParamMap& P) { return ev_kymzv2(K, P); }},
        {"KYMZV3", [](const Kit& K, const ParamMap& P) { return ev_kymzv3(K, P); }},
        {"MPL-R2", [](const Kit& K, const ParamMap& P) { return ev_mpl_r2(K, P); }},
        {"MPL-R3", [](const Kit& K, const ParamMap& P) { return ev_mpl_r3(K, P); }},
        {"FIIt1", [](const Kit& K, const ParamMap& P) { return ev_fiit1(K, P); }},
        {"T-KYMZVX", [](const Kit& K, const ParamMap& P) { return ev_t_kymzvx(K, P); }},
        {"T-KYMZVXX", [](const Kit& K, const ParamMap& P) { return ev_t_kymzvxx(K, P); }},
        {"INTX-MMVS", [](const Kit& K, const ParamMap& P) { return ev_intx_mmvs(K, P); }},
        {"INTX-KYMMVS",
         [](const Kit& K, const ParamMap& P) { return ev_intx_kymmvs(K, P, false); }},
        {"INTX-KYMMVS-COR",
         [](const Kit& K, const ParamMap& P) { return ev_intx_kymmvs(K, P, true); }},
        {"PMPLS3", [](const Kit& K, const ParamMap& P) { return ev_pmpls3(K, P); }},
        {"F2-MPLS", [](const Kit& K, const ParamMap& P) { return ev_f2_mpls(K, P); }},
        {"INT-SER-AMPLS", [](const Kit& K, const ParamMap& P) { return ev_int_ser_ampls(K, P); }},
        {"F2-MMVS", [](const Kit& K, const ParamMap& P) { return ev_f2_mmvs(K, P); }},
        {"INT-SER-MMVS", [](const Kit& K, const ParamMap& P) { return ev_int_ser_mmvs(K, P); }},
        {"INT-SER-MMVS2", [](const Kit& K, const ParamMap& P) { return ev_int_ser_mmvs2(K, P); }},
        {"MMV-EXAMPLE", [](const Kit& K, const ParamMap& P) { return ev_mmv_example(K, P); }},
        {"AMZV-EXAMPLE", [](const Kit& K, const ParamMap& P) { return ev_amzv_example(K, P); }},
        {"POSET-SHUFFLE", [](const Kit& K, const ParamMap& P) { return ev_poset_shuffle(K, P); }},
    };
    auto it = table.find(id);
    if (it == table.end()) throw std::invalid_argument("unknown identity id: " + id);
    return it->second;
}

}  // namespace

const IdentityInfo& registry_entry(const std::string& id) {
    for (const IdentityInfo& e : registry())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown identity id: " + id);
}

std::string param_to_string(const ParamValue& v) {
    if (auto* l = std::get_if<long>(&v)) return std::to_string(*l);
    if (auto* r = std::get_if<Rat>(&v)) return rat_to_string(*r);
    if (auto* c = std::get_if<Coef>(&v)) return c->str();
    if (auto* k = std::get_if<Composition>(&v)) return k->str();
    if (auto* x = std::get_if<LabelVector>(&v)) return x->str();
    if (auto* s = std::get_if<std::string>(&v)) return *s;
    return "?";
}

ResidualReport verify(const IdentityCase& kase, const EvalCtx& ctx_in) {
    EvalCtx ctx = ctx_in;
    ctx.prec = kase.prec > 0 ? kase.prec : ctx.prec;
    ResidualReport rep;
    rep.kase = kase;
    rep.budget = BigFloat(0L, bnd::kPrec);
    rep.slack = BigFloat(0L, bnd::kPrec);
    rep.abs_residual = BigFloat(0L, bnd::kPrec);

    const IdentityInfo& info = registry_entry(kase.id);
    if (kase.mode == VerifyMode::Exact && !info.exact_eligible) {
        rep.status = VerifyStatus::Skipped;
        rep.reason = "identity is not exact-eligible";
        return rep;
    }

    Kit K;
    K.ctx = ctx;
    K.exact = kase.mode == VerifyMode::Exact;
    try {
        auto [lhs, rhs] = evaluator_for(kase.id)(K, kase.params);
        rep.lhs = lhs;
        rep.rhs = rhs;
        rep.residual = lhs - rhs;
        if (kase.mode == VerifyMode::Exact) {
            if (!rep.residual.is_exact()) throw std::logic_error("exact mode produced a float");
            rep.status = rep.residual.rat() == 0 ? VerifyStatus::Pass : VerifyStatus::Fail;
            if (rep.status == VerifyStatus::Fail) rep.reason = "nonzero exact residual";
            return rep;
        }
        Scalar lf = lhs.to_float(ctx.prec), rf = rhs.to_float(ctx.prec);
        rep.abs_residual = abs_diff_upper(lf, rf, ctx.prec);
        rep.budget = bnd::add(lf.err(), rf.err());
        rep.slack = bnd::pow2(-static_cast<long>(ctx.prec / 2));
        BigFloat tol = bnd::add(rep.budget, rep.slack);
        rep.status = (rep.abs_residual <= tol) ? VerifyStatus::Pass : VerifyStatus::Fail;
        if (rep.status == VerifyStatus::Fail) rep.reason = "residual exceeds budget";
        return rep;
    } catch (const std::logic_error& e) {
        rep.status = VerifyStatus::Fail;  // internal inconsistency, never a skip
        rep.reason = e.what();
        return rep;
    } catch (const std::exception& e) {
        rep.status = VerifyStatus::Skipped;
        rep.reason = e.what();
        return rep;
    }
}

IdentityCase generate_case(const std::string& id, uint64_t seed, int index,
                           const FuzzBounds& bounds, VerifyMode mode, long prec) {
    Rng rng(seed * 0x853c49e6748fea9bull + static_cast<uint64_t>(index) * 0xda3e39cb94b95bdbull +
            std::hash<std::string>{}(id));
    IdentityCase c;
    c.id = id;
    c.mode = mode;
    c.prec = prec;
    c.params = gen_params(id, rng, bounds, mode);
    return c;
}

FuzzSummary fuzz(const std::string& id, int budget, uint64_t seed, const FuzzBounds& bounds,
                 const EvalCtx& ctx, VerifyMode mode) {
    FuzzSummary sum;
    sum.id = id;
    sum.seed = seed;
    std::vector<ResidualReport> reports(static_cast<size_t>(budget));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < budget; ++i) {
        IdentityCase c = generate_case(id, seed, i, bounds, mode, ctx.prec);
        reports[static_cast<size_t>(i)] = verify(c, ctx);
    }
    for (const auto& r : reports) {
        switch (r.status) {
            case VerifyStatus::Pass: {
                ++sum.pass;
                BigFloat tol = bnd::add(r.budget, r.slack);
                double ratio = bnd::div_up(r.abs_residual, tol).to_double();
                sum.worst_ratio = std::max(sum.worst_ratio, ratio);
                break;
            }
            case VerifyStatus::Fail: {
                ++sum.fail;
                sum.worst_ratio = 1e9;
                if (sum.failures.size() < 4) {
                    std::string desc;
                    for (const auto& [k, v] : r.kase.params)
                        desc += k + "=" + param_to_string(v) + " ";
                    sum.failures.push_back(desc + "(" + r.reason + ")");
                }
                break;
            }
            case VerifyStatus::Skipped: {
                ++sum.skip;
                if (sum.failures.size() < 4) sum.failures.push_back("skip: " + r.reason);
                break;
            }
        }
    }
    return sum;
}

}  // namespace mzv
