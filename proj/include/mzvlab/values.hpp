#ifndef MZVLAB_VALUES_HPP
#define MZVLAB_VALUES_HPP

#include <optional>
#include <vector>

#include "mzvlab/ctx.hpp"
#include "mzvlab/index.hpp"
#include "mzvlab/nested_sums.hpp"
#include "mzvlab/scalar.hpp"
#include "mzvlab/words.hpp"

namespace mzv {

enum class ValueFamily {
    Mpl,
    MplStar,
    TPoly,
    TPolyStar,
    MPoly,
    ConvZeta,
    ConvT,
    ConvM,
    ParametricMpl,
    ParametricMplStar
};

struct ValueSpec {
    ValueFamily family = ValueFamily::Mpl;
    Composition k, l;
    LabelVector x;     // slot variables (Mpl) or single entry (TPoly/MPoly)
    LabelVector eta;   // ConvM k-side signs; MPoly signs
    LabelVector eps;   // ConvM l-side signs
    std::optional<Scalar> a;
};

// Multiple polylogarithm in slot variables z (the series has z_j^{n_j} in
// slot j). Interior points by direct series with a geometric tail bound;
// points with unit-modulus cumulative products through the words module.
Scalar mpl(const Composition& k, const LabelVector& z, bool star, const EvalCtx& ctx,
           double target_err = 0.0);
Scalar mpl_single(const Composition& k, const Coef& x, bool star, const EvalCtx& ctx,
                  double target_err = 0.0);

Scalar parametric_mpl(const Composition& k, const LabelVector& z, const Scalar& a, bool star,
                      const EvalCtx& ctx, double target_err = 0.0);

// t-polylogarithm ti_k(x); star variant only at x = 1 (the multiple t-star
// value).
Scalar t_value(const Composition& k, const Coef& x, bool star, const EvalCtx& ctx,
               double target_err = 0.0);

// Multiple M-polylogarithm / mixed value: x^{n_1} prod (1+eps_j(-1)^{n_j}).
Scalar m_value(const Composition& k, const std::vector<int>& eps, const Coef& x,
               const EvalCtx& ctx, double target_err = 0.0);

Scalar conv_zeta(const Composition& k, const Composition& l, const EvalCtx& ctx,
                 double target_err = 0.0);
Scalar conv_t(const Composition& k, const Composition& l, const EvalCtx& ctx,
              double target_err = 0.0);
// first entries of eta/eps in {-1,0,+1} (not both 0), the rest +-1
Scalar conv_m(const Composition& k, const std::vector<int>& eta, const Composition& l,
              const std::vector<int>& eps, const EvalCtx& ctx, double target_err = 0.0);
// Labeled convolution: sum_n zeta_{n-1}(k-tail; a-tail) zeta*_n(l-tail; b-tail)
// (a1 b1)^n / n^{k1+l1}.
Scalar conv_zeta_labeled(const Composition& k, const LabelVector& albl, const Composition& l,
                         const LabelVector& blbl, const EvalCtx& ctx, double target_err = 0.0);

Scalar eval_value(const ValueSpec& spec, const EvalCtx& ctx, double target_err = 0.0);

IntegralWord word_from_value(const ValueSpec& spec);

// Generic outer series: sum over n >= 1 of
//   pow_init * pow_mult^{n-1} * prod_i (1 + parity[i] (-1)^n) * (1/2 if half)
//   * F(n-1) * G(n) * Gchain(n) / den(n)^s
// with rigorous (geometric) or honest truncation (Dirichlet) tail bounds.
struct OuterSeries {
    enum class Den { N, Odd, ShiftN };
    Den den = Den::N;
    int s = 2;
    Scalar shift = Scalar::zero();  // ShiftN offset
    Coef pow_init = Coef(1L), pow_mult = Coef(1L);
    std::vector<int> parity;  // factors (1 + p (-1)^n), p in {-1,0,+1}
    bool half = false;
    std::optional<SumStream::Config> F;  // queried at n-1
    std::optional<SumStream::Config> G;  // queried at n
    struct ChainCfg {
        Composition m;
        std::vector<int> signs;
        ChainStream::Base base = ChainStream::Base::One;
        Coef x = Coef(1L);
    };
    std::optional<ChainCfg> Gchain;  // queried at n with reference parity n%2
};

Scalar outer_series(const OuterSeries& os, const EvalCtx& ctx, double target_err = 0.0);

}  // namespace mzv

#endif
