#ifndef MZVLAB_NESTED_SUMS_HPP
#define MZVLAB_NESTED_SUMS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "mzvlab/ctx.hpp"
#include "mzvlab/index.hpp"
#include "mzvlab/scalar.hpp"

namespace mzv {

enum class SumFamily { Zeta, T, M };

// Finite nested sum request. Lengths of k / x / signs must agree.
struct SumSpec {
    SumFamily family = SumFamily::Zeta;
    bool star = false;
    Composition k;
    std::optional<LabelVector> x;      // Zeta: per-slot disk labels
    std::optional<Coef> inner_x;       // T star / Zeta: weight on the innermost index
    LabelVector signs;                 // M: sign vector
    std::optional<Scalar> a;           // Zeta: parametric shift
    long n = 0;
};

// Streaming evaluator for the finite sums: advance() moves the upper limit
// from n to n+1 in O(depth) scalar operations. This is what both the finite
// operations and the infinite-series engines are built on.
class SumStream {
  public:
    struct Config {
        SumFamily family = SumFamily::Zeta;
        bool star = false;
        Composition k;
        std::vector<Coef> x;           // per-slot labels; empty = all 1
        std::vector<int> signs;        // M family, +-1 per slot
        std::optional<Coef> inner_x;   // weight x^{n_r} (Zeta/M) or x^{2 n_r - 1} (T)
        Scalar a = Scalar::zero();     // Zeta shift
        bool exact = false;
        long prec = 128;
    };

    explicit SumStream(Config cfg);

    void advance();            // n -> n+1
    long n() const { return n_; }
    const Scalar& value() const { return levels_.empty() ? one_ : levels_[0]; }

    // Growth metadata for tail bounds of outer series built on this stream:
    // number of harmonic-growth slots, and max(1, max cumulative |label|).
    int log_slots() const { return log_slots_; }
    double cmax() const { return cmax_; }
    double const_factor() const { return const_factor_; }

  private:
    Scalar weight(int j) const;  // w_j at index n_ (already advanced)
    Config cfg_;
    long n_ = 0;
    std::vector<Scalar> levels_;   // levels_[j] = sum over chains with slots j..r-1, top index <= n
    std::vector<Scalar> pows_;     // per-slot running power of x_j
    Scalar inner_pow_;
    Scalar one_;
    int log_slots_ = 0;
    double cmax_ = 1.0;
    double const_factor_ = 1.0;
};

// Parity-coupled weak-chain sum: with n_0 = n,
//   sum over n >= n_1 >= ... >= n_p >= 1 of
//     base(n_p) * prod_j (1 + s_j (-1)^{n_{j-1}+n_j}) / n_j^{m_j}
// where base is 1, x^{n_p}, or the odd projector (1 - (-1)^{n_p}).
class ChainStream {
  public:
    enum class Base { One, PowX, OddProj };

    ChainStream(Composition m, std::vector<int> signs, Base base, Coef x, long prec);

    void advance();
    long n() const { return n_; }
    // Value with the reference index parity (parity of n_0).
    Scalar value(int ref_parity) const;

    int log_slots() const { return static_cast<int>(m_.depth()); }
    double cmax() const { return 1.0; }
    double const_factor() const;

  private:
    Composition m_;
    std::vector<int> signs_;
    Base base_;
    Coef x_;
    long prec_;
    long n_ = 0;
    Scalar xpow_;
    // tables_[j][par]: chain sum for slots j..p-1 with top index <= n_, given
    // parity of the previous index == par
    std::vector<std::array<Scalar, 2>> tables_;
};

// Spec-facing operations.
Scalar harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact);
Scalar t_harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact);
Scalar m_harmonic_sum(const SumSpec& spec, const EvalCtx& ctx, bool exact);

// Convenience wrappers used heavily by the identity evaluators.
Scalar zeta_n(long n, const Composition& k, const LabelVector& x, bool star, bool exact,
              long prec);
Scalar zeta_n_a(long n, const Composition& k, const LabelVector& x, const Scalar& a, bool star,
                bool exact, long prec);
// Star sum with a single variable on the innermost slot (the x in
// zeta*_n(m; x) and t*_n(m; x)).
Scalar zeta_star_n_inner_x(long n, const Composition& k, const Coef& x, bool exact, long prec);
Scalar t_n(long n, const Composition& k, bool star, bool exact, long prec);
Scalar t_star_n_inner_x(long n, const Composition& k, const Coef& x, bool exact, long prec);
Scalar m_n(long n, const Composition& k, const LabelVector& signs, bool star, bool exact,
           long prec);
Scalar m_chain_sum(long n, const Composition& m, const std::vector<int>& signs, const Coef& x,
                   long prec);

}  // namespace mzv

#endif
