#ifndef MZVLAB_WORDS_HPP
#define MZVLAB_WORDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mzvlab/ctx.hpp"
#include "mzvlab/index.hpp"
#include "mzvlab/scalar.hpp"

namespace mzv {

enum class FormKind {
    Omega0,      // dt / t
    Kernel,      // s dt / (1 - s t)
    Pow,         // t^{n-1} dt
    Wminus,      // 2 dt / (1 - t^2)
    Wplus,       // 2 t dt / (1 - t^2)
    CauchyShift  // dt / (a - t)
};

struct OneForm {
    FormKind kind = FormKind::Omega0;
    Coef param;  // Kernel / CauchyShift parameter
    int n = 1;   // Pow exponent

    static OneForm omega0() { return {FormKind::Omega0, Coef(1L), 1}; }
    static OneForm kernel(Coef s);
    static OneForm pow(int n);
    static OneForm wminus() { return {FormKind::Wminus, Coef(1L), 1}; }
    static OneForm wplus() { return {FormKind::Wplus, Coef(1L), 1}; }
    static OneForm w(int sign) { return sign < 0 ? wminus() : wplus(); }
    static OneForm cauchy(Coef a);

    bool operator==(const OneForm& o) const {
        return kind == o.kind && param == o.param && n == o.n;
    }
    std::string str() const;
    static OneForm parse(const std::string& s);
};

// Ordered sequence of 1-forms over [lower, upper]. forms[0] attaches to the
// smallest integration variable (nearest `lower`), forms.back() to the
// largest. This single orientation is used everywhere, including by the
// poset module.
struct IntegralWord {
    std::vector<OneForm> forms;
    Rat lower = Rat(0);
    Coef upper = Coef(1L);
    Rat coeff = Rat(1);  // global rational prefactor (e.g. 2^{-r} for t-words)

    size_t size() const { return forms.size(); }
    std::string str() const;
    std::string key() const;  // stable cache key
};

// Checks the endpoint admissibility invariants; throws on violation.
void check_word_admissible(const IntegralWord& w);

// Series evaluation: coefficient expansion around the lower endpoint, with
// automatic path composition through interior breakpoints when a kernel is
// singular at the upper endpoint. lower must be 0.
Scalar eval_word_series(const IntegralWord& w, const EvalCtx& ctx, double target_err = 0.0);

// Chen path composition at the single interior point c: the sum over all
// splittings of w of (lower part over [0,c]) x (upper part over [c,upper]).
Scalar compose_paths(const IntegralWord& w, const Rat& c, const EvalCtx& ctx,
                     double target_err = 0.0);

// Independent oracle: nested quadrature over a mesh graded toward singular
// endpoints. Error estimate by order refinement (heuristic). Real data only.
Scalar eval_word_quadrature(const IntegralWord& w, const EvalCtx& ctx, double target_err = 1e-12);

// Word constructors for the series dictionary.
IntegralWord word_for_mpl(const Composition& k, const LabelVector& slot_x);
IntegralWord word_for_tpoly(const Composition& k, const Coef& x);
IntegralWord word_for_mpoly(const Composition& k, const std::vector<int>& eps, const Coef& x);

IntegralWord parse_word(const std::string& text);  // "K(1) O K(1) @[0,1]"

}  // namespace mzv

#endif
