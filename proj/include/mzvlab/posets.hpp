#ifndef MZVLAB_POSETS_HPP
#define MZVLAB_POSETS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mzvlab/ctx.hpp"
#include "mzvlab/scalar.hpp"
#include "mzvlab/words.hpp"

namespace mzv {

// Finite strict partial order with a 1-form label on every element.
// Convention (fixed project-wide): in the associated integral the
// poset-greater element carries the smaller integration variable, so a
// linear extension read from its greatest element down is exactly an
// IntegralWord read left to right.
class LabeledPoset {
  public:
    LabeledPoset() = default;
    // relations are arbitrary strict pairs (a < b) over external ids; they are
    // closed transitively and reduced to the Hasse relation.
    LabeledPoset(std::vector<int> ids, std::vector<OneForm> labels,
                 std::vector<std::pair<int, int>> relations);

    static constexpr int kMaxElements = 12;

    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<int>& ids() const { return ids_; }
    const OneForm& label_of(int id) const;
    // Hasse cover pairs in external ids.
    std::vector<std::pair<int, int>> cover_pairs() const;
    bool less(int a, int b) const;  // external ids
    bool comparable(int a, int b) const { return a == b || less(a, b) || less(b, a); }

    // admissibility: minimal elements may not carry a form singular at 1;
    // maximal elements may not carry a form singular at 0. Returns the
    // offending element on failure.
    std::optional<int> admissibility_witness() const;
    bool admissible() const { return !admissibility_witness(); }

    LabeledPoset adjoin(int a, int b) const;  // adds a < b; throws if comparable
    LabeledPoset disjoint_union(const LabeledPoset& other) const;  // other ids shifted

    uint64_t extension_count() const;
    std::vector<IntegralWord> linear_extensions(uint64_t cap = 2000000) const;

    std::string to_text() const;
    static LabeledPoset from_text(const std::string& text);

  private:
    std::vector<int> ids_;
    std::vector<OneForm> labels_;
    std::vector<uint32_t> above_;  // above_[i]: internal indices strictly greater than i
    int index_of(int id) const;
    friend class PosetBuilder;
};

// J(X) / I(X): sum over linear extensions of the word integrals. The empty
// poset evaluates to 1. max_elems guards runtime (hard cap 12).
Scalar eval_poset(const LabeledPoset& X, const EvalCtx& ctx, int max_elems = 0);

struct Diagram {
    LabeledPoset poset;
    std::string tag;
};

// Chain diagram of a value: slot j contributes a bullet labelled with the
// j-th kernel and k_j - 1 circles below it; slot 1 sits at the bottom.
Diagram chain_diagram(const Composition& k, const std::vector<Coef>& kernels);
Diagram chain_diagram_3(const Composition& k, const std::vector<int>& signs);

// Zigzag diagram whose blocks realize weak chains. Block j is a bullet
// K(eps_j) (or an omega form for the 3-family) with l_j - 1 circles below;
// the bottom of block j is covered by the bullet of block j+1.
Diagram squiggle_diagram(const Composition& l, const std::vector<Coef>& eps);
Diagram squiggle_diagram_3(const Composition& l, const std::vector<int>& eps);
// Arbitrary bullet forms (used for signed-root differences).
Diagram squiggle_diagram_general(const Composition& l, const std::vector<OneForm>& bullets);

// Squiggle with an extra Pow(n) vertex below the root bullet.
Diagram n_leg_diagram(int n, const Diagram& squiggle);

// Convolution shape: the value chain of (k, eta) extended by l1 circles at
// its bottom, with the squiggle of (l_2..l_s, eps_2..eps_s) attached below
// the bottom circle.
Diagram conv_shape_diagram(const Composition& k, const std::vector<Coef>& eta, int l1,
                           const Composition& l_tail, const std::vector<Coef>& eps_tail);
Diagram conv_shape_diagram_3(const Composition& k, const std::vector<int>& eta, int l1,
                             const Composition& l_tail, const std::vector<int>& eps_tail);

}  // namespace mzv

#endif
