#ifndef MZVLAB_INDEX_HPP
#define MZVLAB_INDEX_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mzvlab/rational.hpp"

namespace mzv {

// Finite sequence of positive integers. Weight = sum, depth = length.
class Composition {
  public:
    Composition() = default;
    Composition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) { validate(); }

    static Composition parse(const std::string& text);  // "2,1,1"; "" = empty
    static Composition ones(int d) { return Composition(std::vector<int>(d, 1)); }

    const std::vector<int>& parts() const { return parts_; }
    int depth() const { return static_cast<int>(parts_.size()); }
    long weight() const;
    bool empty() const { return parts_.empty(); }
    int operator[](int i) const { return parts_.at(static_cast<size_t>(i)); }
    int first() const { return parts_.at(0); }

    bool operator==(const Composition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Composition& o) const { return parts_ != o.parts_; }

    Composition concat(const Composition& o) const;
    Composition reversed() const;
    std::string str() const;

  private:
    void validate() const;
    std::vector<int> parts_;
};

// Companion for the zero-padded index arithmetic some identity evaluators
// need. Parts >= 0 here; convert to a Composition only once every part is
// positive. Value evaluators never consume this type.
class PaddedComposition {
  public:
    PaddedComposition() = default;
    explicit PaddedComposition(std::vector<int> parts);
    PaddedComposition(std::initializer_list<int> parts)
        : PaddedComposition(std::vector<int>(parts)) {}

    static PaddedComposition zeros(int d) { return PaddedComposition(std::vector<int>(d, 0)); }

    const std::vector<int>& parts() const { return parts_; }
    int depth() const { return static_cast<int>(parts_.size()); }

    PaddedComposition operator+(const PaddedComposition& o) const;
    PaddedComposition concat(const PaddedComposition& o) const;
    // Fails if any part is still zero.
    Composition to_composition() const;

  private:
    std::vector<int> parts_;
};

enum class LabelKind { Sign, SignOrZeroFirst, Disk, Free };

// Sequence of scalar labels decorating a composition.
class LabelVector {
  public:
    LabelVector() : kind_(LabelKind::Sign) {}
    LabelVector(std::vector<Coef> entries, LabelKind kind);

    static LabelVector signs(std::vector<int> s);               // entries in {-1,+1}
    static LabelVector sign_or_zero_first(std::vector<int> s);  // first in {-1,0,+1}
    static LabelVector disk(std::vector<Coef> entries);         // |entry| <= 1 enforced
    static LabelVector free(std::vector<Coef> entries);         // unconstrained entries
    static LabelVector ones(int d);
    static LabelVector parse_signs(const std::string& text);  // "+-+"
    static LabelVector parse_disk(const std::string& text);   // "1/2,0.3,-1"

    const std::vector<Coef>& entries() const { return entries_; }
    LabelKind kind() const { return kind_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    const Coef& operator[](int i) const { return entries_.at(static_cast<size_t>(i)); }

    // Marks the p/q/r empty-input convention; never consumed numerically.
    bool zero_marker() const { return zero_marker_; }

    LabelVector slice_front(int j) const;                    // entries 1..j
    LabelVector slice_back_from(int i) const;                // (e_r, ..., e_i)
    LabelVector reversed() const;
    LabelVector concat(const LabelVector& o) const;
    bool all_pm_one() const;
    std::string str() const;

    bool operator==(const LabelVector& o) const {
        return entries_ == o.entries_ && zero_marker_ == o.zero_marker_;
    }

  private:
    std::vector<Coef> entries_;
    LabelKind kind_;
    bool zero_marker_ = false;
    friend LabelVector sign_transform(char, const LabelVector&);
};

enum class SliceMode { Forward, Backward };

// Admissibility per the convergence rule: without labels, nonempty with
// first part > 1; with labels, (k1, z1) != (1, 1).
bool admissible(const Composition& k, const std::optional<LabelVector>& z = std::nullopt);

// Hoffman dual: the composition whose partial-sum set complements the
// input's inside {1, ..., weight-1}.
Composition hoffman_dual(const Composition& m);

// slice(k, Forward, i, j)  = (k_i, ..., k_j); Backward = (k_j, ..., k_i);
// empty when i > j. 1-based, bounds checked against [1, depth].
Composition slice(const Composition& k, SliceMode mode, int i, int j);

// Single-subscript arrow shorthands: take_front(k, i) = (k_1..k_i),
// back_from(k, i) = (k_p, ..., k_i).
Composition take_front(const Composition& k, int i);
Composition back_from(const Composition& k, int i);
LabelVector take_front(const LabelVector& x, int i);
LabelVector back_from(const LabelVector& x, int i);

// kind in {'p','q','r','u','v','w','y'}. p/q/r require nonzero sign entries
// and map the empty vector to the zero-marker; u/w keep length, v/y drop one.
LabelVector sign_transform(char kind, const LabelVector& e);

LabelVector scalar_scale(const Coef& a, const LabelVector& e);

}  // namespace mzv

#endif
