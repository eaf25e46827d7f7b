#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mzvlab/index.hpp"

using namespace mzv;

namespace {

std::vector<Composition> all_compositions_up_to_weight(int wmax) {
    std::vector<Composition> out;
    for (int w = 1; w <= wmax; ++w) {
        // compositions of w: 2^{w-1}
        for (long mask = 0; mask < (1L << (w - 1)); ++mask) {
            std::vector<int> parts;
            int cur = 1;
            for (int pos = 0; pos < w - 1; ++pos) {
                if (mask & (1L << pos)) {
                    parts.push_back(cur);
                    cur = 1;
                } else {
                    ++cur;
                }
            }
            parts.push_back(cur);
            out.emplace_back(parts);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("composition basics") {
    Composition k{2, 1, 1};
    CHECK(k.weight() == 4);
    CHECK(k.depth() == 3);
    CHECK(Composition::parse("2,1,1") == k);
    CHECK(k.str() == "2,1,1");
    CHECK(Composition().weight() == 0);
    CHECK_THROWS(Composition({0, 1}));
    CHECK(k.reversed() == Composition{1, 1, 2});
}

TEST_CASE("padded compositions combine and validate") {
    PaddedComposition e({0, 0, 1, 0});
    PaddedComposition i({1, 2, 0, 1});
    PaddedComposition ones({1, 1, 1, 1});
    Composition c = (e + i + ones).to_composition();
    CHECK(c == Composition{2, 3, 2, 2});
    CHECK_THROWS((e + e).to_composition());  // zero part remains
    CHECK_THROWS(PaddedComposition({-1}));
}

TEST_CASE("admissibility") {
    CHECK(admissible(Composition{2, 1}));
    CHECK_FALSE(admissible(Composition{1}));
    CHECK_FALSE(admissible(Composition{}));
    CHECK_FALSE(admissible(Composition{1}, LabelVector::signs({1})));
    CHECK(admissible(Composition{1}, LabelVector::signs({-1})));
    CHECK(admissible(Composition{2}, LabelVector::signs({1})));
    CHECK_THROWS(admissible(Composition{2, 1}, LabelVector::signs({1})));
}

TEST_CASE("hoffman dual examples") {
    CHECK(hoffman_dual(Composition{1, 1, 2, 1}) == Composition{3, 2});
    CHECK(hoffman_dual(Composition{1, 2, 1, 1}) == Composition{2, 3});
    CHECK(hoffman_dual(Composition{1}) == Composition{1});
    CHECK_THROWS(hoffman_dual(Composition{}));
}

TEST_CASE("hoffman dual involution and weight, exhaustive to weight 12") {
    for (const Composition& m : all_compositions_up_to_weight(12)) {
        Composition d = hoffman_dual(m);
        CHECK(d.weight() == m.weight());
        CHECK(hoffman_dual(d) == m);
    }
}

TEST_CASE("slices") {
    Composition k{5, 4, 3, 2};
    CHECK(slice(k, SliceMode::Forward, 2, 3) == Composition{4, 3});
    CHECK(slice(k, SliceMode::Backward, 2, 3) == Composition{3, 4});
    CHECK(slice(Composition{5, 4}, SliceMode::Forward, 2, 1) == Composition{});
    CHECK(take_front(k, 2) == Composition{5, 4});
    CHECK(back_from(k, 2) == Composition{2, 3, 4});
    CHECK_THROWS(slice(k, SliceMode::Forward, 0, 2));
    CHECK_THROWS(slice(k, SliceMode::Forward, 1, 5));
    SUBCASE("concatenation property") {
        for (int j = 0; j <= k.depth(); ++j)
            CHECK(take_front(k, j).concat(slice(k, SliceMode::Forward, j + 1, k.depth())) == k);
    }
}

TEST_CASE("sign transforms match their defining products") {
    LabelVector e = LabelVector::signs({-1, 1, -1});
    LabelVector p = sign_transform('p', e);
    CHECK(p.entries()[0] == Coef(Rat(1)));
    CHECK(p.entries()[1] == Coef(Rat(-1)));
    CHECK(p.entries()[2] == Coef(Rat(-1)));

    LabelVector w = sign_transform('w', LabelVector::disk({Coef(Rat(7, 10))}));
    CHECK(w.entries()[0] == Coef(Rat(7, 10)));

    LabelVector u = sign_transform('u', LabelVector::disk({Coef(Rat(1, 2)), Coef(Rat(1, 4))}));
    CHECK(u.entries()[0] == Coef(Rat(2)));
    CHECK(u.entries()[1] == Coef(Rat(1, 4)));

    CHECK_THROWS(sign_transform('p', LabelVector::disk({Coef(Rat(1, 2))})));
    CHECK_THROWS(sign_transform('v', LabelVector()));
    CHECK_THROWS(sign_transform('u', LabelVector::disk({Coef(Rat(0)), Coef(Rat(1))})));
}

TEST_CASE("p/q/r empty convention carries the zero marker") {
    LabelVector z = sign_transform('p', LabelVector::signs({}));
    CHECK(z.empty());
    CHECK(z.zero_marker());
}

TEST_CASE("telescoping and reversal properties, exhaustive over signs") {
    for (int r = 1; r <= 6; ++r) {
        for (long mask = 0; mask < (1L << r); ++mask) {
            std::vector<int> signs;
            for (int i = 0; i < r; ++i) signs.push_back(mask & (1L << i) ? 1 : -1);
            LabelVector e = LabelVector::signs(signs);

            LabelVector w = sign_transform('w', e);
            Coef run(Rat(1));
            for (int j = 0; j < r; ++j) {
                run = run * w[j];
                CHECK(run == e[j]);  // prefix products of w recover eta_j
            }
            LabelVector u = sign_transform('u', e);
            for (int j = 0; j < r; ++j) {
                Coef prod(Rat(1));
                for (int i = j; i < r; ++i) prod = prod * u[i];
                CHECK(prod == e[j]);  // suffix products of u recover eta_j
            }
            // q = p composed with input reversal
            LabelVector q = sign_transform('q', e);
            LabelVector prev = sign_transform('p', e.reversed());
            for (int j = 0; j < r; ++j) CHECK(q[j] == prev[j]);
            // outputs stay in +-1
            CHECK(sign_transform('p', e).all_pm_one());
            CHECK(sign_transform('r', e).all_pm_one());
        }
    }
}

TEST_CASE("scalar scale") {
    LabelVector e = LabelVector::signs({1, -1});
    LabelVector s = scalar_scale(Coef(Rat(-1)), e);
    CHECK(s[0] == Coef(Rat(-1)));
    CHECK(s[1] == Coef(Rat(1)));
    CHECK(scalar_scale(Coef(Rat(1)), e) == LabelVector::signs({1, -1}));
    // eta1 eta2 * q((eps2)) with all signs -1
    LabelVector q = sign_transform('q', LabelVector::signs({-1}));
    LabelVector scaled = scalar_scale(Coef(Rat(1)), q);
    CHECK(scaled[0] == Coef(Rat(-1)));
}

TEST_CASE("label vector parsing and kinds") {
    LabelVector s = LabelVector::parse_signs("+-+");
    CHECK(s.size() == 3);
    CHECK(s.str() == "+-+");
    LabelVector d = LabelVector::parse_disk("1/2,0.3,-1");
    CHECK(d[1] == Coef(Rat(3, 10)));
    CHECK_THROWS(LabelVector::disk({Coef(Rat(2))}));  // outside the disk
    CHECK_THROWS(LabelVector::signs({2}));
    CHECK_THROWS(LabelVector::sign_or_zero_first({1, 0}));  // zero after first
    LabelVector z = LabelVector::sign_or_zero_first({0, 1, -1});
    CHECK(z.size() == 3);
}
