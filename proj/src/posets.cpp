#include "mzvlab/posets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mzv {

namespace {

bool form_singular_at_one(const OneForm& f) {
    switch (f.kind) {
        case FormKind::Kernel:
            return f.param.is_one();
        case FormKind::Wminus:
        case FormKind::Wplus:
            return true;
        case FormKind::CauchyShift:
            return f.param.is_one();
        default:
            return false;
    }
}

bool form_singular_at_zero(const OneForm& f) {
    switch (f.kind) {
        case FormKind::Omega0:
            return true;
        case FormKind::CauchyShift:
            return f.param.is_zero();
        default:
            return false;
    }
}

}  // namespace

LabeledPoset::LabeledPoset(std::vector<int> ids, std::vector<OneForm> labels,
                           std::vector<std::pair<int, int>> relations)
    : ids_(std::move(ids)), labels_(std::move(labels)) {
    const int n = static_cast<int>(ids_.size());
    if (n > kMaxElements) throw std::invalid_argument("poset exceeds the 12-element cap");
    if (static_cast<int>(labels_.size()) != n)
        throw std::invalid_argument("label map must be total");
    {
        std::vector<int> sorted = ids_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("duplicate element ids");
    }
    above_.assign(static_cast<size_t>(n), 0);
    for (auto [a, b] : relations) {
        int ia = index_of(a), ib = index_of(b);
        if (ia == ib) throw std::invalid_argument("strict relation on equal elements");
        above_[static_cast<size_t>(ia)] |= 1u << ib;
    }
    // transitive closure
    for (int pass = 0; pass < n; ++pass) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            uint32_t acc = above_[static_cast<size_t>(i)];
            uint32_t m = acc;
            while (m) {
                int j = __builtin_ctz(m);
                m &= m - 1;
                acc |= above_[static_cast<size_t>(j)];
            }
            if (acc != above_[static_cast<size_t>(i)]) {
                above_[static_cast<size_t>(i)] = acc;
                changed = true;
            }
        }
        if (!changed) break;
    }
    for (int i = 0; i < n; ++i)
        if (above_[static_cast<size_t>(i)] & (1u << i))
            throw std::invalid_argument("order relation contains a cycle");
}

int LabeledPoset::index_of(int id) const {
    for (size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == id) return static_cast<int>(i);
    throw std::invalid_argument("unknown element id " + std::to_string(id));
}

const OneForm& LabeledPoset::label_of(int id) const {
    return labels_[static_cast<size_t>(index_of(id))];
}

bool LabeledPoset::less(int a, int b) const {
    int ia = index_of(a), ib = index_of(b);
    return (above_[static_cast<size_t>(ia)] >> ib) & 1u;
}

std::vector<std::pair<int, int>> LabeledPoset::cover_pairs() const {
    // a < b is a cover when no c has a < c < b
    std::vector<std::pair<int, int>> out;
    const int n = size();
    for (int a = 0; a < n; ++a) {
        uint32_t up = above_[static_cast<size_t>(a)];
        uint32_t m = up;
        while (m) {
            int b = __builtin_ctz(m);
            m &= m - 1;
            uint32_t between = up & ~(1u << b);
            bool cover = true;
            uint32_t t = between;
            while (t) {
                int c = __builtin_ctz(t);
                t &= t - 1;
                if ((above_[static_cast<size_t>(c)] >> b) & 1u) {
                    cover = false;
                    break;
                }
            }
            if (cover) out.emplace_back(ids_[static_cast<size_t>(a)], ids_[static_cast<size_t>(b)]);
        }
    }
    return out;
}

std::optional<int> LabeledPoset::admissibility_witness() const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        // minimal: nothing below i, i.e. i appears in nobody's ... below means
        // exists j with j < i: j's above contains i
        bool has_below = false, has_above = above_[static_cast<size_t>(i)] != 0;
        for (int j = 0; j < n && !has_below; ++j)
            if ((above_[static_cast<size_t>(j)] >> i) & 1u) has_below = true;
        if (!has_below && form_singular_at_one(labels_[static_cast<size_t>(i)]))
            return ids_[static_cast<size_t>(i)];
        if (!has_above && form_singular_at_zero(labels_[static_cast<size_t>(i)]))
            return ids_[static_cast<size_t>(i)];
    }
    return std::nullopt;
}

LabeledPoset LabeledPoset::adjoin(int a, int b) const {
    if (comparable(a, b)) throw std::invalid_argument("elements already comparable");
    auto rel = cover_pairs();
    rel.emplace_back(a, b);
    return LabeledPoset(ids_, labels_, std::move(rel));
}

LabeledPoset LabeledPoset::disjoint_union(const LabeledPoset& other) const {
    int shift = 0;
    for (int id : ids_) shift = std::max(shift, id + 1);
    std::vector<int> ids = ids_;
    std::vector<OneForm> labels = labels_;
    auto rel = cover_pairs();
    for (int id : other.ids_) ids.push_back(id + shift);
    for (const OneForm& f : other.labels_) labels.push_back(f);
    for (auto [a, b] : other.cover_pairs()) rel.emplace_back(a + shift, b + shift);
    return LabeledPoset(std::move(ids), std::move(labels), std::move(rel));
}

uint64_t LabeledPoset::extension_count() const {
    const int n = size();
    std::unordered_map<uint32_t, uint64_t> memo;
    memo.reserve(1u << n);
    // count orders of removing maximal elements from the remaining set
    std::function<uint64_t(uint32_t)> go = [&](uint32_t mask) -> uint64_t {
        if (mask == 0) return 1;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        uint64_t total = 0;
        uint32_t m = mask;
        while (m) {
            int i = __builtin_ctz(m);
            m &= m - 1;
            if ((above_[static_cast<size_t>(i)] & mask) == 0)  // maximal in mask
                total += go(mask & ~(1u << i));
        }
        memo.emplace(mask, total);
        return total;
    };
    return go(n == 32 ? ~0u : ((1u << n) - 1));
}

std::vector<IntegralWord> LabeledPoset::linear_extensions(uint64_t cap) const {
    const int n = size();
    uint64_t cnt = extension_count();
    if (cnt > cap) throw std::domain_error("linear extension count exceeds the guard");
    std::vector<IntegralWord> out;
    out.reserve(static_cast<size_t>(cnt));
    std::vector<OneForm> word;
    word.reserve(static_cast<size_t>(n));
    std::function<void(uint32_t)> go = [&](uint32_t mask) {
        if (mask == 0) {
            IntegralWord w;
            w.forms = word;
            out.push_back(std::move(w));
            return;
        }
        uint32_t m = mask;
        while (m) {
            int i = __builtin_ctz(m);
            m &= m - 1;
            if ((above_[static_cast<size_t>(i)] & mask) == 0) {
                word.push_back(labels_[static_cast<size_t>(i)]);
                go(mask & ~(1u << i));
                word.pop_back();
            }
        }
    };
    go(n == 0 ? 0 : (1u << n) - 1);
    return out;
}

std::string LabeledPoset::to_text() const {
    std::ostringstream os;
    for (size_t i = 0; i < ids_.size(); ++i)
        os << ids_[i] << ": " << labels_[i].str() << "\n";
    for (auto [a, b] : cover_pairs()) os << a << "<" << b << "\n";
    return os.str();
}

LabeledPoset LabeledPoset::from_text(const std::string& text) {
    std::vector<int> ids;
    std::vector<OneForm> labels;
    std::vector<std::pair<int, int>> rel;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        // strip comments and whitespace-only lines
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto notspace = line.find_first_not_of(" \t\r");
        if (notspace == std::string::npos) continue;
        auto colon = line.find(':');
        auto lt = line.find('<');
        if (colon != std::string::npos && (lt == std::string::npos || colon < lt)) {
            int id = std::stoi(line.substr(0, colon));
            std::string lab = line.substr(colon + 1);
            auto b = lab.find_first_not_of(" \t");
            auto e = lab.find_last_not_of(" \t\r");
            ids.push_back(id);
            labels.push_back(OneForm::parse(lab.substr(b, e - b + 1)));
        } else if (lt != std::string::npos) {
            int a = std::stoi(line.substr(0, lt));
            int b = std::stoi(line.substr(lt + 1));
            rel.emplace_back(a, b);
        } else {
            throw std::invalid_argument("bad poset line: " + line);
        }
    }
    return LabeledPoset(std::move(ids), std::move(labels), std::move(rel));
}

// ---------------------------------------------------------------------------

namespace {

std::mutex g_word_cache_mu;
std::map<std::string, Scalar>& word_cache() {
    static std::map<std::string, Scalar> m;
    return m;
}

Scalar eval_extension_word(const IntegralWord& w, const EvalCtx& ctx) {
    std::string key = w.key() + "|" + std::to_string(ctx.prec);
    {
        std::lock_guard<std::mutex> lock(g_word_cache_mu);
        auto it = word_cache().find(key);
        if (it != word_cache().end()) return it->second;
    }
    Scalar v = eval_word_series(w, ctx);
    std::lock_guard<std::mutex> lock(g_word_cache_mu);
    word_cache().emplace(key, v);
    return v;
}

}  // namespace

Scalar eval_poset(const LabeledPoset& X, const EvalCtx& ctx, int max_elems) {
    int guard = max_elems > 0 ? max_elems : ctx.poset_max;
    guard = std::min(guard, LabeledPoset::kMaxElements);
    if (X.size() > guard) throw std::domain_error("poset exceeds the element guard");
    if (X.size() == 0) return Scalar::float_of(Rat(1), ctx.prec);
    if (auto w = X.admissibility_witness())
        throw std::domain_error("inadmissible poset (element " + std::to_string(*w) + ")");
    Scalar total = Scalar::float_of(Rat(0), ctx.prec);
    for (const IntegralWord& w : X.linear_extensions())
        total = total + eval_extension_word(w, ctx);
    return total;
}

// ---------------------------------------------------------------------------
// Diagram builders. All builders lay elements out in word order (greatest
// element first) and chain covers accordingly.
// ---------------------------------------------------------------------------

namespace {

struct Layout {
    std::vector<OneForm> word_order;                // index 0 = greatest
    std::vector<std::pair<int, int>> extra_covers;  // (lower, greater) indices
};

Diagram finish(Layout lay, const std::string& tag) {
    const int n = static_cast<int>(lay.word_order.size());
    std::vector<int> ids(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = i;
    std::vector<std::pair<int, int>> rel;
    for (auto [lo, hi] : lay.extra_covers) rel.emplace_back(lo, hi);
    return Diagram{LabeledPoset(ids, lay.word_order, rel), tag};
}

// value chain in word order with per-slot bullet labels
Layout chain_layout(const Composition& k, const std::vector<OneForm>& bullets) {
    Layout lay;
    const int r = k.depth();
    for (int j = r - 1; j >= 0; --j) {
        lay.word_order.push_back(bullets[static_cast<size_t>(j)]);
        for (int t = 1; t < k[j]; ++t) lay.word_order.push_back(OneForm::omega0());
    }
    for (size_t i = 1; i < lay.word_order.size(); ++i)
        lay.extra_covers.emplace_back(static_cast<int>(i), static_cast<int>(i - 1));
    return lay;
}

// fence: block j = bullet + (l_j - 1) circles below; bottom of block j is
// covered by the bullet of block j+1. Returns (layout, index of root bullet).
std::pair<Layout, int> squiggle_layout(const Composition& l, const std::vector<OneForm>& bullets) {
    Layout lay;
    const int s = l.depth();
    int prev_bottom = -1;
    int root = -1;
    for (int j = 0; j < s; ++j) {
        int b = static_cast<int>(lay.word_order.size());
        lay.word_order.push_back(bullets[static_cast<size_t>(j)]);
        if (j == 0) root = b;
        int bottom = b;
        for (int t = 1; t < l[j]; ++t) {
            int u = static_cast<int>(lay.word_order.size());
            lay.word_order.push_back(OneForm::omega0());
            lay.extra_covers.emplace_back(u, bottom);  // u < bottom
            bottom = u;
        }
        if (prev_bottom >= 0) lay.extra_covers.emplace_back(prev_bottom, b);  // prev_bottom < b
        prev_bottom = bottom;
    }
    return {lay, root};
}

std::vector<OneForm> kernel_bullets(const std::vector<Coef>& eps) {
    std::vector<OneForm> out;
    out.reserve(eps.size());
    for (const Coef& e : eps) out.push_back(OneForm::kernel(e));
    return out;
}

std::vector<OneForm> omega_bullets(const std::vector<int>& signs) {
    std::vector<OneForm> out;
    out.reserve(signs.size());
    for (int s : signs) out.push_back(OneForm::w(s));
    return out;
}

Layout conv_layout(const Composition& k, const std::vector<OneForm>& kb, int l1,
                   const Composition& lt, const std::vector<OneForm>& lb) {
    if (l1 < 1) throw std::invalid_argument("l1 must be >= 1");
    Layout lay = chain_layout(k, kb);
    for (int t = 0; t < l1; ++t) {
        int u = static_cast<int>(lay.word_order.size());
        lay.word_order.push_back(OneForm::omega0());
        if (u > 0) lay.extra_covers.emplace_back(u, u - 1);
    }
    int backbone_min = static_cast<int>(lay.word_order.size()) - 1;
    if (!lt.empty()) {
        auto [sq, root] = squiggle_layout(lt, lb);
        int off = static_cast<int>(lay.word_order.size());
        for (const OneForm& f : sq.word_order) lay.word_order.push_back(f);
        for (auto [lo, hi] : sq.extra_covers) lay.extra_covers.emplace_back(lo + off, hi + off);
        lay.extra_covers.emplace_back(backbone_min, root + off);  // backbone_min < root
    }
    return lay;
}

}  // namespace

Diagram chain_diagram(const Composition& k, const std::vector<Coef>& kernels) {
    if (static_cast<int>(kernels.size()) != k.depth())
        throw std::invalid_argument("kernel count mismatch");
    return finish(chain_layout(k, kernel_bullets(kernels)),
                  "chain(" + k.str() + ")");
}

Diagram chain_diagram_3(const Composition& k, const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != k.depth())
        throw std::invalid_argument("sign count mismatch");
    return finish(chain_layout(k, omega_bullets(signs)), "chain3(" + k.str() + ")");
}

Diagram squiggle_diagram(const Composition& l, const std::vector<Coef>& eps) {
    if (static_cast<int>(eps.size()) != l.depth())
        throw std::invalid_argument("label count mismatch");
    auto [lay, root] = squiggle_layout(l, kernel_bullets(eps));
    (void)root;
    return finish(std::move(lay), "squiggle(" + l.str() + ")");
}

Diagram squiggle_diagram_3(const Composition& l, const std::vector<int>& eps) {
    if (static_cast<int>(eps.size()) != l.depth())
        throw std::invalid_argument("sign count mismatch");
    auto [lay, root] = squiggle_layout(l, omega_bullets(eps));
    (void)root;
    return finish(std::move(lay), "squiggle3(" + l.str() + ")");
}

Diagram squiggle_diagram_general(const Composition& l, const std::vector<OneForm>& bullets) {
    if (static_cast<int>(bullets.size()) != l.depth())
        throw std::invalid_argument("bullet count mismatch");
    auto [lay, root] = squiggle_layout(l, bullets);
    (void)root;
    return finish(std::move(lay), "squiggle*(" + l.str() + ")");
}

Diagram n_leg_diagram(int n, const Diagram& squiggle) {
    if (n < 1) throw std::invalid_argument("leg exponent must be >= 1");
    // rebuild: new Pow vertex below the squiggle root (the root is element 0
    // in builder layouts)
    const LabeledPoset& X = squiggle.poset;
    std::vector<int> ids = X.ids();
    std::vector<OneForm> labels;
    for (int id : ids) labels.push_back(X.label_of(id));
    auto rel = X.cover_pairs();
    int leg = 0;
    for (int id : ids) leg = std::max(leg, id + 1);
    ids.push_back(leg);
    labels.push_back(OneForm::pow(n));
    rel.emplace_back(leg, ids.front());  // leg < root
    return Diagram{LabeledPoset(std::move(ids), std::move(labels), std::move(rel)),
                   "leg(" + std::to_string(n) + ";" + squiggle.tag + ")"};
}

Diagram conv_shape_diagram(const Composition& k, const std::vector<Coef>& eta, int l1,
                           const Composition& l_tail, const std::vector<Coef>& eps_tail) {
    if (static_cast<int>(eta.size()) != k.depth() ||
        static_cast<int>(eps_tail.size()) != l_tail.depth())
        throw std::invalid_argument("label count mismatch");
    return finish(conv_layout(k, kernel_bullets(eta), l1, l_tail, kernel_bullets(eps_tail)),
                  "conv(" + k.str() + ";" + std::to_string(l1) + "," + l_tail.str() + ")");
}

Diagram conv_shape_diagram_3(const Composition& k, const std::vector<int>& eta, int l1,
                             const Composition& l_tail, const std::vector<int>& eps_tail) {
    if (static_cast<int>(eta.size()) != k.depth() ||
        static_cast<int>(eps_tail.size()) != l_tail.depth())
        throw std::invalid_argument("label count mismatch");
    return finish(conv_layout(k, omega_bullets(eta), l1, l_tail, omega_bullets(eps_tail)),
                  "conv3(" + k.str() + ";" + std::to_string(l1) + "," + l_tail.str() + ")");
}

}  // namespace mzv
