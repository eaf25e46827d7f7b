#include "mzvlab/index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mzv {

void Composition::validate() const {
    for (int p : parts_)
        if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
}

long Composition::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
}

Composition Composition::parse(const std::string& text) {
    std::vector<int> parts;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        parts.push_back(std::stoi(tok));
    }
    return Composition(std::move(parts));
}

Composition Composition::concat(const Composition& o) const {
    std::vector<int> p = parts_;
    p.insert(p.end(), o.parts_.begin(), o.parts_.end());
    return Composition(std::move(p));
}

Composition Composition::reversed() const {
    std::vector<int> p(parts_.rbegin(), parts_.rend());
    return Composition(std::move(p));
}

std::string Composition::str() const {
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    return s;
}

PaddedComposition::PaddedComposition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
        if (p < 0) throw std::invalid_argument("padded composition parts must be >= 0");
}

PaddedComposition PaddedComposition::operator+(const PaddedComposition& o) const {
    if (o.depth() != depth()) throw std::invalid_argument("padded composition length mismatch");
    std::vector<int> p = parts_;
    for (size_t i = 0; i < p.size(); ++i) p[i] += o.parts_[i];
    return PaddedComposition(std::move(p));
}

PaddedComposition PaddedComposition::concat(const PaddedComposition& o) const {
    std::vector<int> p = parts_;
    p.insert(p.end(), o.parts_.begin(), o.parts_.end());
    return PaddedComposition(std::move(p));
}

Composition PaddedComposition::to_composition() const {
    return Composition(parts_);
}

LabelVector::LabelVector(std::vector<Coef> entries, LabelKind kind)
    : entries_(std::move(entries)), kind_(kind) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        const Coef& c = entries_[i];
        switch (kind_) {
            case LabelKind::Sign:
                if (!(c.is_real() && (c.re == 1 || c.re == -1)))
                    throw std::invalid_argument("sign label must be +1 or -1");
                break;
            case LabelKind::SignOrZeroFirst:
                if (i == 0) {
                    if (!(c.is_real() && (c.re == 0 || c.re == 1 || c.re == -1)))
                        throw std::invalid_argument("first label must be in {-1,0,+1}");
                } else if (!(c.is_real() && (c.re == 1 || c.re == -1))) {
                    throw std::invalid_argument("trailing labels must be +1 or -1");
                }
                break;
            case LabelKind::Disk:
                if (c.norm2() > 1)
                    throw std::invalid_argument("disk label must have |z| <= 1");
                break;
            case LabelKind::Free:
                break;
        }
    }
}

LabelVector LabelVector::signs(std::vector<int> s) {
    std::vector<Coef> e;
    e.reserve(s.size());
    for (int v : s) e.emplace_back(Rat(v));
    return LabelVector(std::move(e), LabelKind::Sign);
}

LabelVector LabelVector::sign_or_zero_first(std::vector<int> s) {
    std::vector<Coef> e;
    e.reserve(s.size());
    for (int v : s) e.emplace_back(Rat(v));
    return LabelVector(std::move(e), LabelKind::SignOrZeroFirst);
}

LabelVector LabelVector::disk(std::vector<Coef> entries) {
    return LabelVector(std::move(entries), LabelKind::Disk);
}

LabelVector LabelVector::free(std::vector<Coef> entries) {
    return LabelVector(std::move(entries), LabelKind::Free);
}

LabelVector LabelVector::ones(int d) {
    return signs(std::vector<int>(static_cast<size_t>(d), 1));
}

LabelVector LabelVector::parse_signs(const std::string& text) {
    std::vector<int> s;
    for (char c : text) {
        if (c == '+')
            s.push_back(1);
        else if (c == '-')
            s.push_back(-1);
        else if (c == '0')
            s.push_back(0);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad sign string: " + text);
    }
    bool has_zero = std::find(s.begin(), s.end(), 0) != s.end();
    return has_zero ? sign_or_zero_first(std::move(s)) : signs(std::move(s));
}

LabelVector LabelVector::parse_disk(const std::string& text) {
    std::vector<Coef> e;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        e.push_back(coef_from_string(tok));
    }
    return disk(std::move(e));
}

LabelVector LabelVector::slice_front(int j) const {
    if (j < 0 || j > size()) throw std::out_of_range("label slice");
    std::vector<Coef> e(entries_.begin(), entries_.begin() + j);
    return LabelVector(std::move(e), LabelKind::Free);
}

LabelVector LabelVector::slice_back_from(int i) const {
    if (i < 1 || i > size() + 1) throw std::out_of_range("label slice");
    std::vector<Coef> e;
    for (int j = size(); j >= i; --j) e.push_back(entries_[static_cast<size_t>(j - 1)]);
    return LabelVector(std::move(e), LabelKind::Free);
}

LabelVector LabelVector::reversed() const {
    std::vector<Coef> e(entries_.rbegin(), entries_.rend());
    return LabelVector(std::move(e), LabelKind::Free);
}

LabelVector LabelVector::concat(const LabelVector& o) const {
    std::vector<Coef> e = entries_;
    e.insert(e.end(), o.entries_.begin(), o.entries_.end());
    return LabelVector(std::move(e), LabelKind::Free);
}

bool LabelVector::all_pm_one() const {
    for (const Coef& c : entries_)
        if (!(c.is_real() && (c.re == 1 || c.re == -1))) return false;
    return true;
}

std::string LabelVector::str() const {
    if (all_pm_one()) {
        std::string s;
        for (const Coef& c : entries_) s += c.re == 1 ? '+' : '-';
        return s;
    }
    std::string s;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += entries_[i].str();
    }
    return s;
}

bool admissible(const Composition& k, const std::optional<LabelVector>& z) {
    if (!z) return !k.empty() && k.first() > 1;
    if (z->size() != k.depth()) throw std::invalid_argument("label/composition length mismatch");
    if (k.empty()) return true;
    return !(k.first() == 1 && (*z)[0].is_one());
}

Composition hoffman_dual(const Composition& m) {
    if (m.empty()) throw std::invalid_argument("Hoffman dual of empty composition");
    long w = m.weight();
    std::vector<char> in_sums(static_cast<size_t>(w), 0);  // indices 1..w-1
    long acc = 0;
    for (int j = 0; j + 1 < m.depth(); ++j) {
        acc += m[j];
        in_sums[static_cast<size_t>(acc)] = 1;
    }
    std::vector<int> dual;
    long prev = 0;
    for (long i = 1; i < w; ++i) {
        if (!in_sums[static_cast<size_t>(i)]) {
            dual.push_back(static_cast<int>(i - prev));
            prev = i;
        }
    }
    dual.push_back(static_cast<int>(w - prev));
    return Composition(std::move(dual));
}

Composition slice(const Composition& k, SliceMode mode, int i, int j) {
    if (i > j) return Composition();
    if (i < 1 || j > k.depth()) throw std::out_of_range("slice bounds");
    std::vector<int> p;
    if (mode == SliceMode::Forward)
        for (int t = i; t <= j; ++t) p.push_back(k[t - 1]);
    else
        for (int t = j; t >= i; --t) p.push_back(k[t - 1]);
    return Composition(std::move(p));
}

Composition take_front(const Composition& k, int i) { return slice(k, SliceMode::Forward, 1, i); }

Composition back_from(const Composition& k, int i) {
    return slice(k, SliceMode::Backward, i, k.depth());
}

LabelVector take_front(const LabelVector& x, int i) { return x.slice_front(i); }

LabelVector back_from(const LabelVector& x, int i) { return x.slice_back_from(i); }

LabelVector sign_transform(char kind, const LabelVector& e) {
    const int r = e.size();
    for (const Coef& c : e.entries())
        if (c.is_zero()) throw std::invalid_argument("sign_transform requires nonzero entries");

    if (kind == 'p' || kind == 'q' || kind == 'r') {
        if (!e.all_pm_one())
            throw std::invalid_argument("p/q/r require entries in {-1,+1}");
        if (r == 0) {
            LabelVector z;
            z.zero_marker_ = true;
            return z;
        }
        std::vector<Coef> out(static_cast<size_t>(r));
        if (kind == 'p') {
            Coef acc(Rat(1));
            for (int j = r - 1; j >= 0; --j) {
                acc = acc * e[j];
                out[static_cast<size_t>(j)] = acc;  // e_j e_{j+1} ... e_r
            }
        } else if (kind == 'q') {
            // entry j = e_1 e_2 ... e_{r-j+1}
            std::vector<Coef> pre(static_cast<size_t>(r));
            Coef acc(Rat(1));
            for (int j = 0; j < r; ++j) {
                acc = acc * e[j];
                pre[static_cast<size_t>(j)] = acc;
            }
            for (int j = 0; j < r; ++j) out[static_cast<size_t>(j)] = pre[static_cast<size_t>(r - 1 - j)];
        } else {
            Coef acc(Rat(1));
            for (int j = 0; j < r; ++j) {
                acc = acc * e[j];
                out[static_cast<size_t>(j)] = acc;  // e_1 ... e_j
            }
        }
        return LabelVector(std::move(out), LabelKind::Sign);
    }

    if (kind == 'u' || kind == 'w') {
        std::vector<Coef> out(static_cast<size_t>(r));
        if (kind == 'u') {
            for (int j = 0; j + 1 < r; ++j) out[static_cast<size_t>(j)] = e[j] / e[j + 1];
            if (r > 0) out[static_cast<size_t>(r - 1)] = e[r - 1];
        } else {
            if (r > 0) out[0] = e[0];
            for (int j = 1; j < r; ++j) out[static_cast<size_t>(j)] = e[j] / e[j - 1];
        }
        return LabelVector(std::move(out), LabelKind::Free);
    }

    if (kind == 'v' || kind == 'y') {
        if (r == 0) throw std::invalid_argument("v/y need at least one entry");
        std::vector<Coef> out(static_cast<size_t>(r - 1));
        if (kind == 'v')
            for (int j = 0; j + 1 < r; ++j) out[static_cast<size_t>(j)] = e[j] / e[j + 1];
        else
            for (int j = 1; j < r; ++j) out[static_cast<size_t>(j - 1)] = e[j] / e[j - 1];
        return LabelVector(std::move(out), LabelKind::Disk);
    }

    throw std::invalid_argument(std::string("unknown sign transform: ") + kind);
}

LabelVector scalar_scale(const Coef& a, const LabelVector& e) {
    std::vector<Coef> out;
    out.reserve(static_cast<size_t>(e.size()));
    for (const Coef& c : e.entries()) out.push_back(a * c);
    LabelKind k = LabelKind::Free;
    if (e.all_pm_one() && a.is_real() && (a.re == 1 || a.re == -1)) k = LabelKind::Sign;
    return LabelVector(std::move(out), k);
}

}  // namespace mzv
