#ifndef MZV_TEST_ORACLE_HELPERS_HPP
#define MZV_TEST_ORACLE_HELPERS_HPP

// Brute-force reference implementations used as independent oracles. These
// enumerate index chains explicitly and never share code with the library
// evaluation paths.

#include <functional>
#include <vector>

#include "mzvlab/index.hpp"
#include "mzvlab/rational.hpp"

namespace oracle {

using mzv::Composition;
using mzv::Rat;

inline void chains(long n, int depth, bool strict,
                   const std::function<void(const std::vector<long>&)>& visit) {
    std::vector<long> idx(static_cast<size_t>(depth));
    std::function<void(int, long)> go = [&](int pos, long hi) {
        if (pos == depth) {
            visit(idx);
            return;
        }
        for (long v = 1; v <= hi; ++v) {
            idx[static_cast<size_t>(pos)] = v;
            go(pos + 1, strict ? v - 1 : v);
        }
    };
    go(0, n);
}

// multiple harmonic (star) sum with rational slot variables and integer shift
inline Rat naive_zeta_n(long n, const Composition& k, const std::vector<Rat>& x, long a,
                        bool star) {
    Rat total(0);
    if (k.depth() == 0) return Rat(1);
    chains(n, k.depth(), !star, [&](const std::vector<long>& idx) {
        Rat term(1);
        for (int j = 0; j < k.depth(); ++j) {
            long m = idx[static_cast<size_t>(j)] + a;
            Rat p(1);
            for (int t = 0; t < k[j]; ++t) p *= m;
            Rat xp(1);
            const Rat& xj = x.empty() ? Rat(1) : x[static_cast<size_t>(j)];
            for (long t = 0; t < m; ++t) xp *= xj;
            term *= xp / p;
        }
        total += term;
    });
    return total;
}

inline Rat naive_t_n(long n, const Composition& k, bool star) {
    Rat total(0);
    if (k.depth() == 0) return Rat(1);
    chains(n, k.depth(), !star, [&](const std::vector<long>& idx) {
        Rat term(1);
        for (int j = 0; j < k.depth(); ++j) {
            long m = 2 * idx[static_cast<size_t>(j)] - 1;
            Rat p(1);
            for (int t = 0; t < k[j]; ++t) p *= m;
            term /= p;
        }
        total += term;
    });
    return total;
}

inline Rat naive_t_star_x(long n, const Composition& k, const Rat& x) {
    Rat total(0);
    if (k.depth() == 0) return Rat(1);
    chains(n, k.depth(), false, [&](const std::vector<long>& idx) {
        Rat term(1);
        for (int j = 0; j < k.depth(); ++j) {
            long m = 2 * idx[static_cast<size_t>(j)] - 1;
            Rat p(1);
            for (int t = 0; t < k[j]; ++t) p *= m;
            term /= p;
        }
        long inner = 2 * idx.back() - 1;
        Rat xp(1);
        for (long t = 0; t < inner; ++t) xp *= x;
        total += term * xp;
    });
    return total;
}

inline Rat naive_m_n(long n, const Composition& k, const std::vector<int>& eps, bool star) {
    Rat total(0);
    if (k.depth() == 0) return Rat(1);
    chains(n, k.depth(), !star, [&](const std::vector<long>& idx) {
        Rat term(1);
        for (int j = 0; j < k.depth(); ++j) {
            long m = idx[static_cast<size_t>(j)];
            long num = (m % 2 == 0) ? 1 + eps[static_cast<size_t>(j)]
                                    : 1 - eps[static_cast<size_t>(j)];
            if (num == 0) {
                term = Rat(0);
                break;
            }
            Rat p(1);
            for (int t = 0; t < k[j]; ++t) p *= m;
            term *= Rat(num) / p;
        }
        total += term;
    });
    return total;
}

// parity-coupled weak chain with reference index n_0 = n
inline Rat naive_m_chain(long n, const Composition& m, const std::vector<int>& eps,
                         const Rat& x) {
    Rat total(0);
    if (m.depth() == 0) {
        Rat xp(1);
        for (long t = 0; t < n; ++t) xp *= x;
        return xp;  // by convention the empty chain carries x^{n}
    }
    chains(n, m.depth(), false, [&](const std::vector<long>& idx) {
        Rat term(1);
        long prev = n;
        for (int j = 0; j < m.depth(); ++j) {
            long mj = idx[static_cast<size_t>(j)];
            long num = ((prev + mj) % 2 == 0) ? 1 + eps[static_cast<size_t>(j)]
                                              : 1 - eps[static_cast<size_t>(j)];
            if (num == 0) {
                term = Rat(0);
                break;
            }
            Rat p(1);
            for (int t = 0; t < m[j]; ++t) p *= mj;
            term *= Rat(num) / p;
            prev = mj;
        }
        if (term != 0) {
            Rat xp(1);
            for (long t = 0; t < idx.back(); ++t) xp *= x;
            term *= xp;
        }
        total += term;
    });
    return total;
}

}  // namespace oracle

#endif
