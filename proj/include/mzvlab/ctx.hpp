#ifndef MZVLAB_CTX_HPP
#define MZVLAB_CTX_HPP

namespace mzv {

// Evaluation context threaded through the numeric layers.
struct EvalCtx {
    long prec = 128;           // working precision in bits
    long conv_n_max = 200000;  // truncation cap for slowly convergent outer series
    int poset_max = 8;         // soft element-count guard (hard cap 12)

    EvalCtx() = default;
    explicit EvalCtx(long p) : prec(p) {}
};

}  // namespace mzv

#endif
