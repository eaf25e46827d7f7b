#ifndef MZVLAB_IDENTITIES_HPP
#define MZVLAB_IDENTITIES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mzvlab/ctx.hpp"
#include "mzvlab/index.hpp"
#include "mzvlab/scalar.hpp"

namespace mzv {

enum class VerifyMode { Exact, Float };

// Compositions with zero parts (padded indices) and poset descriptions travel
// as strings.
using ParamValue = std::variant<long, Rat, Coef, Composition, LabelVector, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

struct IdentityCase {
    std::string id;
    ParamMap params;
    VerifyMode mode = VerifyMode::Float;
    long prec = 128;
};

enum class VerifyStatus { Pass, Fail, Skipped };

struct ResidualReport {
    IdentityCase kase;
    Scalar lhs, rhs, residual;
    BigFloat budget;       // summed error bounds of both sides
    BigFloat slack;        // declared tolerance term (2^-prec/2; 0 in exact mode)
    BigFloat abs_residual; // |lhs - rhs| ignoring bounds
    VerifyStatus status = VerifyStatus::Skipped;
    std::string reason;    // failure/skip detail
};

struct IdentityInfo {
    std::string id;
    bool exact_eligible = false;
    std::string params_doc;  // free symbols, "name:type" list
};

const std::vector<IdentityInfo>& registry();
const IdentityInfo& registry_entry(const std::string& id);

ResidualReport verify(const IdentityCase& kase, const EvalCtx& ctx);

struct FuzzBounds {
    int max_weight = 5;
    int max_depth = 3;
    int max_n = 6;
    int max_l = 6;
};

struct FuzzSummary {
    std::string id;
    int pass = 0, fail = 0, skip = 0;
    double worst_ratio = 0.0;  // max |residual| / (budget + slack)
    uint64_t seed = 0;
    std::vector<std::string> failures;  // first few failure descriptions
};

IdentityCase generate_case(const std::string& id, uint64_t seed, int index,
                           const FuzzBounds& bounds, VerifyMode mode, long prec);

FuzzSummary fuzz(const std::string& id, int budget, uint64_t seed, const FuzzBounds& bounds,
                 const EvalCtx& ctx, VerifyMode mode = VerifyMode::Float);

std::string param_to_string(const ParamValue& v);

}  // namespace mzv

#endif
