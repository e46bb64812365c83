#pragma once

/// Relative invariants of a relatively minimal genus-2 fibration from its
/// global singularity indices:
///
///   K^2_{S/C} = K_S^2 - 8(g(C)-1)      = s2/5  + 7 s3/5 = 2n - s3
///   chi_f     = chi(O_S) - (g(C)-1)    = s2/10 + s3/5   = n  - s3
///
/// Both right-hand sides are integers iff s2 + 2 s3 = 0 (mod 10).

#include "g2fib/error.hpp"
#include "g2fib/number.hpp"

#include <string>

namespace g2fib {

struct SingularityBudget {
    Integer s2_total = 0;
    Integer s3_total = 0;

    bool operator==(const SingularityBudget&) const = default;
};

struct RelativeInvariants {
    Integer ksq_rel = 0; // K^2_{S/C}
    Integer chi_f = 0;
    Integer n = 0;       // R_p ~ -3K_{P/C} + nF

    bool operator==(const RelativeInvariants&) const = default;
};

struct GlobalInvariants {
    Integer ksq = 0;     // K_S^2
    Integer chi = 0;     // chi(O_S)

    bool operator==(const GlobalInvariants&) const = default;
};

inline bool validate_budget(const SingularityBudget& b) {
    if (b.s2_total < 0 || b.s3_total < 0) return false;
    return (b.s2_total + 2 * b.s3_total) % 10 == 0;
}

inline RelativeInvariants relative_invariants(const SingularityBudget& b) {
    if (b.s2_total < 0 || b.s3_total < 0) throw BadParameter("singularity indices must be non-negative");
    if (!validate_budget(b))
        throw NonIntegral("s2 + 2 s3 = " + (b.s2_total + 2 * b.s3_total).str() +
                          " is not divisible by 10 (s2=" + b.s2_total.str() + ", s3=" + b.s3_total.str() + ")");
    RelativeInvariants r;
    r.ksq_rel = (b.s2_total + 7 * b.s3_total) / 5;
    r.chi_f = (b.s2_total + 2 * b.s3_total) / 10;
    r.n = r.chi_f + b.s3_total;
    return r;
}

inline GlobalInvariants global_invariants(const SingularityBudget& b, const Integer& base_genus) {
    if (base_genus < 0) throw BadParameter("base genus must be >= 0");
    const RelativeInvariants r = relative_invariants(b);
    return {r.ksq_rel + 8 * (base_genus - 1), r.chi_f + (base_genus - 1)};
}

/// K^2_{S/C} = 0 exactly for locally trivial fibrations.
inline bool is_locally_trivial(const SingularityBudget& b) {
    return b.s2_total == 0 && b.s3_total == 0;
}

} // namespace g2fib
