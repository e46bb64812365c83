#pragma once

/// Classified branch-curve germs over a disk and their singularity indices.
///
/// Each row is a local equation family of the horizontal branch part near a
/// singular fiber F0, keyed by the fiberwise group it admits. The s2 values
/// are lower bounds except where `exact` is set; "conditional" rows only
/// bound s2 under the assumption s3(F0) = 0.

#include "g2fib/error.hpp"
#include "g2fib/number.hpp"
#include "g2fib/pgl2.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace g2fib {

struct GermCase {
    FiniteMobiusGroup group = FiniteMobiusGroup::cyclic(1);
    int case_id = 0;
    std::optional<std::int64_t> k; // exponent of t in the local equation, where the row has one

    bool operator==(const GermCase&) const = default;
};

struct GermIndices {
    std::int64_t s2_min = 0;
    std::int64_t s3 = 0;
    bool s3_conditional = false; // row reads "s3(F0) = 0 implies s2(F0) >= s2_min"
    bool exact = false;

    bool operator==(const GermIndices&) const = default;
};

/// Factor of a local equation in x (fiber coordinate) over k[[t]]:
///   t_on_x == false:  x^x_exp - unit * t^t_exp   (unit == 0 means the bare x^x_exp)
///   t_on_x == true:   t^t_exp * x^x_exp - unit
struct BinomialFactor {
    std::int64_t x_exp = 1;
    std::int64_t t_exp = 0;
    bool t_on_x = false;
    Rational unit = 1;
};

struct GermRow {
    FiniteMobiusGroup group;
    int case_id;
    std::int64_t k_min; // 0 when the row takes no parameter
    std::int64_t k_max; // -1 for unbounded
    GermIndices indices;
    std::string equation;
    /// Binomial factorisation of the k = 1 instance, when the row has one.
    std::vector<BinomialFactor> k1_factors;
    /// Discriminant valuation of that instance (regression value).
    std::optional<std::int64_t> k1_disc_valuation;

    bool takes_k() const { return k_min > 0; }
    bool accepts_k(std::int64_t k) const { return k >= k_min && (k_max < 0 || k <= k_max); }
};

namespace detail {

inline BinomialFactor bx(std::int64_t a, std::int64_t b, std::int64_t unit = 1) { return {a, b, false, unit}; }
inline BinomialFactor btx(std::int64_t a, std::int64_t b, std::int64_t unit = 1) { return {a, b, true, unit}; }
inline BinomialFactor bare_x() { return {1, 0, false, 0}; }

} // namespace detail

/// Versioned constant table; bump when rows change.
inline constexpr int kGermTableVersion = 1;

inline const std::vector<GermRow>& germ_rows() {
    using G = FiniteMobiusGroup;
    using namespace detail;
    static const std::vector<GermRow> rows = {
        {G::octahedral(), 0, 0, 0, {10, 0, false, true}, "F0 in R, 6 ordinary double points on F0", {}, std::nullopt},
        {G::tetrahedral(), 0, 0, 0, {10, 0, false, true}, "F0 in R, 6 ordinary double points on F0", {}, std::nullopt},
        {G::dihedral(6), 0, 0, 0, {10, 0, false, true}, "F0 in R, 6 ordinary double points on F0", {}, std::nullopt},
        {G::dihedral(3), 1, 1, -1, {4, 0, true, false}, "(x^3-t^k)(t^k x^3-1)", {bx(3, 1), btx(3, 1)}, 4},
        {G::dihedral(3), 2, 1, -1, {3, 0, false, false}, "(x^3-1)^2-t^k(x^3+1)^2", {}, std::nullopt},
        {G::cyclic(6), 1, 1, 2, {5, 0, false, false}, "x^6-t^k", {bx(6, 1)}, 5},
        {G::cyclic(6), 1, 3, 3, {3, 1, false, true}, "x^6-t^k", {}, std::nullopt},
        {G::cyclic(5), 1, 1, 2, {6, 0, false, false}, "x(x^5-t^k)", {bare_x(), bx(5, 1)}, 6},
        {G::cyclic(5), 2, 1, 2, {4, 0, false, false}, "x(t^k x^5-1)", {bare_x(), btx(5, 1)}, 4},
        {G::dihedral(2), 1, 1, -1, {6, 0, true, false}, "(x^2-1)((x-1)^2-t^k(x+1)^2)(t^k(x-1)^2-(x+1)^2)", {}, std::nullopt},
        {G::dihedral(2), 2, 1, -1, {2, 0, false, false}, "(x^2-1)(x^2-t^k)(t^k x^2-1)", {bx(2, 0), bx(2, 1), btx(2, 1)}, 2},
        {G::cyclic(4), 1, 1, 2, {5, 0, false, false}, "x(x^4-t^k)", {bare_x(), bx(4, 1)}, 5},
        {G::cyclic(3), 1, 1, -1, {4, 0, true, false}, "(x^3-t^k1)(t^k2 x^3-a(t))", {bx(3, 1), btx(3, 1)}, 4},
        {G::cyclic(3), 2, 1, 3, {5, 0, true, false}, "x^6+a(t)x^3+t^k", {}, std::nullopt},
        {G::cyclic(3), 3, 1, -1, {6, 0, false, false}, "(x^3-b-t^k1)(x^3-b-t^k2 a(t))", {}, std::nullopt},
        {G::cyclic(3), 4, 1, 3, {2, 0, false, false}, "(x^3-t^k)(x^3-a(t))", {bx(3, 1), bx(3, 0, 2)}, 2},
        {G::cyclic(3), 5, 1, -1, {3, 0, false, false}, "((x-b)^2-t^k a(t))((x-bw)^2-w^2 t^k a(t))((x-bw^2)^2-w t^k a(t))", {}, std::nullopt},
        {G::cyclic(2), 1, 0, 0, {1, 0, false, false}, "summary bound for Z2", {}, std::nullopt},
    };
    return rows;
}

inline std::string to_string(const GermCase& g) {
    std::string s = g.group.name() + " case " + std::to_string(g.case_id);
    if (g.k) s += " k=" + std::to_string(*g.k);
    return s;
}

/// The unique row matching (group, case, k), or nullptr.
inline const GermRow* find_germ_row(const GermCase& g) {
    for (const auto& row : germ_rows()) {
        if (!(row.group == g.group) || row.case_id != g.case_id) continue;
        if (!row.takes_k()) {
            if (!g.k) return &row;
            continue;
        }
        if (g.k && row.accepts_k(*g.k)) return &row;
    }
    return nullptr;
}

inline GermIndices classify(const GermCase& g) {
    const GermRow* row = find_germ_row(g);
    if (row == nullptr) throw UnknownCase("germ " + to_string(g) + " is not a classified case");
    return row->indices;
}

struct RatioRow {
    FiniteMobiusGroup group;
    std::int64_t lift_order;
    std::int64_t s2_min;
    Rational max_ratio;
};

/// |K_Delta| / s2(F0) per fiberwise group, over rows with only negligible
/// singularities (s3 = 0). The trivial group has no classified row; its
/// s2 >= 1 comes from the fact that a non-etale branch part ramifies.
inline std::vector<RatioRow> ratio_table() {
    using G = FiniteMobiusGroup;
    const std::vector<G> order = {G::dihedral(3), G::cyclic(6), G::cyclic(5), G::dihedral(2),
                                  G::cyclic(4),   G::cyclic(3), G::cyclic(2)};
    std::vector<RatioRow> out;
    for (const auto& g : order) {
        std::optional<std::int64_t> best;
        for (const auto& row : germ_rows()) {
            if (!(row.group == g) || row.indices.s3 != 0 || row.case_id == 0) continue;
            if (!best || row.indices.s2_min < *best) best = row.indices.s2_min;
        }
        const std::int64_t lifted = lift_order(g.order());
        out.push_back({g, lifted, *best, Rational(lifted, *best)});
    }
    out.push_back({G::cyclic(1), lift_order(1), 1, Rational(lift_order(1), 1)});
    return out;
}

/// s2 of an H-fixed fiber carrying a 3-point orbit of a fiberwise Z3, base P1.
inline std::int64_t z3_fixed_fiber_s2_min(std::int64_t h_order) {
    if (h_order < 1) throw BadParameter("|H| must be >= 1");
    return 3 * h_order;
}

namespace detail {

struct RootCluster {
    bool at_zero = false; // the bare factor x
    Rational valuation;   // t-adic valuation shared by all roots of the factor
    std::int64_t count = 0;
    std::int64_t lc_valuation = 0;
};

inline RootCluster roots_of(const BinomialFactor& f) {
    if (f.x_exp < 1 || f.t_exp < 0) throw BadParameter("binomial factor exponents out of range");
    if (f.unit == 0) {
        if (f.t_on_x) throw BadParameter("t^b x^a - 0 is not a binomial");
        if (f.x_exp != 1) throw NotSquarefree("x^" + std::to_string(f.x_exp) + " has a repeated root");
        return {true, 0, 1, 0};
    }
    const Rational v(f.t_on_x ? -f.t_exp : f.t_exp, f.x_exp);
    return {false, v, f.x_exp, f.t_on_x ? f.t_exp : 0};
}

inline Rational pow(const Rational& q, std::int64_t e) {
    Rational r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= q;
    return r;
}

} // namespace detail

/// v_t(disc_x f) for a single binomial; b(a-1) in both orientations.
inline std::int64_t factor_discriminant_valuation(const BinomialFactor& f) {
    const detail::RootCluster r = detail::roots_of(f);
    if (r.at_zero) return 0;
    return f.t_exp * (f.x_exp - 1);
}

/// v_t(res_x(f, g)) from the root valuations of the two binomials.
inline std::int64_t resultant_valuation(const BinomialFactor& f, const BinomialFactor& g) {
    using detail::RootCluster;
    const RootCluster rf = detail::roots_of(f);
    const RootCluster rg = detail::roots_of(g);
    if (rf.at_zero && rg.at_zero) throw NotSquarefree("factor x repeated");
    Rational total = Rational(rg.count * rf.lc_valuation + rf.count * rg.lc_valuation);
    Rational pair;
    if (rf.at_zero) pair = rg.valuation;
    else if (rg.at_zero) pair = rf.valuation;
    else if (rf.valuation != rg.valuation) pair = rf.valuation < rg.valuation ? rf.valuation : rg.valuation;
    else {
        // Leading coefficients u, u' with u^a = c, u'^a' = c' coincide for
        // some choice of roots iff c^q == c'^p, where a = dp, a' = dq.
        const std::int64_t d = gcd64(f.x_exp, g.x_exp);
        if (detail::pow(f.unit, g.x_exp / d) == detail::pow(g.unit, f.x_exp / d))
            throw NotSquarefree("factors share a root");
        pair = rf.valuation;
    }
    total += pair * rf.count * rg.count;
    if (!is_integral(total)) throw std::logic_error("non-integral resultant valuation");
    return static_cast<std::int64_t>(boost::multiprecision::numerator(total));
}

/// v_t of the x-discriminant of the product of the factors:
/// sum of factor discriminants plus twice every pairwise resultant.
inline std::int64_t discriminant_valuation(const std::vector<BinomialFactor>& factors) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        total += factor_discriminant_valuation(factors[i]);
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            total += 2 * resultant_valuation(factors[i], factors[j]);
    }
    return total;
}

} // namespace g2fib
