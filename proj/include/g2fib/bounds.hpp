#pragma once

/// Upper bounds for automorphism groups G of a genus-2 fibration f: S -> C,
/// as functions of K_S^2 and g(C), together with the stabilizer-level bounds
/// they are assembled from and the table of rational fibrations exceeding
/// 48(K^2 + 8).
///
/// G sits in 1 -> K -> G -> H -> 1 with K acting fiberwise and H <= Aut(C),
/// so |G| = |K| |H|.

#include "g2fib/error.hpp"
#include "g2fib/number.hpp"
#include "g2fib/pgl2.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace g2fib {

enum class GroupKind { full, abelian, cyclic };

inline std::string_view to_string(GroupKind k) {
    switch (k) {
    case GroupKind::full: return "full";
    case GroupKind::abelian: return "abelian";
    case GroupKind::cyclic: return "cyclic";
    }
    return "full";
}

inline std::optional<GroupKind> group_kind_from_string(std::string_view s) {
    if (s == "full") return GroupKind::full;
    if (s == "abelian") return GroupKind::abelian;
    if (s == "cyclic") return GroupKind::cyclic;
    return std::nullopt;
}

/// Bound of the form slope * K^2 + intercept.
struct BoundFormula {
    std::string_view name;
    Rational slope;
    Rational intercept;
    bool sharp;                 // attained by a catalog construction
    std::string_view statement; // the inequality in plain text
    std::string_view note;      // hypotheses worth surfacing, may be empty

    Rational at(const Rational& ksq) const { return slope * ksq + intercept; }
};

inline const std::vector<BoundFormula>& bound_formulas() {
    static const std::vector<BoundFormula> formulas = {
        {"aut-504", 504, 0, true, "|Aut(f)| <= 504 K^2", ""},
        {"aut-288", 288, 0, true, "|Aut(f)| <= 288 K^2 if f is not locally trivial", ""},
        {"aut-126-g2", 126, 0, true, "|Aut(f)| <= 126 K^2 if g(C) >= 2 and f is not locally trivial", ""},
        {"aut-144-g1", 144, 0, true, "|Aut(f)| <= 144 K^2 if g(C) = 1", ""},
        {"aut-120-g0", 120, 960, true, "|Aut(f)| <= 120 K^2 + 960 if g(C) = 0", ""},
        {"rational-48", 48, 384, true, "|Aut(f)| <= 48 (K^2 + 8) if g(C) = 0 and K^2 >= 33", ""},
        {"abelian-12.5", Rational(25, 2), 100, true, "|G| <= 12.5 K^2 + 100 for abelian G", ""},
        {"abelian-6-g2", 6, 96, false, "|G| <= 6 K^2 + 96 for abelian G if g(C) >= 2", ""},
        {"cyclic-5-g1", 5, 0, true, "|G| <= 5 K^2 for cyclic G if g(C) = 1 and K^2 >= 12", ""},
        {"cyclic-60-g1-small", 0, 60, false, "|G| <= 60 for cyclic G if g(C) = 1 and K^2 < 12",
         "fallback constant; only the H-not-free case is bounded this way"},
        {"cyclic-12.5-g0", Rational(25, 2), 90, true, "|G| <= 12.5 K^2 + 90 for cyclic G if g(C) = 0", ""},
        {"cyclic-5-g2", 5, 30, false, "|G| <= 5 K^2 + 30 for cyclic G if g(C) >= 2 and S is minimal",
         "proof-threshold: the supporting argument assumes K^2 >= 48"},
    };
    return formulas;
}

inline const BoundFormula& bound_formula(std::string_view name) {
    for (const auto& f : bound_formulas())
        if (f.name == name) return f;
    throw BadParameter("unknown bound formula '" + std::string(name) + "'");
}

struct BoundVerdict {
    Rational bound_value;
    std::string formula_name;
    bool sharp = false;
    std::string source_quote;
    std::string note;

    bool operator==(const BoundVerdict&) const = default;
};

inline BoundVerdict make_verdict(std::string_view name, const Rational& ksq) {
    const BoundFormula& f = bound_formula(name);
    return {f.at(ksq), std::string(f.name), f.sharp, std::string(f.statement), std::string(f.note)};
}

/// Every bound whose hypotheses hold for the given data, in a fixed order.
inline std::vector<BoundVerdict> evaluate(const Integer& base_genus, const Integer& ksq, GroupKind kind,
                                          bool locally_trivial, bool minimal_surface) {
    if (base_genus < 0) throw BadParameter("base genus must be >= 0");
    if (ksq < 1) throw Inapplicable("K^2 = " + ksq.str() + " < 1: not of general type");
    if (base_genus >= 2 && ksq < 8 * (base_genus - 1))
        throw Inapplicable("K^2 >= 8(g(C) - 1) fails for K^2 = " + ksq.str() + ", g(C) = " + base_genus.str());
    if (locally_trivial && ksq != 8 * (base_genus - 1))
        throw Inapplicable("a locally trivial fibration has K^2 = 8(g(C) - 1)");

    const Rational k2(ksq);
    std::vector<BoundVerdict> out;
    auto add = [&](std::string_view name) { out.push_back(make_verdict(name, k2)); };
    switch (kind) {
    case GroupKind::full:
        add("aut-504");
        if (!locally_trivial) add("aut-288");
        if (base_genus >= 2 && !locally_trivial) add("aut-126-g2");
        if (base_genus == 1) add("aut-144-g1");
        if (base_genus == 0) add("aut-120-g0");
        if (base_genus == 0 && ksq >= 33) add("rational-48");
        break;
    case GroupKind::abelian:
        add("abelian-12.5");
        if (base_genus >= 2) add("abelian-6-g2");
        break;
    case GroupKind::cyclic:
        if (base_genus == 1) add(ksq >= 12 ? "cyclic-5-g1" : "cyclic-60-g1-small");
        if (base_genus == 0) add("cyclic-12.5-g0");
        if (base_genus >= 2 && minimal_surface) add("cyclic-5-g2");
        break;
    }
    return out;
}

/// The smallest value among the verdicts, or nullopt for an empty list.
inline std::optional<BoundVerdict> sharpest(const std::vector<BoundVerdict>& verdicts) {
    if (verdicts.empty()) return std::nullopt;
    return *std::min_element(verdicts.begin(), verdicts.end(),
                             [](const auto& a, const auto& b) { return a.bound_value < b.bound_value; });
}

enum class StabilizerCase { s3_positive, negligible_not_etale, etale, d4_cyclic, z3_one_orbit, z2_one_orbit };

/// |G| bound in terms of K^2_{S/C} and r, the least stabilizer order in H of
/// the image of a relevant singular fiber.
inline Rational stabilizer_bound(StabilizerCase c, std::int64_t r, const Integer& ksq_rel) {
    if (r < 1) throw BadParameter("stabilizer order r must be >= 1");
    const Rational k(ksq_rel);
    switch (c) {
    case StabilizerCase::s3_positive: return Rational(60, 7) * r * k;
    case StabilizerCase::negligible_not_etale: return 20 * r * k;
    case StabilizerCase::etale: return 24 * r * k;
    case StabilizerCase::d4_cyclic: return Rational(25, 2) * k; // H cyclic, g(C) = 0; r plays no role
    case StabilizerCase::z3_one_orbit: return 6 * r * k;
    case StabilizerCase::z2_one_orbit: return 5 * r * k;
    }
    return 0;
}

struct ExceptionalRow {
    FiniteMobiusGroup h;
    std::int64_t r;
    std::int64_t g_order;
    std::int64_t ksq;
    Rational ratio_plus8; // |G| / (K^2 + 8)
    Rational ratio;       // |G| / K^2
};

/// Rational fibrations with |Aut(f)| > 48(K^2 + 8). The stored ratios are
/// checked against g_order and ksq on first use.
inline const std::vector<ExceptionalRow>& exceptional_table() {
    static const std::vector<ExceptionalRow> rows = [] {
        using G = FiniteMobiusGroup;
        std::vector<ExceptionalRow> t = {
            {G::icosahedral(), 5, 2880, 16, 120, 180},
            {G::icosahedral(), 3, 2880, 32, 72, 90},
            {G::octahedral(), 4, 1152, 4, 96, 288},
            {G::octahedral(), 3, 1152, 8, 72, 144},
        };
        for (const auto& row : t) {
            if (Rational(row.g_order, row.ksq + 8) != row.ratio_plus8 || Rational(row.g_order, row.ksq) != row.ratio)
                throw std::logic_error("exceptional table ratios inconsistent for " + row.h.name());
            if (row.g_order % row.h.order() != 0 || row.g_order / row.h.order() != 48)
                throw std::logic_error("exceptional table: |G| != 48 |H| for " + row.h.name());
        }
        return t;
    }();
    return rows;
}

struct FactorizationConstraint {
    std::int64_t k_order = 1;
    std::int64_t h_order = 1;

    std::int64_t g_order() const { return k_order * h_order; }
};

/// Necessary condition for cyclic G when the fiber over p is smooth and K
/// acts faithfully on it: |K| and |Stab_H(p)| are coprime.
inline bool coprimality_ok(const FactorizationConstraint& c, std::int64_t stab_order) {
    if (c.k_order < 1 || c.h_order < 1 || stab_order < 1) throw BadParameter("orders must be positive");
    return gcd64(c.k_order, stab_order) == 1;
}

/// Largest possible |K| for the kind of group.
inline std::int64_t k_order_cap(GroupKind kind) {
    switch (kind) {
    case GroupKind::full: return 48;
    case GroupKind::abelian: return 12;
    case GroupKind::cyclic: return 10;
    }
    return 48;
}

} // namespace g2fib
