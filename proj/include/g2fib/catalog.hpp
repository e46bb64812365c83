#pragma once

/// Parametric families of extremal genus-2 fibrations, each rebuilt as a
/// double cover of a ruled surface and verified two ways:
///   (a) K^2 = 2 (K_P + R/2)^2 from the branch class, and
///   (b) K^2 from the singularity budget via the relative invariant formula,
/// then |G| is compared with the bound the construction is meant to attain.

#include "g2fib/bounds.hpp"
#include "g2fib/error.hpp"
#include "g2fib/number.hpp"
#include "g2fib/pgl2.hpp"
#include "g2fib/ruled_surface.hpp"
#include "g2fib/xiao.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2fib {

using ParamMap = std::map<std::string, Integer>;

/// How the singularity budget of route (b) is obtained.
enum class BudgetRoute {
    etale_fibers,       // horizontal part etale, each vertical fiber of R contributes s2 = 10
    smooth_ramification, // R is a disjoint union of smooth curves, s2 = sum D.(D + K_{P/C})
    locally_trivial,    // no singular fibers
};

struct CatalogExpectation {
    Integer ksq;
    Integer k_order;
    Integer h_order;
    Integer g_order;
    /// |G| = slope K^2 + intercept, as displayed for the construction.
    Rational identity_slope;
    Rational identity_intercept;
    /// Bound formula the construction attains, if any.
    std::optional<std::string> bound_name;
};

struct CatalogEntry {
    std::string id;
    std::string title;
    ParamMap parameters;
    std::vector<std::string> assumptions;
    RuledSurfaceModel surface;
    DivisorClass branch;
    std::vector<DivisorClass> branch_components; // used by smooth_ramification
    Integer fiber_count = 0;
    Integer base_genus = 0;
    GroupKind kind = GroupKind::full;
    BudgetRoute route = BudgetRoute::etale_fibers;
    bool locally_trivial = false;
    bool minimal_surface = true;
    std::optional<FiniteMobiusGroup> h_group; // when H acts on P1 as a polyhedral group
    bool exceptional = false;                 // belongs to the >48(K^2+8) table
    CatalogExpectation expected;
};

inline const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {"5.1", "5.2", "5.3", "5.4", "5.5", "5.6-dodecahedron",
                                                 "5.6-octahedron", "5.6-cube", "5.7", "5.8+", "5.8", "5.9"};
    return ids;
}

namespace detail {

inline bool is_prime(const Integer& m) {
    if (m < 2) return false;
    for (Integer d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

inline Integer take(ParamMap& params, const std::string& name, const Integer& fallback) {
    auto it = params.find(name);
    if (it == params.end()) return fallback;
    Integer v = it->second;
    params.erase(it);
    return v;
}

inline void require(bool ok, const std::string& id, const std::string& constraint) {
    if (!ok) throw BadParameter("example " + id + ": parameter constraint violated: " + constraint);
}

inline CatalogEntry product_family(std::string id, std::string title, const Integer& base_genus,
                                   const Integer& fibers, GroupKind kind, Integer k, Integer h) {
    CatalogEntry e;
    e.id = std::move(id);
    e.title = std::move(title);
    e.surface = RuledSurfaceModel::product(base_genus);
    e.branch = {6, fibers};
    e.fiber_count = fibers;
    e.base_genus = base_genus;
    e.kind = kind;
    e.route = fibers == 0 ? BudgetRoute::locally_trivial : BudgetRoute::etale_fibers;
    e.locally_trivial = fibers == 0;
    e.expected.k_order = std::move(k);
    e.expected.h_order = std::move(h);
    e.expected.g_order = e.expected.k_order * e.expected.h_order;
    return e;
}

inline CatalogEntry cone_family(std::string id, std::string title, const Integer& m, GroupKind kind, Integer k,
                                Integer h) {
    CatalogEntry e;
    e.id = std::move(id);
    e.title = std::move(title);
    e.surface = RuledSurfaceModel::hirzebruch(2 * m, 0);
    // R = R1 + C0 with R1 ~ 5C0 + 10mF smooth and disjoint from C0
    e.branch_components = {{5, 10 * m}, {1, 0}};
    e.branch = {6, 10 * m};
    e.base_genus = 0;
    e.kind = kind;
    e.route = BudgetRoute::smooth_ramification;
    e.expected.k_order = std::move(k);
    e.expected.h_order = std::move(h);
    e.expected.g_order = e.expected.k_order * e.expected.h_order;
    return e;
}

} // namespace detail

/// Builds the entry `id` with its parameters; missing parameters take the
/// smallest admissible default. Throws BadParameter on an unknown id,
/// unknown parameter or violated constraint.
inline CatalogEntry instantiate(const std::string& id, ParamMap params = {}) {
    using detail::require;
    using detail::take;
    using G = FiniteMobiusGroup;
    CatalogEntry e;
    if (id == "5.1" || id == "5.2") {
        const Integer g = take(params, "g", 3);
        require(g >= 2, id, "g >= 2");
        if (id == "5.1") {
            e = detail::product_family(id, "C x F with C Hurwitz, |Aut(F)| = 48", g, 0, GroupKind::full, 48, 84 * (g - 1));
            e.expected.ksq = 8 * (g - 1);
            e.expected.identity_slope = 504;
            e.expected.bound_name = "aut-504";
        } else {
            const Integer m = 12 * (g - 1);
            e = detail::product_family(id, "C Hurwitz, branch over a 12(g-1)-point H-orbit", g, m, GroupKind::full, 48,
                                       84 * (g - 1));
            e.expected.ksq = 32 * (g - 1);
            e.expected.identity_slope = 126;
            e.expected.bound_name = "aut-126-g2";
        }
        e.parameters["g"] = g;
        e.assumptions.push_back("hypothetical-Hurwitz: C is taken to have 84(g-1) automorphisms");
    } else if (id == "5.3") {
        const Integer m = take(params, "m", 2);
        require(m >= 1, id, "m >= 1");
        e = detail::product_family(id, "j(C) = 0, H an extension of Z_m + Z_m by Aut(C, q)", 1, m * m, GroupKind::full, 48,
                                   6 * m * m);
        e.parameters["m"] = m;
        e.expected.ksq = 2 * m * m;
        e.expected.identity_slope = 144;
        e.expected.bound_name = "aut-144-g1";
        e.assumptions.push_back("the extension H of order 6m^2 is taken as given");
    } else if (id == "5.4") {
        e = detail::product_family(id, "branch over the 12 icosahedron vertices", 0, 12, GroupKind::full, 48, 60);
        e.h_group = G::icosahedral();
        e.expected.ksq = 16;
        e.expected.identity_slope = 120;
        e.expected.identity_intercept = 960;
        e.expected.bound_name = "aut-120-g0";
        e.exceptional = true;
    } else if (id == "5.5") {
        const Integer m = take(params, "m", 5);
        require(m >= 1, id, "m >= 1");
        e = detail::product_family(id, "branch over the m-th roots of unity", 0, m, GroupKind::full, 48, 2 * m);
        if (m <= 1'000'000) e.h_group = G::dihedral(static_cast<std::int64_t>(m));
        e.parameters["m"] = m;
        e.expected.ksq = 2 * (m - 4);
        e.expected.identity_slope = 48;
        e.expected.identity_intercept = 384;
        e.expected.bound_name = "rational-48";
    } else if (id == "5.6-dodecahedron") {
        e = detail::product_family(id, "branch over the 20 dodecahedron vertices", 0, 20, GroupKind::full, 48, 60);
        e.h_group = G::icosahedral();
        e.expected.ksq = 32;
        e.expected.identity_slope = 90;
        e.exceptional = true;
    } else if (id == "5.6-octahedron") {
        e = detail::product_family(id, "branch over the 6 octahedron vertices", 0, 6, GroupKind::full, 48, 24);
        e.h_group = G::octahedral();
        e.expected.ksq = 4;
        e.expected.identity_slope = 288;
        e.expected.bound_name = "aut-288";
        e.exceptional = true;
    } else if (id == "5.6-cube") {
        e = detail::product_family(id, "branch over the 8 cube vertices", 0, 8, GroupKind::full, 48, 24);
        e.h_group = G::octahedral();
        e.expected.ksq = 8;
        e.expected.identity_slope = 144;
        e.exceptional = true;
    } else if (id == "5.7") {
        const Integer m = take(params, "m", 2);
        require(m >= 1, id, "m >= 1");
        e = detail::cone_family(id, "F_{2m} with R = R1 + C0, G = Z10 + Z10m", m, GroupKind::abelian, 10, 10 * m);
        e.parameters["m"] = m;
        e.expected.ksq = 8 * (m - 1);
        e.expected.identity_slope = Rational(25, 2);
        e.expected.identity_intercept = 100;
        e.expected.bound_name = "abelian-12.5";
    } else if (id == "5.8+") {
        const Integer m = take(params, "m", 2);
        require(m >= 1, id, "m >= 1");
        // sigma of order 50m - 5 acts on the base with order 10m - 1
        e = detail::cone_family(id, "F_{2m} with R = R1 + C0, G cyclic of order 100m - 10", m, GroupKind::cyclic, 10,
                                10 * m - 1);
        e.parameters["m"] = m;
        e.expected.ksq = 8 * (m - 1);
        e.expected.identity_slope = Rational(25, 2);
        e.expected.identity_intercept = 90;
        e.expected.bound_name = "cyclic-12.5-g0";
    } else if (id == "5.8") {
        const Integer m = take(params, "m", 3);
        require(detail::is_prime(m) && m % 2 == 1 && m != 5, id, "m is an odd prime different from 5");
        e = detail::product_family(id, "elliptic base, translation orbit of order m, K = Z10", 1, m, GroupKind::cyclic, 10,
                                   m);
        e.parameters["m"] = m;
        e.expected.ksq = 2 * m;
        e.expected.identity_slope = 5;
        e.expected.bound_name = "cyclic-5-g1";
    } else if (id == "5.9") {
        const Integer m = take(params, "m", 7);
        require(detail::is_prime(m) && m % 2 == 1 && m != 3 && m != 5, id, "m is an odd prime different from 3 and 5");
        e = detail::product_family(id, "C an m-cyclic cover of P1 with Z3m action, K = Z10", m - 1, 0, GroupKind::cyclic,
                                   10, 3 * m);
        e.parameters["m"] = m;
        e.expected.ksq = 8 * (m - 2);
        e.expected.identity_slope = Rational(15, 4);
        e.expected.identity_intercept = 60;
    } else {
        throw BadParameter("unknown example id '" + id + "'");
    }
    if (!params.empty()) throw BadParameter("example " + id + " has no parameter '" + params.begin()->first + "'");
    return e;
}

/// Parameter sets exercised by the standard sweep.
inline std::vector<ParamMap> sweep_parameters(const std::string& id) {
    std::vector<ParamMap> out;
    auto range = [&](const std::string& name, int lo, int hi) {
        for (int v = lo; v <= hi; ++v) out.push_back({{name, v}});
    };
    if (id == "5.1" || id == "5.2") range("g", 2, 6);
    else if (id == "5.3" || id == "5.5" || id == "5.7" || id == "5.8+") range("m", 1, 10);
    else if (id == "5.8") for (int m : {3, 7, 11, 13}) out.push_back({{"m", m}});
    else if (id == "5.9") for (int m : {7, 11, 13}) out.push_back({{"m", m}});
    else out.push_back({});
    return out;
}

struct VerificationReport {
    std::string id;
    ParamMap parameters;
    Integer ksq_double_cover;      // path (a)
    SingularityBudget budget;      // input to path (b)
    Integer ksq_singularity;       // path (b)
    bool paths_agree = false;
    Integer g_order;
    Rational identity_value;       // slope K^2 + intercept
    std::optional<std::string> bound_name;
    std::optional<Rational> bound_value;
    bool attains_bound = false;
    std::vector<BoundVerdict> verdicts; // empty when K^2 < 1
    std::optional<BoundVerdict> sharpest_verdict;
    bool within_all_verdicts = true;
    std::optional<bool> exceptional_row_found;
    bool k_order_within_cap = false;
    std::vector<std::string> notes;
};

inline SingularityBudget catalog_budget(const CatalogEntry& e) {
    switch (e.route) {
    case BudgetRoute::etale_fibers: return {10 * e.fiber_count, 0};
    case BudgetRoute::smooth_ramification: {
        Integer s2 = 0;
        for (const auto& d : e.branch_components) s2 += horizontal_ramification(e.surface, d);
        return {s2, 0};
    }
    case BudgetRoute::locally_trivial: return {0, 0};
    }
    return {};
}

/// Recomputes K^2 both ways and checks |G| against the construction's
/// identity, its attained bound and every applicable verdict. Throws
/// Mismatch if any of these disagree.
inline VerificationReport verify(const CatalogEntry& e) {
    VerificationReport rep;
    rep.id = e.id;
    rep.parameters = e.parameters;
    rep.notes = e.assumptions;

    if (e.route == BudgetRoute::smooth_ramification) {
        DivisorClass sum;
        for (const auto& d : e.branch_components) sum = sum + d;
        if (!(sum == e.branch)) throw Mismatch(e.id + " branch components", to_string(sum), to_string(e.branch));
        for (std::size_t i = 0; i < e.branch_components.size(); ++i)
            for (std::size_t j = i + 1; j < e.branch_components.size(); ++j) {
                const Integer x = intersect(e.surface, e.branch_components[i], e.branch_components[j]);
                if (x != 0) throw Mismatch(e.id + " branch components meet", x.str(), "0");
            }
    }

    rep.ksq_double_cover = double_cover_ksq(e.surface, e.branch);
    rep.budget = catalog_budget(e);
    rep.ksq_singularity = global_invariants(rep.budget, e.base_genus).ksq;
    rep.paths_agree = rep.ksq_double_cover == rep.ksq_singularity;
    if (!rep.paths_agree)
        throw Mismatch(e.id + " K^2 (double cover vs singularity indices)", rep.ksq_double_cover.str(),
                       rep.ksq_singularity.str());
    if (rep.ksq_double_cover != e.expected.ksq)
        throw Mismatch(e.id + " K^2 vs construction", rep.ksq_double_cover.str(), e.expected.ksq.str());

    const Rational ksq(rep.ksq_double_cover);
    rep.g_order = e.expected.k_order * e.expected.h_order;
    if (rep.g_order != e.expected.g_order) throw Mismatch(e.id + " |G| = |K||H|", rep.g_order.str(), e.expected.g_order.str());
    rep.identity_value = e.expected.identity_slope * ksq + e.expected.identity_intercept;
    if (rep.identity_value != Rational(rep.g_order))
        throw Mismatch(e.id + " |G| vs identity", rep.g_order.str(), to_fraction_string(rep.identity_value));

    rep.bound_name = e.expected.bound_name;
    if (e.expected.bound_name) {
        rep.bound_value = bound_formula(*e.expected.bound_name).at(ksq);
        rep.attains_bound = *rep.bound_value == Rational(rep.g_order);
        if (!rep.attains_bound)
            throw Mismatch(e.id + " |G| vs " + *e.expected.bound_name, rep.g_order.str(),
                           to_fraction_string(*rep.bound_value));
    }

    if (rep.ksq_double_cover >= 1) {
        rep.verdicts = evaluate(e.base_genus, rep.ksq_double_cover, e.kind, e.locally_trivial, e.minimal_surface);
        rep.sharpest_verdict = sharpest(rep.verdicts);
        for (const auto& v : rep.verdicts)
            if (Rational(rep.g_order) > v.bound_value) {
                rep.within_all_verdicts = false;
                throw Mismatch(e.id + " |G| exceeds " + v.formula_name, rep.g_order.str(), to_fraction_string(v.bound_value));
            }
    } else {
        rep.notes.push_back("K^2 = " + rep.ksq_double_cover.str() + " < 1: not of general type, bounds not evaluated");
    }

    if (e.exceptional && e.h_group) {
        const Integer r = Integer(e.h_group->order()) / e.fiber_count;
        bool found = false;
        for (const auto& row : exceptional_table())
            if (row.h == *e.h_group && Integer(row.r) == r && Integer(row.g_order) == rep.g_order &&
                Integer(row.ksq) == rep.ksq_double_cover)
                found = true;
        rep.exceptional_row_found = found;
        if (!found) throw Mismatch(e.id + " exceptional table membership", "absent", "present");
    }

    rep.k_order_within_cap = e.expected.k_order <= k_order_cap(e.kind);
    if (!rep.k_order_within_cap)
        throw Mismatch(e.id + " |K| vs cap", e.expected.k_order.str(), std::to_string(k_order_cap(e.kind)));
    return rep;
}

} // namespace g2fib
