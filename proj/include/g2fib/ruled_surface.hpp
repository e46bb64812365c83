#pragma once

/// Intersection calculus on a relatively minimal ruled surface P -> C.
///
/// Numerical classes are written a*C0 + b*F where C0 is a section of least
/// self-intersection (C0^2 = -e) and F is a fiber, so C0.F = 1 and F^2 = 0.
/// A product C x P1 is modelled with e = 0, F the P1 factor over a point of C
/// and C0 = C x {pt}.

#include "g2fib/error.hpp"
#include "g2fib/number.hpp"

#include <compare>
#include <string>

namespace g2fib {

enum class SurfaceKind { hirzebruch, product };

struct RuledSurfaceModel {
    Integer base_genus = 0;
    SurfaceKind kind = SurfaceKind::product;
    Integer e = 0;

    static RuledSurfaceModel hirzebruch(Integer e, Integer base_genus = 0) {
        if (e < 0) throw BadParameter("hirzebruch invariant e must be >= 0");
        if (base_genus < 0) throw BadParameter("base genus must be >= 0");
        return {std::move(base_genus), SurfaceKind::hirzebruch, std::move(e)};
    }
    static RuledSurfaceModel product(Integer base_genus) {
        if (base_genus < 0) throw BadParameter("base genus must be >= 0");
        return {std::move(base_genus), SurfaceKind::product, 0};
    }

    bool operator==(const RuledSurfaceModel&) const = default;
};

struct DivisorClass {
    Integer a = 0; // coefficient of C0
    Integer b = 0; // coefficient of F

    DivisorClass operator+(const DivisorClass& o) const { return {a + o.a, b + o.b}; }
    DivisorClass operator-(const DivisorClass& o) const { return {a - o.a, b - o.b}; }
    DivisorClass operator-() const { return {-a, -b}; }
    friend DivisorClass operator*(const Integer& k, const DivisorClass& d) { return {k * d.a, k * d.b}; }
    bool operator==(const DivisorClass&) const = default;
};

inline std::string to_string(const DivisorClass& d) {
    return "(" + d.a.str() + "," + d.b.str() + ")";
}

inline Integer intersect(const RuledSurfaceModel& s, const DivisorClass& d1, const DivisorClass& d2) {
    return -s.e * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b;
}

inline Integer self_intersection(const RuledSurfaceModel& s, const DivisorClass& d) {
    return intersect(s, d, d);
}

inline DivisorClass canonical_class(const RuledSurfaceModel& s) {
    const Integer g = s.base_genus;
    if (s.kind == SurfaceKind::product) return {-2, 2 * g - 2};
    return {-2, -(s.e + 2 - 2 * g)};
}

/// K_P minus the pullback of K_C; the b-coefficient drops by 2g(C) - 2.
inline DivisorClass relative_canonical(const RuledSurfaceModel& s) {
    DivisorClass k = canonical_class(s);
    k.b -= 2 * s.base_genus - 2;
    return k;
}

/// K^2 of the double cover of P branched along R, assuming R has at most
/// negligible singularities: 2 (K_P + R/2)^2 = 2K^2 + 2K.R + R^2/2.
inline Integer double_cover_ksq(const RuledSurfaceModel& s, const DivisorClass& r) {
    if (r.a % 2 != 0)
        throw OddClass("branch class " + to_string(r) + " has odd C0-coefficient");
    if (s.kind == SurfaceKind::hirzebruch && r.b % 2 != 0)
        throw OddClass("branch class " + to_string(r) + " has odd F-coefficient on a Hirzebruch surface");
    const DivisorClass k = canonical_class(s);
    const Integer r2 = self_intersection(s, r);
    // a even makes R^2 = a(2b - ae) divisible by 4.
    return 2 * self_intersection(s, k) + 2 * intersect(s, k, r) + r2 / 2;
}

/// Ramification of a smooth horizontal curve D over the base: D.(D + K_{P/C}).
inline Integer horizontal_ramification(const RuledSurfaceModel& s, const DivisorClass& d) {
    return intersect(s, d, d + relative_canonical(s));
}

} // namespace g2fib
