#pragma once

/// Finite subgroups of Aut(P1) and their orbit structure.
///
/// Naming follows the order-subscript convention: dihedral(n) is the group of
/// order 2n and prints as "D{2n}", so dihedral(3) is "D6".

#include "g2fib/error.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g2fib {

enum class MobiusFamily { cyclic, dihedral, tetrahedral, octahedral, icosahedral };

class FiniteMobiusGroup {
public:
    static FiniteMobiusGroup cyclic(std::int64_t n) { return {MobiusFamily::cyclic, n}; }
    static FiniteMobiusGroup dihedral(std::int64_t n) { return {MobiusFamily::dihedral, n}; }
    static FiniteMobiusGroup tetrahedral() { return {MobiusFamily::tetrahedral, 2}; }
    static FiniteMobiusGroup octahedral() { return {MobiusFamily::octahedral, 3}; }
    static FiniteMobiusGroup icosahedral() { return {MobiusFamily::icosahedral, 5}; }

    MobiusFamily family() const { return family_; }
    /// Rotation index: n for cyclic/dihedral, the largest vertex stabilizer otherwise.
    std::int64_t n() const { return n_; }

    std::int64_t order() const {
        switch (family_) {
        case MobiusFamily::cyclic: return n_;
        case MobiusFamily::dihedral: return 2 * n_;
        case MobiusFamily::tetrahedral: return 12;
        case MobiusFamily::octahedral: return 24;
        case MobiusFamily::icosahedral: return 60;
        }
        return 0;
    }

    std::string name() const {
        switch (family_) {
        case MobiusFamily::cyclic: return n_ == 1 ? "1" : "Z" + std::to_string(n_);
        case MobiusFamily::dihedral: return "D" + std::to_string(2 * n_);
        case MobiusFamily::tetrahedral: return "T12";
        case MobiusFamily::octahedral: return "O24";
        case MobiusFamily::icosahedral: return "I60";
        }
        return {};
    }

    /// Parses "1", "Zn", "D2n", "T12", "O24", "I60".
    static std::optional<FiniteMobiusGroup> from_name(std::string_view s) {
        if (s == "1") return cyclic(1);
        if (s == "T12") return tetrahedral();
        if (s == "O24") return octahedral();
        if (s == "I60") return icosahedral();
        if (s.size() < 2 || (s[0] != 'Z' && s[0] != 'D')) return std::nullopt;
        std::int64_t v = 0;
        for (char c : s.substr(1)) {
            if (c < '0' || c > '9' || v > 1'000'000) return std::nullopt;
            v = v * 10 + (c - '0');
        }
        if (s[1] == '0') return std::nullopt;
        if (s[0] == 'Z') return v >= 2 ? std::optional(cyclic(v)) : std::nullopt;
        if (v < 2 || v % 2 != 0) return std::nullopt;
        return dihedral(v / 2);
    }

    bool operator==(const FiniteMobiusGroup&) const = default;

private:
    FiniteMobiusGroup(MobiusFamily f, std::int64_t n) : family_(f), n_(n) {
        if (n < 1) throw BadParameter("group parameter must be >= 1");
    }
    MobiusFamily family_;
    std::int64_t n_;
};

/// Sizes of the exceptional orbits (with repetition) followed by the size of
/// a regular orbit, which may be used any number of times.
struct OrbitStructure {
    std::vector<std::int64_t> exceptional;
    std::int64_t regular;
};

inline OrbitStructure orbit_structure(const FiniteMobiusGroup& g) {
    const std::int64_t n = g.n();
    switch (g.family()) {
    case MobiusFamily::cyclic:
        if (n == 1) return {{}, 1};
        return {{1, 1}, n};
    case MobiusFamily::dihedral:
        if (n == 1) return {{1, 1}, 2}; // same action as Z2
        return {{2, n, n}, 2 * n};
    case MobiusFamily::tetrahedral: return {{4, 4, 6}, 12};
    case MobiusFamily::octahedral: return {{6, 8, 12}, 24};
    case MobiusFamily::icosahedral: return {{12, 20, 30}, 60};
    }
    return {{}, 1};
}

inline std::set<std::int64_t> orbit_sizes(const FiniteMobiusGroup& g) {
    const OrbitStructure o = orbit_structure(g);
    std::set<std::int64_t> out(o.exceptional.begin(), o.exceptional.end());
    out.insert(o.regular);
    return out;
}

/// True iff some union of orbits has exactly `points` elements.
inline bool has_invariant_set_of_size(const FiniteMobiusGroup& g, std::int64_t points) {
    const OrbitStructure o = orbit_structure(g);
    std::vector<bool> reach(static_cast<std::size_t>(points) + 1, false);
    reach[0] = true;
    for (std::int64_t size : o.exceptional)
        for (std::int64_t s = points; s >= size; --s)
            if (reach[static_cast<std::size_t>(s - size)]) reach[static_cast<std::size_t>(s)] = true;
    for (std::int64_t s = o.regular; s <= points; ++s)
        if (reach[static_cast<std::size_t>(s - o.regular)]) reach[static_cast<std::size_t>(s)] = true;
    return reach[static_cast<std::size_t>(points)];
}

/// Every finite Mobius group (up to isomorphism of the action) with an
/// invariant 6-point set, found by orbit arithmetic. Cyclic and dihedral
/// families beyond n = 6 have no orbit small enough to contribute.
inline std::vector<FiniteMobiusGroup> derive_six_point_stabilizers() {
    std::vector<FiniteMobiusGroup> candidates = {
        FiniteMobiusGroup::icosahedral(), FiniteMobiusGroup::octahedral(), FiniteMobiusGroup::tetrahedral()};
    for (std::int64_t n = 6; n >= 2; --n) candidates.push_back(FiniteMobiusGroup::dihedral(n));
    for (std::int64_t n = 6; n >= 1; --n) candidates.push_back(FiniteMobiusGroup::cyclic(n));
    std::vector<FiniteMobiusGroup> out;
    for (const auto& g : candidates)
        if (has_invariant_set_of_size(g, 6)) out.push_back(g);
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.order() > b.order(); });
    return out;
}

/// The groups that can act fiberwise on a genus-2 fibration's branch
/// sextic, in descending order. Orbit arithmetic additionally admits D8
/// (2 + 4 points), which this list omits; the self-check tolerates exactly
/// that one extra and nothing else.
inline const std::vector<FiniteMobiusGroup>& six_point_stabilizers() {
    static const std::vector<FiniteMobiusGroup> table = [] {
        using G = FiniteMobiusGroup;
        std::vector<G> list = {G::octahedral(), G::tetrahedral(), G::dihedral(6), G::dihedral(3),
                               G::cyclic(6),    G::cyclic(5),      G::dihedral(2), G::cyclic(4),
                               G::cyclic(3),    G::cyclic(2),      G::cyclic(1)};
        const std::vector<G> derived = derive_six_point_stabilizers();
        for (const auto& g : list)
            if (std::find(derived.begin(), derived.end(), g) == derived.end())
                throw std::logic_error("six-point stabilizer table: " + g.name() + " has no invariant 6-set");
        for (const auto& g : derived)
            if (std::find(list.begin(), list.end(), g) == list.end() && !(g == G::dihedral(4)))
                throw std::logic_error("six-point stabilizer table: missing " + g.name());
        return list;
    }();
    return table;
}

/// Order of K_Delta from the order of its image in Aut(P1): the hyperelliptic
/// involution acts trivially on P.
inline std::int64_t lift_order(std::int64_t kbar_order) {
    if (kbar_order < 1) throw BadParameter("group order must be >= 1");
    return 2 * kbar_order;
}

} // namespace g2fib
