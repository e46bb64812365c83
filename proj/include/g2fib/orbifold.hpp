#pragma once

/// Riemann-Hurwitz arithmetic for a group H acting on a curve C with
/// quotient X = C/H of genus h and branch periods r_1..r_s:
///
///   2g(C) - 2 = |H| * (2h - 2 + sum (1 - 1/r_i))
///
/// plus the exhaustive signature optimiser, elliptic orbit sizes, Wiman-type
/// cyclic bounds and a brute-force realisability oracle for cyclic actions.

#include "g2fib/error.hpp"
#include "g2fib/number.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace g2fib {

struct OrbifoldSignature {
    std::int64_t quotient_genus = 0;
    std::vector<std::int64_t> periods;          // sorted ascending, each >= 2
    std::optional<std::int64_t> marked_period;  // ramification index at a distinguished point

    bool operator==(const OrbifoldSignature&) const = default;
};

inline void validate(const OrbifoldSignature& sig) {
    if (sig.quotient_genus < 0) throw BadParameter("quotient genus must be >= 0");
    if (!std::is_sorted(sig.periods.begin(), sig.periods.end()))
        throw BadParameter("periods must be sorted ascending");
    for (auto r : sig.periods)
        if (r < 2) throw BadParameter("periods must be >= 2");
    if (sig.marked_period) {
        const auto r = *sig.marked_period;
        if (r < 1) throw BadParameter("marked period must be >= 1");
        if (r > 1 && std::find(sig.periods.begin(), sig.periods.end(), r) == sig.periods.end())
            throw BadParameter("marked period must be 1 or one of the periods");
    }
}

inline std::string to_string(const OrbifoldSignature& sig) {
    std::string s = "(" + std::to_string(sig.quotient_genus) + ";";
    for (std::size_t i = 0; i < sig.periods.size(); ++i)
        s += (i ? "," : " ") + std::to_string(sig.periods[i]);
    s += ")";
    if (sig.marked_period) s += " r=" + std::to_string(*sig.marked_period);
    return s;
}

/// 2h - 2 + sum (1 - 1/r_i).
inline Rational orbifold_characteristic(const OrbifoldSignature& sig) {
    Rational v(2 * sig.quotient_genus - 2);
    for (auto r : sig.periods) v += Rational(r - 1, r);
    return v;
}

/// Genus of C from |H| = n and the signature; the caller checks integrality.
inline Rational hurwitz_genus(std::int64_t n, const OrbifoldSignature& sig) {
    if (n < 1) throw BadParameter("group order must be >= 1");
    validate(sig);
    return 1 + Rational(n) * orbifold_characteristic(sig) / 2;
}

struct OrbifoldLimits {
    std::int64_t max_h = 2;
    std::int64_t max_periods = 5;
    std::int64_t max_period_value = 100;
    std::int64_t min_h = 0;
};

struct OrbifoldOptimum {
    Rational value;
    OrbifoldSignature witness;
    std::uint64_t nodes_visited = 0;
    std::string certificate;
};

namespace detail {

/// Total order used for deterministic tie-breaks: h, then periods
/// lexicographically, then the marked period.
inline bool witness_less(const OrbifoldSignature& a, const OrbifoldSignature& b) {
    if (a.quotient_genus != b.quotient_genus) return a.quotient_genus < b.quotient_genus;
    if (a.periods != b.periods)
        return std::lexicographical_compare(a.periods.begin(), a.periods.end(), b.periods.begin(), b.periods.end());
    return a.marked_period.value_or(0) < b.marked_period.value_or(0);
}

} // namespace detail

/// Minimises 2h - 2 + sum (1 - 1/r_i) (plus 1/(2r) when `half_term`, with r
/// the ramification index at a marked point, 1 or any period) over
/// signatures in the box whose characteristic is positive.
///
/// Exhaustive branch and bound: the objective is nondecreasing in every
/// period and in the number of periods and strictly increasing in the
/// largest period, so a subtree is cut only when its lower bound already
/// exceeds the incumbent. The optimum must lie strictly inside the box.
inline OrbifoldOptimum minimize_orbifold(bool half_term, const OrbifoldLimits& limits = {}) {
    if (limits.min_h < 0 || limits.max_h < limits.min_h || limits.max_periods < 0 || limits.max_period_value < 2)
        throw BadParameter("invalid orbifold search limits");

    std::optional<Rational> best;
    OrbifoldSignature best_sig;
    std::uint64_t nodes = 0;
    const std::int64_t maxv = limits.max_period_value;
    const Rational min_half = half_term ? Rational(1, 2 * maxv) : Rational(0);

    auto offer = [&](const Rational& value, OrbifoldSignature sig) {
        if (!best || value < *best || (value == *best && detail::witness_less(sig, best_sig))) {
            best = value;
            best_sig = std::move(sig);
        }
    };
    auto exceeds = [&](const Rational& lb) { return best && lb > *best; };

    std::vector<std::int64_t> periods;
    std::function<void(std::int64_t, std::size_t, std::int64_t, const Rational&)> descend;
    descend = [&](std::int64_t h, std::size_t k, std::int64_t lo, const Rational& partial) {
        ++nodes;
        const std::size_t pos = periods.size();
        if (pos == k) {
            // only reached for k == 0: half term uses r = 1
            if (partial > 0) {
                const Rational v = partial + (half_term ? Rational(1, 2) : Rational(0));
                offer(v, {h, {}, half_term ? std::optional<std::int64_t>(1) : std::nullopt});
            }
            return;
        }
        const auto remaining = static_cast<std::int64_t>(k - pos);
        for (std::int64_t r = lo; r <= maxv; ++r) {
            const Rational step(r - 1, r);
            if (remaining == 1) {
                ++nodes;
                const Rational base = partial + step;
                const Rational v = base + (half_term ? Rational(1, 2 * r) : Rational(0));
                if (exceeds(v)) break;
                if (base > 0) {
                    periods.push_back(r);
                    offer(v, {h, periods, half_term ? std::optional<std::int64_t>(r) : std::nullopt});
                    periods.pop_back();
                    break; // larger r only increases the objective
                }
                continue;
            }
            const Rational lb = partial + Rational(remaining) * step + min_half;
            if (exceeds(lb)) break;
            periods.push_back(r);
            descend(h, k, r, partial + step);
            periods.pop_back();
        }
    };

    for (std::int64_t h = limits.min_h; h <= limits.max_h; ++h)
        for (std::int64_t k = 0; k <= limits.max_periods; ++k)
            descend(h, static_cast<std::size_t>(k), 2, Rational(2 * h - 2));

    if (!best) throw LimitsTooSmall("no signature with positive characteristic inside the search box");

    const bool on_edge = (best_sig.quotient_genus == limits.max_h && limits.max_h > limits.min_h) ||
                         static_cast<std::int64_t>(best_sig.periods.size()) == limits.max_periods ||
                         (!best_sig.periods.empty() && best_sig.periods.back() == maxv);
    if (on_edge)
        throw LimitsTooSmall("minimum " + to_fraction_string(*best) + " attained on the box boundary at " +
                             to_string(best_sig));

    OrbifoldOptimum out;
    out.value = *best;
    out.witness = best_sig;
    out.nodes_visited = nodes;
    out.certificate = "exhaustive over h in [" + std::to_string(limits.min_h) + "," + std::to_string(limits.max_h) +
                      "], <= " + std::to_string(limits.max_periods) + " periods in [2," + std::to_string(maxv) +
                      "]; objective nondecreasing in each period, in h and in the period count, "
                      "optimum strictly inside the box";
    return out;
}

enum class JClass { generic, j1728, j0 };

/// Points in a smallest orbit of a finite group H acting on an elliptic
/// curve: |H|/2, |H|/4 or |H|/6 depending on the j-invariant.
inline std::int64_t elliptic_min_orbit(std::int64_t h_order, JClass j) {
    if (h_order < 1) throw BadParameter("|H| must be >= 1");
    const std::int64_t d = j == JClass::generic ? 2 : j == JClass::j1728 ? 4 : 6;
    if (h_order % d != 0)
        throw IndivisibleOrder("|H| = " + std::to_string(h_order) + " is not divisible by " + std::to_string(d));
    return h_order / d;
}

/// Largest cyclic automorphism group of a genus-g curve: 4g + 2, or 3g + 3
/// when every point stabilizer has odd order.
inline std::int64_t wiman_bound(std::int64_t genus, bool odd_stabilizers_only) {
    if (genus < 2) throw BadParameter("genus must be >= 2");
    return odd_stabilizers_only ? 3 * genus + 3 : 4 * genus + 2;
}

/// Genus of a cyclic k-fold cover of a genus-g' curve with n totally
/// ramified points: 2g - 2 = 2kg' - 2k + n(k - 1).
inline Rational eq1_genus(std::int64_t k, std::int64_t g_prime, std::int64_t n_fixed) {
    if (k < 2 || g_prime < 0 || n_fixed < 0) throw BadParameter("cover data out of range");
    return Rational(2 * k * g_prime - 2 * k + n_fixed * (k - 1) + 2, 2);
}

struct CyclicActionDatum {
    std::int64_t group_order = 1;
    OrbifoldSignature signature;
    std::vector<std::int64_t> generating_elements; // one residue mod N per period

    bool operator==(const CyclicActionDatum&) const = default;
};

inline std::int64_t element_order(std::int64_t residue, std::int64_t n) {
    const std::int64_t c = ((residue % n) + n) % n;
    return c == 0 ? 1 : n / gcd64(c, n);
}

/// Checks the branched-cover conditions for Z_N with the datum's
/// signature: residue orders equal the periods, residues sum to zero and,
/// over a rational quotient, generate Z_N; plus Riemann-Hurwitz for `genus`.
inline bool is_realizable(const CyclicActionDatum& d, std::int64_t genus) {
    const std::int64_t n = d.group_order;
    if (n < 1 || d.generating_elements.size() != d.signature.periods.size()) return false;
    std::int64_t sum = 0;
    std::int64_t g = n;
    for (std::size_t i = 0; i < d.generating_elements.size(); ++i) {
        const std::int64_t c = ((d.generating_elements[i] % n) + n) % n;
        if (element_order(c, n) != d.signature.periods[i]) return false;
        sum = (sum + c) % n;
        g = gcd64(g, c);
    }
    if (sum != 0) return false;
    if (d.signature.quotient_genus == 0 && g != 1) return false;
    return hurwitz_genus(n, d.signature) == Rational(genus);
}

struct CyclicOracleResult {
    std::int64_t max_realized_order = 1;
    CyclicActionDatum witness;
    std::uint64_t signatures_tested = 0;
};

namespace detail {

/// Smallest residue tuple realising the periods, or nullopt.
inline std::optional<std::vector<std::int64_t>> find_residues(std::int64_t n, const std::vector<std::int64_t>& periods,
                                                              bool need_generation) {
    const std::size_t s = periods.size();
    // feasible[i][sum * (n+1) + gcd]: positions i.. can close the tuple
    const std::size_t width = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
    std::vector<std::vector<char>> feasible(s + 1, std::vector<char>(width, 0));
    auto idx = [n](std::int64_t sum, std::int64_t g) { return static_cast<std::size_t>(sum * (n + 1) + g); };
    for (std::int64_t g = 1; g <= n; ++g)
        if (n % g == 0 && (!need_generation || g == 1)) feasible[s][idx(0, g)] = 1;
    std::vector<std::vector<std::int64_t>> choices(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::int64_t c = 1; c < n; ++c)
            if (n / gcd64(c, n) == periods[i]) choices[i].push_back(c);
    for (std::size_t i = s; i-- > 0;)
        for (std::int64_t sum = 0; sum < n; ++sum)
            for (std::int64_t g = 1; g <= n; ++g) {
                if (n % g != 0) continue;
                for (auto c : choices[i])
                    if (feasible[i + 1][idx((sum + c) % n, gcd64(g, c))]) {
                        feasible[i][idx(sum, g)] = 1;
                        break;
                    }
            }
    if (!feasible[0][idx(0, n)]) return std::nullopt;
    std::vector<std::int64_t> out;
    std::int64_t sum = 0;
    std::int64_t g = n;
    for (std::size_t i = 0; i < s; ++i)
        for (auto c : choices[i])
            if (feasible[i + 1][idx((sum + c) % n, gcd64(g, c))]) {
                out.push_back(c);
                sum = (sum + c) % n;
                g = gcd64(g, c);
                break;
            }
    return out;
}

} // namespace detail

/// Largest N <= max_order such that Z_N acts on some genus-`genus` curve,
/// found by enumerating every signature allowed by Riemann-Hurwitz (periods
/// dividing N) and testing cyclic realisability. With
/// `odd_stabilizers_only`, all periods must be odd.
inline CyclicOracleResult cyclic_action_oracle(std::int64_t genus, bool odd_stabilizers_only, std::int64_t max_order) {
    if (genus < 2) throw BadParameter("genus must be >= 2");
    if (max_order < 4 * genus + 2) throw BadParameter("max_order must be >= 4g + 2");
    CyclicOracleResult result;
    for (std::int64_t n = max_order; n >= 2; --n) {
        std::vector<std::int64_t> divisors;
        for (std::int64_t d = 2; d <= n; ++d)
            if (n % d == 0 && (!odd_stabilizers_only || d % 2 == 1)) divisors.push_back(d);
        std::optional<CyclicActionDatum> found;
        // 2g - 2 - n(2h - 2) = sum over periods of (n - n/r)
        for (std::int64_t h = 0; !found && n * (2 * h - 2) <= 2 * genus - 2; ++h) {
            const std::int64_t target = 2 * genus - 2 - n * (2 * h - 2);
            std::vector<std::int64_t> periods;
            std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t from, std::int64_t left) {
                if (found) return;
                if (left == 0) {
                    ++result.signatures_tested;
                    if (auto res = detail::find_residues(n, periods, h == 0))
                        found = CyclicActionDatum{n, {h, periods, std::nullopt}, *res};
                    return;
                }
                for (std::size_t i = from; i < divisors.size() && !found; ++i) {
                    const std::int64_t w = n - n / divisors[i];
                    if (w > left) break;
                    periods.push_back(divisors[i]);
                    fill(i, left - w);
                    periods.pop_back();
                }
            };
            fill(0, target);
        }
        if (found) {
            result.max_realized_order = n;
            result.witness = *found;
            return result;
        }
    }
    result.witness = CyclicActionDatum{1, {genus, {}, std::nullopt}, {}};
    return result;
}

} // namespace g2fib
