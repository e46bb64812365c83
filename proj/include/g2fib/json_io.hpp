#pragma once

/// JSON encodings shared by the scenario reports and the CLI.
///
/// Number policy: integers are JSON numbers (strings only past 64 bits),
/// non-integral rationals are exact fraction strings such as "25/2".

#include "g2fib/bounds.hpp"
#include "g2fib/catalog.hpp"
#include "g2fib/germs.hpp"
#include "g2fib/number.hpp"
#include "g2fib/orbifold.hpp"
#include "g2fib/xiao.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>

namespace g2fib::json_io {

using Json = nlohmann::ordered_json;

inline Json integer(const Integer& z) {
    if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(z));
    return Json(z.str());
}

inline Json rational(const Rational& q) {
    if (is_integral(q)) return integer(boost::multiprecision::numerator(q));
    return Json(to_fraction_string(q));
}

inline Integer to_integer(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

inline Rational to_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_fraction(j.get<std::string>());
    throw std::invalid_argument("expected an exact number");
}

inline Json verdict(const BoundVerdict& v) {
    Json j;
    j["formula_name"] = v.formula_name;
    j["value"] = rational(v.bound_value);
    j["sharp"] = v.sharp;
    j["quote"] = v.source_quote;
    j["note"] = v.note;
    return j;
}

inline BoundVerdict to_verdict(const Json& j) {
    return {to_rational(j.at("value")), j.at("formula_name").get<std::string>(), j.at("sharp").get<bool>(),
            j.at("quote").get<std::string>(), j.at("note").get<std::string>()};
}

inline Json budget(const SingularityBudget& b) {
    Json j;
    j["s2"] = integer(b.s2_total);
    j["s3"] = integer(b.s3_total);
    return j;
}

inline Json signature(const OrbifoldSignature& s) {
    Json j;
    j["quotient_genus"] = s.quotient_genus;
    j["periods"] = s.periods;
    j["marked_period"] = s.marked_period ? Json(*s.marked_period) : Json(nullptr);
    return j;
}

inline Json germ_row(const GermRow& row) {
    Json j;
    j["group"] = row.group.name();
    j["case"] = row.case_id;
    if (row.takes_k()) {
        j["k_min"] = row.k_min;
        j["k_max"] = row.k_max < 0 ? Json(nullptr) : Json(row.k_max);
    } else {
        j["k_min"] = nullptr;
        j["k_max"] = nullptr;
    }
    j["equation"] = row.equation;
    j["s2_min"] = row.indices.s2_min;
    j["s3"] = row.indices.s3;
    j["s3_conditional"] = row.indices.s3_conditional;
    j["exact"] = row.indices.exact;
    j["k1_disc_valuation"] = row.k1_disc_valuation ? Json(*row.k1_disc_valuation) : Json(nullptr);
    return j;
}

inline Json verification(const VerificationReport& r) {
    Json j;
    j["id"] = r.id;
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = integer(v);
    j["parameters"] = params;
    j["ksq_double_cover"] = integer(r.ksq_double_cover);
    j["budget"] = budget(r.budget);
    j["ksq_singularity_indices"] = integer(r.ksq_singularity);
    j["paths_agree"] = r.paths_agree;
    j["g_order"] = integer(r.g_order);
    j["identity_value"] = rational(r.identity_value);
    j["bound_name"] = r.bound_name ? Json(*r.bound_name) : Json(nullptr);
    j["bound_value"] = r.bound_value ? rational(*r.bound_value) : Json(nullptr);
    j["attains_bound"] = r.attains_bound;
    Json vs = Json::array();
    for (const auto& v : r.verdicts) vs.push_back(verdict(v));
    j["verdicts"] = vs;
    j["sharpest"] = r.sharpest_verdict ? Json(r.sharpest_verdict->formula_name) : Json(nullptr);
    j["within_all_verdicts"] = r.within_all_verdicts;
    j["exceptional_row_found"] = r.exceptional_row_found ? Json(*r.exceptional_row_found) : Json(nullptr);
    j["k_order_within_cap"] = r.k_order_within_cap;
    j["notes"] = r.notes;
    return j;
}

} // namespace g2fib::json_io
