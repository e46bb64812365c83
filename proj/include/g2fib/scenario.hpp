#pragma once

/// Plain-text fibration scenarios (`.fib`) and their analysis.
///
///   # comment
///   base_genus = 0
///   surface = product | hirzebruch:<e>
///   branch = <a>,<b>
///   s2 = <n>          s3 = <n>
///   group = full | abelian | cyclic
///   locally_trivial = true | false
///   minimal = true | false
///   germ group=<G> case=<n> [k=<n>] count=<n> [orbit=big|fixed:<n>]
///
/// Keys may appear in any order, at most once each; germ lines repeat.

#include "g2fib/bounds.hpp"
#include "g2fib/error.hpp"
#include "g2fib/germs.hpp"
#include "g2fib/json_io.hpp"
#include "g2fib/number.hpp"
#include "g2fib/ruled_surface.hpp"
#include "g2fib/xiao.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace g2fib {

struct GermSpec {
    GermCase germ;
    Integer count = 1;
    std::optional<std::int64_t> fixed_stabilizer; // nullopt = big orbit
    bool orbit_explicit = false;

    bool operator==(const GermSpec&) const = default;
};

struct FibrationScenario {
    Integer base_genus = 0;
    std::optional<RuledSurfaceModel> surface;
    std::optional<DivisorClass> branch;
    std::vector<GermSpec> germs;
    std::optional<Integer> s2_override;
    std::optional<Integer> s3_override;
    std::optional<GroupKind> group_kind;
    std::optional<bool> locally_trivial;
    std::optional<bool> minimal_surface;

    GroupKind effective_kind() const { return group_kind.value_or(GroupKind::full); }
    bool operator==(const FibrationScenario&) const = default;
};

struct ScenarioReport {
    FibrationScenario scenario;
    SingularityBudget budget;
    RelativeInvariants relative;
    GlobalInvariants global;
    bool locally_trivial = false;
    std::optional<Integer> double_cover_ksq;
    std::vector<BoundVerdict> verdicts;
    std::vector<std::string> warnings;

    bool operator==(const ScenarioReport&) const = default;
};

/// Groups accepted on germ lines.
inline const std::vector<std::string_view>& scenario_germ_groups() {
    static const std::vector<std::string_view> names = {"Z2", "Z3", "Z4", "Z5", "Z6", "D4", "D6", "D12", "T12", "O24"};
    return names;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

inline std::vector<Token> split_ws(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        if (i > start) out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

inline std::string_view trim(std::string_view s, std::size_t& offset) {
    std::size_t b = 0;
    while (b < s.size() && is_space(s[b])) ++b;
    std::size_t e = s.size();
    while (e > b && is_space(s[e - 1])) --e;
    offset += b;
    return s.substr(b, e - b);
}

class LineParser {
public:
    explicit LineParser(std::size_t line) : line_(line) {}

    [[noreturn]] void fail(std::size_t column, const std::string& msg) const { throw SyntaxError(line_, column, msg); }

    Integer integer(std::string_view s, std::size_t column, bool allow_negative = false) const {
        std::size_t i = 0;
        if (allow_negative && !s.empty() && s[0] == '-') i = 1;
        if (i == s.size()) fail(column, "expected an integer, got '" + std::string(s) + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') fail(column, "expected an integer, got '" + std::string(s) + "'");
        if (s.size() - i > 1 && s[i] == '0') fail(column, "leading zero in '" + std::string(s) + "'");
        if (s.size() - i > 30) fail(column, "integer too large");
        return Integer(std::string(s));
    }

    std::int64_t small(std::string_view s, std::size_t column, std::int64_t min_value) const {
        const Integer v = integer(s, column);
        if (v > 1'000'000'000) fail(column, "value too large");
        if (v < min_value) fail(column, "value must be >= " + std::to_string(min_value));
        return static_cast<std::int64_t>(v);
    }

    bool boolean(std::string_view s, std::size_t column) const {
        if (s == "true") return true;
        if (s == "false") return false;
        fail(column, "expected true or false, got '" + std::string(s) + "'");
    }

private:
    std::size_t line_;
};

} // namespace detail

inline FibrationScenario parse(std::string_view text) {
    FibrationScenario sc;
    std::set<std::string, std::less<>> seen;
    std::optional<Integer> surface_e;
    bool surface_product = false;
    std::size_t line_no = 0;
    std::size_t branch_line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++line_no;
        const bool last = end == text.size();
        pos = end + 1;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::size_t offset = 0;
        std::string_view line = detail::trim(raw, offset);
        const detail::LineParser lp(line_no);
        if (!line.empty()) {
            auto tokens = detail::split_ws(line);
            if (tokens.front().text == "germ") {
                GermSpec spec;
                std::set<std::string_view> keys;
                std::optional<std::int64_t> case_id;
                std::optional<std::int64_t> k;
                std::optional<std::string_view> group;
                std::size_t group_col = 0;
                bool have_count = false;
                for (std::size_t t = 1; t < tokens.size(); ++t) {
                    const auto [tok, col0] = tokens[t];
                    const std::size_t col = col0 + offset;
                    const auto eq = tok.find('=');
                    if (eq == std::string_view::npos || eq == 0) lp.fail(col, "expected name=value in germ line");
                    const std::string_view key = tok.substr(0, eq);
                    const std::string_view val = tok.substr(eq + 1);
                    const std::size_t vcol = col + eq + 1;
                    if (!keys.insert(key).second) lp.fail(col, "duplicate germ attribute '" + std::string(key) + "'");
                    if (key == "group") {
                        if (std::find(scenario_germ_groups().begin(), scenario_germ_groups().end(), val) ==
                            scenario_germ_groups().end())
                            lp.fail(vcol, "unknown germ group '" + std::string(val) + "'");
                        group = val;
                        group_col = vcol;
                    } else if (key == "case") {
                        case_id = lp.small(val, vcol, 0);
                    } else if (key == "k") {
                        k = lp.small(val, vcol, 1);
                    } else if (key == "count") {
                        spec.count = lp.integer(val, vcol);
                        if (spec.count < 1) lp.fail(vcol, "count must be >= 1");
                        have_count = true;
                    } else if (key == "orbit") {
                        spec.orbit_explicit = true;
                        if (val == "big") {
                            spec.fixed_stabilizer.reset();
                        } else if (val.substr(0, 6) == "fixed:") {
                            spec.fixed_stabilizer = lp.small(val.substr(6), vcol + 6, 1);
                        } else {
                            lp.fail(vcol, "orbit must be big or fixed:<n>");
                        }
                    } else {
                        lp.fail(col, "unknown germ attribute '" + std::string(key) + "'");
                    }
                }
                const std::size_t eol = offset + line.size() + 1;
                if (!group) lp.fail(eol, "germ line without group=");
                if (!case_id) lp.fail(eol, "germ line without case=");
                if (!have_count) lp.fail(eol, "germ line without count=");
                spec.germ.group = *FiniteMobiusGroup::from_name(*group);
                spec.germ.case_id = static_cast<int>(*case_id);
                bool row_takes_k = false;
                bool row_exists = false;
                for (const auto& row : germ_rows())
                    if (row.group == spec.germ.group && row.case_id == spec.germ.case_id) {
                        row_exists = true;
                        row_takes_k = row_takes_k || row.takes_k();
                    }
                spec.germ.k = k ? k : (row_takes_k ? std::optional<std::int64_t>(1) : std::nullopt);
                if (!row_exists || find_germ_row(spec.germ) == nullptr)
                    throw SemanticError("line " + std::to_string(line_no) + ", column " + std::to_string(group_col) +
                                        ": germ " + to_string(spec.germ) + " is not a classified case");
                sc.germs.push_back(spec);
            } else {
                const auto eq = line.find('=');
                if (eq == std::string_view::npos) lp.fail(offset + 1, "expected key = value");
                std::size_t key_off = offset;
                const std::string_view key = detail::trim(line.substr(0, eq), key_off);
                std::size_t val_off = offset + eq + 1;
                const std::string_view val = detail::trim(line.substr(eq + 1), val_off);
                const std::size_t kcol = key_off + 1;
                const std::size_t vcol = val_off + 1;
                if (key.empty()) lp.fail(kcol, "missing key before '='");
                if (val.empty()) lp.fail(vcol, "missing value for '" + std::string(key) + "'");
                static const std::set<std::string_view> known = {"base_genus", "surface", "branch", "s2", "s3",
                                                                 "group", "locally_trivial", "minimal"};
                if (!known.contains(key)) lp.fail(kcol, "unknown key '" + std::string(key) + "'");
                if (!seen.insert(std::string(key)).second) lp.fail(kcol, "duplicate key '" + std::string(key) + "'");
                if (key == "base_genus") {
                    sc.base_genus = lp.integer(val, vcol);
                } else if (key == "surface") {
                    if (val == "product") {
                        surface_product = true;
                    } else if (val.substr(0, 11) == "hirzebruch:") {
                        surface_e = lp.integer(val.substr(11), vcol + 11);
                    } else {
                        lp.fail(vcol, "surface must be product or hirzebruch:<e>");
                    }
                } else if (key == "branch") {
                    const auto comma = val.find(',');
                    if (comma == std::string_view::npos) lp.fail(vcol, "branch must be <a>,<b>");
                    sc.branch = DivisorClass{lp.integer(val.substr(0, comma), vcol, true),
                                             lp.integer(val.substr(comma + 1), vcol + comma + 1, true)};
                    branch_line = line_no;
                } else if (key == "s2") {
                    sc.s2_override = lp.integer(val, vcol);
                } else if (key == "s3") {
                    sc.s3_override = lp.integer(val, vcol);
                } else if (key == "group") {
                    sc.group_kind = group_kind_from_string(val);
                    if (!sc.group_kind) lp.fail(vcol, "group must be full, abelian or cyclic");
                } else if (key == "locally_trivial") {
                    sc.locally_trivial = lp.boolean(val, vcol);
                } else {
                    sc.minimal_surface = lp.boolean(val, vcol);
                }
            }
        }
        if (last) break;
    }
    if (!seen.contains("base_genus")) throw SyntaxError(line_no, 1, "missing base_genus");
    if (surface_product) sc.surface = RuledSurfaceModel::product(sc.base_genus);
    if (surface_e) sc.surface = RuledSurfaceModel::hirzebruch(*surface_e, sc.base_genus);
    if (sc.branch && !sc.surface)
        throw SemanticError("line " + std::to_string(branch_line) + ": branch class given without a surface");
    return sc;
}

/// Canonical text form; parse(serialize(s)) == s for every parsed s.
inline std::string serialize(const FibrationScenario& sc) {
    std::ostringstream out;
    out << "base_genus = " << sc.base_genus << '\n';
    if (sc.surface) {
        if (sc.surface->kind == SurfaceKind::product) out << "surface = product\n";
        else out << "surface = hirzebruch:" << sc.surface->e << '\n';
    }
    if (sc.branch) out << "branch = " << sc.branch->a << ',' << sc.branch->b << '\n';
    if (sc.s2_override) out << "s2 = " << *sc.s2_override << '\n';
    if (sc.s3_override) out << "s3 = " << *sc.s3_override << '\n';
    if (sc.group_kind) out << "group = " << to_string(*sc.group_kind) << '\n';
    if (sc.locally_trivial) out << "locally_trivial = " << (*sc.locally_trivial ? "true" : "false") << '\n';
    if (sc.minimal_surface) out << "minimal = " << (*sc.minimal_surface ? "true" : "false") << '\n';
    for (const auto& g : sc.germs) {
        out << "germ group=" << g.germ.group.name() << " case=" << g.germ.case_id;
        if (g.germ.k) out << " k=" << *g.germ.k;
        out << " count=" << g.count;
        if (g.orbit_explicit) {
            if (g.fixed_stabilizer) out << " orbit=fixed:" << *g.fixed_stabilizer;
            else out << " orbit=big";
        }
        out << '\n';
    }
    return out.str();
}

inline SingularityBudget germ_budget(const std::vector<GermSpec>& germs) {
    SingularityBudget b;
    for (const auto& g : germs) {
        const GermIndices idx = classify(g.germ);
        b.s2_total += idx.s2_min * g.count;
        b.s3_total += idx.s3 * g.count;
    }
    return b;
}

inline ScenarioReport analyze(const FibrationScenario& sc) {
    ScenarioReport rep;
    rep.scenario = sc;
    const bool overridden = sc.s2_override || sc.s3_override;
    if (overridden) {
        rep.budget = {sc.s2_override.value_or(0), sc.s3_override.value_or(0)};
        if (!sc.germs.empty()) rep.warnings.push_back("s2/s3 overrides replace the germ-derived budget");
    } else if (!sc.germs.empty()) {
        rep.budget = germ_budget(sc.germs);
        bool bound_only = false;
        bool conditional = false;
        for (const auto& g : sc.germs) {
            const GermIndices idx = classify(g.germ);
            bound_only = bound_only || !idx.exact;
            conditional = conditional || idx.s3_conditional;
        }
        if (bound_only) rep.warnings.push_back("budget uses lower bounds; K^2 is a lower bound");
        if (conditional) rep.warnings.push_back("conditional germ rows assume s3(F0) = 0");
    } else {
        throw SemanticError("scenario has no singularity budget (no germ lines and no s2/s3)");
    }

    rep.relative = relative_invariants(rep.budget);
    rep.global = global_invariants(rep.budget, sc.base_genus);
    rep.locally_trivial = rep.relative.ksq_rel == 0;
    if (sc.locally_trivial && *sc.locally_trivial != rep.locally_trivial)
        rep.warnings.push_back(std::string("declared locally_trivial = ") + (*sc.locally_trivial ? "true" : "false") +
                               " contradicts the budget; using " + (rep.locally_trivial ? "true" : "false"));

    if (sc.surface && sc.branch) {
        rep.double_cover_ksq = double_cover_ksq(*sc.surface, *sc.branch);
        if (*rep.double_cover_ksq != rep.global.ksq)
            rep.warnings.push_back("double-cover K^2 = " + rep.double_cover_ksq->str() +
                                   " differs from the singularity-index K^2 = " + rep.global.ksq.str());
    }

    rep.verdicts = evaluate(sc.base_genus, rep.global.ksq, sc.effective_kind(), rep.locally_trivial,
                            sc.minimal_surface.value_or(false));
    return rep;
}

enum class ReportFormat { text, json };

namespace json_io {

inline Json scenario(const FibrationScenario& sc) {
    Json j;
    j["base_genus"] = integer(sc.base_genus);
    if (sc.surface)
        j["surface"] = sc.surface->kind == SurfaceKind::product ? std::string("product")
                                                                : "hirzebruch:" + sc.surface->e.str();
    else
        j["surface"] = nullptr;
    j["branch"] = sc.branch ? Json::array({integer(sc.branch->a), integer(sc.branch->b)}) : Json(nullptr);
    Json germs = Json::array();
    for (const auto& g : sc.germs) {
        Json gj;
        gj["group"] = g.germ.group.name();
        gj["case"] = g.germ.case_id;
        gj["k"] = g.germ.k ? Json(*g.germ.k) : Json(nullptr);
        gj["count"] = integer(g.count);
        if (!g.orbit_explicit) gj["orbit"] = nullptr;
        else if (g.fixed_stabilizer) gj["orbit"] = "fixed:" + std::to_string(*g.fixed_stabilizer);
        else gj["orbit"] = "big";
        germs.push_back(gj);
    }
    j["germs"] = germs;
    j["s2"] = sc.s2_override ? integer(*sc.s2_override) : Json(nullptr);
    j["s3"] = sc.s3_override ? integer(*sc.s3_override) : Json(nullptr);
    j["group"] = sc.group_kind ? Json(std::string(to_string(*sc.group_kind))) : Json(nullptr);
    j["locally_trivial"] = sc.locally_trivial ? Json(*sc.locally_trivial) : Json(nullptr);
    j["minimal"] = sc.minimal_surface ? Json(*sc.minimal_surface) : Json(nullptr);
    return j;
}

inline FibrationScenario to_scenario(const Json& j) {
    FibrationScenario sc;
    sc.base_genus = to_integer(j.at("base_genus"));
    if (!j.at("surface").is_null()) {
        const auto s = j.at("surface").get<std::string>();
        sc.surface = s == "product" ? RuledSurfaceModel::product(sc.base_genus)
                                    : RuledSurfaceModel::hirzebruch(Integer(s.substr(11)), sc.base_genus);
    }
    if (!j.at("branch").is_null()) sc.branch = DivisorClass{to_integer(j.at("branch")[0]), to_integer(j.at("branch")[1])};
    for (const auto& gj : j.at("germs")) {
        GermSpec g;
        g.germ.group = *FiniteMobiusGroup::from_name(gj.at("group").get<std::string>());
        g.germ.case_id = gj.at("case").get<int>();
        if (!gj.at("k").is_null()) g.germ.k = gj.at("k").get<std::int64_t>();
        g.count = to_integer(gj.at("count"));
        if (!gj.at("orbit").is_null()) {
            g.orbit_explicit = true;
            const auto o = gj.at("orbit").get<std::string>();
            if (o != "big") g.fixed_stabilizer = std::stoll(o.substr(6));
        }
        sc.germs.push_back(g);
    }
    if (!j.at("s2").is_null()) sc.s2_override = to_integer(j.at("s2"));
    if (!j.at("s3").is_null()) sc.s3_override = to_integer(j.at("s3"));
    if (!j.at("group").is_null()) sc.group_kind = group_kind_from_string(j.at("group").get<std::string>());
    if (!j.at("locally_trivial").is_null()) sc.locally_trivial = j.at("locally_trivial").get<bool>();
    if (!j.at("minimal").is_null()) sc.minimal_surface = j.at("minimal").get<bool>();
    return sc;
}

inline Json report(const ScenarioReport& r) {
    Json j;
    j["scenario"] = scenario(r.scenario);
    j["budget"] = budget(r.budget);
    Json inv;
    inv["ksq_rel"] = integer(r.relative.ksq_rel);
    inv["chi_f"] = integer(r.relative.chi_f);
    inv["n"] = integer(r.relative.n);
    inv["ksq"] = integer(r.global.ksq);
    inv["chi"] = integer(r.global.chi);
    inv["locally_trivial"] = r.locally_trivial;
    inv["double_cover_ksq"] = r.double_cover_ksq ? integer(*r.double_cover_ksq) : Json(nullptr);
    j["invariants"] = inv;
    Json vs = Json::array();
    for (const auto& v : r.verdicts) vs.push_back(verdict(v));
    j["verdicts"] = vs;
    j["warnings"] = r.warnings;
    return j;
}

inline ScenarioReport to_report(const Json& j) {
    ScenarioReport r;
    r.scenario = to_scenario(j.at("scenario"));
    r.budget = {to_integer(j.at("budget").at("s2")), to_integer(j.at("budget").at("s3"))};
    const Json& inv = j.at("invariants");
    r.relative = {to_integer(inv.at("ksq_rel")), to_integer(inv.at("chi_f")), to_integer(inv.at("n"))};
    r.global = {to_integer(inv.at("ksq")), to_integer(inv.at("chi"))};
    r.locally_trivial = inv.at("locally_trivial").get<bool>();
    if (!inv.at("double_cover_ksq").is_null()) r.double_cover_ksq = to_integer(inv.at("double_cover_ksq"));
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(to_verdict(v));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
}

} // namespace json_io

inline std::string emit_report(const ScenarioReport& r, ReportFormat format) {
    if (format == ReportFormat::json) return json_io::report(r).dump(2) + "\n";

    std::ostringstream out;
    auto row = [&](std::string_view label, const std::string& value) {
        out << "  " << label << std::string(label.size() < 18 ? 18 - label.size() : 1, ' ') << value << '\n';
    };
    out << "scenario\n";
    std::istringstream canon(serialize(r.scenario));
    for (std::string l; std::getline(canon, l);) out << "  " << l << '\n';
    out << "budget\n";
    row("s2", r.budget.s2_total.str());
    row("s3", r.budget.s3_total.str());
    out << "invariants\n";
    row("K^2_{S/C}", r.relative.ksq_rel.str());
    row("chi_f", r.relative.chi_f.str());
    row("n", r.relative.n.str());
    row("K^2", r.global.ksq.str());
    row("chi(O_S)", r.global.chi.str());
    row("locally_trivial", r.locally_trivial ? "true" : "false");
    if (r.double_cover_ksq) row("double_cover_K^2", r.double_cover_ksq->str());
    out << "verdicts\n";
    for (const auto& v : r.verdicts) {
        std::string name = v.formula_name;
        std::string value = to_fraction_string(v.bound_value);
        out << "  " << name << std::string(name.size() < 20 ? 20 - name.size() : 1, ' ') << value
            << std::string(value.size() < 10 ? 10 - value.size() : 1, ' ') << (v.sharp ? "sharp " : "      ")
            << v.source_quote << '\n';
    }
    for (const auto& w : r.warnings) out << "WARN " << w << '\n';
    return out.str();
}

} // namespace g2fib
