// g2fib: command line front end.
//
// Exit status: 0 success, 2 malformed input or flags, 3 any other failure
// reported by the library (inconsistent budget, bad parameter, ...).

#include "g2fib/bounds.hpp"
#include "g2fib/catalog.hpp"
#include "g2fib/germs.hpp"
#include "g2fib/json_io.hpp"
#include "g2fib/orbifold.hpp"
#include "g2fib/scenario.hpp"
#include "g2fib/xiao.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

namespace {

using namespace g2fib;
using json_io::Json;

bool g_json = false;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::int64_t> parse_periods(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) throw BadParameter("bad period '" + item + "'");
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- invariants

struct InvariantsArgs {
    long long s2 = 0, s3 = 0, base_genus = 0;
};

void run_invariants(const InvariantsArgs& a) {
    const SingularityBudget b{a.s2, a.s3};
    const auto rel = relative_invariants(b);
    const auto glob = global_invariants(b, a.base_genus);
    if (g_json) {
        Json j;
        j["budget"] = json_io::budget(b);
        j["ksq_rel"] = json_io::integer(rel.ksq_rel);
        j["chi_f"] = json_io::integer(rel.chi_f);
        j["n"] = json_io::integer(rel.n);
        j["base_genus"] = a.base_genus;
        j["ksq"] = json_io::integer(glob.ksq);
        j["chi"] = json_io::integer(glob.chi);
        j["locally_trivial"] = is_locally_trivial(b);
        emit(j);
        return;
    }
    std::cout << "s2 = " << a.s2 << ", s3 = " << a.s3 << ", g(C) = " << a.base_genus << '\n'
              << "K^2_{S/C} = " << rel.ksq_rel << "\nchi_f     = " << rel.chi_f << "\nn         = " << rel.n
              << "\nK^2       = " << glob.ksq << "\nchi(O_S)  = " << glob.chi
              << "\nlocally trivial: " << (is_locally_trivial(b) ? "yes" : "no") << '\n';
}

// --------------------------------------------------------------------- germ

struct GermArgs {
    std::string group;
    int case_id = -1;
    std::optional<std::int64_t> k;
    bool table = false;
};

void run_germ(const GermArgs& a) {
    if (a.table || a.group.empty()) {
        if (g_json) {
            Json j;
            j["version"] = kGermTableVersion;
            Json rows = Json::array();
            for (const auto& r : germ_rows()) rows.push_back(json_io::germ_row(r));
            j["rows"] = rows;
            Json ratios = Json::array();
            for (const auto& r : ratio_table())
                ratios.push_back({{"group", r.group.name()}, {"lift_order", r.lift_order}, {"s2_min", r.s2_min},
                                  {"max_ratio", json_io::rational(r.max_ratio)}});
            j["ratios"] = ratios;
            emit(j);
            return;
        }
        std::cout << "germ table v" << kGermTableVersion << '\n';
        std::cout << std::left << std::setw(6) << "group" << std::setw(6) << "case" << std::setw(8) << "k"
                  << std::setw(8) << "s2" << std::setw(6) << "s3" << std::setw(6) << "disc" << "equation\n";
        for (const auto& r : germ_rows()) {
            std::string k = "-";
            if (r.takes_k()) k = std::to_string(r.k_min) + ".." + (r.k_max < 0 ? "" : std::to_string(r.k_max));
            std::string s2 = (r.indices.exact ? "=" : ">=") + std::to_string(r.indices.s2_min);
            std::string s3 = std::to_string(r.indices.s3) + (r.indices.s3_conditional ? "*" : "");
            std::cout << std::setw(6) << r.group.name() << std::setw(6) << r.case_id << std::setw(8) << k
                      << std::setw(8) << s2 << std::setw(6) << s3 << std::setw(6)
                      << (r.k1_disc_valuation ? std::to_string(*r.k1_disc_valuation) : "-") << r.equation << '\n';
        }
        std::cout << "(* row assumes s3(F0) = 0)\n\nratios |K_Delta| / s2(F0)\n";
        for (const auto& r : ratio_table())
            std::cout << "  " << std::setw(4) << r.group.name() << std::setw(4) << r.lift_order << " >="
                      << std::setw(3) << r.s2_min << " <= " << to_fraction_string(r.max_ratio) << '\n';
        return;
    }
    const auto g = FiniteMobiusGroup::from_name(a.group);
    if (!g) throw BadParameter("unknown group '" + a.group + "'");
    const GermCase gc{*g, a.case_id, a.k};
    const auto idx = classify(gc);
    if (g_json) {
        emit({{"germ", to_string(gc)},
              {"s2_min", idx.s2_min},
              {"s3", idx.s3},
              {"s3_conditional", idx.s3_conditional},
              {"exact", idx.exact}});
        return;
    }
    std::cout << to_string(gc) << ": s2 " << (idx.exact ? "= " : ">= ") << idx.s2_min << ", s3 = " << idx.s3
              << (idx.s3_conditional ? " (bound assumes s3 = 0)" : "") << '\n';
}

// ----------------------------------------------------------------- orbifold

struct OrbifoldArgs {
    bool half_term = false;
    OrbifoldLimits limits;
    long long order = 1;
    long long h = 0;
    std::string periods;
    std::string j = "generic";
    long long genus = 2;
    bool odd = false;
    long long max_order = 0;
};

void run_minimize(const OrbifoldArgs& a) {
    const auto best = minimize_orbifold(a.half_term, a.limits);
    if (g_json) {
        emit({{"value", json_io::rational(best.value)},
              {"witness", json_io::signature(best.witness)},
              {"nodes_visited", best.nodes_visited},
              {"certificate", best.certificate}});
        return;
    }
    std::cout << "minimum " << to_fraction_string(best.value) << " at " << to_string(best.witness) << '\n'
              << best.certificate << " (" << best.nodes_visited << " nodes)\n";
}

void run_genus(const OrbifoldArgs& a) {
    const OrbifoldSignature sig{a.h, parse_periods(a.periods), std::nullopt};
    const Rational g = hurwitz_genus(a.order, sig);
    if (g_json) {
        emit({{"order", a.order}, {"signature", json_io::signature(sig)}, {"genus", json_io::rational(g)},
              {"integral", is_integral(g)}});
        return;
    }
    std::cout << "g = " << to_fraction_string(g) << (is_integral(g) ? "" : " (not an integer)") << '\n';
}

void run_elliptic(const OrbifoldArgs& a) {
    JClass j = JClass::generic;
    if (a.j == "1728") j = JClass::j1728;
    else if (a.j == "0") j = JClass::j0;
    else if (a.j != "generic") throw BadParameter("j must be generic, 1728 or 0");
    const auto v = elliptic_min_orbit(a.order, j);
    if (g_json) emit({{"order", a.order}, {"j", a.j}, {"min_orbit", v}});
    else std::cout << v << '\n';
}

void run_cyclic(const OrbifoldArgs& a) {
    const long long max_order = a.max_order > 0 ? a.max_order : 4 * a.genus + 2;
    const auto res = cyclic_action_oracle(a.genus, a.odd, max_order);
    const auto& w = res.witness;
    if (g_json) {
        emit({{"genus", a.genus},
              {"odd_stabilizers_only", a.odd},
              {"max_realized_order", res.max_realized_order},
              {"witness", {{"group_order", w.group_order},
                           {"signature", json_io::signature(w.signature)},
                           {"generating_elements", w.generating_elements}}},
              {"signatures_tested", res.signatures_tested}});
        return;
    }
    std::cout << "Z" << res.max_realized_order << " acts on genus " << a.genus << " with signature "
              << to_string(w.signature) << ", residues";
    for (auto c : w.generating_elements) std::cout << ' ' << c;
    std::cout << '\n';
}

// -------------------------------------------------------------------- wiman

void run_wiman(long long genus, bool odd) {
    const auto v = wiman_bound(genus, odd);
    if (g_json) emit({{"genus", genus}, {"odd_stabilizers_only", odd}, {"bound", v}});
    else std::cout << v << '\n';
}

// -------------------------------------------------------------------- bound

Integer parse_integer(const std::string& flag, const std::string& text) {
    static const std::regex re("-?[0-9]+");
    if (!std::regex_match(text, re)) throw BadParameter(flag + " expects an integer, got '" + text + "'");
    return Integer(text);
}

struct BoundArgs {
    long long base_genus = 0;
    std::string ksq;
    std::string kind = "full";
    bool locally_trivial = false;
    bool not_minimal = false;
    bool exceptions = false;
    std::string stabilizer;
    long long r = 1;
    std::string ksq_rel;
};

void print_verdicts(const std::vector<BoundVerdict>& vs) {
    for (const auto& v : vs)
        std::cout << std::left << std::setw(20) << v.formula_name << std::setw(10) << to_fraction_string(v.bound_value)
                  << (v.sharp ? "sharp  " : "       ") << v.source_quote << (v.note.empty() ? "" : "  [" + v.note + "]")
                  << '\n';
}

void run_bound(const BoundArgs& a) {
    if (a.exceptions) {
        const auto& rows = exceptional_table();
        if (g_json) {
            Json out = Json::array();
            for (const auto& r : rows)
                out.push_back({{"H", r.h.name()},
                               {"r", r.r},
                               {"g_order", r.g_order},
                               {"ksq", r.ksq},
                               {"ratio_plus8", json_io::rational(r.ratio_plus8)},
                               {"ratio", json_io::rational(r.ratio)},
                               {"recomputed_ratio_plus8", json_io::rational(Rational(r.g_order, r.ksq + 8))},
                               {"recomputed_ratio", json_io::rational(Rational(r.g_order, r.ksq))}});
            emit(out);
            return;
        }
        std::cout << "H     r  |G|    K^2  |G|/(K^2+8)  |G|/K^2\n";
        for (const auto& r : rows)
            std::cout << std::left << std::setw(6) << r.h.name() << std::setw(3) << r.r << std::setw(7) << r.g_order
                      << std::setw(5) << r.ksq << std::setw(13) << to_fraction_string(r.ratio_plus8)
                      << to_fraction_string(r.ratio) << '\n';
        return;
    }
    if (!a.stabilizer.empty()) {
        static const std::map<std::string, StabilizerCase> cases = {
            {"s3_positive", StabilizerCase::s3_positive}, {"negligible_not_etale", StabilizerCase::negligible_not_etale},
            {"etale", StabilizerCase::etale},             {"d4_cyclic", StabilizerCase::d4_cyclic},
            {"z3_one_orbit", StabilizerCase::z3_one_orbit}, {"z2_one_orbit", StabilizerCase::z2_one_orbit}};
        const auto it = cases.find(a.stabilizer);
        if (it == cases.end()) throw BadParameter("unknown stabilizer case '" + a.stabilizer + "'");
        if (a.ksq_rel.empty()) throw BadParameter("--stabilizer needs --ksq-rel");
        const Rational v = stabilizer_bound(it->second, a.r, parse_integer("--ksq-rel", a.ksq_rel));
        if (g_json) emit({{"case", a.stabilizer}, {"r", a.r}, {"ksq_rel", json_io::integer(parse_integer("--ksq-rel", a.ksq_rel))},
                          {"value", json_io::rational(v)}});
        else std::cout << to_fraction_string(v) << '\n';
        return;
    }
    if (a.ksq.empty()) throw BadParameter("bound needs --ksq, --exceptions or --stabilizer");
    const auto kind = group_kind_from_string(a.kind);
    if (!kind) throw BadParameter("kind must be full, abelian or cyclic");
    const auto vs = evaluate(a.base_genus, parse_integer("--ksq", a.ksq), *kind, a.locally_trivial, !a.not_minimal);
    if (g_json) {
        Json out = Json::array();
        for (const auto& v : vs) out.push_back(json_io::verdict(v));
        emit(out);
        return;
    }
    print_verdicts(vs);
}

// ----------------------------------------------------------------- examples

ParamMap parse_params(const std::vector<std::string>& items) {
    ParamMap out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw BadParameter("--param expects name=value, got '" + item + "'");
        const std::string value = item.substr(eq + 1);
        out[item.substr(0, eq)] = parse_integer("--param " + item.substr(0, eq), value);
    }
    return out;
}

void run_examples_list() {
    if (g_json) {
        Json out = Json::array();
        for (const auto& id : catalog_ids()) {
            const auto e = instantiate(id);
            Json params = Json::object();
            for (const auto& [k, v] : e.parameters) params[k] = json_io::integer(v);
            out.push_back({{"id", id}, {"title", e.title}, {"default_parameters", params},
                           {"bound", e.expected.bound_name ? Json(*e.expected.bound_name) : Json(nullptr)}});
        }
        emit(out);
        return;
    }
    for (const auto& id : catalog_ids()) {
        const auto e = instantiate(id);
        std::cout << std::left << std::setw(18) << id << e.title << '\n';
    }
}

int run_examples_verify(const std::string& id, const std::vector<std::string>& params, bool sweep) {
    std::vector<std::pair<std::string, ParamMap>> jobs;
    const std::vector<std::string> ids = id.empty() ? catalog_ids() : std::vector<std::string>{id};
    for (const auto& i : ids) {
        if (sweep && params.empty())
            for (const auto& p : sweep_parameters(i)) jobs.emplace_back(i, p);
        else
            jobs.emplace_back(i, parse_params(params));
    }
    Json out = Json::array();
    for (const auto& [i, p] : jobs) {
        const auto rep = verify(instantiate(i, p));
        if (g_json) {
            out.push_back(json_io::verification(rep));
            continue;
        }
        std::string ps;
        for (const auto& [k, v] : rep.parameters) ps += (ps.empty() ? "" : ",") + k + "=" + v.str();
        std::cout << std::left << std::setw(18) << i << std::setw(8) << ps << "K^2 " << std::setw(6)
                  << rep.ksq_double_cover.str() << "|G| " << std::setw(8) << rep.g_order.str();
        if (rep.bound_name) std::cout << "= " << *rep.bound_name;
        else if (rep.sharpest_verdict) std::cout << "<= " << to_fraction_string(rep.sharpest_verdict->bound_value)
                                                 << " (" << rep.sharpest_verdict->formula_name << ")";
        std::cout << "  ok\n";
    }
    if (g_json) emit(out);
    return 0;
}

// -------------------------------------------------------------------- check

int run_check(const std::string& path, bool canonical) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadParameter("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto sc = parse(buf.str());
    if (canonical) {
        std::cout << serialize(sc);
        analyze(sc);
        return 0;
    }
    std::cout << emit_report(analyze(sc), g_json ? ReportFormat::json : ReportFormat::text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants and automorphism bounds for genus-2 fibrations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_json, "Machine-readable output");

    InvariantsArgs inv;
    auto* c_inv = app.add_subcommand("invariants", "Relative and global invariants from s2, s3");
    c_inv->add_option("--s2", inv.s2, "Total s2")->required()->check(CLI::NonNegativeNumber);
    c_inv->add_option("--s3", inv.s3, "Total s3")->check(CLI::NonNegativeNumber);
    c_inv->add_option("--base-genus,-g", inv.base_genus, "Genus of the base curve")->check(CLI::NonNegativeNumber);

    GermArgs germ;
    auto* c_germ = app.add_subcommand("germ", "Classify a local branch germ, or print the table");
    c_germ->add_option("--group", germ.group, "Fiberwise group (Z2..Z6, D4, D6, D12, T12, O24)");
    c_germ->add_option("--case", germ.case_id, "Case number within the group");
    c_germ->add_option("--k", germ.k, "Exponent parameter");
    c_germ->add_flag("--table", germ.table, "Print the whole table");

    OrbifoldArgs orb;
    auto* c_orb = app.add_subcommand("orbifold", "Orbifold signatures and cyclic actions");
    c_orb->require_subcommand(1);
    auto* c_min = c_orb->add_subcommand("minimize", "Minimise the orbifold characteristic over a box");
    c_min->add_flag("--half-term", orb.half_term, "Add 1/(2r) for a marked point");
    c_min->add_option("--max-h", orb.limits.max_h);
    c_min->add_option("--min-h", orb.limits.min_h);
    c_min->add_option("--max-periods", orb.limits.max_periods);
    c_min->add_option("--max-period", orb.limits.max_period_value);
    auto* c_gen = c_orb->add_subcommand("genus", "Riemann-Hurwitz genus of a cover");
    c_gen->add_option("--order,-n", orb.order, "Group order")->required();
    c_gen->add_option("--quotient-genus", orb.h, "Quotient genus");
    c_gen->add_option("--periods", orb.periods, "Comma-separated periods");
    auto* c_ell = c_orb->add_subcommand("elliptic", "Smallest orbit on an elliptic curve");
    c_ell->add_option("--order,-n", orb.order, "|H|")->required();
    c_ell->add_option("--j", orb.j, "generic, 1728 or 0");
    auto* c_cyc = c_orb->add_subcommand("cyclic", "Largest cyclic action found by enumeration");
    c_cyc->add_option("--genus", orb.genus)->required();
    c_cyc->add_flag("--odd", orb.odd, "Only odd stabilizers");
    c_cyc->add_option("--max-order", orb.max_order);

    long long wiman_genus = 2;
    bool wiman_odd = false;
    auto* c_wim = app.add_subcommand("wiman", "Largest cyclic group order on a curve of given genus");
    c_wim->add_option("--genus", wiman_genus)->required();
    c_wim->add_flag("--odd", wiman_odd, "All stabilizers odd");

    BoundArgs bnd;
    auto* c_bnd = app.add_subcommand("bound", "Automorphism-group bounds");
    c_bnd->add_option("--base-genus,-g", bnd.base_genus)->check(CLI::NonNegativeNumber);
    c_bnd->add_option("--ksq", bnd.ksq, "K^2 of the surface");
    c_bnd->add_option("--kind", bnd.kind, "full, abelian or cyclic");
    c_bnd->add_flag("--locally-trivial", bnd.locally_trivial);
    c_bnd->add_flag("--not-minimal", bnd.not_minimal);
    c_bnd->add_flag("--exceptions", bnd.exceptions, "Print the table of rational exceptions");
    c_bnd->add_option("--stabilizer", bnd.stabilizer, "Stabilizer case for the K^2_{S/C} bounds");
    c_bnd->add_option("--r", bnd.r, "Least stabilizer order");
    c_bnd->add_option("--ksq-rel", bnd.ksq_rel, "K^2_{S/C}");

    std::string ex_id;
    std::vector<std::string> ex_params;
    bool ex_sweep = false;
    auto* c_ex = app.add_subcommand("examples", "Extremal constructions");
    c_ex->require_subcommand(1);
    auto* c_list = c_ex->add_subcommand("list", "List the constructions");
    auto* c_ver = c_ex->add_subcommand("verify", "Recompute and cross-check the constructions");
    c_ver->add_option("--id", ex_id);
    c_ver->add_option("--param", ex_params, "name=value")->take_all();
    c_ver->add_flag("--sweep", ex_sweep, "Run the standard parameter sweep");

    std::string check_path;
    bool check_canonical = false;
    auto* c_chk = app.add_subcommand("check", "Analyse a .fib scenario file");
    c_chk->add_option("file", check_path)->required();
    c_chk->add_flag("--canonical", check_canonical, "Print the canonical form instead of the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_inv->parsed()) run_invariants(inv);
        else if (c_germ->parsed()) run_germ(germ);
        else if (c_min->parsed()) run_minimize(orb);
        else if (c_gen->parsed()) run_genus(orb);
        else if (c_ell->parsed()) run_elliptic(orb);
        else if (c_cyc->parsed()) run_cyclic(orb);
        else if (c_wim->parsed()) run_wiman(wiman_genus, wiman_odd);
        else if (c_bnd->parsed()) run_bound(bnd);
        else if (c_list->parsed()) run_examples_list();
        else if (c_ver->parsed()) return run_examples_verify(ex_id, ex_params, ex_sweep);
        else if (c_chk->parsed()) return run_check(check_path, check_canonical);
    } catch (const std::exception& e) {
        std::cerr << "g2fib: " << error_class(e) << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}
