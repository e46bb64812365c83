#include <catch2/catch_amalgamated.hpp>

#include "g2fib/scenario.hpp"

#include <random>

using namespace g2fib;

namespace {

const char* kIcosahedral = "base_genus = 0\nsurface = product\ngerm group=O24 case=0 count=12\ngroup = full\n";

SyntaxError syntax_error(std::string_view text) {
    try {
        parse(text);
    } catch (const SyntaxError& e) {
        return e;
    }
    FAIL("no syntax error for: " << text);
    throw std::logic_error("unreachable");
}

const BoundVerdict* find(const ScenarioReport& r, std::string_view name) {
    for (const auto& v : r.verdicts)
        if (v.formula_name == name) return &v;
    return nullptr;
}

} // namespace

TEST_CASE("parse the basic scenario", "[scenario]") {
    const auto sc = parse(kIcosahedral);
    CHECK(sc.base_genus == 0);
    REQUIRE(sc.surface);
    CHECK(sc.surface->kind == SurfaceKind::product);
    REQUIRE(sc.germs.size() == 1);
    CHECK(sc.germs[0].count == 12);
    CHECK(sc.germs[0].germ.group == FiniteMobiusGroup::octahedral());
    CHECK(germ_budget(sc.germs) == SingularityBudget{120, 0});
    CHECK(sc.group_kind == GroupKind::full);
}

TEST_CASE("parse errors carry positions", "[scenario]") {
    auto e = syntax_error("");
    CHECK(e.line == 1);
    CHECK(e.message.find("base_genus") != std::string::npos);

    e = syntax_error("base_genus = 0\nfoo = 1\n");
    CHECK(e.line == 2);
    CHECK(e.column == 1);

    e = syntax_error("base_genus = 0\n  base_genus = 1\n");
    CHECK(e.line == 2);
    CHECK(e.column == 3);

    e = syntax_error("base_genus = zero\n");
    CHECK(e.line == 1);
    CHECK(e.column == 14);

    e = syntax_error("base_genus = 0\ngerm group=Q8 case=0 count=1\n");
    CHECK(e.line == 2);
    CHECK(e.column == 12);

    e = syntax_error("base_genus = 0\ngerm group=O24 case=0 count=0\n");
    CHECK(e.line == 2);

    e = syntax_error("base_genus = 0\ngerm group=O24 case=0\n");
    CHECK(e.message.find("count") != std::string::npos);

    e = syntax_error("base_genus = 0\ngerm group=O24 case=0 count=1 colour=red\n");
    CHECK(e.column == 31);

    CHECK(syntax_error("base_genus\n").line == 1);
    CHECK(syntax_error("base_genus = 0\nsurface = cone\n").line == 2);
    CHECK(syntax_error("base_genus = 0\nbranch = 6\n").line == 2);
    CHECK(syntax_error("base_genus = 0\ngroup = nilpotent\n").line == 2);
    CHECK(syntax_error("base_genus = 0\nminimal = yes\n").line == 2);
    CHECK(syntax_error("base_genus = -1\n").line == 1);
    CHECK(syntax_error("base_genus = 01\n").line == 1);
    CHECK(syntax_error("base_genus = 0\ngerm group=Z6 case=1 k=2 k=1 count=1\n").line == 2);
    CHECK(syntax_error("base_genus = 0\ngerm group=Z6 case=1 count=1 orbit=small\n").line == 2);
    CHECK(syntax_error("# only a comment\n\n").line == 3);
}

TEST_CASE("semantic errors", "[scenario]") {
    CHECK_THROWS_AS(parse("base_genus = 0\ngerm group=Z6 case=1 k=4 count=1\n"), SemanticError);
    CHECK_THROWS_AS(parse("base_genus = 0\ngerm group=Z6 case=9 count=1\n"), SemanticError);
    CHECK_THROWS_AS(parse("base_genus = 0\ngerm group=O24 case=0 k=1 count=1\n"), SemanticError);
    CHECK_THROWS_AS(parse("base_genus = 0\nbranch = 6,12\n"), SemanticError);
    CHECK_THROWS_AS(analyze(parse("base_genus = 2\n")), SemanticError);
}

TEST_CASE("comments, blank lines and order independence", "[scenario]") {
    const auto a = parse(kIcosahedral);
    const auto b = parse("# icosahedral\n\ngroup = full   # kind\n germ  group=O24  count=12 case=0\n"
                         "surface = product\r\nbase_genus = 0");
    CHECK(a == b);
}

TEST_CASE("k defaults to one where the row takes it", "[scenario]") {
    const auto sc = parse("base_genus = 0\ngerm group=Z4 case=1 count=2\n");
    CHECK(sc.germs[0].germ.k == 1);
    CHECK(serialize(sc).find("k=1") != std::string::npos);
    const auto z2 = parse("base_genus = 0\ngerm group=Z2 case=1 count=10\n");
    CHECK_FALSE(z2.germs[0].germ.k.has_value());
}

TEST_CASE("analysis of the icosahedral scenario", "[scenario]") {
    const auto r = analyze(parse(kIcosahedral));
    CHECK(r.budget == SingularityBudget{120, 0});
    CHECK(r.relative == RelativeInvariants{24, 12, 12});
    CHECK(r.global.ksq == 16);
    REQUIRE(find(r, "aut-120-g0"));
    CHECK(find(r, "aut-120-g0")->bound_value == 2880);
    REQUIRE(r.double_cover_ksq.has_value() == false);
    CHECK(r.warnings.empty());
    const auto with_branch = analyze(parse(std::string(kIcosahedral) + "branch = 6,12\n"));
    CHECK(with_branch.double_cover_ksq == 16);
    CHECK(with_branch.warnings.empty());
    const auto bad_branch = analyze(parse(std::string(kIcosahedral) + "branch = 6,14\n"));
    CHECK(bad_branch.warnings.size() == 1);
}

TEST_CASE("locally trivial scenario", "[scenario]") {
    const auto r = analyze(parse("base_genus = 3\ns2 = 0\ns3 = 0\ngroup = full\nlocally_trivial = true\n"));
    CHECK(r.global.ksq == 16);
    CHECK(r.locally_trivial);
    REQUIRE(r.verdicts.size() == 1);
    CHECK(r.verdicts[0].bound_value == 504 * 16);
    CHECK(r.warnings.empty());
}

TEST_CASE("cyclic scenario over an elliptic base with small K^2", "[scenario]") {
    const auto r = analyze(parse("base_genus = 1\ns2 = 50\ngroup = cyclic\n"));
    CHECK(r.global.ksq == 10);
    CHECK_FALSE(find(r, "cyclic-5-g1"));
    REQUIRE(find(r, "cyclic-60-g1-small"));
    CHECK(find(r, "cyclic-60-g1-small")->bound_value == 60);
}

TEST_CASE("inconsistent budgets propagate", "[scenario]") {
    const auto sc = parse("base_genus = 1\ns2 = 3\ns3 = 1\ngroup = cyclic\n");
    CHECK(sc.s2_override == 3);
    CHECK_THROWS_AS(analyze(sc), NonIntegral);
    CHECK_THROWS_AS(analyze(parse("base_genus = 0\ns2 = 10\n")), Inapplicable);
}

TEST_CASE("warnings", "[scenario]") {
    const auto over = analyze(parse(std::string(kIcosahedral) + "s2 = 130\n"));
    CHECK(over.budget.s2_total == 130);
    CHECK(over.warnings.size() == 1);
    const auto lower = analyze(parse("base_genus = 0\ngerm group=Z6 case=1 count=10\ngroup = cyclic\n"));
    CHECK(lower.budget == SingularityBudget{50, 0});
    REQUIRE(lower.warnings.size() == 1);
    CHECK(lower.warnings[0].find("lower bound") != std::string::npos);
    const auto declared = analyze(parse("base_genus = 2\ns2 = 10\nlocally_trivial = true\n"));
    CHECK_FALSE(declared.locally_trivial);
    CHECK(declared.warnings.size() == 1);
}

TEST_CASE("report text and json", "[scenario]") {
    const auto r = analyze(parse("base_genus = 0\ns2 = 120\ngroup = abelian\n"));
    const auto json = emit_report(r, ReportFormat::json);
    CHECK(json.find("\"300\"") == std::string::npos);
    CHECK(json.find("\"value\": 300") != std::string::npos);
    const auto j = json_io::Json::parse(json);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"scenario", "budget", "invariants", "verdicts", "warnings"});
    CHECK(json_io::to_report(j) == r);

    const auto odd = analyze(parse("base_genus = 1\ns2 = 8\ns3 = 1\ngroup = abelian\n"));
    CHECK(emit_report(odd, ReportFormat::json).find("\"275/2\"") != std::string::npos);
    CHECK(json_io::to_report(json_io::Json::parse(emit_report(odd, ReportFormat::json))) == odd);

    const auto text = emit_report(r, ReportFormat::text);
    CHECK(text.find("WARN") == std::string::npos);
    CHECK(text.find("300") != std::string::npos);
    const auto warned = analyze(parse("base_genus = 0\ngerm group=Z6 case=1 count=10\n"));
    CHECK(emit_report(warned, ReportFormat::text).find("WARN") != std::string::npos);
    CHECK(emit_report(r, ReportFormat::text) == text);
}

TEST_CASE("serialization round trip", "[scenario][property]") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> germ_lines = {
        "germ group=O24 case=0 count=3",        "germ group=T12 case=0 count=1 orbit=big",
        "germ group=D12 case=0 count=2",        "germ group=D6 case=1 k=4 count=1",
        "germ group=Z6 case=1 k=3 count=5",     "germ group=Z5 case=2 count=1 orbit=fixed:5",
        "germ group=D4 case=2 k=7 count=4",     "germ group=Z3 case=4 k=2 count=2",
        "germ group=Z2 case=1 count=10",        "germ group=Z4 case=1 k=2 count=1 orbit=fixed:2"};
    const std::vector<std::string> keys = {"surface = product", "surface = hirzebruch:4", "s2 = 40", "s3 = 5",
                                           "group = cyclic",    "locally_trivial = false", "minimal = true"};
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::string> lines{"base_genus = " + std::to_string(i % 4)};
        bool have_surface = false;
        for (const auto& k : keys) {
            const bool is_surface = k.rfind("surface", 0) == 0;
            if (is_surface && have_surface) continue;
            if (coin(rng)) {
                lines.push_back(k);
                have_surface = have_surface || is_surface;
            }
        }
        if (have_surface && coin(rng)) lines.push_back("branch = 6,-4");
        for (const auto& g : germ_lines)
            if (coin(rng)) lines.push_back(g);
        std::shuffle(lines.begin(), lines.end(), rng);
        std::string text;
        for (const auto& l : lines) text += l + "\n";
        const auto sc = parse(text);
        const auto canon = serialize(sc);
        REQUIRE(parse(canon) == sc);
        REQUIRE(serialize(parse(canon)) == canon);
        REQUIRE(json_io::to_scenario(json_io::scenario(sc)) == sc);
        for (const auto& g : sc.germs) REQUIRE_NOTHROW(classify(g.germ));
    }
}
