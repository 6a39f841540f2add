#include <catch2/catch_amalgamated.hpp>

#include "hfrank/report.hpp"
#include "hfrank/verify.hpp"

using namespace hfrank;

namespace {
const std::string kCorpus = HFRANK_CORPUS_DIR;
const std::string kData = HFRANK_TEST_DATA_DIR;
CfkModel get(const std::string& name) { return load_model(kCorpus + "/" + name + ".json"); }
}  // namespace

TEST_CASE("is_simple") {
    CHECK(is_simple(get("unknot")));
    CHECK_FALSE(is_simple(get("trefoil_rh")));
    CHECK_FALSE(is_simple(get("figure8")));
    CHECK_FALSE(is_simple(get("t25")));
}

TEST_CASE("is_simple flags structural contradictions") {
    // a horizontal-only model passes the rank equality but keeps an arrow;
    // such a flip cannot validate, so the struct is built directly
    CfkModel m;
    m.name = "contradiction";
    m.generators = {{"x", 0, 0}, {"y", 1, 1}};
    m.arrows = {{0, 1, 1}};  // drops (1, 0)
    m.flip.kind = Flip::Kind::Identity;
    CHECK(hf_rank(m) == total_hfk_rank(m));
    CHECK_THROWS_AS(is_simple(m), StructureContradiction);
}

TEST_CASE("ni_trivial") {
    CHECK(ni_trivial(get("unknot")));
    CHECK_FALSE(ni_trivial(get("trefoil_rh")));
    // extra cancelled pair at A = +-1 reduces away
    CfkModel m;
    m.name = "padded_unknot";
    m.generators = {{"u", 0, 0}, {"x", 1, 0}, {"y", 1, -1}, {"xx", -1, 0}, {"yy", -1, -1}};
    m.arrows = {{1, 2, 0}, {3, 4, 0}};
    m.flip.perm = {0, 3, 4, 1, 2};
    m.flip.kind = Flip::Kind::Involution;
    validate(m);
    CHECK(ni_trivial(m));
}

TEST_CASE("main theorem across the corpus") {
    for (const char* name : {"unknot", "trefoil_rh", "trefoil_lh", "figure8", "t25"}) {
        Verdict v = main_theorem_check(get(name));
        INFO(name);
        CHECK(v.overall());
    }
}

TEST_CASE("cross route check") {
    Verdict v = cross_route_check(get("unknot"), 4, 4);
    CHECK(v.overall());
    Verdict t = cross_route_check(get("trefoil_rh"), 2, 2);
    CHECK(t.overall());
}

TEST_CASE("simple identities") {
    Verdict v = simple_identities_check(get("unknot"), 5);
    INFO(emit_report({v}, Format::text));
    CHECK(v.overall());
    CHECK_THROWS_AS(simple_identities_check(get("trefoil_rh"), 3), NotSimple);
}

TEST_CASE("corpus run") {
    auto verdicts = corpus_run(kCorpus, 2, 2);
    REQUIRE(verdicts.size() == 5);
    for (const auto& v : verdicts) {
        INFO(v.model);
        CHECK(v.overall());
    }
    SECTION("deterministic serialization") {
        auto again = corpus_run(kCorpus, 2, 2);
        CHECK(emit_report(verdicts, Format::json) == emit_report(again, Format::json));
        CHECK(emit_report(verdicts, Format::csv) == emit_report(again, Format::csv));
    }
}

TEST_CASE("corpus run isolates a malformed file") {
    auto verdicts = corpus_run(kData, 1, 1);
    REQUIRE(verdicts.size() >= 3);
    std::size_t failures = 0;
    for (const auto& v : verdicts)
        if (!v.overall()) ++failures;
    CHECK(failures == verdicts.size());  // every data file is deliberately broken
}

TEST_CASE("report formats") {
    Verdict v;
    v.model = "m";
    v.add_eq("check", 1, 1);
    SECTION("csv has a header and one row per check") {
        std::string csv = emit_report({v}, Format::csv);
        CHECK(csv == "model,check,pass,lhs,rhs,context\nm,check,pass,1,1,\n");
        CHECK(emit_report({}, Format::csv) == "model,check,pass,lhs,rhs,context\n");
    }
    SECTION("json carries the overall flag") {
        std::string js = emit_report({v}, Format::json);
        CHECK(js.find("\"overall\": true") != std::string::npos);
    }
}
