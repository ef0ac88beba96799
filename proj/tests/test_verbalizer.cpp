#include "doctest.h"

#include "oamatch/verbalizer.hpp"
#include "test_support.hpp"

using namespace oamatch;
using namespace test_support;

TEST_CASE("humanize") {
    CHECK(humanize("conference_part") == "conference part");
    CHECK(humanize("Paper") == "Paper");
    CHECK(humanize("camera_ready_paper") == "camera ready paper");
    // idempotent
    CHECK(humanize(humanize("camera_ready_paper")) == humanize("camera_ready_paper"));
}

TEST_CASE("verbalize_statement: golden surface forms") {
    Statement isa = sub_stmt(cls("o", "track"), cls("o", "conference_part"));
    CHECK(verbalize_statement(isa, {}) == "Is-a (track, conference part)");

    Statement prop = sig_stmt(oprop("o", "authorOf"), cls("o", "Person"), cls("o", "Document"));
    CHECK(verbalize_statement(prop, {}) == "authorOf (Person, Document)");

    Statement self = sub_stmt(cls("o", "Paper"), cls("o", "Paper"));
    CHECK(verbalize_statement(self, {}) == "Is-a (Paper, Paper)");
}

TEST_CASE("verbalize_statement: datatype range keeps its local name") {
    Statement s = sig_stmt({"o", "hasID", EntityKind::DataProperty}, cls("o", "Paper"),
                           PropertyRange{std::string("int")});
    CHECK(verbalize_statement(s, {}) == "hasID (Paper, int)");
}

TEST_CASE("verbalize_ontology: orderings permute, never drop") {
    Ontology o = make_ontology(
        "o", {sig_stmt(oprop("o", "p"), cls("o", "C"), cls("o", "A")),
              sub_stmt(cls("o", "C"), cls("o", "B")), sub_stmt(cls("o", "B"), cls("o", "A"))});

    for (auto order : {StatementOrder::AsParsed, StatementOrder::RootFirst,
                       StatementOrder::ClassesThenProperties})
        CHECK(verbalize_ontology(o, order).size() == o.statements.size());

    SUBCASE("RootFirst: BFS from root classes") {
        auto lines = verbalize_ontology(o, StatementOrder::RootFirst);
        CHECK(lines[0].text == "Is-a (B, A)");
        CHECK(lines[1].text == "Is-a (C, B)");
        CHECK(lines[2].text == "p (C, A)");
    }
    SUBCASE("ClassesThenProperties: class lines first, stable") {
        auto lines = verbalize_ontology(o, StatementOrder::ClassesThenProperties);
        CHECK(lines[0].text == "Is-a (C, B)");
        CHECK(lines[1].text == "Is-a (B, A)");
        CHECK(lines[2].text == "p (C, A)");
    }
    SUBCASE("AsParsed preserves statement order") {
        auto lines = verbalize_ontology(o, StatementOrder::AsParsed);
        CHECK(lines[0].text == "p (C, A)");
    }
}

TEST_CASE("verbalize_ontology: empty ontology") {
    Ontology o = make_ontology("o", {});
    CHECK(verbalize_ontology(o, StatementOrder::RootFirst).empty());
}

TEST_CASE("verbalize_ontology: subclass cycle falls back to parse order") {
    Ontology o = make_ontology("o", {sub_stmt(cls("o", "A"), cls("o", "B")),
                                     sub_stmt(cls("o", "B"), cls("o", "A"))});
    auto lines = verbalize_ontology(o, StatementOrder::RootFirst);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].text == "Is-a (A, B)");
    CHECK(lines[1].text == "Is-a (B, A)");
}

TEST_CASE("labels substitute only when requested") {
    Ontology o = make_ontology("o", {sub_stmt(cls("o", "t1"), cls("o", "t2"))});
    o.labels[cls("o", "t1")] = "First_Topic";
    CHECK(verbalize_ontology(o, StatementOrder::AsParsed, false)[0].text == "Is-a (t1, t2)");
    CHECK(verbalize_ontology(o, StatementOrder::AsParsed, true)[0].text ==
          "Is-a (First Topic, t2)");
}
