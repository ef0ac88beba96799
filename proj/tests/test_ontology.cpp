#include "doctest.h"

#include "oamatch/verbalizer.hpp"
#include "test_support.hpp"

using namespace oamatch;
using namespace test_support;

TEST_CASE("parse_ontology: minimal subclass document") {
    OwlDoc doc("toy");
    doc.clazz("conference_part").clazz("track", "conference_part");
    ParsedOntology parsed = parse_ontology(doc.str(), "toy");

    CHECK(parsed.ontology.entities.size() == 2);
    REQUIRE(parsed.ontology.statements.size() == 1);
    const auto& s = parsed.ontology.statements[0].subclass();
    CHECK(s.sub.local == "track");
    CHECK(s.super.local == "conference_part");
    CHECK(parsed.stats.skipped_constructs == 0);
}

TEST_CASE("parse_ontology: zero axioms is not an error") {
    ParsedOntology parsed = parse_ontology(OwlDoc("empty").str(), "empty");
    CHECK(parsed.ontology.entities.empty());
    CHECK(parsed.ontology.statements.empty());
}

TEST_CASE("parse_ontology: malformed bytes throw") {
    CHECK_THROWS_AS(parse_ontology("<rdf:RDF><broken", "x"), MalformedOntologyError);
}

TEST_CASE("parse_ontology: property signatures, object and data") {
    OwlDoc doc("cmtish");
    doc.clazz("Reviewer").clazz("Paper");
    doc.object_property("hasBeenAssigned", "Reviewer", "Paper");
    doc.data_property("paperID", "Paper", "int");
    Ontology o = parse_ontology(doc.str(), "cmtish").ontology;

    REQUIRE(o.statements.size() == 2);
    const auto& assigned = o.statements[0].signature();
    CHECK(assigned.property.local == "hasBeenAssigned");
    CHECK(assigned.property.kind == EntityKind::ObjectProperty);
    CHECK(assigned.domain.local == "Reviewer");
    CHECK(std::get<EntityId>(assigned.range).local == "Paper");

    const auto& id = o.statements[1].signature();
    CHECK(id.property.kind == EntityKind::DataProperty);
    CHECK(std::get<std::string>(id.range) == "int");
}

TEST_CASE("parse_ontology: multiple domains and ranges multiply out") {
    OwlDoc doc("multi");
    doc.raw("  <owl:ObjectProperty rdf:about=\"#p\">\n"
            "    <rdfs:domain rdf:resource=\"#A\"/>\n"
            "    <rdfs:domain rdf:resource=\"#B\"/>\n"
            "    <rdfs:range rdf:resource=\"#C\"/>\n"
            "    <rdfs:range rdf:resource=\"#D\"/>\n"
            "  </owl:ObjectProperty>");
    Ontology o = parse_ontology(doc.str(), "multi").ontology;
    CHECK(o.statements.size() == 4); // one atomic signature per combination
}

TEST_CASE("parse_ontology: restrictions and anonymous classes are skipped, counted") {
    OwlDoc doc("dirty");
    doc.raw("  <owl:Class rdf:about=\"#X\">\n"
            "    <rdfs:subClassOf><owl:Restriction/></rdfs:subClassOf>\n"
            "  </owl:Class>\n"
            "  <owl:Class/>");
    ParsedOntology parsed = parse_ontology(doc.str(), "dirty");
    CHECK(parsed.ontology.statements.empty());
    CHECK(parsed.stats.skipped_constructs == 2);
    CHECK(parsed.ontology.find("X", EntityKind::Class) != nullptr);
}

TEST_CASE("parse_ontology: rdf:Description with rdf:type") {
    OwlDoc doc("desc");
    doc.raw("  <rdf:Description rdf:about=\"#Talk\">\n"
            "    <rdf:type rdf:resource=\"http://www.w3.org/2002/07/owl#Class\"/>\n"
            "    <rdfs:subClassOf rdf:resource=\"#Event\"/>\n"
            "  </rdf:Description>");
    Ontology o = parse_ontology(doc.str(), "desc").ontology;
    CHECK(o.find("Talk", EntityKind::Class) != nullptr);
    CHECK(o.statements.size() == 1);
}

TEST_CASE("parse_ontology: rdfs:label is captured") {
    OwlDoc doc("lbl");
    doc.raw("  <owl:Class rdf:about=\"#Paper\"><rdfs:label>Research paper</rdfs:label>"
            "</owl:Class>");
    Ontology o = parse_ontology(doc.str(), "lbl").ontology;
    CHECK(o.labels.at(cls("lbl", "Paper")) == "Research paper");
}

TEST_CASE("parse determinism: identical bytes, identical ontology") {
    OwlDoc doc("det");
    doc.clazz("A").clazz("B", "A").clazz("C", "A");
    doc.object_property("p", "B", "C");
    std::string bytes = doc.str();
    Ontology o1 = parse_ontology(bytes, "det").ontology;
    Ontology o2 = parse_ontology(bytes, "det").ontology;
    CHECK(o1.entities == o2.entities);
    REQUIRE(o1.statements.size() == o2.statements.size());
    for (std::size_t i = 0; i < o1.statements.size(); ++i)
        CHECK(verbalize_statement(o1.statements[i], o1.labels) ==
              verbalize_statement(o2.statements[i], o2.labels));
}

TEST_CASE("closure: every statement entity is a member of entities") {
    OwlDoc doc("closure");
    doc.clazz("B", "A"); // A only referenced, never declared
    doc.object_property("p", "C", "D");
    Ontology o = parse_ontology(doc.str(), "closure").ontology;
    for (const auto& s : o.statements) {
        if (s.is_subclass()) {
            CHECK(o.contains(s.subclass().sub));
            CHECK(o.contains(s.subclass().super));
        } else {
            CHECK(o.contains(s.signature().property));
            CHECK(o.contains(s.signature().domain));
            if (const EntityId* r = std::get_if<EntityId>(&s.signature().range))
                CHECK(o.contains(*r));
        }
    }
}

TEST_CASE("resolve_name: pipeline stages") {
    Ontology o = make_ontology("x", {sub_stmt(cls("x", "conference_part"), cls("x", "Paper"))});

    SUBCASE("exact") {
        auto r = resolve_name(o, "Paper");
        REQUIRE(r.found());
        CHECK(r.entity.local == "Paper");
    }
    SUBCASE("case fold") {
        auto r = resolve_name(o, "PAPER");
        REQUIRE(r.found());
        CHECK(r.entity.local == "Paper");
    }
    SUBCASE("space to underscore") {
        auto r = resolve_name(o, "conference part");
        REQUIRE(r.found());
        CHECK(r.entity.local == "conference_part");
    }
    SUBCASE("miss") {
        CHECK(resolve_name(o, "nonexistent_thing").status == ResolveResult::Status::NotFound);
    }
}

TEST_CASE("resolve_name: label stage and ambiguity") {
    Ontology o = make_ontology(
        "x", {}, {cls("x", "A"), cls("x", "B"), oprop("x", "a")});
    o.labels[cls("x", "B")] = "Bravo Class";

    auto label_hit = resolve_name(o, "bravo class");
    REQUIRE(label_hit.found());
    CHECK(label_hit.entity.local == "B");

    // "a" matches class A (case-folded) and property a (exact); exact wins first
    auto exact = resolve_name(o, "a");
    REQUIRE(exact.found());
    CHECK(exact.entity.kind == EntityKind::ObjectProperty);

    // "A" hits both at the case-fold stage after exact "A" matches the class only
    auto upper = resolve_name(o, "A");
    REQUIRE(upper.found());
    CHECK(upper.entity.kind == EntityKind::Class);
}

TEST_CASE("resolve_name: ambiguous tie is reported with candidates") {
    Ontology o = make_ontology("x", {}, {cls("x", "Chair"), oprop("x", "chair")});
    auto r = resolve_name(o, "CHAIR"); // case-fold stage hits both
    CHECK(r.status == ResolveResult::Status::Ambiguous);
    CHECK(r.candidates.size() == 2);
}

TEST_CASE("resolve_name round-trips every entity local name") {
    OwlDoc doc("rt");
    doc.clazz("A").clazz("camera_ready_paper", "A");
    doc.object_property("writtenBy", "camera_ready_paper", "A");
    Ontology o = parse_ontology(doc.str(), "rt").ontology;
    for (const auto& e : o.entities) {
        auto r = resolve_name(o, e.local);
        REQUIRE(r.found());
        CHECK(r.entity == e);
    }
}
