#include "doctest.h"

#include "oamatch/alignment_io.hpp"
#include "test_support.hpp"

#include <random>

using namespace oamatch;
using namespace test_support;

namespace {

Ontology toy(const std::string& name, std::initializer_list<std::string> classes) {
    std::vector<EntityId> entities;
    for (const auto& c : classes) entities.push_back(cls(name, c));
    return make_ontology(name, {}, entities);
}

} // namespace

TEST_CASE("parse_alignment: single cell") {
    Ontology a = toy("o1", {"A"});
    Ontology b = toy("o2", {"B"});
    Alignment al = parse_alignment(alignment_doc("o1", "o2", {{"A", "B", 1.0}}), a, b);
    REQUIRE(al.size() == 1);
    CHECK(al.correspondences[0].source == cls("o1", "A"));
    CHECK(al.correspondences[0].target == cls("o2", "B"));
    CHECK(al.correspondences[0].confidence == 1.0);
}

TEST_CASE("parse_alignment: duplicate cells collapse to one") {
    Ontology a = toy("o1", {"A"});
    Ontology b = toy("o2", {"B"});
    Alignment al = parse_alignment(
        alignment_doc("o1", "o2", {{"A", "B", 0.5}, {"A", "B", 1.0}}), a, b);
    CHECK(al.size() == 1);
    CHECK(al.correspondences[0].confidence == 1.0);
}

TEST_CASE("parse_alignment: unresolved IRI names the offender") {
    Ontology a = toy("o1", {"A"});
    Ontology b = toy("o2", {"B"});
    try {
        parse_alignment(alignment_doc("o1", "o2", {{"Ghost", "B", 1.0}}), a, b);
        FAIL("expected UnresolvedEntityError");
    } catch (const UnresolvedEntityError& e) {
        CHECK(std::string(e.what()).find("Ghost") != std::string::npos);
    }
}

TEST_CASE("parse_alignment: malformed XML") {
    Ontology a = toy("o1", {"A"});
    Ontology b = toy("o2", {"B"});
    CHECK_THROWS_AS(parse_alignment("<Alignment", a, b), MalformedAlignmentError);
}

TEST_CASE("serialize_alignment: empty and single") {
    Ontology a = toy("o1", {"A"});
    Ontology b = toy("o2", {"B"});

    Alignment empty;
    empty.pair = {"o1", "o2"};
    Alignment back = parse_alignment(serialize_alignment(empty, a, b), a, b);
    CHECK(back.size() == 0);

    Alignment one;
    one.pair = {"o1", "o2"};
    one.add({cls("o1", "A"), cls("o2", "B"), 1.0, std::nullopt});
    std::string doc = serialize_alignment(one, a, b);
    CHECK(doc.find("<measure rdf:datatype=\"http://www.w3.org/2001/XMLSchema#float\">1.0"
                   "</measure>") != std::string::npos);
    CHECK(parse_alignment(doc, a, b).size() == 1);
}

TEST_CASE("round-trip property: random alignments survive serialize/parse") {
    std::vector<EntityId> left, right;
    for (int i = 0; i < 12; ++i) {
        left.push_back(cls("o1", "L" + std::to_string(i)));
        right.push_back(cls("o2", "R" + std::to_string(i)));
    }
    Ontology a = make_ontology("o1", {}, left);
    Ontology b = make_ontology("o2", {}, right);

    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Alignment al;
        al.pair = {"o1", "o2"};
        int n = static_cast<int>(rng() % 10) + 1;
        for (int k = 0; k < n; ++k) {
            Correspondence c;
            c.source = left[rng() % left.size()];
            c.target = right[rng() % right.size()];
            c.confidence = (rng() % 2) ? 1.0 : 0.5;
            al.add(std::move(c));
        }
        Alignment back = parse_alignment(serialize_alignment(al, a, b), a, b);
        REQUIRE(back.size() == al.size());
        for (std::size_t i = 0; i < al.size(); ++i) {
            CHECK(back.correspondences[i].source == al.correspondences[i].source);
            CHECK(back.correspondences[i].target == al.correspondences[i].target);
            CHECK(back.correspondences[i].confidence ==
                  doctest::Approx(al.correspondences[i].confidence));
        }
    }
}
