#include "doctest.h"

#include "oamatch/xml.hpp"

using namespace oamatch;

TEST_CASE("xml: elements, attributes, text") {
    auto root = xml::parse("<a x=\"1\"><b>hi</b><c y='2'/></a>");
    CHECK(root.name == "a");
    CHECK(*root.attr("x") == "1");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].text == "hi");
    CHECK(*root.children[1].attr("y") == "2");
}

TEST_CASE("xml: namespaced names resolve by local part") {
    auto root = xml::parse("<rdf:RDF><owl:Class rdf:about=\"#X\"/></rdf:RDF>");
    CHECK(root.local_name() == "RDF");
    CHECK(root.children[0].local_name() == "Class");
    CHECK(*root.children[0].attr_local("about") == "#X");
}

TEST_CASE("xml: predefined and doctype entities") {
    auto root = xml::parse(
        "<!DOCTYPE r [ <!ENTITY base \"http://x#\"> ]>"
        "<r a=\"&base;Paper\">&lt;&amp;&gt;</r>");
    CHECK(*root.attr("a") == "http://x#Paper");
    CHECK(root.text == "<&>");
}

TEST_CASE("xml: comments, CDATA, processing instructions") {
    auto root = xml::parse(
        "<?xml version=\"1.0\"?><!-- hi --><r><!-- skip --><![CDATA[a<b]]></r>");
    CHECK(root.text == "a<b");
}

TEST_CASE("xml: malformed input throws") {
    CHECK_THROWS_AS(xml::parse("not xml"), xml::MalformedXmlError);
    CHECK_THROWS_AS(xml::parse("<a><b></a>"), xml::MalformedXmlError);
    CHECK_THROWS_AS(xml::parse("<a"), xml::MalformedXmlError);
    CHECK_THROWS_AS(xml::parse("<a/><b/>"), xml::MalformedXmlError);
}

TEST_CASE("xml: escape round-trips through parse") {
    std::string nasty = "a<b&c\"d>e";
    auto root = xml::parse("<r x=\"" + xml::escape(nasty) + "\">" + xml::escape(nasty) + "</r>");
    CHECK(*root.attr("x") == nasty);
    CHECK(root.text == nasty);
}
