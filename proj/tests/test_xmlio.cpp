#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <string>

#include "store.hpp"
#include "support.hpp"
#include "xml.hpp"

using namespace odralite;
using xml::XmlNode;

namespace {

struct Caught {
  Errc code = Errc::ok;
  std::string message;
};

Caught catch_parse(const std::string& text) {
  try {
    xml::parse_document(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {};
}

}  // namespace

TEST_CASE("elements, attributes and text") {
  auto doc = xml::parse_document("<a x=\"1\" y='two'><b>hi</b><c/></a>");
  REQUIRE(doc.size() == 1);
  const XmlNode& a = doc[0];
  CHECK(a.tag == "a");
  REQUIRE(a.attributes.size() == 2);
  CHECK(a.attributes[0] == std::pair<std::string, std::string>{"x", "1"});
  CHECK(a.attributes[1] == std::pair<std::string, std::string>{"y", "two"});
  REQUIRE(a.children.size() == 2);
  CHECK(a.children[0].tag == "b");
  CHECK(a.children[0].text == "hi");
  CHECK(a.children[1].tag == "c");
  CHECK(a.children[1].children.empty());
}

TEST_CASE("text is concatenated across children and trimmed") {
  auto doc = xml::parse_document("<a>  x<b/>y  </a>");
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].text == "xy");  // "  x" ++ "y  ", trimmed at the ends only
}

TEST_CASE("text concatenation keeps interior spacing") {
  auto doc = xml::parse_document("<a> hello \n world </a>");
  CHECK(doc[0].text == "hello \n world");
}

TEST_CASE("comments are skipped, entities decoded") {
  auto doc = xml::parse_document("<a><!-- note --->x&lt;&gt;&amp;&quot;&apos;y</a>");
  CHECK(doc[0].text == "x<>&\"'y");
  auto doc2 = xml::parse_document("<!-- top --><a/><!-- tail -->");
  CHECK(doc2.size() == 1);
}

TEST_CASE("multiple top-level elements and the empty document") {
  auto doc = xml::parse_document(" <a/> <b/> ");
  REQUIRE(doc.size() == 2);
  CHECK(doc[0].tag == "a");
  CHECK(doc[1].tag == "b");
  CHECK(xml::parse_document("").empty());
  CHECK(xml::parse_document("  \n ").empty());
  CHECK(xml::parse_document("<!-- only a comment -->").empty());
}

TEST_CASE("unsupported constructs are rejected with positions") {
  Caught c = catch_parse("<!DOCTYPE html><a/>");
  CHECK(c.code == Errc::unsupported_feature);
  CHECK(c.message == std::string("unsupported xml feature at 1:1: markup declaration (DTD)"));

  c = catch_parse("<?xml version=\"1.0\"?><a/>");
  CHECK(c.code == Errc::unsupported_feature);
  CHECK(c.message == std::string("unsupported xml feature at 1:1: processing instruction"));

  c = catch_parse("<a>\n<![CDATA[x]]></a>");
  CHECK(c.code == Errc::unsupported_feature);
  CHECK(c.message == std::string("unsupported xml feature at 2:1: CDATA section"));
}

TEST_CASE("syntax errors carry line and column") {
  Caught c = catch_parse("<a><b></a>");
  CHECK(c.code == Errc::xml_syntax);
  CHECK(c.message == std::string("xml syntax error at 1:7: mismatched end tag </a> for <b>"));

  CHECK(catch_parse("<a>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a x=1/>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a x=\"1\" x=\"2\"/>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a>&unknown;</a>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a>&lt</a>").code == Errc::xml_syntax);
  CHECK(catch_parse("<1a/>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a b=\"<\"/>").code == Errc::xml_syntax);
  CHECK(catch_parse("text outside").code == Errc::xml_syntax);
  CHECK(catch_parse("<a></b>").code == Errc::xml_syntax);
  CHECK(catch_parse("<a><!-- unterminated").code == Errc::xml_syntax);
}

TEST_CASE("import maps elements to complex objects") {
  Store store;
  auto roots = xml::import_xml("<emp id=\"7\">  <name>Ann</name><dept/> tail </emp>", store);
  REQUIRE(roots.size() == 1);
  const StoredObject& emp = store.get_object(roots[0]);
  CHECK(emp.name == "emp");
  const auto& kids = std::get<Complex>(emp.payload).children;
  REQUIRE(kids.size() == 4);
  // Attributes first, then text, then child elements.
  CHECK(store.get_object(kids[0]).name == "@id");
  CHECK(std::get<std::string>(store.get_object(kids[0]).payload) == "7");
  CHECK(store.get_object(kids[1]).name == "_text");
  CHECK(std::get<std::string>(store.get_object(kids[1]).payload) == "tail");
  CHECK(store.get_object(kids[2]).name == "name");
  CHECK(store.get_object(kids[3]).name == "dept");
  const auto& name_kids = std::get<Complex>(store.get_object(kids[2]).payload).children;
  REQUIRE(name_kids.size() == 1);
  CHECK(std::get<std::string>(store.get_object(name_kids[0]).payload) == "Ann");
}

TEST_CASE("root class override renames top-level elements only") {
  Store store;
  auto roots = xml::import_xml("<row><row>inner</row></row><row/>", store, "Person");
  REQUIRE(roots.size() == 2);
  CHECK(store.get_object(roots[0]).name == "Person");
  CHECK(store.get_object(roots[1]).name == "Person");
  const auto& kids = std::get<Complex>(store.get_object(roots[0]).payload).children;
  REQUIRE(kids.size() == 1);
  CHECK(store.get_object(kids[0]).name == "row");
  CHECK(store.roots("Person").size() == 2);
}

TEST_CASE("export writes attributes, text and value elements compactly") {
  Store store;
  Oid e = store.insert_object(Oid{}, "emp", Complex{});
  store.insert_object(e, "@id", std::string("7"));
  store.insert_object(e, "_text", std::string("note & <tag>"));
  store.insert_object(e, "age", std::int64_t{30});
  store.insert_object(e, "score", 1.5);
  store.insert_object(e, "tags", Collection{CollectionKind::set, {std::int64_t{3}}, {}});
  store.insert_object(e, "boss", Reference{e});
  Oid inner = store.insert_object(e, "addr", Complex{});
  store.insert_object(inner, "@kind", std::string("home \"x\""));
  CHECK(xml::export_xml(e, store) ==
        "<emp id=\"7\">note &amp; &lt;tag&gt;"
        "<age><_value>30</_value></age>"
        "<score><_value>1.5</_value></score>"
        "<tags><_value>set{3}</_value></tags>"
        "<boss><_value>#1</_value></boss>"
        "<addr kind=\"home &quot;x&quot;\"/>"
        "</emp>\n");
}

TEST_CASE("export of an attribute-only element self-closes") {
  Store store;
  Oid a = store.insert_object(Oid{}, "a", Complex{});
  store.insert_object(a, "@x", std::string("1"));
  CHECK(xml::export_xml(a, store) == "<a x=\"1\"/>\n");
  Oid b = store.insert_object(Oid{}, "b", Complex{});
  CHECK(xml::export_xml(b, store) == "<b/>\n");
}

TEST_CASE("string values keep their quotes so reimport is stable") {
  Store store;
  Oid p = store.insert_object(Oid{}, "p", Complex{});
  store.insert_object(p, "note", std::string("  spaced  "));
  const std::string out = xml::export_xml(p, store);
  CHECK(out == "<p><note><_value>\"  spaced  \"</_value></note></p>\n");
  // Trimming at reimport cannot eat the payload: the quotes bound it.
  Store second;
  auto roots = xml::import_xml(out, second);
  CHECK(xml::export_xml(roots[0], second) == out);
}

TEST_CASE("import of export preserves attributes and structure") {
  Store store;
  auto roots = xml::import_xml(
      "<lib count=\"2\"><book id=\"b1\"><title>T&amp;C</title></book><note>x</note></lib>", store);
  const std::string once = xml::export_xml(roots[0], store);
  Store second;
  auto roots2 = xml::import_xml(once, second);
  REQUIRE(roots2.size() == 1);
  CHECK(xml::export_xml(roots2[0], second) == once);
  CHECK(second.object_count() == store.object_count());
}

TEST_CASE("export then import then export is a fixed point on random stores") {
  testsupport::Rng rng(99021);
  for (int iter = 0; iter < 1000; ++iter) {
    Store s = testsupport::random_store(rng, 6 + rng() % 24);
    const Oid root = s.root_order().front();
    const std::string once = xml::export_xml(root, s);
    Store t;
    const auto roots = xml::import_xml(once, t);
    REQUIRE(roots.size() == 1);
    const std::string twice = xml::export_xml(roots[0], t);
    if (twice != once) {
      CAPTURE(once);
      REQUIRE(twice == once);
    }
  }
}
