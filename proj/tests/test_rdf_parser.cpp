#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "support/generators.hpp"
#include "voidviz/iri.hpp"
#include "voidviz/parser.hpp"
#include "voidviz/rdf.hpp"

using namespace voidviz;

namespace {

const std::string kVoidNs = "http://rdfs.org/ns/void#";

Diagnostic first_error(const ParseResult& r) {
  for (const auto& d : r.diagnostics)
    if (d.severity == Severity::Error) return d;
  FAIL("expected an error diagnostic");
  return {};
}

}  // namespace

TEST_CASE("detect_format follows extension hints") {
  CHECK(detect_format("", "x.nt") == Format::NTriples);
  CHECK(detect_format("", "x.ttl") == Format::Turtle);
  CHECK(detect_format("@prefix a: <http://a/> .", "x.nt") == Format::NTriples);
}

TEST_CASE("detect_format sniffs directives") {
  CHECK(detect_format("@prefix void: <http://rdfs.org/ns/void#> .") ==
        Format::Turtle);
  CHECK(detect_format("<a> <b> <c> .") == Format::NTriples);
  CHECK(detect_format("# comment\n  @base <http://x/> .") == Format::Turtle);
  CHECK(detect_format("  PREFIX v: <http://x/>") == Format::Turtle);
  CHECK(detect_format("\tBASE <http://x/>") == Format::Turtle);
  CHECK(detect_format("") == Format::NTriples);
}

TEST_CASE("parse minimal N-Triples document") {
  auto r = parse("<http://a> <http://b> <http://c> .", Format::NTriples);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 1);
  CHECK(r.graph.triples()[0] ==
        Triple{Term::iri("http://a"), Term::iri("http://b"),
               Term::iri("http://c")});
}

TEST_CASE("parse VoID Turtle snippet") {
  auto r = parse(
      "@prefix void: <http://rdfs.org/ns/void#> . "
      "<http://x/d> a void:Dataset ; void:triples 5 .",
      Format::Turtle);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 2);
  CHECK(r.graph.triples()[0] ==
        Triple{Term::iri("http://x/d"), Term::iri(std::string(iri_const::rdf_type)),
               Term::iri(kVoidNs + "Dataset")});
  CHECK(r.graph.triples()[1] ==
        Triple{Term::iri("http://x/d"), Term::iri(kVoidNs + "triples"),
               Term::literal("5", std::string(iri_const::xsd_integer))});
}

TEST_CASE("parse empty document") {
  auto r = parse("", Format::Turtle);
  CHECK(r.ok());
  CHECK(r.graph.empty());
  CHECK(r.diagnostics.empty());
}

TEST_CASE("undefined prefix is an error naming the prefix") {
  auto r = parse("<http://a> <http://b> undefined:x .", Format::Turtle);
  REQUIRE(!r.ok());
  auto d = first_error(r);
  CHECK(d.line == 1);
  CHECK(d.message.find("undefined:") != std::string::npos);
}

TEST_CASE("duplicate triples are deduplicated") {
  auto r = parse(
      "<http://a> <http://b> <http://c> .\n"
      "<http://a> <http://b> <http://c> .\n"
      "<http://a> <http://b> <http://d> .\n",
      Format::NTriples);
  REQUIRE(r.ok());
  CHECK(r.graph.size() == 2);
}

TEST_CASE("prefix lists and object lists") {
  auto r = parse(
      "@prefix ex: <http://e/> .\n"
      "ex:s ex:p ex:a, ex:b ; ex:q ex:c ; .\n",
      Format::Turtle);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 3);
  CHECK(r.graph.triples()[1].object == Term::iri("http://e/b"));
  CHECK(r.graph.triples()[2].predicate == Term::iri("http://e/q"));
}

TEST_CASE("SPARQL-style directives, case-insensitive") {
  auto r = parse(
      "PREFIX ex: <http://e/>\n"
      "base <http://b/>\n"
      "ex:s ex:p <rel> .\n",
      Format::Turtle);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 1);
  CHECK(r.graph.triples()[0].object == Term::iri("http://b/rel"));
}

TEST_CASE("anonymous blank nodes get document-scoped genid labels") {
  auto r = parse(
      "@prefix ex: <http://e/> .\n"
      "[ ex:p ex:o ] .\n"
      "ex:s ex:q [ ex:r ex:o2 ] .\n"
      "[] ex:t ex:o3 .\n",
      Format::Turtle);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 4);
  CHECK(r.graph.triples()[0].subject == Term::blank("genid-1"));
  CHECK(r.graph.triples()[1].subject == Term::blank("genid-2"));
  CHECK(r.graph.triples()[2] == Triple{Term::iri("http://e/s"),
                                       Term::iri("http://e/q"),
                                       Term::blank("genid-2")});
  CHECK(r.graph.triples()[3].subject == Term::blank("genid-3"));
}

TEST_CASE("labeled blank nodes keep their labels") {
  auto r = parse("_:x <http://p> _:y.z .", Format::Turtle);
  REQUIRE(r.ok());
  CHECK(r.graph.triples()[0].subject == Term::blank("x"));
  CHECK(r.graph.triples()[0].object == Term::blank("y.z"));
}

TEST_CASE("numeric and boolean shorthand literals") {
  auto r = parse(
      "@prefix ex: <http://e/> .\n"
      "ex:s ex:p 42, -7, 4.5, .25, 1e3, -2.5E-2, true, false .\n",
      Format::Turtle);
  REQUIRE(r.ok());
  const auto& t = r.graph.triples();
  REQUIRE(t.size() == 8);
  CHECK(t[0].object == Term::literal("42", std::string(iri_const::xsd_integer)));
  CHECK(t[1].object == Term::literal("-7", std::string(iri_const::xsd_integer)));
  CHECK(t[2].object == Term::literal("4.5", std::string(iri_const::xsd_decimal)));
  CHECK(t[3].object == Term::literal(".25", std::string(iri_const::xsd_decimal)));
  CHECK(t[4].object == Term::literal("1e3", std::string(iri_const::xsd_double)));
  CHECK(t[5].object ==
        Term::literal("-2.5E-2", std::string(iri_const::xsd_double)));
  CHECK(t[6].object == Term::literal("true", std::string(iri_const::xsd_boolean)));
  CHECK(t[7].object ==
        Term::literal("false", std::string(iri_const::xsd_boolean)));
}

TEST_CASE("integer followed by statement dot") {
  auto r = parse("@prefix v: <http://v/> . <http://d> v:triples 5.",
                 Format::Turtle);
  REQUIRE(r.ok());
  REQUIRE(r.graph.size() == 1);
  CHECK(r.graph.triples()[0].object ==
        Term::literal("5", std::string(iri_const::xsd_integer)));
}

TEST_CASE("string forms and suffixes") {
  auto r = parse(
      "@prefix ex: <http://e/> .\n"
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      "ex:s ex:p \"short\", 'single', \"\"\"long\n\"quoted\"\n\"\"\", "
      "'''other''', \"tagged\"@EN-Latn, \"typed\"^^xsd:token, "
      "\"w\"^^<http://dt> .\n",
      Format::Turtle);
  REQUIRE(r.ok());
  const auto& t = r.graph.triples();
  REQUIRE(t.size() == 7);
  CHECK(t[0].object == Term::literal("short"));
  CHECK(t[1].object == Term::literal("single"));
  CHECK(t[2].object == Term::literal("long\n\"quoted\"\n"));
  CHECK(t[3].object == Term::literal("other"));
  // language tags are lowercased
  CHECK(t[4].object == Term::literal("tagged", {}, "en-latn"));
  CHECK(t[4].object.datatype == iri_const::rdf_lang_string);
  CHECK(t[5].object ==
        Term::literal("typed", "http://www.w3.org/2001/XMLSchema#token"));
  CHECK(t[6].object == Term::literal("w", "http://dt"));
}

TEST_CASE("escapes in strings and IRIs") {
  auto r = parse(
      "<http://a> <http://b> \"a\\nb\\t\\\"q\\\"\\\\\\u0041\\U0001F600\" .\n"
      "<http://a> <http://b\\u0041> <http://c> .\n",
      Format::NTriples);
  REQUIRE(r.ok());
  CHECK(r.graph.triples()[0].object.value == "a\nb\t\"q\"\\A\xF0\x9F\x98\x80");
  CHECK(r.graph.triples()[1].predicate == Term::iri("http://bA"));
}

TEST_CASE("base resolution and relative IRI warning") {
  SECTION("with @base") {
    auto r = parse("@base <http://ex.org/dir/> . <x> <./y> <../z> .",
                   Format::Turtle);
    REQUIRE(r.ok());
    CHECK(r.graph.triples()[0].subject == Term::iri("http://ex.org/dir/x"));
    CHECK(r.graph.triples()[0].predicate == Term::iri("http://ex.org/dir/y"));
    CHECK(r.graph.triples()[0].object == Term::iri("http://ex.org/z"));
  }
  SECTION("with caller base") {
    auto r = parse("<x> <y> <z> .", Format::Turtle, "http://b.org/a/");
    REQUIRE(r.ok());
    CHECK(r.graph.triples()[0].subject == Term::iri("http://b.org/a/x"));
  }
  SECTION("without base: kept verbatim, warning") {
    auto r = parse("<x> <http://p> <http://o> .", Format::Turtle);
    REQUIRE(r.ok());
    CHECK(r.graph.triples()[0].subject == Term::iri("x"));
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Severity::Warning);
    CHECK(r.diagnostics[0].message.find("<x>") != std::string::npos);
  }
}

TEST_CASE("prefix IRIs resolve against the current base") {
  auto r = parse(
      "@base <http://ex.org/> . @prefix ex: <ns#> . ex:a ex:b ex:c .",
      Format::Turtle);
  REQUIRE(r.ok());
  CHECK(r.graph.triples()[0].subject == Term::iri("http://ex.org/ns#a"));
}

TEST_CASE("comments and CRLF line breaks") {
  auto r = parse(
      "# leading comment\r\n"
      "<http://a> <http://b> <http://c> . # trailing\r"
      "<http://a> <http://b> <http://d> .\n",
      Format::NTriples);
  REQUIRE(r.ok());
  CHECK(r.graph.size() == 2);
}

TEST_CASE("BOM is stripped") {
  auto r = parse("\xEF\xBB\xBF<http://a> <http://b> <http://c> .",
                 Format::NTriples);
  REQUIRE(r.ok());
  CHECK(r.graph.size() == 1);
}

TEST_CASE("error positions point at the corrupted token") {
  SECTION("unterminated IRI") {
    auto r = parse("<http://a> <http://b> <http://c> .\n<http://broken\n",
                   Format::NTriples);
    auto d = first_error(r);
    CHECK(d.line == 2);
    CHECK(d.column == 1);
    CHECK(d.message.find("unterminated IRI") != std::string::npos);
  }
  SECTION("unterminated string") {
    auto r = parse("<http://a> <http://b> \"oops .\n", Format::NTriples);
    auto d = first_error(r);
    CHECK(d.line == 1);
    CHECK(d.column == 23);
    CHECK(d.message.find("unterminated string") != std::string::npos);
  }
  SECTION("missing terminal dot") {
    auto r = parse("<http://a> <http://b> <http://c>", Format::NTriples);
    auto d = first_error(r);
    CHECK(d.message.find("expected '.'") != std::string::npos);
  }
  SECTION("literal in subject position") {
    auto r = parse("@prefix ex: <http://e/> .\n\"lit\" ex:p ex:o .",
                   Format::Turtle);
    auto d = first_error(r);
    CHECK(d.line == 2);
    CHECK(d.message.find("subject") != std::string::npos);
  }
  SECTION("malformed escape") {
    auto r = parse("<http://a> <http://b> \"bad\\qesc\" .", Format::NTriples);
    auto d = first_error(r);
    CHECK(d.line == 1);
    CHECK(d.message.find("escape") != std::string::npos);
  }
  SECTION("bad hex in unicode escape") {
    auto r = parse("<http://a> <http://b> \"\\u00ZZ\" .", Format::NTriples);
    auto d = first_error(r);
    CHECK(d.message.find("hex") != std::string::npos);
  }
  SECTION("column counts unicode scalar values") {
    // two-codepoint prefix before the broken token
    auto r = parse("<http://\xC3\xA9\xC3\xA9> <http://b> undefined:x .",
                   Format::Turtle);
    auto d = first_error(r);
    CHECK(d.line == 1);
    CHECK(d.column == 24);
  }
  SECTION("parsing aborts at first error") {
    auto r = parse(
        "<http://a> <http://b> undefined:x .\n"
        "also broken here\n",
        Format::Turtle);
    std::size_t errors = 0;
    for (const auto& d : r.diagnostics)
      if (d.severity == Severity::Error) ++errors;
    CHECK(errors == 1);
  }
}

TEST_CASE("collections are rejected") {
  auto r = parse("@prefix ex: <http://e/> . ex:s ex:p (1 2) .",
                 Format::Turtle);
  REQUIRE(!r.ok());
  CHECK(first_error(r).message.find("collection") != std::string::npos);
}

TEST_CASE("N-Triples rejects Turtle-only syntax") {
  CHECK(!parse("ex:s <http://p> <http://o> .", Format::NTriples).ok());
  CHECK(!parse("<http://s> <http://p> <http://o> ; <http://q> <http://r> .",
               Format::NTriples)
             .ok());
  CHECK(!parse("<http://s> <http://p> 5 .", Format::NTriples).ok());
  CHECK(!parse("@prefix ex: <http://e/> .", Format::NTriples).ok());
  CHECK(!parse("<http://s> <http://p> 'x' .", Format::NTriples).ok());
}

TEST_CASE("expand_prefixed_name") {
  PrefixMap m{{"void", kVoidNs}};
  auto r = expand_prefixed_name(m, "void:Dataset");
  REQUIRE(r.ok);
  CHECK(r.value == kVoidNs + "Dataset");

  PrefixMap empty_prefix{{"", "http://ex/"}};
  auto r2 = expand_prefixed_name(empty_prefix, ":x");
  REQUIRE(r2.ok);
  CHECK(r2.value == "http://ex/x");

  auto r3 = expand_prefixed_name({}, "void:Dataset");
  CHECK(!r3.ok);
  CHECK(r3.error.find("void:") != std::string::npos);

  auto r4 = expand_prefixed_name(empty_prefix, ":a\\.b\\-c");
  REQUIRE(r4.ok);
  CHECK(r4.value == "http://ex/a.b-c");
}

TEST_CASE("local-name escapes and percent encoding survive parsing") {
  auto r = parse(
      "@prefix ex: <http://e/> . ex:a\\.b ex:p ex:x%20y .", Format::Turtle);
  REQUIRE(r.ok());
  CHECK(r.graph.triples()[0].subject == Term::iri("http://e/a.b"));
  CHECK(r.graph.triples()[0].object == Term::iri("http://e/x%20y"));
}

TEST_CASE("unescape_string") {
  auto r = unescape_string("a\\nb");
  REQUIRE(r.ok);
  CHECK(r.value == "a\nb");
  CHECK(r.value.size() == 3);

  auto r2 = unescape_string("\\u0041");
  REQUIRE(r2.ok);
  CHECK(r2.value == "A");

  auto r3 = unescape_string("\\q");
  CHECK(!r3.ok);

  auto r4 = unescape_string("\\U0001F600");
  REQUIRE(r4.ok);
  CHECK(r4.value == "\xF0\x9F\x98\x80");

  auto r5 = unescape_string("\\u12");
  CHECK(!r5.ok);

  auto r6 = unescape_string("\\uD800");  // lone surrogate
  CHECK(!r6.ok);
}

TEST_CASE("serialize_ntriples basics") {
  Graph g;
  CHECK(serialize_ntriples(g).empty());

  g.insert(Triple{Term::iri("http://a"), Term::iri("http://b"),
                  Term::iri("http://c")});
  CHECK(serialize_ntriples(g) == "<http://a> <http://b> <http://c> .\n");

  Graph g2;
  g2.insert(Triple{Term::blank("n1"), Term::iri("http://p"),
                   Term::literal("a\"b\\c\nd", {}, "en")});
  g2.insert(Triple{Term::iri("http://s"), Term::iri("http://p"),
                   Term::literal("5", std::string(iri_const::xsd_integer))});
  g2.insert(Triple{Term::iri("http://s"), Term::iri("http://p"),
                   Term::literal("plain")});
  CHECK(serialize_ntriples(g2) ==
        "_:n1 <http://p> \"a\\\"b\\\\c\\nd\"@en .\n"
        "<http://s> <http://p> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n"
        "<http://s> <http://p> \"plain\" .\n");
}

TEST_CASE("round trip: parse(serialize(G)) == G") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 100; ++i) {
    Graph g = testgen::random_graph(rng, 30);
    std::string doc = serialize_ntriples(g);
    auto r = parse(doc, Format::NTriples);
    REQUIRE(r.ok());
    CHECK(r.graph == g);
  }
}

TEST_CASE("RFC 3986 resolution examples") {
  const std::string base = "http://a/b/c/d;p?q";
  // normal examples
  CHECK(resolve_iri(base, "g") == "http://a/b/c/g");
  CHECK(resolve_iri(base, "./g") == "http://a/b/c/g");
  CHECK(resolve_iri(base, "g/") == "http://a/b/c/g/");
  CHECK(resolve_iri(base, "/g") == "http://a/g");
  CHECK(resolve_iri(base, "//g") == "http://g");
  CHECK(resolve_iri(base, "?y") == "http://a/b/c/d;p?y");
  CHECK(resolve_iri(base, "g?y") == "http://a/b/c/g?y");
  CHECK(resolve_iri(base, "#s") == "http://a/b/c/d;p?q#s");
  CHECK(resolve_iri(base, "g#s") == "http://a/b/c/g#s");
  CHECK(resolve_iri(base, "g?y#s") == "http://a/b/c/g?y#s");
  CHECK(resolve_iri(base, ";x") == "http://a/b/c/;x");
  CHECK(resolve_iri(base, "g;x") == "http://a/b/c/g;x");
  CHECK(resolve_iri(base, "g;x?y#s") == "http://a/b/c/g;x?y#s");
  CHECK(resolve_iri(base, "") == "http://a/b/c/d;p?q");
  CHECK(resolve_iri(base, ".") == "http://a/b/c/");
  CHECK(resolve_iri(base, "./") == "http://a/b/c/");
  CHECK(resolve_iri(base, "..") == "http://a/b/");
  CHECK(resolve_iri(base, "../") == "http://a/b/");
  CHECK(resolve_iri(base, "../g") == "http://a/b/g");
  CHECK(resolve_iri(base, "../..") == "http://a/");
  CHECK(resolve_iri(base, "../../") == "http://a/");
  CHECK(resolve_iri(base, "../../g") == "http://a/g");
  // abnormal examples
  CHECK(resolve_iri(base, "../../../g") == "http://a/g");
  CHECK(resolve_iri(base, "../../../../g") == "http://a/g");
  CHECK(resolve_iri(base, "/./g") == "http://a/g");
  CHECK(resolve_iri(base, "/../g") == "http://a/g");
  CHECK(resolve_iri(base, "g.") == "http://a/b/c/g.");
  CHECK(resolve_iri(base, ".g") == "http://a/b/c/.g");
  CHECK(resolve_iri(base, "g..") == "http://a/b/c/g..");
  CHECK(resolve_iri(base, "..g") == "http://a/b/c/..g");
  CHECK(resolve_iri(base, "./../g") == "http://a/b/g");
  CHECK(resolve_iri(base, "./g/.") == "http://a/b/c/g/");
  CHECK(resolve_iri(base, "g/./h") == "http://a/b/c/g/h");
  CHECK(resolve_iri(base, "g/../h") == "http://a/b/c/h");
  CHECK(resolve_iri(base, "g;x=1/./y") == "http://a/b/c/g;x=1/y");
  CHECK(resolve_iri(base, "g;x=1/../y") == "http://a/b/c/y");
  CHECK(resolve_iri(base, "http:g") == "http:g");  // strict
}

TEST_CASE("long strings preserve CRLF verbatim") {
  auto r = parse("<http://s> <http://p> \"\"\"a\r\nb\rc\nd\"\"\" .",
                 Format::Turtle);
  REQUIRE(r.ok());
  CHECK(r.graph.triples()[0].object.value == "a\r\nb\rc\nd");
  // and the line counter still advanced across the embedded breaks
  auto r2 = parse("<http://s> <http://p> \"\"\"x\r\ny\"\"\" undefined:q .",
                  Format::Turtle);
  REQUIRE(!r2.ok());
  CHECK(r2.diagnostics.back().line == 2);
}

TEST_CASE("parser survives truncation at every byte") {
  const std::string doc =
      "@prefix void: <http://rdfs.org/ns/void#> .\n"
      "@prefix ex: <http://ex.org/\xC3\xA9/> .\n"
      "ex:d a void:Dataset ; void:triples 42 ; ex:t \"x\\u0041y\"@en-us .\n"
      "[ a void:Linkset ; void:target ex:d , ex:e ] .\n"
      "ex:n ex:p 4.5, 1e3, true, _:b1, '''long\n text''' .\n";
  for (std::size_t cut = 0; cut <= doc.size(); ++cut) {
    auto r = parse(std::string_view(doc).substr(0, cut), Format::Turtle);
    for (const auto& d : r.diagnostics) {
      CHECK(d.line >= 1);
      CHECK(d.column >= 1);
    }
  }
}

TEST_CASE("parser survives random single-byte corruption") {
  const std::string doc =
      "@prefix void: <http://rdfs.org/ns/void#> .\n"
      "<http://a/d1> a void:Dataset ; void:triples 10 .\n"
      "<http://a/l> a void:Linkset ;\n"
      "  void:subjectsTarget <http://a/d1> ;\n"
      "  void:objectsTarget <http://a/d2> .\n";
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 800; ++trial) {
    std::string corrupted = doc;
    std::size_t at = rng() % corrupted.size();
    corrupted[at] = static_cast<char>(rng() % 256);
    auto r = parse(corrupted, Format::Turtle);
    for (const auto& d : r.diagnostics) {
      CHECK(d.line >= 1);
      CHECK(d.column >= 1);
    }
  }
}

TEST_CASE("deep bnode nesting fails cleanly instead of overflowing") {
  std::string doc = "@prefix ex: <http://e/> . ex:s ex:p ";
  for (int i = 0; i < 1000; ++i) doc += "[ ex:q ";
  doc += "ex:leaf";
  for (int i = 0; i < 1000; ++i) doc += " ]";
  doc += " .";
  auto r = parse(doc, Format::Turtle);
  REQUIRE(!r.ok());
  CHECK(r.diagnostics.back().message.find("nested too deeply") !=
        std::string::npos);
}
