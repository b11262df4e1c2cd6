#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pzeta/varfile.hpp"

using namespace pzeta;

namespace {

VarietyFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_variety_file(in, "<test>");
}

struct Caught {
  Err kind;
  long line;
  long col;
  std::string msg;
};

Caught parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const PzetaError& e) {
    return {e.kind(), e.line(), e.col(), e.what()};
  }
  FAIL("expected a parse failure");
  return {Err::Parse, -1, -1, ""};
}

}  // namespace

TEST_CASE("full grammar round trip") {
  VarietyFile vf = parse(
      "# a comment\n"
      "label = demo curve   # trailing comment\n"
      "p = 5\n"
      "e = 2\n"
      "vars = x1 x2\n"
      "\n"
      "eq x2^2 - x1^3\n"
      "eq 2*x1*x2 + 3\n");
  CHECK(vf.p == 5);
  CHECK(vf.e == 2);
  CHECK(vf.label == "demo curve");
  CHECK(vf.source == "<test>");
  CHECK(vf.nvars() == 2);
  REQUIRE(vf.vars.size() == 2);
  CHECK(vf.vars[0] == "x1");
  CHECK(vf.vars[1] == "x2");
  REQUIRE(vf.equations.size() == 2);
  CHECK(vf.equation_text[0] == "x2^2 - x1^3");
  CHECK(vf.equation_text[1] == "2*x1*x2 + 3");
  CHECK(vf.maps.empty());
  CHECK(poly_total_degree(vf.equations[0]) == 3);
  FieldSpec fs = vf.field();
  CHECK(fs.p == 5);
  CHECK(fs.e == 2);
}

TEST_CASE("e defaults to 1") {
  VarietyFile vf = parse("p = 7\nvars = x1\neq x1^2 + 1\n");
  CHECK(vf.e == 1);
  CHECK(vf.field().e == 1);
}

TEST_CASE("eq 0 describes affine space") {
  VarietyFile vf = parse("p = 3\nvars = x1 x2 x3\neq 0\n");
  REQUIRE(vf.equations.size() == 1);
  CHECK(poly_is_zero(vf.equations[0]));
}

TEST_CASE("map groups split on blank lines") {
  VarietyFile vf = parse(
      "p = 3\n"
      "vars = x1 x2\n"
      "eq x2 - x1^2\n"
      "\n"
      "map x2\n"
      "map x1\n"
      "\n"
      "\n"
      "map x1 + 1\n"
      "map x2\n");
  REQUIRE(vf.maps.size() == 2);
  REQUIRE(vf.maps[0].size() == 2);
  REQUIRE(vf.maps[1].size() == 2);
  CHECK(vf.map_text[0][0] == "x2");
  CHECK(vf.map_text[0][1] == "x1");
  CHECK(vf.map_text[1][0] == "x1 + 1");
  CHECK(vf.map_text[1][1] == "x2");
}

TEST_CASE("an eq line closes an open map group") {
  VarietyFile vf = parse(
      "p = 3\n"
      "vars = x1\n"
      "eq x1\n"
      "map x1\n"
      "eq x1 + 1\n"
      "map x1 + 2\n");
  REQUIRE(vf.equations.size() == 2);
  REQUIRE(vf.maps.size() == 2);
  CHECK(vf.maps[0].size() == 1);
  CHECK(vf.map_text[1][0] == "x1 + 2");
}

TEST_CASE("header directives may come in any order before the equations") {
  VarietyFile vf = parse("vars = x1\np = 2\neq x1\n");
  CHECK(vf.p == 2);
  CHECK(vf.nvars() == 1);
}

TEST_CASE("missing pieces are reported") {
  CHECK(parse_error("vars = x1\neq x1\n").kind == Err::Parse);      // no p
  CHECK(parse_error("p = 3\nvars = x1\n").kind == Err::Parse);      // no eq
  CHECK(parse_error("").kind == Err::Parse);                        // empty
  Caught c = parse_error("p = 3\neq x1\nvars = x1\n");  // eq before vars
  CHECK(c.kind == Err::Parse);
  CHECK(c.line == 2);
}

TEST_CASE("duplicate directives are rejected with the line number") {
  Caught c = parse_error("p = 3\np = 5\nvars = x1\neq x1\n");
  CHECK(c.kind == Err::Parse);
  CHECK(c.line == 2);
  Caught ce = parse_error("p = 3\ne = 1\ne = 2\nvars = x1\neq x1\n");
  CHECK(ce.kind == Err::Parse);
  CHECK(ce.line == 3);
  Caught cv = parse_error("p = 3\nvars = x1\nvars = x1\neq x1\n");
  CHECK(cv.kind == Err::Parse);
  CHECK(cv.line == 3);
}

TEST_CASE("p must be a prime, rejected in place") {
  Caught c = parse_error("p = 6\nvars = x1\neq x1\n");
  CHECK(c.kind == Err::NotPrime);
  CHECK(c.line == 1);
  CHECK(parse_error("p = 0\nvars = x1\neq x1\n").kind == Err::Parse);
  CHECK(parse_error("p = -3\nvars = x1\neq x1\n").kind == Err::Parse);
  CHECK(parse_error("p = abc\nvars = x1\neq x1\n").kind == Err::Parse);
}

TEST_CASE("vars must be x1 x2 ... in order") {
  Caught c = parse_error("p = 3\nvars = x y\neq x\n");
  CHECK(c.kind == Err::Parse);
  CHECK(c.line == 2);
  CHECK(parse_error("p = 3\nvars = x2 x1\neq x1\n").kind == Err::Parse);
  CHECK(parse_error("p = 3\nvars =\neq x1\n").kind == Err::Parse);
}

TEST_CASE("unknown directives are rejected") {
  Caught c = parse_error("p = 3\nvars = x1\nfrobenius twist\neq x1\n");
  CHECK(c.kind == Err::Parse);
  CHECK(c.line == 3);
}

TEST_CASE("polynomial errors keep file line and column") {
  // the '*' sits at column 9 of line 3, and the blanked keyword keeps the
  // parser's column numbers aligned with the file text
  Caught c = parse_error("p = 3\nvars = x1 x2\neq x1 + * x2\n");
  CHECK(c.kind == Err::Parse);
  CHECK(c.line == 3);
  CHECK(c.col == 9);

  Caught u = parse_error("p = 3\nvars = x1 x2\neq x1 + x9\n");
  CHECK(u.kind == Err::UnknownVariable);
  CHECK(u.line == 3);
  CHECK(u.col == 9);

  Caught m = parse_error("p = 3\nvars = x1\neq x1\nmap 1 +\n");
  CHECK(m.kind == Err::Parse);
  CHECK(m.line == 4);
}

TEST_CASE("comments may occupy whole lines or trail content") {
  VarietyFile vf = parse(
      "# leading\n"
      "p = 3   # the field\n"
      "vars = x1   # one variable\n"
      "eq x1^2 + 1 # an equation\n"
      "#map x1\n");
  CHECK(vf.equation_text[0] == "x1^2 + 1");
  CHECK(vf.maps.empty());
}

TEST_CASE("load_variety_file reports missing files as Io") {
  try {
    load_variety_file("/nonexistent/path/to.var");
    FAIL("expected Io");
  } catch (const PzetaError& e) {
    CHECK(e.kind() == Err::Io);
  }
}

TEST_CASE("load_variety_file reads fixtures from disk") {
  // written next to the binary by the build; fall back to a temp copy
  const char* path = "test_varfile_fixture.var";
  {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << "p = 5\nvars = x1 x2 x3\neq x1^2 - x2*(x2 - 1)*(x2 - x3)\n";
  }
  VarietyFile vf = load_variety_file(path);
  CHECK(vf.p == 5);
  CHECK(vf.nvars() == 3);
  CHECK(vf.source == path);
  CHECK(poly_total_degree(vf.equations[0]) == 3);
}
