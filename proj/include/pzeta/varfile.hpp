#pragma once
// Line-oriented variety file format, version 1.
//
//   # comment to end of line
//   label = universal level 2 elliptic curve     (optional, free-form)
//   p = 5
//   e = 1                                        (optional, default 1)
//   vars = x1 x2 x3
//   eq x1^2 - x2*(x2 - 1)*(x2 - x3)
//   eq ...                                       (one equation per line)
//   map x1 + x2                                  (optional morphism lines,
//   map x1*x2                                     one target coordinate each;
//                                                 groups separated by blank
//   map x1                                        lines, each group is one
//   ...                                           morphism)
//
// `p`, `e` and `vars` must appear before the first `eq`/`map` line; variable
// names are required to be x1..xn in order.  Equations and maps are parsed
// eagerly, so a syntax error is reported with its file line and column.

#include <iosfwd>
#include <string>
#include <vector>

#include "pzeta/ffield.hpp"
#include "pzeta/poly.hpp"

namespace pzeta {

struct VarietyFile {
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::vector<std::string> vars;
  std::string label;
  std::string source;  // path or "<stdin>"; not part of the format

  std::vector<std::string> equation_text;  // trimmed, echoed in reports
  std::vector<Poly> equations;
  std::vector<std::vector<std::string>> map_text;  // one entry per group
  std::vector<std::vector<Poly>> maps;

  std::uint32_t nvars() const { return static_cast<std::uint32_t>(vars.size()); }
  FieldSpec field() const { return make_field_spec(p, e); }
};

VarietyFile parse_variety_file(std::istream& in,
                               const std::string& source = "<input>");
VarietyFile load_variety_file(const std::string& path);  // Err::Io on failure

}  // namespace pzeta
