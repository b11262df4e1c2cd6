#include "pzeta/varfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace pzeta {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::uint32_t parse_u32(const std::string& s, const char* what, long line) {
  std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail_at(Err::Parse, std::string(what) + " must be a positive integer",
            line, 1);
  unsigned long v = 0;
  try {
    v = std::stoul(t);
  } catch (const std::exception&) {
    fail_at(Err::Parse, std::string(what) + " out of range", line, 1);
  }
  if (v == 0 || v > 0xffffffffUL)
    fail_at(Err::Parse, std::string(what) + " out of range", line, 1);
  return static_cast<std::uint32_t>(v);
}

// Replace a leading keyword with spaces so parse_poly's column numbers line
// up with the file text exactly.
std::string blank_keyword(const std::string& line, std::size_t kwlen) {
  std::string s = line;
  for (std::size_t i = 0; i < kwlen && i < s.size(); ++i) s[i] = ' ';
  return s;
}

}  // namespace

VarietyFile parse_variety_file(std::istream& in, const std::string& source) {
  VarietyFile vf;
  vf.source = source;
  bool saw_p = false, saw_e = false, saw_vars = false;
  std::vector<std::string> open_group_text;
  std::vector<Poly> open_group;

  auto close_group = [&]() {
    if (open_group.empty()) return;
    vf.map_text.push_back(std::move(open_group_text));
    vf.maps.push_back(std::move(open_group));
    open_group_text.clear();
    open_group.clear();
  };

  auto require_header = [&](long line) {
    if (!saw_p) fail_at(Err::Parse, "p must be set before equations", line, 1);
    if (!saw_vars)
      fail_at(Err::Parse, "vars must be set before equations", line, 1);
  };

  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::string body = trim(line);
    if (body.empty()) {
      close_group();
      continue;
    }

    std::size_t eqpos = body.find('=');
    std::string head = eqpos == std::string::npos
                           ? body.substr(0, body.find_first_of(" \t"))
                           : trim(body.substr(0, eqpos));

    if (head == "p" || head == "e" || head == "vars" || head == "label") {
      close_group();
      if (eqpos == std::string::npos)
        fail_at(Err::Parse, "expected '" + head + " = ...'", lineno, 1);
      std::string value = trim(body.substr(eqpos + 1));
      if (head == "p") {
        if (saw_p) fail_at(Err::Parse, "duplicate p", lineno, 1);
        saw_p = true;
        vf.p = parse_u32(value, "p", lineno);
        try {
          make_field_spec(vf.p, 1);
        } catch (const PzetaError& err) {
          fail_at(err.kind(), err.what(), lineno, 1);
        }
      } else if (head == "e") {
        if (saw_e) fail_at(Err::Parse, "duplicate e", lineno, 1);
        saw_e = true;
        vf.e = parse_u32(value, "e", lineno);
      } else if (head == "vars") {
        if (saw_vars) fail_at(Err::Parse, "duplicate vars", lineno, 1);
        saw_vars = true;
        std::istringstream vs(value);
        std::string tok;
        while (vs >> tok) vf.vars.push_back(tok);
        if (vf.vars.empty())
          fail_at(Err::Parse, "vars list is empty", lineno, 1);
        for (std::size_t i = 0; i < vf.vars.size(); ++i) {
          std::string want = "x" + std::to_string(i + 1);
          if (vf.vars[i] != want)
            fail_at(Err::Parse,
                    "variable names must be x1 x2 ... in order (got '" +
                        vf.vars[i] + "', expected '" + want + "')",
                    lineno, 1);
        }
      } else {
        vf.label = value;
      }
      continue;
    }

    if (head == "eq" || head == "map") {
      require_header(lineno);
      FieldSpec fs = [&] {
        try {
          return vf.field();
        } catch (const PzetaError& err) {
          fail_at(err.kind(), err.what(), lineno, 1);
        }
      }();
      std::string padded = blank_keyword(line, line.find(head) + head.size());
      Poly poly = parse_poly(padded, vf.nvars(), fs, lineno);
      std::string text = trim(body.substr(head.size()));
      if (head == "eq") {
        close_group();
        vf.equation_text.push_back(text);
        vf.equations.push_back(std::move(poly));
      } else {
        open_group_text.push_back(text);
        open_group.push_back(std::move(poly));
      }
      continue;
    }

    fail_at(Err::Parse, "unrecognized directive '" + head + "'", lineno, 1);
  }
  close_group();

  if (!saw_p) fail(Err::Parse, "missing 'p = ...' line");
  if (!saw_vars) fail(Err::Parse, "missing 'vars = ...' line");
  if (vf.equations.empty())
    fail(Err::Parse, "no equations (use 'eq 0' for affine space)");
  return vf;
}

VarietyFile load_variety_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::Io, "cannot open '" + path + "'");
  return parse_variety_file(in, path);
}

}  // namespace pzeta
