// pzeta: partial point counts N_{d_1..d_n}(k, X) and partial zeta functions
// of affine varieties over finite fields.
//
// Subcommands: count, analyze, search, identity-check, faltings-verify,
// axkatz.  JSON reports go to stdout (or --out); human-readable tables and
// timings go to stderr, so stdout is always exactly one JSON document.
//
// Exit codes: 0 success, 1 usage/parse error, 2 node budget exceeded,
// 3 theorem inconsistency detected, 4 research event logged by search.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pzeta/analyze.hpp"
#include "pzeta/faltings.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/symident.hpp"

using namespace pzeta;
using nlohmann::ordered_json;

namespace {

std::string g_active_file;  // for positional error messages

struct CommonOpts {
  std::string file;
  std::vector<std::uint32_t> d;
  std::uint32_t kmax = 10;
  std::uint32_t max_order = 8;
  std::uint64_t budget = kDefaultNodeBudget;
  bool oracle = false;
  bool no_faltings = false;
  std::string out;
};

struct SearchOpts {
  std::uint32_t seed = 1;
  std::uint32_t trials = 16;
  std::vector<std::uint32_t> primes = {2, 3};
  bool dividing = false;
  std::uint32_t kmax = 10;
  std::uint32_t max_order = 4;
  std::uint64_t budget = 10'000'000;
  std::string out;
};

struct IdentityOpts {
  std::uint32_t spectra = 200;
  std::uint32_t matrices = 50;
  std::uint32_t hmax = 6;
  std::uint32_t matrix_hmax = 5;
  std::uint32_t seed = 1;
  std::string out;
};

void emit_report(const ordered_json& rep, const std::string& out_path) {
  std::string text = rep.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text << std::flush;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(Err::Io, "cannot write '" + out_path + "'");
    f << text;
  }
}

AnalyzeOptions to_options(const CommonOpts& c) {
  AnalyzeOptions opt;
  opt.d = c.d;
  opt.kmax = c.kmax;
  opt.max_order = c.max_order;
  opt.max_nodes = c.budget;
  opt.oracle = c.oracle;
  opt.faltings = !c.no_faltings;
  return opt;
}

// ---- count ---------------------------------------------------------------

int run_count(const CommonOpts& c) {
  g_active_file = c.file;
  VarietyFile vf = load_variety_file(c.file);
  AnalyzeOptions opt = to_options(c);
  bool plain = opt.d.size() == vf.nvars();
  if (!plain && vf.maps.empty())
    fail(Err::InvalidArgument, "d tuple arity must match the variable count");
  for (std::size_t g = 0; g < vf.maps.size(); ++g)
    if (vf.maps[g].size() != opt.d.size())
      fail(Err::InvalidArgument,
           "map group " + std::to_string(g + 1) + " has " +
               std::to_string(vf.maps[g].size()) + " components but d has " +
               std::to_string(opt.d.size()) + " entries");

  ordered_json rep = report_envelope("count");
  rep["query"] = query_echo(vf, opt);

  std::uint64_t nodes = 0;
  bool exhausted = false;
  bool oracle_mismatch = false;
  bool map_error = false;
  std::string note;

  if (plain) {
    PartialSeries ps =
        count_series_partial(vf.equations, opt.d, opt.kmax, opt.max_nodes,
                             opt.oracle);
    nodes += ps.nodes;
    exhausted = ps.exhausted;
    oracle_mismatch = ps.oracle_mismatch;
    note = ps.note;
    ordered_json counts = ordered_json::array();
    for (const Int& n : ps.counts) counts.push_back(to_str(n));
    rep["counts"] = counts;
    if (opt.oracle) rep["oracle_consistent"] = !ps.oracle_mismatch;
  }

  if (!vf.maps.empty()) {
    ordered_json groups = ordered_json::array();
    for (std::size_t g = 0; g < vf.maps.size(); ++g) {
      ordered_json jg;
      jg["group"] = g + 1;
      jg["maps"] = vf.map_text[g];
      ordered_json counts = ordered_json::array();
      for (std::uint32_t k = 1; k <= opt.kmax; ++k) {
        if (nodes >= opt.max_nodes) {
          exhausted = true;
          note = "budget consumed in map group " + std::to_string(g + 1);
          break;
        }
        Budget b;
        b.max_nodes = opt.max_nodes - nodes;
        CountStats st;
        try {
          Int n = count_generalized(vf.equations, vf.maps[g], opt.d, k, b, &st);
          nodes += st.nodes;
          counts.push_back(to_str(n));
        } catch (const PzetaError& err) {
          if (err.kind() == Err::BudgetExceeded) {
            nodes = opt.max_nodes;
            exhausted = true;
            note = "map group " + std::to_string(g + 1) + " N_" +
                   std::to_string(k) + " exceeded the node budget";
            break;
          }
          if (err.kind() == Err::InjectivityViolated) {
            nodes += st.nodes;
            jg["error"] = err_name(err.kind());
            map_error = true;
            break;
          }
          throw;
        }
      }
      jg["counts"] = counts;
      groups.push_back(jg);
    }
    rep["generalized"] = groups;
  }

  {
    ordered_json b;
    b["max_nodes"] = opt.max_nodes;
    b["nodes_used"] = nodes;
    b["exhausted"] = exhausted;
    if (exhausted) b["note"] = note;
    rep["budget"] = b;
  }

  emit_report(rep, c.out);
  std::cerr << render_human(rep);
  if (oracle_mismatch) return 3;
  if (exhausted) return 2;
  return map_error ? 1 : 0;
}

// ---- analyze -------------------------------------------------------------

int run_analyze(const CommonOpts& c) {
  g_active_file = c.file;
  VarietyFile vf = load_variety_file(c.file);
  AnalyzeOutcome out = analyze_variety(vf, to_options(c));
  emit_report(out.report, c.out);
  std::cerr << render_human(out.report);
  return out.exit_code;
}

// ---- search --------------------------------------------------------------

std::string random_poly_text(std::mt19937& rng, std::uint32_t p,
                             std::uint32_t nvars) {
  std::uint32_t nterms = 1 + rng() % 3;
  std::ostringstream os;
  for (std::uint32_t t = 0; t < nterms; ++t) {
    std::uint32_t coeff = 1 + rng() % (p - 1 ? p - 1 : 1);
    std::vector<std::uint32_t> exps(nvars);
    std::uint32_t total = 0;
    for (auto& x : exps) {
      x = rng() % 4;
      total += x;
    }
    while (total > 3) {
      std::uint32_t i = rng() % nvars;
      if (exps[i] > 0) {
        --exps[i];
        --total;
      }
    }
    if (t == 0 && total == 0) exps[rng() % nvars] = 1;  // never a bare constant
    if (t) os << " + ";
    os << coeff;
    for (std::uint32_t i = 0; i < nvars; ++i) {
      if (exps[i] == 0) continue;
      os << "*x" << i + 1;
      if (exps[i] > 1) os << "^" << exps[i];
    }
  }
  return os.str();
}

int run_search(const SearchOpts& s) {
  static const std::vector<std::vector<std::uint32_t>> kNonDiv2 = {{2, 3},
                                                                   {3, 4}};
  static const std::vector<std::vector<std::uint32_t>> kNonDiv3 = {{1, 2, 3},
                                                                   {2, 2, 3}};
  static const std::vector<std::vector<std::uint32_t>> kDiv2 = {
      {1, 2}, {2, 2}, {2, 4}};
  static const std::vector<std::vector<std::uint32_t>> kDiv3 = {
      {1, 2, 2}, {1, 2, 4}, {2, 2, 2}};

  if (s.primes.empty()) fail(Err::InvalidArgument, "need at least one prime");
  std::mt19937 rng(s.seed);

  ordered_json rep = report_envelope("search");
  {
    ordered_json cfg;
    cfg["seed"] = s.seed;
    cfg["trials"] = s.trials;
    cfg["primes"] = s.primes;
    cfg["dividing"] = s.dividing;
    cfg["kmax"] = s.kmax;
    cfg["max_order"] = s.max_order;
    cfg["budget"] = s.budget;
    rep["config"] = cfg;
  }
  ordered_json instances = ordered_json::array();
  ordered_json events = ordered_json::array();
  ordered_json failures = ordered_json::array();
  bool inconsistency = false;

  for (std::uint32_t t = 0; t < s.trials; ++t) {
    std::uint32_t p = s.primes[rng() % s.primes.size()];
    std::uint32_t nvars = 2 + rng() % 2;
    const auto& tuples = s.dividing ? (nvars == 2 ? kDiv2 : kDiv3)
                                    : (nvars == 2 ? kNonDiv2 : kNonDiv3);
    std::vector<std::uint32_t> d = tuples[rng() % tuples.size()];
    std::uint32_t neqs = rng() % 4 == 0 ? 2 : 1;

    std::ostringstream vt;
    vt << "label = search seed " << s.seed << " trial " << t << "\n";
    vt << "p = " << p << "\n";
    vt << "vars =";
    for (std::uint32_t i = 0; i < nvars; ++i) vt << " x" << i + 1;
    vt << "\n";
    for (std::uint32_t i = 0; i < neqs; ++i)
      vt << "eq " << random_poly_text(rng, p, nvars) << "\n";
    std::string text = vt.str();

    ordered_json inst;
    inst["trial"] = t;
    inst["p"] = p;
    inst["d"] = d;
    try {
      std::istringstream in(text);
      VarietyFile vf =
          parse_variety_file(in, "<search trial " + std::to_string(t) + ">");
      inst["equations"] = vf.equation_text;
      AnalyzeOptions opt;
      opt.d = d;
      opt.kmax = s.kmax;
      opt.max_order = s.max_order;
      opt.max_nodes = s.budget;
      AnalyzeOutcome out = analyze_variety(vf, opt);
      const auto& cls = out.report["classification"];
      inst["status"] = out.exit_code == 2 ? "budget" : "ok";
      inst["verdict"] =
          cls.value("ran", false) ? cls["verdict"].get<std::string>() : "-";
      inst["event"] = out.research_event;
      if (out.exit_code == 3) {
        inconsistency = true;
        inst["status"] = "inconsistent";
      }
      if (out.research_event || out.exit_code == 3) {
        ordered_json ev;
        ev["trial"] = t;
        ev["variety_file"] = text;
        ev["d"] = d;
        ev["report"] = out.report;
        events.push_back(ev);
      }
    } catch (const PzetaError& err) {
      inst["status"] = std::string("error: ") + err_name(err.kind());
      ordered_json f;
      f["trial"] = t;
      f["error"] = err_name(err.kind());
      f["message"] = err.what();
      f["variety_file"] = text;
      failures.push_back(f);
    }
    instances.push_back(inst);
  }

  rep["instances"] = instances;
  rep["events"] = events;
  rep["failures"] = failures;
  rep["event_count"] = events.size();
  emit_report(rep, s.out);
  std::cerr << "search    " << s.trials << " instances, " << events.size()
            << " events, " << failures.size() << " failures\n";
  if (inconsistency) return 3;
  return events.empty() ? 0 : 4;
}

// ---- identity-check ------------------------------------------------------

std::vector<std::vector<Int>> matmul(const std::vector<std::vector<Int>>& a,
                                     const std::vector<std::vector<Int>>& b) {
  std::size_t n = a.size();
  std::vector<std::vector<Int>> c(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Int mat_trace(const std::vector<std::vector<Int>>& a) {
  Int t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

int run_identity_check(const IdentityOpts& o) {
  if (o.hmax < 2 || o.matrix_hmax < 2)
    fail(Err::InvalidArgument, "hmax must be >= 2");
  std::mt19937 rng(o.seed);
  auto small_int = [&]() { return static_cast<long>(rng() % 7) - 3; };

  std::uint32_t spectra_bad = 0;
  for (std::uint32_t t = 0; t < o.spectra; ++t) {
    std::uint32_t h = 2 + rng() % (o.hmax - 1);
    std::uint32_t dim = 1 + rng() % (h - 1);  // closure needs dim <= h-1
    std::vector<Rat> eigs(dim);
    for (auto& v : eigs) v = small_int();
    std::vector<Rat> p = spectrum_power_sums(eigs, h);
    std::vector<Rat> lower(p.begin(), p.end() - 1);
    if (universal_trace(lower) != p[h - 1]) ++spectra_bad;
  }

  std::uint32_t matrices_bad = 0;
  for (std::uint32_t t = 0; t < o.matrices; ++t) {
    std::uint32_t h = 2 + rng() % (o.matrix_hmax - 1);
    std::uint32_t dim = 1 + rng() % (h - 1);
    std::vector<std::vector<Int>> a(dim, std::vector<Int>(dim));
    for (auto& row : a)
      for (auto& v : row) v = small_int();
    std::vector<Rat> p;
    std::vector<std::vector<Int>> pow = a;
    for (std::uint32_t x = 1; x <= h; ++x) {
      p.push_back(Rat(mat_trace(pow)));
      if (x < h) pow = matmul(pow, a);
    }
    std::vector<Rat> lower(p.begin(), p.end() - 1);
    if (universal_trace(lower) != p[h - 1]) ++matrices_bad;
  }

  // dim-1 h=2 demonstration: phi = (3), Tr(phi^2) = 9; the alternate sign
  // convention lands on the negation
  std::vector<Rat> demo_lower = {Rat(3)};
  Rat uni = universal_trace(demo_lower);
  Rat alt = universal_trace_alt_sign(demo_lower);

  ordered_json rep = report_envelope("identity-check");
  {
    ordered_json cfg;
    cfg["seed"] = o.seed;
    cfg["spectra"] = o.spectra;
    cfg["matrices"] = o.matrices;
    cfg["hmax"] = o.hmax;
    cfg["matrix_hmax"] = o.matrix_hmax;
    rep["config"] = cfg;
  }
  rep["spectra"] = {{"trials", o.spectra}, {"mismatches", spectra_bad}};
  rep["matrices"] = {{"trials", o.matrices}, {"mismatches", matrices_bad}};
  bool all = spectra_bad == 0 && matrices_bad == 0;
  rep["all_match"] = all;
  rep["sign_variant_demo"] = {{"eigenvalue", "3"},
                            {"h", 2},
                            {"universal_trace", to_str(uni)},
                            {"sign_variant", to_str(alt)},
                            {"negated", uni == -alt}};
  emit_report(rep, o.out);
  std::cerr << "identity  " << o.spectra << " spectra, " << o.matrices
            << " matrices, " << (spectra_bad + matrices_bad)
            << " mismatches\n";
  return all ? 0 : 3;
}

// ---- faltings-verify -----------------------------------------------------

int run_faltings_verify(const CommonOpts& c, std::uint32_t k) {
  g_active_file = c.file;
  VarietyFile vf = load_variety_file(c.file);
  AnalyzeOptions opt = to_options(c);
  opt.kmax = k;
  if (opt.d.size() != vf.nvars())
    fail(Err::InvalidArgument, "d tuple arity must match the variable count");

  Budget b;
  b.max_nodes = c.budget;
  CountStats cs, fs;
  Int count = count_partial(vf.equations, opt.d, k, b, &cs);
  Int fixed = fixed_points_sigma_frob(vf.equations, opt.d, k, b, &fs);
  bool match = count == fixed;

  ordered_json rep = report_envelope("faltings-verify");
  rep["query"] = query_echo(vf, opt);
  rep["k"] = k;
  rep["count"] = to_str(count);
  rep["fixed_points"] = to_str(fixed);
  rep["match"] = match;
  rep["nodes"] = {{"count", cs.nodes}, {"fixed_points", fs.nodes}};
  emit_report(rep, c.out);
  std::cerr << "faltings  k=" << k << " fixed points " << to_str(fixed)
            << " vs count " << to_str(count) << "  "
            << (match ? "match" : "MISMATCH") << "\n";
  return match ? 0 : 3;
}

// ---- axkatz --------------------------------------------------------------

int run_axkatz(const CommonOpts& c) {
  g_active_file = c.file;
  VarietyFile vf = load_variety_file(c.file);
  AnalyzeOptions opt = to_options(c);
  if (opt.d.size() != vf.nvars())
    fail(Err::InvalidArgument, "d tuple arity must match the variable count");

  AxKatzReport ak =
      verify_axkatz(vf.equations, opt.d, c.kmax, Budget{c.budget, {}});
  ordered_json rep = report_envelope("axkatz");
  rep["query"] = query_echo(vf, opt);
  rep["applicable"] = ak.applicable;
  rep["mu"] = ak.mu;
  ordered_json rows = ordered_json::array();
  for (const auto& row : ak.rows) {
    ordered_json r;
    r["k"] = row.k;
    r["count"] = to_str(row.count);
    r["ord"] = row.ord.infinite ? ordered_json("inf")
                                : ordered_json(to_str(row.ord.value));
    r["pass"] = row.pass;
    rows.push_back(r);
  }
  rep["rows"] = rows;
  rep["all_pass"] = ak.all_pass;
  emit_report(rep, c.out);
  std::cerr << "axkatz    mu = " << ak.mu << "  "
            << (ak.applicable ? (ak.all_pass ? "all pass" : "VIOLATED")
                              : "not applicable")
            << "\n";
  return ak.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "partial point counts and partial zeta functions of affine varieties "
      "over finite fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pzeta 1.0 (report schema 1)");

  CommonOpts cnt, ana, fal, axk;
  SearchOpts sea;
  IdentityOpts idn;
  std::uint32_t fal_k = 1;

  auto add_common = [](CLI::App* sub, CommonOpts& c, bool kmax_flag) {
    sub->add_option("file", c.file, "variety file")->required();
    sub->add_option("--d", c.d, "coordinate degrees d_1,..,d_n")
        ->required()
        ->delimiter(',');
    if (kmax_flag)
      sub->add_option("--kmax", c.kmax, "levels k = 1..kmax")
          ->capture_default_str();
    sub->add_option("--budget", c.budget, "total node budget")
        ->capture_default_str();
    sub->add_option("--out", c.out, "write the JSON report to this path");
  };

  CLI::App* c_count =
      app.add_subcommand("count", "partial point counts N_d(k, X)");
  add_common(c_count, cnt, true);
  c_count->add_flag("--oracle", cnt.oracle,
                    "cross-check every count against brute force");

  CLI::App* c_ana = app.add_subcommand(
      "analyze", "full pipeline: counts, zeta, recurrence, RH, Ax-Katz");
  add_common(c_ana, ana, true);
  c_ana->add_option("--max-order", ana.max_order,
                    "largest recurrence order to try")
      ->capture_default_str();
  c_ana->add_flag("--oracle", ana.oracle,
                  "cross-check every count against brute force");
  c_ana->add_flag("--no-faltings", ana.no_faltings,
                  "skip the fixed-point cross-check");

  CLI::App* c_sea = app.add_subcommand(
      "search", "scan random varieties for non-rational partial zetas");
  c_sea->add_option("--seed", sea.seed, "RNG seed")->capture_default_str();
  c_sea->add_option("--trials", sea.trials, "instances to generate")
      ->capture_default_str();
  c_sea->add_option("--p", sea.primes, "primes to draw from")
      ->delimiter(',')
      ->capture_default_str();
  c_sea->add_flag("--dividing", sea.dividing,
                  "restrict to dividing d-chains (expected event-free)");
  c_sea->add_option("--kmax", sea.kmax, "levels per instance")
      ->capture_default_str();
  c_sea->add_option("--max-order", sea.max_order,
                    "largest recurrence order to try")
      ->capture_default_str();
  c_sea->add_option("--budget", sea.budget, "node budget per instance")
      ->capture_default_str();
  c_sea->add_option("--out", sea.out, "write the JSON report to this path");

  CLI::App* c_idn = app.add_subcommand(
      "identity-check", "verify the universal trace formula on random data");
  c_idn->add_option("--spectra", idn.spectra, "random spectrum trials")
      ->capture_default_str();
  c_idn->add_option("--matrices", idn.matrices, "random matrix trials")
      ->capture_default_str();
  c_idn->add_option("--hmax", idn.hmax, "largest h for spectra")
      ->capture_default_str();
  c_idn->add_option("--matrix-hmax", idn.matrix_hmax,
                    "largest h for matrices")
      ->capture_default_str();
  c_idn->add_option("--seed", idn.seed, "RNG seed")->capture_default_str();
  c_idn->add_option("--out", idn.out, "write the JSON report to this path");

  CLI::App* c_fal = app.add_subcommand(
      "faltings-verify", "fixed points of sigma o Frob^k vs the partial count");
  add_common(c_fal, fal, false);
  c_fal->add_option("--k", fal_k, "level to verify")->capture_default_str();

  CLI::App* c_axk =
      app.add_subcommand("axkatz", "q-adic lower bound check on N_1..N_kmax");
  add_common(c_axk, axk, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    if (c_count->parsed()) rc = run_count(cnt);
    if (c_ana->parsed()) rc = run_analyze(ana);
    if (c_sea->parsed()) rc = run_search(sea);
    if (c_idn->parsed()) rc = run_identity_check(idn);
    if (c_fal->parsed()) rc = run_faltings_verify(fal, fal_k);
    if (c_axk->parsed()) rc = run_axkatz(axk);
  } catch (const PzetaError& err) {
    std::ostringstream os;
    os << "pzeta: ";
    if (err.line() >= 0) {
      os << (g_active_file.empty() ? "<input>" : g_active_file) << ":"
         << err.line();
      if (err.col() >= 0) os << ":" << err.col();
      os << ": ";
    }
    os << "error: " << err.what() << " [" << err_name(err.kind()) << "]";
    std::cerr << os.str() << "\n";
    return err.kind() == Err::BudgetExceeded ? 2 : 1;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "time      " << ms << " ms\n";
  return rc;
}
