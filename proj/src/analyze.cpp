#include "pzeta/analyze.hpp"

#include <cmath>
#include <sstream>

#include "pzeta/faltings.hpp"
#include "pzeta/padic.hpp"
#include "pzeta/series.hpp"

namespace pzeta {

namespace {

using nlohmann::ordered_json;

double log_abs(const Int& v) {  // natural log of |v|; v must be nonzero
  signed long e2 = 0;
  double m = mpz_get_d_2exp(&e2, v.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e2) * std::log(2.0);
}

ordered_json str_array(const std::vector<Int>& v) {
  ordered_json a = ordered_json::array();
  for (const Int& x : v) a.push_back(to_str(x));
  return a;
}

ordered_json str_array(const std::vector<Rat>& v) {
  ordered_json a = ordered_json::array();
  for (const Rat& x : v) a.push_back(to_str(x));
  return a;
}

}  // namespace

ordered_json report_envelope(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "pzeta";
  j["command"] = command;
  return j;
}

ordered_json query_echo(const VarietyFile& vf, const AnalyzeOptions& opt) {
  ordered_json q;
  q["file"] = vf.source;
  q["label"] = vf.label;
  q["p"] = vf.p;
  q["e"] = vf.e;
  q["q"] = to_str(ipow(vf.p, vf.e));
  q["vars"] = vf.vars;
  q["equations"] = vf.equation_text;
  q["map_groups"] = vf.maps.size();
  q["d"] = opt.d;
  q["kmax"] = opt.kmax;
  q["max_order"] = opt.max_order;
  q["budget"] = opt.max_nodes;
  q["oracle"] = opt.oracle;
  return q;
}

PartialSeries count_series_partial(const std::vector<Poly>& eqs,
                                   const std::vector<std::uint32_t>& d,
                                   std::uint32_t kmax, std::uint64_t max_nodes,
                                   bool oracle) {
  PartialSeries ps;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    if (ps.nodes >= max_nodes) {
      ps.exhausted = true;
      ps.note = "budget consumed before N_" + std::to_string(k);
      break;
    }
    Budget b;
    b.max_nodes = max_nodes - ps.nodes;
    CountStats st;
    try {
      Int n = count_partial(eqs, d, k, b, &st);
      ps.nodes += st.nodes;
      if (oracle) {
        if (ps.nodes >= max_nodes) {
          ps.exhausted = true;
          ps.note = "budget consumed before the N_" + std::to_string(k) +
                    " oracle check";
          break;
        }
        Budget ob;
        ob.max_nodes = max_nodes - ps.nodes;
        CountStats ost;
        Int o = count_partial_bruteforce(eqs, d, k, ob, &ost);
        ps.nodes += ost.nodes;
        if (o != n) ps.oracle_mismatch = true;
      }
      ps.counts.push_back(n);
    } catch (const PzetaError& err) {
      if (err.kind() != Err::BudgetExceeded) throw;
      ps.nodes = max_nodes;
      ps.exhausted = true;
      ps.note = "N_" + std::to_string(k) + " exceeded the node budget";
      break;
    }
  }
  return ps;
}

AnalyzeOutcome analyze_variety(const VarietyFile& vf,
                               const AnalyzeOptions& opt) {
  const std::vector<Poly>& eqs = vf.equations;
  if (opt.d.empty()) fail(Err::InvalidArgument, "d tuple is required");
  if (opt.d.size() != vf.nvars())
    fail(Err::InvalidArgument, "d tuple arity must match the variable count");
  if (opt.kmax < 1) fail(Err::InvalidArgument, "kmax must be >= 1");
  const Int q = ipow(vf.p, vf.e);
  const std::uint32_t dlcm = static_cast<std::uint32_t>(lcm_of(opt.d));

  AnalyzeOutcome out;
  ordered_json& rep = out.report;
  rep = report_envelope("analyze");
  rep["query"] = query_echo(vf, opt);

  // ---- counts, one cumulative budget; partial results survive exhaustion
  PartialSeries ps =
      count_series_partial(eqs, opt.d, opt.kmax, opt.max_nodes, opt.oracle);
  const std::vector<Int>& counts = ps.counts;
  const bool exhausted = ps.exhausted;
  const bool oracle_mismatch = ps.oracle_mismatch;
  const std::uint32_t K = static_cast<std::uint32_t>(counts.size());

  rep["counts"] = str_array(counts);
  {
    ordered_json b;
    b["max_nodes"] = opt.max_nodes;
    b["nodes_used"] = ps.nodes;
    b["exhausted"] = exhausted;
    if (exhausted) b["note"] = ps.note;
    rep["budget"] = b;
  }
  if (opt.oracle) rep["oracle_consistent"] = !oracle_mismatch;

  // ---- zeta series and its exact round trip
  if (K > 0) {
    std::vector<Rat> zeta = zeta_series(counts);
    std::vector<Rat> back = log_derivative(zeta);
    bool rt = true;
    for (std::uint32_t i = 0; i < K; ++i)
      if (back[i] != Rat(counts[i])) rt = false;
    ordered_json jz;
    jz["coefficients"] = str_array(zeta);
    jz["round_trip_exact"] = rt;
    rep["zeta"] = jz;
  } else {
    rep["zeta"] = {{"coefficients", ordered_json::array()}};
  }

  // ---- minimal recurrence
  std::optional<Recurrence> rec;
  {
    ordered_json jr;
    std::uint32_t cap = K >= 4 ? std::min(opt.max_order, (K - 2) / 2) : 0;
    if (cap == 0) {
      jr["found"] = false;
      jr["reason"] =
          "insufficient terms: validating an order-L recurrence needs "
          "kmax >= 2L+2";
    } else {
      rec = min_recurrence(counts, cap);
      if (!rec) {
        jr["found"] = false;
        jr["reason"] =
            cap < opt.max_order
                ? "no recurrence of order <= " + std::to_string(cap) +
                      " fits; insufficient terms to test orders up to " +
                      std::to_string(opt.max_order)
                : "no recurrence of order <= " + std::to_string(cap) + " fits";
      } else {
        jr["found"] = true;
        jr["order"] = rec->order;
        jr["coefficients"] = str_array(rec->coeffs);
        jr["char_poly"] = str_array(rec->char_poly);
        // re-verify on every counted term, independently of the finder
        bool ok = true;
        for (std::size_t i = rec->order; i < counts.size(); ++i) {
          Rat acc;
          for (std::uint32_t j = 1; j <= rec->order; ++j)
            acc += rec->coeffs[j - 1] * Rat(counts[i - j]);
          if (acc != Rat(counts[i])) ok = false;
        }
        jr["reproduces_all_terms"] = ok;
        try {
          jr["predicted_next"] = {
              {"k", K + 1}, {"value", to_str(predict(*rec, counts, K + 1))}};
        } catch (const PzetaError& err) {
          jr["predicted_next"] = {{"k", K + 1}, {"error", err_name(err.kind())}};
        }
      }
    }
    rep["recurrence"] = jr;
  }

  // ---- roots, RH weights, coefficients, classification
  bool rh_all = false;
  bool have_rh = false;
  std::string cls_verdict;
  bool all_zero = K > 0;
  for (const Int& n : counts)
    if (n != 0) all_zero = false;
  if (all_zero && rec) {
    // empty variety: Z = 1 exactly, no zeros or poles to examine
    rep["roots"] = ordered_json::array();
    rep["rh_all_pass"] = true;
    rh_all = true;
    have_rh = true;
    rep["coefficients"] = {{"solved", true},
                           {"values", ordered_json::array()},
                           {"residual", 0.0},
                           {"condition", 0.0}};
    cls_verdict = "Rational";
    rep["classification"] = {{"ran", true},
                             {"cyclotomic_order", dlcm},
                             {"verdict", cls_verdict},
                             {"witnesses", ordered_json::array()},
                             {"note", "empty variety"}};
  } else if (rec) {
    std::vector<RootInfo> roots;
    std::vector<RhVerdict> rh;
    try {
      roots = char_roots(*rec);
      rh = rh_check(roots, q, opt.rh_rel_tol);
      have_rh = true;
    } catch (const PzetaError& err) {
      rep["roots"] = {{"error", err_name(err.kind())}};
      rep["coefficients"] = {{"solved", false}, {"reason", "root finding failed"}};
      rep["classification"] = {{"ran", false}, {"reason", "root finding failed"}};
    }
    if (have_rh) {
      ordered_json ja = ordered_json::array();
      rh_all = true;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        ordered_json jr;
        jr["re"] = roots[i].value.real();
        jr["im"] = roots[i].value.imag();
        jr["modulus"] = std::abs(roots[i].value);
        jr["multiplicity"] = roots[i].multiplicity;
        jr["rh_pass"] = rh[i].pass;
        if (rh[i].pass)
          jr["weight"] = rh[i].weight;
        else
          jr["weight"] = nullptr;
        ja.push_back(jr);
        if (!rh[i].pass) rh_all = false;
      }
      rep["roots"] = ja;
      rep["rh_all_pass"] = rh_all;

      ordered_json jc;
      bool solved = false;
      SolvedCoefficients sol;
      try {
        sol = solve_coefficients(counts, roots, opt.tol);
        solved = true;
      } catch (const PzetaError& err) {
        jc["solved"] = false;
        jc["error"] = err_name(err.kind());
      }
      if (solved) {
        jc["solved"] = true;
        ordered_json vals = ordered_json::array();
        for (const auto& z : sol.c)
          vals.push_back({{"re", z.real()}, {"im", z.imag()}});
        jc["values"] = vals;
        jc["residual"] = sol.residual;
        jc["condition"] = sol.condition;
      }
      rep["coefficients"] = jc;

      ordered_json jcls;
      if (solved) {
        ClassifyResult cls = classify(sol.c, dlcm, opt.tol, opt.coeff_cap);
        cls_verdict = rat_class_name(cls.verdict);
        jcls["ran"] = true;
        jcls["cyclotomic_order"] = dlcm;
        jcls["verdict"] = cls_verdict;
        jcls["witnesses"] = cls.witnesses;
      } else {
        jcls["ran"] = false;
        jcls["reason"] = "coefficient solve failed";
      }
      rep["classification"] = jcls;
    }
  } else {
    rep["roots"] = ordered_json::array();
    rep["coefficients"] = {{"solved", false}, {"reason", "no recurrence"}};
    rep["classification"] = {{"ran", false}, {"reason", "no recurrence"}};
  }

  // ---- Ax-Katz, applied to the counts already on hand (no recount)
  bool axkatz_failed = false;
  {
    ordered_json ja;
    if (K == 0) {
      ja["ran"] = false;
      ja["reason"] = "no counts";
    } else {
      std::vector<long> degrees;
      for (const Poly& f : eqs) {
        long D = poly_total_degree(f);
        if (D >= 1) degrees.push_back(D);
      }
      ja["ran"] = true;
      if (degrees.empty()) {
        ja["applicable"] = false;
        ja["mu"] = 0;
        ja["rows"] = ordered_json::array();
        ja["all_pass"] = true;
      } else {
        long mu = axkatz_mu(opt.d, degrees);
        bool all_pass = true;
        ordered_json rows = ordered_json::array();
        for (std::uint32_t k = 1; k <= K; ++k) {
          OrdQ ord = ord_q(counts[k - 1], vf.p, vf.e);
          bool pass =
              ord.infinite || ord.value >= Rat(static_cast<long>(k) * mu);
          if (!pass) all_pass = false;
          ordered_json r;
          r["k"] = k;
          r["count"] = to_str(counts[k - 1]);
          r["ord"] = ord.infinite ? ordered_json("inf")
                                  : ordered_json(to_str(ord.value));
          r["pass"] = pass;
          rows.push_back(r);
        }
        ja["applicable"] = true;
        ja["mu"] = mu;
        ja["rows"] = rows;
        ja["all_pass"] = all_pass;
        if (!all_pass) axkatz_failed = true;
      }
    }
    rep["axkatz"] = ja;
  }

  // ---- Faltings fixed-point cross-check at the smallest k
  bool faltings_mismatch = false;
  {
    ordered_json jf;
    if (!opt.faltings) {
      jf["checked"] = false;
      jf["reason"] = "disabled";
    } else if (K == 0) {
      jf["checked"] = false;
      jf["reason"] = "no counts";
    } else {
      // context construction enumerates A^n over the ambient field
      double log_pts = static_cast<double>(vf.nvars()) * dlcm *
                       std::log(mpz_get_d(q.get_mpz_t()));
      if (log_pts > std::log(2e5)) {
        jf["checked"] = false;
        jf["reason"] = "ambient too large";
      } else {
        try {
          Int fp = fixed_points_sigma_frob(eqs, opt.d, 1,
                                           Budget{opt.max_nodes, {}});
          jf["checked"] = true;
          jf["k"] = 1;
          jf["count"] = to_str(counts[0]);
          jf["fixed_points"] = to_str(fp);
          bool match = fp == counts[0];
          jf["match"] = match;
          if (!match) faltings_mismatch = true;
        } catch (const PzetaError& err) {
          if (err.kind() != Err::BudgetExceeded) throw;
          jf["checked"] = false;
          jf["reason"] = "budget";
        }
      }
    }
    rep["faltings"] = jf;
  }

  // ---- heuristic (4.1) diagnostic for hypersurfaces
  {
    ordered_json jh;
    if (eqs.size() != 1 || poly_is_zero(eqs[0])) {
      jh["emitted"] = false;
      jh["reason"] = "input is not a hypersurface";
    } else {
      // main term q^{k(d_1+..+d_{n-1})} with the d_i in ascending order
      std::uint64_t esum = 0, emax = 0;
      for (std::uint32_t di : opt.d) {
        esum += di;
        emax = std::max<std::uint64_t>(emax, di);
      }
      std::uint64_t E = esum - emax;
      jh["emitted"] = true;
      jh["main_term_exponent"] = E;
      jh["expected_error_exponent"] = static_cast<double>(E) / 2.0;
      double qlog = static_cast<double>(vf.e) * std::log(vf.p);
      ordered_json rows = ordered_json::array();
      for (std::uint32_t k = 1; k <= K; ++k) {
        Int diff = counts[k - 1] - int_pow(q, E * k);
        ordered_json r;
        r["k"] = k;
        if (diff == 0)
          r["error_exponent"] = nullptr;
        else
          r["error_exponent"] = log_abs(diff) / (qlog * k);
        rows.push_back(r);
      }
      jh["rows"] = rows;
    }
    rep["heuristic"] = jh;
  }

  // ---- aggregate verdicts and exit code
  bool inconsistent = oracle_mismatch || axkatz_failed || faltings_mismatch;
  {
    ordered_json jv;
    if (opt.oracle) jv["oracle_consistent"] = !oracle_mismatch;
    if (have_rh) jv["rh_all_pass"] = rh_all;
    if (!cls_verdict.empty()) jv["classification"] = cls_verdict;
    jv["theorem_consistent"] = !inconsistent;
    rep["verdicts"] = jv;
  }
  out.exit_code = inconsistent ? 3 : (exhausted ? 2 : 0);
  out.research_event =
      (!cls_verdict.empty() && cls_verdict != "Rational") ||
      (!rec && K >= 2 * opt.max_order + 2);
  return out;
}

std::string render_human(const ordered_json& rep) {
  std::ostringstream os;
  const std::string cmd = rep.value("command", "?");
  os << "== pzeta " << cmd << " ==\n";
  if (rep.contains("query")) {
    const auto& q = rep["query"];
    os << "file      " << q.value("file", "") << "\n";
    if (!q.value("label", std::string()).empty())
      os << "label     " << q["label"].get<std::string>() << "\n";
    os << "field     q = " << q.value("q", "") << " (p = " << q["p"]
       << ", e = " << q["e"] << ")\n";
    os << "d         (";
    for (std::size_t i = 0; i < q["d"].size(); ++i)
      os << (i ? ", " : "") << q["d"][i];
    os << ")\n";
    for (const auto& eq : q["equations"])
      os << "eq        " << eq.get<std::string>() << " = 0\n";
  }
  if (rep.contains("counts")) {
    os << "counts    ";
    for (std::size_t i = 0; i < rep["counts"].size(); ++i)
      os << (i ? ", " : "") << rep["counts"][i].get<std::string>();
    os << "\n";
  }
  if (rep.contains("budget")) {
    const auto& b = rep["budget"];
    os << "budget    " << b["nodes_used"] << " / " << b["max_nodes"]
       << " nodes" << (b.value("exhausted", false) ? "  [EXHAUSTED]" : "")
       << "\n";
  }
  if (rep.contains("recurrence")) {
    const auto& r = rep["recurrence"];
    if (r.value("found", false)) {
      os << "recur     order " << r["order"] << ": N_k =";
      for (std::size_t j = 0; j < r["coefficients"].size(); ++j) {
        std::string c = r["coefficients"][j].get<std::string>();
        os << (j ? " + " : " ") << "(" << c << ")*N_{k-" << j + 1 << "}";
      }
      os << "\n";
    } else {
      os << "recur     not found: " << r.value("reason", "") << "\n";
    }
  }
  if (rep.contains("roots") && rep["roots"].is_array()) {
    for (const auto& r : rep["roots"]) {
      os << "root      " << r["re"].get<double>();
      double im = r["im"].get<double>();
      if (im != 0) os << (im > 0 ? " + " : " - ") << std::abs(im) << "i";
      os << "  |.| = " << r["modulus"].get<double>() << "  ";
      if (r["rh_pass"].get<bool>())
        os << "weight " << r["weight"] << "\n";
      else
        os << "NO WEIGHT\n";
    }
  }
  if (rep.contains("classification") && rep["classification"].value("ran", false))
    os << "class     " << rep["classification"]["verdict"].get<std::string>()
       << "\n";
  if (rep.contains("axkatz") && rep["axkatz"].value("ran", false)) {
    const auto& a = rep["axkatz"];
    os << "axkatz    mu = " << a["mu"] << "  "
       << (a["applicable"].get<bool>()
               ? (a["all_pass"].get<bool>() ? "all pass" : "VIOLATED")
               : "not applicable")
       << "\n";
  }
  if (rep.contains("faltings")) {
    const auto& f = rep["faltings"];
    if (f.value("checked", false))
      os << "faltings  k=1 fixed points " << f["fixed_points"].get<std::string>()
         << " vs count " << f["count"].get<std::string>() << "  "
         << (f["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
    else if (f.contains("reason"))
      os << "faltings  skipped (" << f["reason"].get<std::string>() << ")\n";
  }
  if (rep.contains("verdicts")) {
    os << "verdict   "
       << (rep["verdicts"].value("theorem_consistent", true)
               ? "consistent"
               : "THEOREM INCONSISTENCY")
       << "\n";
  }
  return os.str();
}

}  // namespace pzeta
