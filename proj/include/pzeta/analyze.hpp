#pragma once
// The full analysis pipeline behind `pzeta analyze`, and the report plumbing
// shared by the other subcommands.  Reports are nlohmann ordered JSON so
// field order (and therefore the serialized bytes) is reproducible; exact
// integers and rationals are emitted as decimal strings, never as floats.
//
// Timing is deliberately kept out of the report body: the document must be
// byte-identical across runs on identical input.  The driver prints timings
// to stderr instead.

#include <json.hpp>

#include "pzeta/cfinite.hpp"
#include "pzeta/counting.hpp"
#include "pzeta/varfile.hpp"

namespace pzeta {

inline constexpr int kSchemaVersion = 1;

struct AnalyzeOptions {
  std::vector<std::uint32_t> d;
  std::uint32_t kmax = 10;
  std::uint32_t max_order = 8;
  std::uint64_t max_nodes = kDefaultNodeBudget;
  bool oracle = false;        // cross-check every count against brute force
  bool faltings = true;       // cross-check fixed points at k = 1 if feasible
  double rh_rel_tol = 1e-6;
  double tol = 1e-6;          // residual + classification tolerance
  long coeff_cap = 64;
};

struct AnalyzeOutcome {
  nlohmann::ordered_json report;
  int exit_code = 0;          // 0 ok, 2 budget-limited, 3 inconsistency
  bool research_event = false;  // classification established and not Rational
};

// N_1..N_kmax under one cumulative budget, stopping (not throwing) on
// exhaustion so partial results survive; optional per-k brute-force check.
struct PartialSeries {
  std::vector<Int> counts;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  bool oracle_mismatch = false;
  std::string note;  // which k hit the budget
};
PartialSeries count_series_partial(const std::vector<Poly>& eqs,
                                   const std::vector<std::uint32_t>& d,
                                   std::uint32_t kmax, std::uint64_t max_nodes,
                                   bool oracle);

AnalyzeOutcome analyze_variety(const VarietyFile& vf,
                               const AnalyzeOptions& opt);

// Stderr-facing rendering of a report (no timings; the caller adds those).
std::string render_human(const nlohmann::ordered_json& report);

// Shared helpers for report assembly.
nlohmann::ordered_json report_envelope(const std::string& command);
nlohmann::ordered_json query_echo(const VarietyFile& vf,
                                  const AnalyzeOptions& opt);

}  // namespace pzeta
