#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spanorm/graph.hpp"

namespace spanorm {

// ---- bundled checks ----------------------------------------------------------

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  double value = 0;
  double bound = 0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

// Greedy stretch/girth/idempotence, the upper-bound envelope, the girth
// lemmas for k = (t+1)/2, the oracle on small inputs, and the stretch of a
// supplied spanner when given.
VerifyReport verify_all(const Graph& g, std::size_t t, const NormSpec& p,
                        const Graph* spanner = nullptr);

// ---- lower-bound agreement grid ------------------------------------------------

struct LbGridSpec {
  std::vector<std::string> p;  // decimal text, or "phi"
  std::vector<std::size_t> t;
  std::size_t lambda_points = 20;
  bool exact = false;
  bool certificates = true;

  static LbGridSpec standard();
  // {"p": [...], "t": [...], "lambda_points": N, "exact": bool}; missing keys
  // take the standard values. Throws RejectedSpec.
  static LbGridSpec from_json(const nlohmann::json& j);
};

struct LbGridRow {
  std::size_t t = 0;
  std::string p;
  double lambda = 0;
  std::string lcr;
  double lp_ell = 0;
  std::string branch;  // low_p, nice, skewed, lp_only
  std::optional<double> closed_form;
  double error = 0;
  bool agree = true;
  std::string exact;        // exact, mismatch, or empty when not run
  std::string certificate;  // verified, failed, not_applicable
  std::string note;
};

std::vector<LbGridRow> lb_grid(const LbGridSpec& spec, std::size_t threads = 1);
void write_lb_grid_csv(std::ostream& out, const std::vector<LbGridRow>& rows);

// ---- experiments --------------------------------------------------------------

struct ExperimentSpec {
  std::string name;
  std::vector<std::string> families;  // er, pg2
  std::vector<std::size_t> n;
  std::vector<std::size_t> t;
  std::vector<double> p;
  std::vector<std::uint64_t> seeds;
  std::vector<double> density;        // er: m = n^density
  std::vector<std::string> checks;    // girth, stretch, bound
  double bound_factor = 8.0;
  std::string output;

  // Throws RejectedSpec on an empty grid or out-of-range values.
  static ExperimentSpec from_json(const nlohmann::json& j);
  void validate() const;
  std::string hash() const;  // FNV-1a of the canonical JSON
  nlohmann::json to_json() const;
};

struct ExperimentRow {
  std::string family;
  std::size_t n = 0;
  double density = 0;
  std::uint64_t seed = 0;
  std::size_t t = 0;
  double p = 0;
  std::size_t vertices = 0;
  std::size_t m_in = 0, m_out = 0;
  double norm_H = 0, bound = 0, ratio = 0;
  std::string girth_ok, stretch_ok, bound_ok;  // "1", "0" or "" when not run
  std::string status;                          // ok, fail, error
  std::string error;

  std::string key() const;
  bool passed() const { return status == "ok"; }
};

struct ExperimentRecord {
  std::string spec_hash;
  std::string version;
  std::vector<ExperimentRow> rows;  // grid order
  std::size_t resumed = 0;          // rows taken from an earlier partial run
  std::size_t failures = 0;
  double elapsed_seconds = 0;
};

// Runs the grid, appending each finished row to <output>/results.csv, then
// rewrites the file in grid order and writes <output>/summary.json. Rows
// already present in results.csv are kept and not recomputed.
ExperimentRecord run_experiment(const ExperimentSpec& spec, std::size_t threads = 1);
std::vector<ExperimentRow> experiment_grid(const ExperimentSpec& spec);
ExperimentRow run_row(const ExperimentSpec& spec, ExperimentRow row);

// ---- CSV ------------------------------------------------------------------------

std::string csv_field(const std::string& s);  // RFC-4180 quoting
std::vector<std::string> parse_csv_line(const std::string& line);
std::string format_number(double x);          // %.12g, deterministic

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace spanorm
