#include "spanorm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "spanorm/certificate.hpp"
#include "spanorm/decomposition.hpp"
#include "spanorm/error.hpp"
#include "spanorm/extremal.hpp"
#include "spanorm/families.hpp"
#include "spanorm/greedy.hpp"
#include "spanorm/lb_lp.hpp"
#include "spanorm/lcr.hpp"
#include "spanorm/oracle.hpp"

namespace spanorm {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
      else if (c == '"') quoted = false;
      else out.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

namespace {

std::string join_csv(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) s += (i ? "," : "") + csv_field(fields[i]);
  return s;
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

// ---- verify_all ----------------------------------------------------------------

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.applicable || c.passed; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string describe(const StretchViolation& v, std::size_t t) {
  std::ostringstream os;
  os << "edge " << v.edge << " (" << v.u << "-" << v.v << "): d_H = " << format_number(v.d_h)
     << " > " << t << " * " << format_number(v.d_g);
  return os.str();
}

CheckResult from_bound(const std::string& name, const BoundCheck& b) {
  return {name, b.asserted, !b.asserted || b.holds, b.value, b.bound, ""};
}

CheckResult from_lemma(const std::string& name, const LemmaCheck& l) {
  CheckResult c{name, l.asserted, !l.asserted || l.holds, l.value, l.bound, ""};
  if (l.witness) c.detail = "vertex " + std::to_string(*l.witness);
  return c;
}

}  // namespace

VerifyReport verify_all(const Graph& g, std::size_t t, const NormSpec& p, const Graph* spanner) {
  require(t >= 1, "stretch must be at least 1");
  VerifyReport rep;
  auto& out = rep.checks;
  const double n = static_cast<double>(g.num_vertices());
  const Spanner h = greedy_spanner(g, t);

  {
    auto sr = check_stretch(g, h.graph, t);
    CheckResult c{"greedy_stretch", true, sr.ok, static_cast<double>(sr.violation_count), 0, ""};
    if (!sr.violations.empty()) c.detail = describe(sr.violations.front(), t);
    out.push_back(c);
  }
  if (!g.weighted()) {
    auto gi = girth(h.graph);
    out.push_back({"greedy_girth", true, gi.at_least(t + 2),
                   gi.unbounded() ? kInfinite : static_cast<double>(*gi.length),
                   static_cast<double>(t + 2), gi.label()});
  } else {
    out.push_back({"greedy_girth", false, true, 0, 0, "weighted input"});
  }
  out.push_back({"greedy_idempotent", true, greedy_spanner(h.graph, t).graph == h.graph,
                 static_cast<double>(h.graph.num_edges()), 0, ""});
  const Girth g_girth = girth(g);
  out.push_back({"tree_uniqueness", g_girth.unbounded(), !g_girth.unbounded() || h.graph == g,
                 static_cast<double>(h.graph.num_edges()), static_cast<double>(g.num_edges()),
                 g_girth.unbounded() ? "" : "input has a cycle"});

  const double h_norm = lp_norm(h.graph, p);
  if (t % 2 == 1 && g.num_vertices() >= 2) {
    const std::size_t k = (t + 1) / 2;
    const double bound = 8 * std::pow(n, upper_bound_exponent(k, p));
    out.push_back({"greedy_bound", true, h_norm <= bound, h_norm, bound, "8 n^max(1,(k+p)/(kp))"});
  } else {
    out.push_back({"greedy_bound", false, true, h_norm, 0, "even stretch"});
  }

  const std::size_t k = (t + 1) / 2;
  const bool unit = !g.weighted();
  if (unit && g_girth.at_least(5)) out.push_back(from_bound("heavy_mass", heavy_mass(g).bound));
  if (unit && t % 2 == 1 && k >= 2 && g_girth.at_least(2 * k + 1)) {
    out.push_back(from_lemma("backtrack", backtrack_check(g, k)));
    out.push_back(from_lemma("techratio", techratio_check(g, k)));
    auto ph = phi(g, k);
    auto c = from_bound("phi_ratio", ph.bound);
    if (ph.zero_denominator) c.detail = "zero d_k at vertex " + std::to_string(*ph.zero_denominator);
    out.push_back(c);
    if (k >= 3) {
      out.push_back({"coverage", true, check_coverage(g, k), 0, 0, ""});
      for (const auto& b : class_contributions(g, k).checks) out.push_back(from_bound("class_" + b.name, b));
    }
  } else {
    out.push_back({"girth_lemmas", false, true, 0, 0,
                   "needs odd t >= 3 and girth >= " + std::to_string(2 * k + 1)});
  }

  if (g.num_edges() <= 16) {
    auto opt = optimal_spanner(g, t, p);
    const double ratio = greedy_ratio(g, opt, p);
    out.push_back({"oracle_dominance", true, ratio >= 1 - 1e-12, ratio, 1, ""});
    if (t == 3 && !p.is_infinite() && p.p() == 2 && g.num_vertices() >= 2) {
      const double env = std::pow(n, 63.0 / 128.0);
      out.push_back({"greedy_envelope", true, ratio <= env, ratio, env, "n^(63/128)"});
    }
  } else {
    out.push_back({"oracle_dominance", false, true, 0, 0, "more than 16 edges"});
  }

  auto tp = two_path_count(h.graph);
  out.push_back({"two_path_identity", true, tp.consistent, static_cast<double>(tp.walks),
                 static_cast<double>(tp.middle), ""});
  if (h.graph.num_edges() > 0) {
    auto bg = ball_growth_check(h.graph, lp_norm(h.graph, NormSpec::finite(2)), 3);
    out.push_back({"ball_growth_step", true, bg.inductive_violations == 0,
                   static_cast<double>(bg.inductive_violations), 0, ""});
  }

  if (spanner) {
    bool sub = spanner->num_vertices() == g.num_vertices();
    std::string detail;
    for (const auto& e : spanner->edges()) {
      if (!sub) break;
      if (!g.has_edge(e.u, e.v)) {
        sub = false;
        detail = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in the input";
      }
    }
    if (!sub && detail.empty()) detail = "vertex count differs";
    out.push_back({"spanner_subgraph", true, sub, 0, 0, detail});
    if (sub) {
      // carry the input's lengths over to the spanner's edges
      std::vector<EdgeId> keep;
      for (const auto& e : spanner->edges()) keep.push_back(*g.find_edge(e.u, e.v));
      std::sort(keep.begin(), keep.end());
      auto sr = check_stretch(g, g.edge_subgraph(keep), t);
      CheckResult c{"spanner_stretch", true, sr.ok, static_cast<double>(sr.violation_count), 0, ""};
      if (!sr.violations.empty()) c.detail = describe(sr.violations.front(), t);
      out.push_back(c);
      out.push_back({"spanner_norm", false, true, lp_norm(*spanner, p), h_norm, "against greedy"});
    }
  }
  return rep;
}

// ---- lb grid -------------------------------------------------------------------

LbGridSpec LbGridSpec::standard() {
  LbGridSpec s;
  s.p = {"1.01", "1.1", "1.3", "phi", "1.8", "2", "2.5", "3", "5", "10"};
  s.t = {2, 3, 4, 5, 6, 7, 8};
  return s;
}

LbGridSpec LbGridSpec::from_json(const json& j) {
  LbGridSpec s = standard();
  try {
    if (j.contains("p")) {
      s.p.clear();
      for (const auto& v : j.at("p")) s.p.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    if (j.contains("t")) s.t = j.at("t").get<std::vector<std::size_t>>();
    if (j.contains("lambda_points")) s.lambda_points = j.at("lambda_points").get<std::size_t>();
    if (j.contains("exact")) s.exact = j.at("exact").get<bool>();
    if (j.contains("certificates")) s.certificates = j.at("certificates").get<bool>();
  } catch (const json::exception& e) {
    fail(ErrorCode::RejectedSpec, std::string("bad grid: ") + e.what());
  }
  if (s.p.empty() || s.t.empty() || s.lambda_points == 0) fail(ErrorCode::RejectedSpec, "empty grid");
  for (const auto& p : s.p) {
    if (p == "phi") continue;
    double v = 0;
    try {
      v = std::stod(p);
    } catch (...) {
      fail(ErrorCode::RejectedSpec, "bad p value '" + p + "'");
    }
    if (!(v > 1)) fail(ErrorCode::RejectedSpec, "grid p values must exceed 1");
  }
  for (auto t : s.t)
    if (t < 2) fail(ErrorCode::RejectedSpec, "grid t values must be at least 2");
  return s;
}

namespace {

bool low_p_applies(std::size_t t, double p) {
  return (t % 2 == 0 && p <= kGoldenRatio) || (t % 2 == 1 && p <= 2);
}

LbGridRow grid_point(const LbGridSpec& spec, std::size_t t, const std::string& ptext, std::size_t k) {
  LbGridRow row;
  row.t = t;
  row.p = ptext;
  const double p = ptext == "phi" ? kGoldenRatio : std::stod(ptext);
  const double lam = static_cast<double>(k) * (1 + 1 / p) / static_cast<double>(spec.lambda_points);
  row.lambda = lam;
  const auto der = derive_lcr(p, t);
  row.lcr = der.params.label();
  const auto model = build_model<double>(t, p, lam);
  const auto sol = solve(model);
  row.lp_ell = sol.ell;
  const auto shape = extremal_shape(t, p, lam);
  const bool lowp = low_p_applies(t, p);
  if (lowp) {
    row.branch = "low_p";
    row.closed_form = low_p_coefficient<double>(t, p) * lam;
  } else if (shape.source == EllSource::ClosedForm) {
    row.branch = "nice";
    row.closed_form = shape.ell;
  } else if (shape.source == EllSource::SkewedDual) {
    row.branch = "skewed";
    row.closed_form = shape.ell;
  } else {
    row.branch = "lp_only";
    row.note = "interpolated " + format_number(shape.interpolated);
  }
  if (row.closed_form) {
    row.error = std::abs(sol.ell - *row.closed_form);
    row.agree = row.error <= 1e-7;
  }

  row.certificate = "not_applicable";
  if (spec.certificates) {
    const auto cond = verify_lcr_conditions(shape.certificate_shape, p);
    if (cond.all_satisfied()) {
      try {
        const auto cert = construct_dual<double>(shape.certificate_shape, p);
        const auto chk = verify_certificate(model, sol.primal, cert);
        row.certificate = chk.ok ? "verified" : "failed";
        if (!chk.ok && !chk.violations.empty()) row.note = chk.violations.front();
      } catch (const Error& e) {
        row.certificate = "failed";
        row.note = e.what();
      }
    }
  }

  if (spec.exact && ptext != "phi") {
    Rational pr = parse_rational(ptext);
    Rational lr = Rational(static_cast<long>(k)) * (Rational(1) + Rational(1) / pr) /
                  Rational(static_cast<long>(spec.lambda_points));
    lr.canonicalize();
    const auto ex = solve_exact(build_model<Rational>(t, pr, lr));
    std::optional<Rational> cf;
    if (lowp) cf = low_p_coefficient<Rational>(t, pr) * lr;
    else if (lr <= nice_range_limit<Rational>(der.params, pr))
      cf = closed_form_exponent<Rational>(der.params, pr, lr);
    else if (shape.source == EllSource::SkewedDual)
      cf = construct_dual<Rational>(shape.certificate_shape, pr).objective(lr);
    if (cf) row.exact = ex.ell == *cf ? "exact" : "mismatch";
  }
  return row;
}

}  // namespace

std::vector<LbGridRow> lb_grid(const LbGridSpec& spec, std::size_t threads) {
  struct Point {
    std::size_t t;
    std::string p;
    std::size_t k;
  };
  std::vector<Point> pts;
  for (const auto& p : spec.p)
    for (auto t : spec.t)
      for (std::size_t k = 1; k <= spec.lambda_points; ++k) pts.push_back({t, p, k});
  std::vector<LbGridRow> rows(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    try {
      rows[i] = grid_point(spec, pts[i].t, pts[i].p, pts[i].k);
    } catch (const std::exception& e) {
      rows[i].t = pts[i].t;
      rows[i].p = pts[i].p;
      rows[i].agree = false;
      rows[i].branch = "error";
      rows[i].note = e.what();
    }
  });
  return rows;
}

void write_lb_grid_csv(std::ostream& out, const std::vector<LbGridRow>& rows) {
  out << "t,p,lambda,lcr,lp_ell,branch,closed_form,error,agree,exact,certificate,note\n";
  for (const auto& r : rows) {
    out << join_csv({std::to_string(r.t), r.p, format_number(r.lambda), r.lcr, format_number(r.lp_ell),
                     r.branch, r.closed_form ? format_number(*r.closed_form) : "",
                     r.closed_form ? format_number(r.error) : "", r.agree ? "1" : "0", r.exact,
                     r.certificate, r.note})
        << "\n";
  }
}

// ---- experiments ---------------------------------------------------------------

namespace {

const std::vector<std::string> kExperimentColumns = {
    "family", "n",     "density", "seed",     "t",          "p",        "vertices", "m_in",   "m_out",
    "norm_H", "bound", "ratio",   "girth_ok", "stretch_ok", "bound_ok", "status",   "error"};

std::vector<std::string> row_fields(const ExperimentRow& r) {
  return {r.family,
          std::to_string(r.n),
          format_number(r.density),
          std::to_string(r.seed),
          std::to_string(r.t),
          format_number(r.p),
          std::to_string(r.vertices),
          std::to_string(r.m_in),
          std::to_string(r.m_out),
          format_number(r.norm_H),
          format_number(r.bound),
          format_number(r.ratio),
          r.girth_ok,
          r.stretch_ok,
          r.bound_ok,
          r.status,
          r.error};
}

ExperimentRow row_from_fields(const std::vector<std::string>& f) {
  ExperimentRow r;
  r.family = f[0];
  r.n = std::stoull(f[1]);
  r.density = std::stod(f[2]);
  r.seed = std::stoull(f[3]);
  r.t = std::stoull(f[4]);
  r.p = std::stod(f[5]);
  r.vertices = std::stoull(f[6]);
  r.m_in = std::stoull(f[7]);
  r.m_out = std::stoull(f[8]);
  r.norm_H = std::stod(f[9]);
  r.bound = std::stod(f[10]);
  r.ratio = std::stod(f[11]);
  r.girth_ok = f[12];
  r.stretch_ok = f[13];
  r.bound_ok = f[14];
  r.status = f[15];
  r.error = f[16];
  return r;
}

bool has_check(const ExperimentSpec& s, const std::string& c) {
  return std::find(s.checks.begin(), s.checks.end(), c) != s.checks.end();
}

template <class T>
std::vector<T> list_or(const json& grid, const char* key, std::vector<T> fallback) {
  if (!grid.contains(key)) return fallback;
  return grid.at(key).get<std::vector<T>>();
}

}  // namespace

std::string ExperimentRow::key() const {
  std::string k;
  auto f = row_fields(*this);
  for (std::size_t i = 0; i < 6; ++i) k += (i ? "|" : "") + f[i];
  return k;
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
  ExperimentSpec s;
  try {
    s.name = j.value("name", std::string("experiment"));
    s.output = j.value("output", std::string());
    s.bound_factor = j.value("bound_factor", 8.0);
    s.families = j.contains("families") ? j.at("families").get<std::vector<std::string>>()
                                        : std::vector<std::string>{"er"};
    s.checks = j.contains("checks") ? j.at("checks").get<std::vector<std::string>>()
                                    : std::vector<std::string>{"girth", "stretch", "bound"};
    if (!j.contains("grid")) fail(ErrorCode::RejectedSpec, "empty grid");
    const json& g = j.at("grid");
    s.n = list_or<std::size_t>(g, "n", {});
    s.t = list_or<std::size_t>(g, "t", {});
    s.p = list_or<double>(g, "p", {});
    s.seeds = list_or<std::uint64_t>(g, "seeds", {0});
    s.density = list_or<double>(g, "density", {1.5});
  } catch (const json::exception& e) {
    fail(ErrorCode::RejectedSpec, std::string("bad experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

void ExperimentSpec::validate() const {
  auto reject = [](const std::string& why) { fail(ErrorCode::RejectedSpec, why); };
  if (n.empty() || t.empty() || p.empty() || seeds.empty() || density.empty() || families.empty())
    reject("empty grid");
  for (const auto& f : families)
    if (f != "er" && f != "pg2") reject("unknown family '" + f + "'");
  for (const auto& c : checks)
    if (c != "girth" && c != "stretch" && c != "bound") reject("unknown check '" + c + "'");
  for (auto x : n)
    if (x < 2 || x > 100000) reject("n must lie in [2, 100000]");
  for (auto x : t) {
    if (x < 1 || x > 15) reject("t must lie in [1, 15]");
    if (x % 2 == 0 && std::find(checks.begin(), checks.end(), "bound") != checks.end())
      reject("the bound check needs odd t");
  }
  for (auto x : p)
    if (!(x >= 1) || x > 1000) reject("p must lie in [1, 1000]");
  for (auto x : density)
    if (!(x > 0) || x > 2) reject("density must lie in (0, 2]");
  if (!(bound_factor > 0)) reject("bound_factor must be positive");
}

json ExperimentSpec::to_json() const {
  return json{{"name", name},
              {"families", families},
              {"checks", checks},
              {"bound_factor", bound_factor},
              {"grid", {{"n", n}, {"t", t}, {"p", p}, {"seeds", seeds}, {"density", density}}}};
}

std::string ExperimentSpec::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<ExperimentRow> experiment_grid(const ExperimentSpec& spec) {
  std::vector<ExperimentRow> rows;
  for (const auto& fam : spec.families) {
    // the projective-plane family has no seed or density
    const auto seeds = fam == "er" ? spec.seeds : std::vector<std::uint64_t>{0};
    const auto dens = fam == "er" ? spec.density : std::vector<double>{0};
    for (auto n : spec.n)
      for (auto d : dens)
        for (auto seed : seeds)
          for (auto t : spec.t)
            for (auto p : spec.p) {
              ExperimentRow r;
              r.family = fam;
              r.n = n;
              r.density = d;
              r.seed = seed;
              r.t = t;
              r.p = p;
              rows.push_back(r);
            }
  }
  return rows;
}

ExperimentRow run_row(const ExperimentSpec& spec, ExperimentRow r) {
  try {
    Graph g;
    if (r.family == "er") {
      const double full = static_cast<double>(r.n) * static_cast<double>(r.n - 1) / 2;
      const auto m = static_cast<std::size_t>(std::min(full, std::round(std::pow(static_cast<double>(r.n), r.density))));
      g = random_graph(r.n, m, r.seed);
    } else {
      g = high_girth_host(2, r.n).graph;
    }
    r.vertices = g.num_vertices();
    r.m_in = g.num_edges();
    const Spanner h = greedy_spanner(g, r.t);
    r.m_out = h.graph.num_edges();
    const auto P = NormSpec::finite(r.p);
    r.norm_H = lp_norm(h.graph, P);
    const double N = static_cast<double>(r.vertices);
    const double k = static_cast<double>((r.t + 1) / 2);
    r.bound = std::max(N, std::pow(N, (k + r.p) / (k * r.p)));
    r.ratio = r.norm_H / r.bound;
    bool ok = true;
    if (has_check(spec, "girth")) {
      const bool b = girth(h.graph).at_least(r.t + 2);
      r.girth_ok = b ? "1" : "0";
      ok = ok && b;
    }
    if (has_check(spec, "stretch")) {
      const bool b = verify_stretch(g, h.graph, r.t);
      r.stretch_ok = b ? "1" : "0";
      ok = ok && b;
    }
    if (has_check(spec, "bound")) {
      const bool b = r.ratio <= spec.bound_factor;
      r.bound_ok = b ? "1" : "0";
      ok = ok && b;
    }
    r.status = ok ? "ok" : "fail";
  } catch (const std::exception& e) {
    r.status = "error";
    r.error = e.what();
  }
  return r;
}

ExperimentRecord run_experiment(const ExperimentSpec& spec, std::size_t threads) {
  spec.validate();
  namespace fs = std::filesystem;
  if (spec.output.empty()) fail(ErrorCode::RejectedSpec, "no output directory");
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(spec.output, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + spec.output + ": " + ec.message());
  const fs::path csv = fs::path(spec.output) / "results.csv";
  const std::string header = join_csv(kExperimentColumns);

  std::map<std::string, ExperimentRow> done;
  if (fs::exists(csv)) {
    std::ifstream in(csv);
    std::string line;
    if (std::getline(in, line) && line != header)
      fail(ErrorCode::Io, csv.string() + " has an unexpected header");
    while (std::getline(in, line)) {
      auto f = parse_csv_line(line);
      if (f.size() != kExperimentColumns.size()) continue;  // torn final line
      try {
        auto r = row_from_fields(f);
        done[r.key()] = r;
      } catch (const std::exception&) {
      }
    }
  }

  ExperimentRecord rec;
  rec.spec_hash = spec.hash();
  rec.version = kToolVersion;
  rec.rows = experiment_grid(spec);
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    auto it = done.find(rec.rows[i].key());
    if (it != done.end()) {
      rec.rows[i] = it->second;
      ++rec.resumed;
    } else {
      todo.push_back(i);
    }
  }

  {
    // append finished rows as they arrive so an interrupted run can resume
    std::ofstream app;
    {
      const bool fresh = !fs::exists(csv) || fs::file_size(csv) == 0;
      // drop a torn trailing line before appending
      if (!fresh) {
        std::ifstream in(csv);
        std::ostringstream keep;
        std::string line;
        std::getline(in, line);
        keep << line << "\n";
        while (std::getline(in, line))
          if (parse_csv_line(line).size() == kExperimentColumns.size()) keep << line << "\n";
        in.close();
        std::ofstream(csv, std::ios::trunc) << keep.str();
      }
      app.open(csv, std::ios::app);
      if (!app) fail(ErrorCode::Io, "cannot write " + csv.string());
      if (fresh) app << header << "\n" << std::flush;
    }
    std::mutex mu;
    parallel_for(todo.size(), threads, [&](std::size_t j) {
      const std::size_t i = todo[j];
      auto r = run_row(spec, rec.rows[i]);
      std::lock_guard lock(mu);
      rec.rows[i] = r;
      app << join_csv(row_fields(r)) << "\n" << std::flush;
    });
  }

  {
    std::ofstream out(csv, std::ios::trunc);
    out << header << "\n";
    for (const auto& r : rec.rows) out << join_csv(row_fields(r)) << "\n";
    if (!out) fail(ErrorCode::Io, "cannot write " + csv.string());
  }
  for (const auto& r : rec.rows) rec.failures += !r.passed();
  rec.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json summary{{"name", spec.name},       {"spec_hash", rec.spec_hash},
               {"version", rec.version},  {"rows", rec.rows.size()},
               {"failures", rec.failures}, {"resumed", rec.resumed},
               {"spec", spec.to_json()},   {"elapsed_seconds", rec.elapsed_seconds}};
  double worst = 0;
  for (const auto& r : rec.rows) worst = std::max(worst, r.ratio);
  summary["max_ratio"] = worst;
  std::ofstream(fs::path(spec.output) / "summary.json") << summary.dump(2) << "\n";
  return rec;
}

}  // namespace spanorm
