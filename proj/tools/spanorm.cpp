// spanorm: command-line front end. Results go to stdout, logs to stderr.
// Exit codes: 0 all checks pass, 1 check failures, 2 usage or input errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanorm/certificate.hpp"
#include "spanorm/decomposition.hpp"
#include "spanorm/error.hpp"
#include "spanorm/experiment.hpp"
#include "spanorm/extremal.hpp"
#include "spanorm/families.hpp"
#include "spanorm/greedy.hpp"
#include "spanorm/io.hpp"
#include "spanorm/lb_lp.hpp"
#include "spanorm/lcr.hpp"
#include "spanorm/oracle.hpp"

using nlohmann::json;
using namespace spanorm;

namespace {

void log(const std::string& msg) { std::cerr << "spanorm: " << msg << "\n"; }

// Decimal or a/b.
double parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used != s.size() || s.empty()) fail(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  return x;
}

NormSpec parse_norm(const std::string& s) {
  if (s == "inf" || s == "infinity") return NormSpec::infinity();
  if (s.find('/') != std::string::npos) return NormSpec::finite(parse_real(s));
  std::size_t used = 0;
  double p = 0;
  try {
    p = std::stod(s, &used);
  } catch (...) {
    used = 0;
  }
  if (used != s.size()) fail(ErrorCode::InvalidArgument, "bad norm index '" + s + "'");
  return NormSpec::finite(p);
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

json params_json(const LcrParams& s) {
  json j{{"L", s.L}, {"C", s.C}, {"R", s.R}, {"skew", to_string(s.skew)}};
  if (s.skew != Skew::None) j["skew_exponent"] = s.skew_exponent;
  return j;
}

json conditions_json(const ConditionReport& r) {
  json list = json::array();
  for (const auto& c : r.conditions)
    list.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied},
                    {"slack", c.slack()}});
  return {{"regime", to_string(r.regime)}, {"all_satisfied", r.all_satisfied()}, {"list", list}};
}

json norms_json(const Graph& g, const std::vector<NormSpec>& ps) {
  json j = json::object();
  for (const auto& p : ps) j[p.label()] = number(lp_norm(g, p));
  return j;
}

json edges_json(const Graph& g) {
  json a = json::array();
  for (const auto& e : g.edges()) a.push_back({e.u, e.v});
  return a;
}

json girth_json(const Girth& g) { return g.unbounded() ? json("unbounded") : json(*g.length); }

// key=value,key=value
std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "bad parameter '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

struct Params {
  std::map<std::string, std::string> kv;
  bool has(const std::string& k) const { return kv.count(k) > 0; }
  const std::string& str(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) fail(ErrorCode::InvalidArgument, "missing parameter '" + k + "'");
    return it->second;
  }
  double real(const std::string& k) const {
    try {
      return std::stod(str(k));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "parameter '" + k + "' is not a number");
    }
  }
  double real(const std::string& k, double d) const { return has(k) ? real(k) : d; }
  std::size_t count(const std::string& k) const {
    const double v = real(k);
    if (v < 0 || v != std::floor(v)) fail(ErrorCode::InvalidArgument, "parameter '" + k + "' must be a count");
    return static_cast<std::size_t>(v);
  }
  std::size_t count(const std::string& k, std::size_t d) const { return has(k) ? count(k) : d; }
};

// Flattens nested objects into dotted columns; arrays become JSON text.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

struct Output {
  std::string format = "json";
  void emit(const json& j) const {
    if (format == "csv") {
      std::vector<std::pair<std::string, std::string>> cols;
      flatten(j, "", cols);
      std::string head, row;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        head += (i ? "," : "") + csv_field(cols[i].first);
        row += (i ? "," : "") + csv_field(cols[i].second);
      }
      std::cout << head << "\n" << row << "\n";
    } else {
      std::cout << j.dump(2) << "\n";
    }
  }
};

// ---- subcommands ---------------------------------------------------------------

int cmd_greedy(const Output& out, const std::string& input, std::size_t t, const std::string& pstr,
               const std::string& output) {
  const Graph g = read_edge_list(input);
  const Spanner h = greedy_spanner(g, t);
  std::vector<NormSpec> ps{NormSpec::finite(1), NormSpec::finite(2), NormSpec::infinity()};
  const auto p = parse_norm(pstr);
  if (std::none_of(ps.begin(), ps.end(), [&](const NormSpec& q) { return q.label() == p.label(); }))
    ps.push_back(p);
  if (!output.empty()) {
    write_edge_list(output, h.graph);
    log("wrote " + output);
  }
  out.emit({{"n", g.num_vertices()},
            {"m_in", g.num_edges()},
            {"m_out", h.graph.num_edges()},
            {"stretch", t},
            {"girth", girth_json(girth(h.graph))},
            {"norms", norms_json(h.graph, ps)},
            {"norm_p", number(lp_norm(h.graph, p))}});
  return 0;
}

int cmd_norm(const Output& out, const std::string& input, const std::vector<std::string>& plist) {
  const Graph g = read_edge_list(input);
  std::vector<NormSpec> ps;
  for (const auto& s : plist) ps.push_back(parse_norm(s));
  out.emit({{"n", g.num_vertices()}, {"m", g.num_edges()}, {"norms", norms_json(g, ps)}});
  return 0;
}

int cmd_decompose(const Output& out, const std::string& input, std::size_t k) {
  const Graph g = read_edge_list(input);
  const auto cls = classify(g, k);
  const auto mult = cls.multiplicity(g.num_vertices());
  std::size_t uncovered = 0, multi = 0, max_mult = 0;
  for (auto m : mult) {
    uncovered += m == 0;
    multi += m > 1;
    max_mult = std::max(max_mult, m);
  }
  json high = json::array();
  for (const auto& h : cls.high) high.push_back(h.size());
  const Girth gi = girth(g);
  json j{{"n", g.num_vertices()},
         {"k", k},
         {"girth", girth_json(gi)},
         {"classes", {{"low", cls.low.size()}, {"med", cls.med.size()}, {"high", high}}},
         {"overlaps", {{"uncovered", uncovered}, {"multiply_covered", multi}, {"max_multiplicity", max_mult}}}};
  bool ok = true;
  auto bound_json = [&](const BoundCheck& b) {
    if (b.asserted && !b.holds) ok = false;
    return json{{"name", b.name}, {"value", number(b.value)}, {"bound", number(b.bound)},
                {"asserted", b.asserted}, {"holds", b.holds}, {"slack", number(b.slack())}};
  };
  auto lemma_json = [&](const LemmaCheck& l) {
    if (l.asserted && !l.holds) ok = false;
    json r{{"name", l.name}, {"value", number(l.value)}, {"bound", number(l.bound)},
           {"asserted", l.asserted}, {"holds", l.holds}};
    if (l.witness) r["witness"] = *l.witness;
    return r;
  };
  if (gi.at_least(2 * k + 1)) {
    const bool cov = check_coverage(g, k);
    ok = ok && cov;
    j["coverage"] = cov;
  } else {
    j["coverage"] = nullptr;
    j["precondition"] = "girth below " + std::to_string(2 * k + 1);
  }
  const auto cc = class_contributions(g, k);
  json checks = json::array();
  for (const auto& b : cc.checks) checks.push_back(bound_json(b));
  j["contributions"] = {{"p", cc.p}, {"low", cc.low}, {"med", cc.med}, {"high", cc.high}, {"checks", checks}};
  json lemmas = json::array();
  lemmas.push_back(bound_json(heavy_mass(g).bound));
  lemmas.push_back(lemma_json(backtrack_check(g, k)));
  lemmas.push_back(lemma_json(techratio_check(g, k)));
  lemmas.push_back(lemma_json(degree_bound_fit(g, k)));
  const auto ph = phi(g, k);
  json pj = bound_json(ph.bound);
  pj["exact"] = to_string(ph.exact);
  if (ph.zero_denominator) pj["zero_denominator"] = *ph.zero_denominator;
  lemmas.push_back(pj);
  j["lemmas"] = lemmas;
  out.emit(j);
  return ok ? 0 : 1;
}

template <class T>
json dual_json(const DualCertificate<T>& c) {
  auto v = [](const T& x) -> json {
    if constexpr (std::is_same_v<T, Rational>) return to_string(x);
    else return x;
  };
  auto vec = [&](const std::vector<T>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(v(x));
    return a;
  };
  return {{"x", v(c.x)}, {"a", vec(c.a)}, {"b", vec(c.b)}, {"D", vec(c.D)}, {"y", v(c.y)},
          {"w", v(c.w)}, {"s", v(c.s)},   {"eps", v(c.eps)}, {"regime", to_string(c.regime)},
          {"shape", params_json(c.shape)}};
}

template <class T>
json check_json(const CertificateCheck<T>& c) {
  return {{"ok", c.ok},
          {"nonnegative", c.nonnegative},
          {"dual_feasible", c.dual_feasible},
          {"slackness", c.slackness},
          {"objective_match", c.objective_match},
          {"violations", c.violations}};
}

int cmd_lb(const Output& out, std::size_t t, const std::string& pstr, const std::string& lstr,
           bool exact, bool certificate) {
  require(t >= 1, "t must be at least 1");
  const NormSpec pn = parse_norm(pstr);
  const double lambda = parse_real(lstr);
  json j{{"t", t}, {"p", pn.label()}, {"lambda", lambda}};
  if (pn.is_infinite()) {
    j["ell"] = lambda / static_cast<double>(t);
    j["exponent"] = lambda / static_cast<double>(t);
    j["route"] = "p_infinity";
    out.emit(j);
    return 0;
  }
  const double p = pn.p();
  require(p >= 1, "p must be at least 1");
  int status = 0;
  if (t >= 2) {
    const auto der = derive_lcr(p, t);
    json lcr = params_json(der.params);
    lcr["branch"] = to_string(der.branch);
    j["lcr"] = lcr;
  }
  if (exact) {
    const Rational pr = parse_rational(pstr), lr = parse_rational(lstr);
    const auto model = build_model<Rational>(t, pr, lr);
    const auto sol = solve_exact(model);
    j["route"] = "lp_exact";
    j["ell"] = to_string(sol.ell);
    j["ell_value"] = sol.ell.get_d();
    j["exponent"] = std::max(1 / p, sol.ell.get_d());
    if (certificate && t >= 2 && p > 1) {
      const auto shape = extremal_shape(t, p, lambda);
      const auto cond = verify_lcr_conditions(shape.certificate_shape, p);
      j["conditions"] = conditions_json(cond);
      j["verified"] = false;
      if (cond.all_satisfied()) {
        const auto cert = construct_dual<Rational>(shape.certificate_shape, pr);
        const auto chk = verify_certificate(model, sol.primal, cert);
        j["dual"] = dual_json(cert);
        j["check"] = check_json(chk);
        j["verified"] = chk.ok;
        if (!chk.ok) status = 1;
      } else {
        j["dual"] = nullptr;
      }
    }
    out.emit(j);
    return status;
  }
  const auto model = build_model<double>(t, p, lambda);
  const auto sol = solve(model);
  j["route"] = "lp";
  j["ell"] = sol.ell;
  j["exponent"] = std::max(1 / p, sol.ell);
  if (t >= 2 && p > 1) {
    const auto shape = extremal_shape(t, p, lambda);
    j["shape"] = {{"certificate_shape", params_json(shape.certificate_shape)},
                  {"nice", shape.nice},
                  {"segment", shape.segment},
                  {"theta", shape.theta},
                  {"source", to_string(shape.source)},
                  {"ell", shape.ell}};
    const auto cond = verify_lcr_conditions(shape.certificate_shape, p);
    j["conditions"] = conditions_json(cond);
    if (certificate) {
      j["verified"] = false;
      if (cond.all_satisfied()) {
        const auto cert = construct_dual<double>(shape.certificate_shape, p);
        const auto chk = verify_certificate(model, sol.primal, cert);
        j["dual"] = dual_json(cert);
        j["check"] = check_json(chk);
        j["verified"] = chk.ok;
        if (!chk.ok) status = 1;
      } else {
        j["dual"] = nullptr;
      }
    }
  } else if (certificate) {
    j["verified"] = false;
    j["dual"] = nullptr;
    j["note"] = "no closed-form certificate at p = 1";
  }
  out.emit(j);
  return status;
}

int cmd_lb_sweep(const std::string& grid_path, const std::string& out_path, bool exact, std::size_t threads) {
  LbGridSpec spec = LbGridSpec::standard();
  if (!grid_path.empty()) {
    std::ifstream in(grid_path);
    if (!in) fail(ErrorCode::Io, "cannot open " + grid_path);
    json g;
    try {
      g = json::parse(in);
    } catch (const json::exception& e) {
      fail(ErrorCode::Parse, grid_path + ": " + e.what());
    }
    spec = LbGridSpec::from_json(g);
  }
  if (exact) spec.exact = true;
  const auto rows = lb_grid(spec, threads);
  std::size_t checked = 0, disagree = 0, verified = 0, cert_failed = 0, exact_checked = 0, mismatch = 0;
  double worst = 0;
  for (const auto& r : rows) {
    if (r.closed_form || r.branch == "error") {
      ++checked;
      disagree += !r.agree;
      worst = std::max(worst, r.error);
    }
    verified += r.certificate == "verified";
    cert_failed += r.certificate == "failed";
    exact_checked += !r.exact.empty();
    mismatch += r.exact == "mismatch";
  }
  json summary{{"points", rows.size()},          {"closed_form_checked", checked},
               {"disagreements", disagree},      {"worst_error", worst},
               {"certificates_verified", verified}, {"certificates_failed", cert_failed},
               {"exact_checked", exact_checked}, {"exact_mismatches", mismatch}};
  if (out_path.empty()) {
    write_lb_grid_csv(std::cout, rows);
    log(summary.dump());
  } else {
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::Io, "cannot write " + out_path);
    write_lb_grid_csv(f, rows);
    log("wrote " + out_path);
    std::cout << summary.dump(2) << "\n";
  }
  return disagree + cert_failed + mismatch ? 1 : 0;
}

json instance_meta(const LayeredInstance& inst) {
  json checks = json::array();
  for (const auto& c : inst.checks)
    checks.push_back({{"name", c.name}, {"holds", c.holds}, {"value", c.value}, {"bound", c.bound}});
  json j{{"family", inst.family},
         {"t", inst.t},
         {"p", inst.p},
         {"sizes", inst.sizes},
         {"vertices", inst.num_vertices()},
         {"measured",
          {{"lp_point", {{"lambda", inst.lp_point.lambda}, {"ell", inst.lp_point.ell}}},
           {"norm_based", {{"lambda", inst.norm_based.lambda}, {"ell", inst.norm_based.ell}}}}},
         {"spanner_norm", inst.spanner_degrees.norm(NormSpec::finite(inst.p))},
         {"host_norm", inst.host_degrees.norm(NormSpec::finite(inst.p))},
         {"spanner_materialized", inst.spanner_materialized},
         {"host_materialized", inst.host_materialized},
         {"stretch", {{"mode", inst.stretch_mode}, {"checked", inst.stretch_checked}, {"ok", inst.stretch_ok}}},
         {"checks", checks}};
  if (inst.family != "lp") j["params"] = params_json(inst.params);
  if (!inst.digits.empty()) j["digits"] = inst.digits;
  if (inst.skew_degree) j["skew_degree"] = inst.skew_degree;
  return j;
}

bool instance_ok(const LayeredInstance& inst) {
  return inst.stretch_ok &&
         std::all_of(inst.checks.begin(), inst.checks.end(), [](const InstanceCheck& c) { return c.holds; });
}

int cmd_gen(const Output& out, const std::string& family, const std::string& ptext,
            std::uint64_t seed, const std::string& prefix) {
  const Params P{parse_params(ptext)};
  static const std::map<std::string, std::set<std::string>> allowed = {
      {"lcr", {"t", "p", "L", "C", "R", "nL"}},
      {"skewed", {"t", "p", "L", "C", "R", "nL", "skew", "sigma"}},
      {"lp", {"t", "p", "lambda", "n"}},
      {"tightness", {"k", "p", "n", "Lambda"}},
      {"named", {"name", "t"}}};
  if (auto it = allowed.find(family); it != allowed.end())
    for (const auto& [key, value] : P.kv)
      if (!it->second.count(key)) fail(ErrorCode::InvalidArgument, "unknown parameter '" + key + "' for " + family);
  json meta;
  const Graph* host = nullptr;
  const Graph* spanner = nullptr;
  bool ok = true;
  LayeredInstance inst;
  TightnessInstance tight;
  Graph named, named_spanner;
  BuildOptions opts;
  opts.seed = seed;
  if (family == "lcr" || family == "skewed") {
    const double p = P.real("p", 2);
    LcrParams s;
    if (P.has("L") || P.has("C") || P.has("R")) {
      s.L = P.count("L", 0);
      s.C = P.count("C", 0);
      s.R = P.count("R", 0);
    } else {
      s = derive_lcr(p, P.count("t")).params;
    }
    const double nL = P.real("nL", 32);
    if (family == "lcr") {
      inst = build_lcr(s, p, nL, opts);
      const auto pred = predicted_exponents(s, p);
      meta = instance_meta(inst);
      meta["predicted"] = {{"lambda", pred.lambda}, {"ell", pred.ell}};
    } else {
      const std::string dir = P.has("skew") ? P.str("skew") : "right";
      if (dir != "left" && dir != "right") fail(ErrorCode::InvalidArgument, "skew must be left or right");
      s.skew = dir == "left" ? Skew::Left : Skew::Right;
      inst = build_skewed(s, p, nL, P.real("sigma"), opts);
      meta = instance_meta(inst);
    }
    meta["n_L"] = nL;
  } else if (family == "lp") {
    const std::size_t t = P.count("t");
    const double p = P.real("p"), lambda = P.real("lambda"), n = P.real("n");
    const auto model = build_model<double>(t, p, lambda, LpForm::Full);
    const auto sol = solve(model);
    inst = build_from_lp(model, sol.primal, n, seed, opts);
    meta = instance_meta(inst);
    meta["lp"] = {{"lambda", lambda}, {"ell", sol.ell}, {"n", n}, {"seed", seed}};
  } else if (family == "tightness") {
    tight = build_tightness(P.count("k"), P.real("p"), P.count("n"), P.real("Lambda"));
    const Spanner h = greedy_spanner(tight.graph, 2 * tight.k - 1);
    std::size_t kept = 0;
    for (auto e : tight.forced_edges)
      kept += std::binary_search(h.kept_edges.begin(), h.kept_edges.end(), e);
    named_spanner = h.graph;
    host = &tight.graph;
    spanner = &named_spanner;
    ok = kept == tight.forced_edges.size();
    meta = {{"family", "tightness"},
            {"case", tight.case_id},
            {"k", tight.k},
            {"p", tight.p},
            {"n", tight.n},
            {"Lambda", tight.Lambda},
            {"vertices", tight.graph.num_vertices()},
            {"edges", tight.graph.num_edges()},
            {"norm", tight.norm},
            {"norm_over_Lambda", tight.norm / tight.Lambda},
            {"forced_edges", tight.forced_edges.size()},
            {"forced_kept_by_greedy", kept},
            {"greedy_edges", h.graph.num_edges()}};
    if (tight.clique_size) meta["clique_size"] = tight.clique_size;
    if (!tight.host_name.empty()) meta["host"] = tight.host_name;
  } else if (family == "named") {
    named = named_girth_graph(P.str("name"));
    const std::size_t t = P.count("t", 3);
    const Spanner h = greedy_spanner(named, t);
    named_spanner = h.graph;
    host = &named;
    spanner = &named_spanner;
    ok = verify_stretch(named, h.graph, t);
    meta = {{"family", "named"},
            {"name", P.str("name")},
            {"t", t},
            {"vertices", named.num_vertices()},
            {"edges", named.num_edges()},
            {"girth", girth_json(girth(named))},
            {"spanner_edges", h.graph.num_edges()},
            {"stretch_ok", ok}};
  } else {
    fail(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
  }
  if (family == "lcr" || family == "skewed" || family == "lp") {
    ok = instance_ok(inst);
    if (inst.host_materialized) host = &inst.host;
    if (inst.spanner_materialized) spanner = &inst.spanner;
  }
  meta["seed"] = seed;
  meta["ok"] = ok;
  json files = json::array();
  if (!prefix.empty()) {
    if (host) {
      write_edge_list(prefix + ".host.edges", *host);
      files.push_back(prefix + ".host.edges");
    }
    if (spanner) {
      write_edge_list(prefix + ".spanner.edges", *spanner);
      files.push_back(prefix + ".spanner.edges");
    }
    files.push_back(prefix + ".meta.json");
    meta["files"] = files;
    std::ofstream(prefix + ".meta.json") << meta.dump(2) << "\n";
    for (const auto& f : files) log("wrote " + f.get<std::string>());
  }
  out.emit(meta);
  return ok ? 0 : 1;
}

int cmd_oracle(const Output& out, const std::string& input, std::size_t t, const std::string& pstr, bool no_prune) {
  const Graph g = read_edge_list(input);
  const auto p = parse_norm(pstr);
  OracleOptions opts;
  opts.prune = !no_prune;
  const auto res = optimal_spanner(g, t, p, opts);
  const double greedy = lp_norm(greedy_spanner(g, t).graph, p);
  out.emit({{"n", g.num_vertices()},
            {"m", g.num_edges()},
            {"stretch", t},
            {"p", p.label()},
            {"optimum_edges", edges_json(res.optimum.graph)},
            {"optimum_norm", res.optimum_norm},
            {"greedy_norm", greedy},
            {"greedy_ratio", greedy_ratio(g, res, p)},
            {"explored", res.explored},
            {"pruned", res.pruned},
            {"exhaustive", res.exhaustive}});
  return 0;
}

int cmd_verify(const Output& out, const std::string& input, std::size_t t, const std::string& pstr,
               const std::string& spanner_path) {
  const Graph g = read_edge_list(input);
  std::optional<Graph> h;
  if (!spanner_path.empty()) h = read_edge_list(spanner_path);
  const auto rep = verify_all(g, t, parse_norm(pstr), h ? &*h : nullptr);
  json checks = json::array();
  json failed = json::array();
  for (const auto& c : rep.checks) {
    json r{{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed},
           {"value", number(c.value)}, {"bound", number(c.bound)}};
    if (!c.detail.empty()) r["detail"] = c.detail;
    checks.push_back(r);
    if (c.applicable && !c.passed) failed.push_back(c.name);
  }
  out.emit({{"ok", rep.ok()}, {"failed", failed}, {"checks", checks}});
  return rep.ok() ? 0 : 1;
}

int cmd_experiment(const std::string& spec_path, const std::string& out_dir, std::size_t threads) {
  std::ifstream in(spec_path);
  if (!in) fail(ErrorCode::Io, "cannot open " + spec_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, spec_path + ": " + e.what());
  }
  auto spec = ExperimentSpec::from_json(j);
  if (!out_dir.empty()) spec.output = out_dir;
  const auto rec = run_experiment(spec, threads);
  log("wrote " + spec.output + "/results.csv");
  json summary{{"spec_hash", rec.spec_hash}, {"rows", rec.rows.size()}, {"failures", rec.failures},
               {"resumed", rec.resumed}, {"output", spec.output}};
  std::cout << summary.dump(2) << "\n";
  return rec.failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spanorm: greedy spanners under degree-vector norms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  Output out;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string input, output, pstr = "2", spanner_path, family, params, prefix, grid, spec;
  std::string lambda;
  std::size_t t = 3, k = 3;
  bool exact = false, certificate = false, no_prune = false;
  std::vector<std::string> plist{"1", "2", "inf"};
  int status = 0;

  auto* greedy = app.add_subcommand("greedy", "greedy t-spanner of an edge list");
  greedy->add_option("--input", input)->required();
  greedy->add_option("--stretch,-t", t)->required()->check(CLI::PositiveNumber);
  greedy->add_option("--p", pstr);
  greedy->add_option("--output", output);

  auto* norm = app.add_subcommand("norm", "degree-vector norms");
  norm->add_option("--input", input)->required();
  norm->add_option("--p", plist);

  auto* dec = app.add_subcommand("decompose", "degree-growth classes and lemma checks");
  dec->add_option("--input", input)->required();
  dec->add_option("--k", k)->required()->check(CLI::Range(3, 64));

  auto* lb = app.add_subcommand("lb", "lower-bound exponent from the LP");
  lb->add_option("--t", t)->required()->check(CLI::PositiveNumber);
  lb->add_option("--p", pstr)->required();
  lb->add_option("--lambda", lambda)->required();
  lb->add_flag("--exact", exact);
  lb->add_flag("--certificate", certificate);

  auto* sweep = app.add_subcommand("lb-sweep", "LP against closed forms over a grid");
  sweep->add_option("--grid", grid);
  sweep->add_option("--out", output);
  sweep->add_flag("--exact", exact);

  auto* gen = app.add_subcommand("gen", "generate extremal and tightness instances");
  gen->add_option("--family", family)->required()->check(CLI::IsMember({"lcr", "skewed", "lp", "tightness", "named"}));
  gen->add_option("--params", params);
  gen->add_option("--seed", seed);
  gen->add_option("--out", prefix);

  auto* orc = app.add_subcommand("oracle", "minimum-norm spanner by search");
  orc->add_option("--input", input)->required();
  orc->add_option("--stretch,-t", t)->required()->check(CLI::PositiveNumber);
  orc->add_option("--p", pstr);
  orc->add_flag("--no-prune", no_prune);

  auto* ver = app.add_subcommand("verify", "run every applicable check");
  ver->add_option("--input", input)->required();
  ver->add_option("--stretch,-t", t)->check(CLI::PositiveNumber);
  ver->add_option("--p", pstr);
  ver->add_option("--spanner", spanner_path);

  auto* exp = app.add_subcommand("experiment", "run a parameter sweep");
  exp->add_option("--spec", spec)->required();
  exp->add_option("--out", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("SPANORM_EXACT"); env && std::string(env) == "1") exact = true;
    if (*greedy) status = cmd_greedy(out, input, t, pstr, output);
    else if (*norm) status = cmd_norm(out, input, plist);
    else if (*dec) status = cmd_decompose(out, input, k);
    else if (*lb) status = cmd_lb(out, t, pstr, lambda, exact, certificate);
    else if (*sweep) status = cmd_lb_sweep(grid, output, exact, threads);
    else if (*gen) status = cmd_gen(out, family, params, seed, prefix);
    else if (*orc) status = cmd_oracle(out, input, t, pstr, no_prune);
    else if (*ver) status = cmd_verify(out, input, t, pstr, spanner_path);
    else if (*exp) status = cmd_experiment(spec, output, threads);
  } catch (const Error& e) {
    log(std::string(to_string(e.code())) + ": " + e.what());
    return 2;
  } catch (const std::exception& e) {
    log(e.what());
    return 2;
  }
  return status;
}
