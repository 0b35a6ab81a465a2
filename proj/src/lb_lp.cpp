#include "spanorm/lb_lp.hpp"

#include <cmath>
#include <cstdlib>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

template <class T>
std::string fmt(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return to_string(v);
  else return std::to_string(v);
}

std::string idx(const char* base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

}  // namespace

const char* to_string(LpForm f) { return f == LpForm::Relaxed ? "relaxed" : "full"; }

template <class T>
T e_coeff(std::size_t i, std::size_t j, const T& p) {
  require(i >= 1, "E_{i,j} needs i >= 1");
  require(p >= T(1), "E_{i,j} needs p >= 1");
  T r = (p - T(1)) / p;
  T pw(1);
  for (std::size_t k = 0; k < j; ++k) pw *= r;
  return T(1) + p / T(static_cast<long>(i)) * (T(1) - pw);
}

template <class T>
LbLpModel<T> build_model(std::size_t t, const T& p, const T& lambda, LpForm form) {
  require(t >= 1, "t must be at least 1");
  require(p >= T(1), "p must be at least 1");
  require(lambda > T(0), "lambda must be positive");
  T cap = T(1) + T(1) / p;
  if constexpr (!std::is_same_v<T, Rational>) cap *= 1 + 1e-12;
  if (lambda > cap)
    fail(ErrorCode::InvalidArgument,
         "lambda " + fmt(lambda) + " exceeds 1 + 1/p = " + fmt(T(T(1) + T(1) / p)));

  LbLpModel<T> m;
  m.t = t;
  m.p = p;
  m.lambda = lambda;
  m.form = form;
  auto& lp = m.lp;
  const T one(1), inv_p = T(1) / p, q1 = (p - T(1)) / p;
  using Terms = std::vector<std::pair<std::size_t, T>>;

  m.ell = lp.add_variable("ell", one);
  if (form == LpForm::Relaxed) m.Delta = lp.add_variable("Delta");
  for (std::size_t i = 0; i <= t; ++i) m.nu.push_back(lp.add_variable(idx("nu", i)));
  for (std::size_t i = 1; i <= t; ++i) m.delta.push_back(lp.add_variable(idx("delta", i)));
  auto nu = [&](std::size_t i) { return m.nu[i]; };
  auto de = [&](std::size_t i) { return m.delta[i - 1]; };

  if (form == LpForm::Relaxed) {
    Terms span;
    for (std::size_t i = 1; i <= t; ++i) span.emplace_back(de(i), one);
    span.emplace_back(m.Delta, -one);
    lp.add_row("spanning", span, Sense::GreaterEq, T(0));
    for (std::size_t i = 1; i <= t; ++i)
      lp.add_row(idx("left_norm", i), {{m.ell, one}, {nu(i - 1), T(-inv_p)}, {de(i), -one}},
                 Sense::GreaterEq, T(0));
    for (std::size_t i = 1; i <= t; ++i)
      lp.add_row(idx("right_norm", i),
                 {{m.ell, one}, {nu(i), q1}, {nu(i - 1), -one}, {de(i), -one}}, Sense::GreaterEq,
                 T(0));
    for (std::size_t i = 1; i <= t; ++i)
      lp.add_row(idx("right_degree", i), {{nu(i), -one}, {nu(i - 1), one}, {de(i), one}},
                 Sense::GreaterEq, T(0));
    lp.add_row("density", {{nu(0), inv_p}, {m.Delta, one}}, Sense::GreaterEq, lambda);
    lp.add_row("final_layer", {{nu(t), one}, {m.Delta, -one}}, Sense::GreaterEq, T(0));
    lp.add_row("size", {{nu(t), -one}}, Sense::GreaterEq, -one);
    return m;
  }

  for (std::size_t i = 1; i <= t; ++i) m.Delta_hat.push_back(lp.add_variable(idx("Delta_hat", i)));
  auto dh = [&](std::size_t i) { return m.Delta_hat[i - 1]; };
  for (std::size_t i = 1; i <= t; ++i) {
    lp.add_row(idx("left_norm", i), {{m.ell, one}, {nu(i - 1), T(-inv_p)}, {de(i), -one}},
               Sense::GreaterEq, T(0));
    lp.add_row(idx("right_norm", i), {{m.ell, one}, {nu(i), q1}, {nu(i - 1), -one}, {de(i), -one}},
               Sense::GreaterEq, T(0));
    lp.add_row(idx("degree_cap", i), {{nu(i), one}, {de(i), -one}}, Sense::GreaterEq, T(0));
    lp.add_row(idx("right_degree", i), {{nu(i - 1), one}, {de(i), one}, {nu(i), -one}},
               Sense::GreaterEq, T(0));
  }
  lp.add_row(idx("reach", 1), {{dh(1), one}, {de(1), -one}}, Sense::Equal, T(0));
  for (std::size_t i = 2; i <= t; ++i) {
    lp.add_row(idx("reach", i), {{dh(i - 1), one}, {de(i), one}, {dh(i), -one}}, Sense::GreaterEq,
               T(0));
    lp.add_row(idx("reach_cap", i), {{nu(i), one}, {dh(i), -one}}, Sense::GreaterEq, T(0));
  }
  lp.add_row("density", {{nu(0), inv_p}, {dh(t), one}}, Sense::GreaterEq, lambda);
  for (std::size_t i = 0; i <= t; ++i)
    lp.add_row(idx("size", i), {{nu(i), -one}}, Sense::GreaterEq, -one);
  return m;
}

LbLpModel<double> model_for_instance(std::size_t t, double p, double n, double Lambda,
                                     LpForm form) {
  require(n > 1, "n must exceed 1");
  require(Lambda > 1, "Lambda must exceed 1");
  return build_model<double>(t, p, std::log(Lambda) / std::log(n), form);
}

template <class T>
LbSolution<T> solve(const LbLpModel<T>& model) {
  auto sol = solve_lp(model.lp);
  if (sol.status == LpStatus::Infeasible) fail(ErrorCode::Infeasible, "lower-bound LP is infeasible");
  if (sol.status == LpStatus::Unbounded) fail(ErrorCode::Unbounded, "lower-bound LP is unbounded");
  if (sol.status != LpStatus::Optimal) fail(ErrorCode::Infeasible, "simplex iteration limit reached");
  return {sol.objective, std::move(sol.x), std::move(sol.duals), std::move(sol.basis)};
}

LbSolution<Rational> solve_exact(const LbLpModel<Rational>& model) {
  auto approx = solve_lp(to_double(model.lp));
  auto sol = solve_lp_exact(model.lp, approx.status == LpStatus::Optimal ? &approx.basis : nullptr);
  if (sol.status != LpStatus::Optimal)
    fail(ErrorCode::Infeasible, std::string("exact lower-bound LP: ") + to_string(sol.status));
  return {sol.objective, std::move(sol.x), std::move(sol.duals), std::move(sol.basis)};
}

bool exact_mode_from_env() {
  const char* v = std::getenv("SPANORM_EXACT");
  return v && std::string(v) == "1";
}

LbValue lb_value(std::size_t t, const NormSpec& p, double n, double Lambda) {
  require(t >= 1, "t must be at least 1");
  require(n > 1, "n must exceed 1");
  LbValue out;
  const double rel = 1e-12;
  if (p.is_infinite()) {
    if (Lambda < 2 * (1 - rel) || Lambda > n * (1 + rel))
      fail(ErrorCode::InvalidArgument, "for p = inf Lambda must lie in [2, n]");
    out.route = "p_infinity";
    out.lambda = std::log(Lambda) / std::log(n);
    out.ell_star = out.lambda / static_cast<double>(t);
    out.exponent = out.ell_star;
    out.value = std::pow(Lambda, 1.0 / static_cast<double>(t));
    return out;
  }
  const double pp = p.p();
  const double lo = 2 * std::pow(n, 1.0 / pp);
  const double hi = std::pow(n, 1 + 1.0 / pp);
  if (Lambda < lo * (1 - rel) || Lambda > hi * (1 + rel))
    fail(ErrorCode::InvalidArgument, "Lambda must lie in [2 n^{1/p}, n^{1+1/p}]");
  out.route = "lp";
  out.lambda = std::min(std::log(Lambda) / std::log(n), 1 + 1.0 / pp);
  out.ell_star = solve(build_model<double>(t, pp, out.lambda)).ell;
  out.floor_dominates = 1.0 / pp >= out.ell_star;
  out.exponent = std::max(1.0 / pp, out.ell_star);
  out.value = std::pow(n, out.exponent);
  return out;
}

template double e_coeff(std::size_t, std::size_t, const double&);
template Rational e_coeff(std::size_t, std::size_t, const Rational&);
template LbLpModel<double> build_model(std::size_t, const double&, const double&, LpForm);
template LbLpModel<Rational> build_model(std::size_t, const Rational&, const Rational&, LpForm);
template LbSolution<double> solve(const LbLpModel<double>&);
template LbSolution<Rational> solve(const LbLpModel<Rational>&);

}  // namespace spanorm
