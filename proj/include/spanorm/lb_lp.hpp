#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spanorm/graph.hpp"
#include "spanorm/rational.hpp"
#include "spanorm/simplex.hpp"

namespace spanorm {

// Relaxed: variables ell, Delta, nu_0..nu_t, delta_1..delta_t with rows
//   spanning        sum delta_i - Delta >= 0                       (dual x)
//   left_norm[i]    ell - nu_{i-1}/p - delta_i >= 0                  (dual a_i)
//   right_norm[i]   ell + (p-1)/p nu_i - nu_{i-1} - delta_i >= 0     (dual b_i)
//   right_degree[i] nu_{i-1} + delta_i - nu_i >= 0                   (dual D_i)
//   density         nu_0/p + Delta >= lambda                         (dual y)
//   final_layer     nu_t - Delta >= 0                                (dual w)
//   size            -nu_t >= -1                                      (dual s)
// Full: ell, nu_i, delta_i, Delta_hat_i with the per-layer reach rows.
enum class LpForm { Relaxed, Full };
const char* to_string(LpForm f);

template <class T>
struct LbLpModel {
  std::size_t t = 1;
  T p{};
  T lambda{};
  LpForm form = LpForm::Relaxed;
  LinearProgram<T> lp;
  std::size_t ell = 0;
  std::size_t Delta = 0;                // relaxed only
  std::vector<std::size_t> nu;          // nu[i], i = 0..t
  std::vector<std::size_t> delta;       // delta[i-1], i = 1..t
  std::vector<std::size_t> Delta_hat;   // full only, Delta_hat[i-1]
};

// E_{i,j} = 1 + (p/i)(1 - ((p-1)/p)^j), with 0^0 = 1.
template <class T>
T e_coeff(std::size_t i, std::size_t j, const T& p);

template <class T>
LbLpModel<T> build_model(std::size_t t, const T& p, const T& lambda, LpForm form = LpForm::Relaxed);

// Model for a concrete (n, Lambda): lambda = log_n Lambda. n only enters
// through lambda.
LbLpModel<double> model_for_instance(std::size_t t, double p, double n, double Lambda,
                                     LpForm form = LpForm::Relaxed);

template <class T>
struct LbSolution {
  T ell{};
  std::vector<T> primal;  // indexed like model.lp.variables
  std::vector<T> duals;   // indexed like model.lp.rows
  std::vector<std::size_t> basis;
};

// Throws Infeasible / Unbounded (neither can happen for valid models).
template <class T>
LbSolution<T> solve(const LbLpModel<T>& model);

// Exact optimum, seeded with the floating-point optimal basis.
LbSolution<Rational> solve_exact(const LbLpModel<Rational>& model);

// Honour SPANORM_EXACT=1.
bool exact_mode_from_env();

struct LbValue {
  double lambda = 0;
  double ell_star = 0;  // LP optimum (or the p = inf closed form)
  double exponent = 0;  // max(1/p, ell_star)
  double value = 0;     // n^exponent
  bool floor_dominates = false;
  std::string route;    // "lp" or "p_infinity"
};

// n^{max(1/p, ell*)}; for p = inf the bound is Lambda^{1/t} (no LP).
LbValue lb_value(std::size_t t, const NormSpec& p, double n, double Lambda);

}  // namespace spanorm
