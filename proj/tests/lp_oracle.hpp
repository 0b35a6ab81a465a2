#pragma once

// Independent evaluation of the relaxed lower-bound LP and its dual, written
// out row by row. Used to certify optimality by weak duality without going
// through the library's model matrix.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "spanorm/rational.hpp"

namespace lp_oracle {

template <class T>
struct Primal {
  T ell{}, Delta{};
  std::vector<T> nu, delta;  // nu[0..t], delta[0..t-1] for delta_1..delta_t
};

template <class T>
struct Dual {
  T x{}, y{}, w{}, s{};
  std::vector<T> a, b, D;  // index i-1
};

template <class T>
T E(std::size_t i, std::size_t j, const T& p) {
  T q = (p - T(1)) / p;
  T pw = 1;
  for (std::size_t k = 0; k < j; ++k) pw *= q;
  return T(1) + p / T(static_cast<long>(i)) * (T(1) - pw);
}

inline double E(std::size_t i, std::size_t j, double p) {
  return 1 + p / static_cast<double>(i) * (1 - std::pow((p - 1) / p, static_cast<double>(j)));
}

// Largest primal infeasibility (<= 0 means feasible).
template <class T>
T primal_violation(std::size_t t, const T& p, const T& lambda, const Primal<T>& v) {
  T worst = 0;
  auto need = [&](const T& lhs, const T& rhs) { worst = std::max<T>(worst, rhs - lhs); };
  T sum = 0;
  for (const auto& d : v.delta) sum += d;
  need(sum - v.Delta, T(0));
  for (std::size_t i = 1; i <= t; ++i) {
    need(v.ell - v.nu[i - 1] / p - v.delta[i - 1], T(0));
    need(v.ell + (p - T(1)) / p * v.nu[i] - v.nu[i - 1] - v.delta[i - 1], T(0));
    need(v.nu[i - 1] + v.delta[i - 1] - v.nu[i], T(0));
  }
  need(v.nu[0] / p + v.Delta, lambda);
  need(v.nu[t] - v.Delta, T(0));
  need(-v.nu[t], T(-1));
  need(v.ell, T(0));
  need(v.Delta, T(0));
  for (const auto& x : v.nu) need(x, T(0));
  for (const auto& x : v.delta) need(x, T(0));
  return worst;
}

// Largest dual infeasibility: columns of A^T u <= c and u >= 0.
template <class T>
T dual_violation(std::size_t t, const T& p, const Dual<T>& u) {
  T worst = 0;
  auto at_most = [&](const T& lhs, const T& rhs) { worst = std::max<T>(worst, lhs - rhs); };
  const T q1 = (p - T(1)) / p;
  T ab = 0;
  for (std::size_t i = 0; i < t; ++i) ab += u.a[i] + u.b[i];
  at_most(ab, T(1));                   // ell
  at_most(-u.x + u.y - u.w, T(0));     // Delta
  at_most(-u.a[0] / p - u.b[0] + u.D[0] + u.y / p, T(0));  // nu_0
  for (std::size_t j = 1; j < t; ++j)  // nu_j
    at_most(q1 * u.b[j - 1] - u.D[j - 1] - u.a[j] / p - u.b[j] + u.D[j], T(0));
  at_most(q1 * u.b[t - 1] - u.D[t - 1] + u.w - u.s, T(0));  // nu_t
  for (std::size_t i = 0; i < t; ++i) at_most(u.x - u.a[i] - u.b[i] + u.D[i], T(0));  // delta_i
  for (const T* z : {&u.x, &u.y, &u.w, &u.s}) at_most(-*z, T(0));
  for (std::size_t i = 0; i < t; ++i) {
    at_most(-u.a[i], T(0));
    at_most(-u.b[i], T(0));
    at_most(-u.D[i], T(0));
  }
  return worst;
}

template <class T>
T dual_objective(const T& lambda, const Dual<T>& u) {
  return lambda * u.y - u.s;
}

}  // namespace lp_oracle
