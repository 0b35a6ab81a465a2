#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spanorm/lb_lp.hpp"
#include "spanorm/lcr.hpp"

namespace spanorm {

// Dual solution of the relaxed lower-bound LP. a, b, D are indexed by i - 1.
// Row pairing: x spanning, a_i left_norm[i], b_i right_norm[i],
// D_i right_degree[i], y density, w final_layer, s size.
template <class T>
struct DualCertificate {
  std::size_t t = 0;
  T x{};
  std::vector<T> a, b, D;
  T y{}, w{}, s{};
  T eps{};  // scale making sum(a) + sum(b) = 1; zero for extracted duals
  Applicability regime = Applicability::None;
  LcrParams shape;

  // Dual vector in the row order of a relaxed model.
  std::vector<T> row_vector(const LbLpModel<T>& model) const;
  // Dual objective lambda*y - s.
  T objective(const T& lambda) const { return lambda * y - s; }
};

// Closed-form dual for the shape's regime. C = 0 uses the general form.
// Throws NegativeComponent naming the first negative entry, InvalidArgument
// for p = 1.
template <class T>
DualCertificate<T> construct_dual(const LcrParams& params, const T& p);

// Read the simplex duals of a relaxed model back into certificate form.
template <class T>
DualCertificate<T> extract_dual(const LbLpModel<T>& model, const LbSolution<T>& sol);

template <class T>
struct CertificateCheck {
  bool ok = false;
  bool nonnegative = false;
  bool dual_feasible = false;
  bool slackness = false;
  bool objective_match = false;
  T primal_objective{};
  T dual_objective{};
  std::vector<std::string> violations;
};

// Tolerance 1e-9 absolute for double, exact for Rational.
template <class T>
CertificateCheck<T> verify_certificate(const LbLpModel<T>& model, const std::vector<T>& primal,
                                       const DualCertificate<T>& cert);

}  // namespace spanorm
