#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spanorm/rational.hpp"

namespace spanorm {

enum class Skew { None, Left, Right };
const char* to_string(Skew s);

// Shape of an extremal layered spanner: L outer-left layers, C central
// layers, R outer-right layers. A skewed shape carries the skew degree as an
// exponent of the central layer size.
struct LcrParams {
  std::size_t L = 0, C = 0, R = 0;
  Skew skew = Skew::None;
  double skew_exponent = 0;
  std::size_t t() const { return L + C + R; }
  std::string label() const;
  friend bool operator==(const LcrParams& a, const LcrParams& b) {
    return a.L == b.L && a.C == b.C && a.R == b.R && a.skew == b.skew;
  }
};

enum class LcrBranch { LowestP, LowP, HighP, Diagnostic };
const char* to_string(LcrBranch b);

struct LcrDerivation {
  LcrParams params;
  LcrBranch branch = LcrBranch::LowestP;
  std::optional<LcrParams> low_p_candidate;  // considered and rejected, if any
};

LcrDerivation derive_lcr(double p, std::size_t t);

enum class Applicability { None, General, HighP, LeftSkew, RightSkew, RightSkewHighP };
const char* to_string(Applicability a);

// lhs <= rhs, checked with a 1e-12 relative tolerance (ties satisfy).
struct Condition {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool satisfied = true;
  double slack() const { return rhs - lhs; }
};

struct ConditionReport {
  Applicability regime = Applicability::None;
  std::vector<Condition> conditions;
  bool all_satisfied() const;
  const Condition* find(const std::string& name) const;
};

// Each condition states that one component of the closed-form dual for the
// regime is non-negative. C = 0 and p = 1 report regime None.
ConditionReport verify_lcr_conditions(const LcrParams& params, double p);
Applicability regime_of(const LcrParams& params);

// Upper end of the lambda range on which the closed form holds:
// 1 + E_{C,L}/(p E_{C,R}) for C > 0, 1 + (E_{1,L}-1)/(p (E_{1,R}-1)) for C = 0.
template <class T>
T nice_range_limit(const LcrParams& params, const T& p);

// (1 + p/C)/(E_{C,L} + p E_{C,R}) lambda for C > 0,
// p/(E_{1,L} - 1 + p (E_{1,R} - 1)) lambda for C = 0.
// Throws NiceRangeExceeded beyond nice_range_limit.
template <class T>
T closed_form_exponent(const LcrParams& params, const T& p, const T& lambda);

// max(1/p, alpha lambda) for even t, p <= phi; max(1/p, beta lambda) for odd t, p <= 2.
template <class T>
T low_p_exponent(std::size_t t, const T& p, const T& lambda);
template <class T>
T low_p_coefficient(std::size_t t, const T& p);

inline constexpr double kGoldenRatio = 1.6180339887498948482;

// ell*(lambda) over the whole range. Up to the nice limit: the closed form.
// Beyond it lambda falls in a segment between the nice-limit points of
// S_i = (L + floor(i/2), C + ceil(i/2) - floor(i/2), R - ceil(i/2))
// (or (0, C', t - C') when L = 0); ell is the objective of the segment's
// skewed dual if its conditions hold, else the LP optimum.
enum class EllSource { ClosedForm, SkewedDual, Lp };
const char* to_string(EllSource s);

struct ExtremalShape {
  LcrParams derived;
  LcrParams certificate_shape;
  bool nice = true;
  std::size_t segment = 0;
  double theta = 0;  // weight of the left endpoint inside the segment
  double ell = 0;
  bool beyond_last_segment = false;  // lambda past the last interpolation point
  EllSource source = EllSource::ClosedForm;
  double interpolated = 0;  // segment interpolation, kept when source is Lp
};

ExtremalShape extremal_shape(std::size_t t, double p, double lambda);

}  // namespace spanorm
