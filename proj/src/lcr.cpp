#include "spanorm/lcr.hpp"

#include <algorithm>
#include <cmath>

#include "spanorm/certificate.hpp"
#include "spanorm/error.hpp"
#include "spanorm/lb_lp.hpp"

namespace spanorm {

namespace {

constexpr double kRelTol = 1e-12;

Condition leq(std::string name, double lhs, double rhs) {
  Condition c{std::move(name), lhs, rhs, true};
  c.satisfied = lhs - rhs <= kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return c;
}

double to_d(const double& x) { return x; }
double to_d(const Rational& x) { return x.get_d(); }

template <class T>
T ell_at_limit(const LcrParams& s, const T& p) {
  return (T(1) / p + T(1) / T(static_cast<long>(s.C))) / e_coeff<T>(s.C, s.R, p);
}

}  // namespace

const char* to_string(Skew s) {
  switch (s) {
    case Skew::None: return "none";
    case Skew::Left: return "left";
    case Skew::Right: return "right";
  }
  return "unknown";
}

const char* to_string(LcrBranch b) {
  switch (b) {
    case LcrBranch::LowestP: return "lowest_p";
    case LcrBranch::LowP: return "low_p";
    case LcrBranch::HighP: return "high_p";
    case LcrBranch::Diagnostic: return "diagnostic";
  }
  return "unknown";
}

const char* to_string(EllSource s) {
  switch (s) {
    case EllSource::ClosedForm: return "closed_form";
    case EllSource::SkewedDual: return "skewed_dual";
    case EllSource::Lp: return "lp";
  }
  return "unknown";
}

const char* to_string(Applicability a) {
  switch (a) {
    case Applicability::None: return "none";
    case Applicability::General: return "general";
    case Applicability::HighP: return "high_p";
    case Applicability::LeftSkew: return "left_skew";
    case Applicability::RightSkew: return "right_skew";
    case Applicability::RightSkewHighP: return "right_skew_high_p";
  }
  return "unknown";
}

std::string LcrParams::label() const {
  std::string s = "(" + std::to_string(L) + "," + std::to_string(C) + "," + std::to_string(R) + ")";
  if (skew != Skew::None) s += std::string(" ") + to_string(skew) + "-skewed";
  return s;
}

bool ConditionReport::all_satisfied() const {
  if (regime == Applicability::None) return false;
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const Condition& c) { return c.satisfied; });
}

const Condition* ConditionReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

Applicability regime_of(const LcrParams& s) {
  switch (s.skew) {
    case Skew::None:
      if (s.C == 0) return Applicability::None;
      return s.L > 0 ? Applicability::General : Applicability::HighP;
    case Skew::Left: return Applicability::LeftSkew;
    case Skew::Right: return s.L > 0 ? Applicability::RightSkew : Applicability::RightSkewHighP;
  }
  return Applicability::None;
}

ConditionReport verify_lcr_conditions(const LcrParams& s, double p) {
  require(p >= 1, "p must be at least 1");
  ConditionReport rep;
  rep.regime = regime_of(s);
  if (p == 1.0) rep.regime = Applicability::None;
  if (rep.regime == Applicability::None) return rep;

  const double q = p / (p - 1);
  const double C = static_cast<double>(s.C);
  const double d = static_cast<double>(s.R) - static_cast<double>(s.L);  // R - L
  auto& c = rep.conditions;
  switch (rep.regime) {
    case Applicability::General:
      c.push_back(leq("left_balance", p * p, (C + 1) * std::pow(q, d + 1)));
      c.push_back(leq("a_central_nonneg", C * std::pow(q, d), p * p));
      c.push_back(leq("b_central_nonneg", C, std::pow(q, d)));
      c.push_back(leq("D_right_nonneg", std::pow(q, d - 1), C + 1));
      c.push_back(leq("center_lower", p - 2, C));
      c.push_back(leq("center_upper", C, p));
      break;
    case Applicability::HighP:
      c.push_back(leq("a_central_nonneg", C * std::pow(q, d), p * p));
      c.push_back(leq("b_central_nonneg", C, std::pow(q, d)));
      c.push_back(leq("D_right_nonneg", std::pow(q, d - 1), C + 1));
      break;
    case Applicability::LeftSkew:
      c.push_back(leq("center_lower", p - 2, C));
      c.push_back(leq("skew_balance", (C + 1) * std::pow(q, d - 1), p * p));
      c.push_back(leq("b_central_nonneg", C, p - 1));
      break;
    case Applicability::RightSkew:
      c.push_back(leq("center_lower", p - 2, C));
      c.push_back(leq("D_right_nonneg", std::pow(q, d - 1), C + 1));
      c.push_back(leq("a_central_nonneg", C, p - 1));
      break;
    case Applicability::RightSkewHighP:
      c.push_back(leq("D_right_nonneg", std::pow(q, d - 1), C + 1));
      c.push_back(leq("a_central_nonneg", C, p - 1));
      break;
    case Applicability::None: break;
  }
  return rep;
}

LcrDerivation derive_lcr(double p, std::size_t t) {
  require(p >= 1, "p must be at least 1");
  require(t >= 2, "t must be at least 2");
  LcrDerivation out;
  const std::size_t h = t / 2;
  if (t % 2 == 0 && p <= kGoldenRatio) {
    out.params = {h, 0, h};
    return out;
  }
  if (t % 2 == 1 && p <= 2) {
    out.params = {h, 1, h};
    return out;
  }

  const double q = p / (p - 1);
  const double fp = std::floor(p);
  const double lq = std::log(q);
  const double d0 = std::log(p * p / fp) / lq;
  const double d1 = std::log(p * fp / (p - 1)) / lq;
  const double dplus = std::max(d0, d1), dminus = std::min(d0, d1);
  const double fm = std::floor(dminus);
  const double td = static_cast<double>(t);
  double L, C, R;
  if (std::floor(dplus) > fm) {
    C = std::floor(std::sqrt(p * (p - 1)));
    L = std::floor((td - C - fm) / 2);
    R = std::ceil((td - C + fm) / 2);
  } else {
    L = std::ceil((td - p - fm) / 2);
    R = std::ceil((td - p + fm) / 2);
    C = td - L - R;
  }
  if (L >= 0 && C >= 0 && R >= 0 && L + C + R == td) {
    LcrParams cand{static_cast<std::size_t>(L), static_cast<std::size_t>(C), static_cast<std::size_t>(R)};
    if (cand.L > 0) {
      if (verify_lcr_conditions(cand, p).all_satisfied()) {
        out.params = cand;
        out.branch = LcrBranch::LowP;
        return out;
      }
      out.low_p_candidate = cand;
    }
  }

  // unique C with C q^C <= q^t < (C+1) q^(C+1), intervals half-open
  const double qt = std::pow(q, td);
  std::size_t c = 0;
  while (c < t && !(static_cast<double>(c) * std::pow(q, static_cast<double>(c)) <= qt &&
                    qt < static_cast<double>(c + 1) * std::pow(q, static_cast<double>(c + 1))))
    ++c;
  out.params = {0, c, t - c};
  out.branch = verify_lcr_conditions(out.params, p).all_satisfied() ? LcrBranch::HighP
                                                                     : LcrBranch::Diagnostic;
  return out;
}

template <class T>
T nice_range_limit(const LcrParams& s, const T& p) {
  if (s.C > 0) return T(1) + e_coeff<T>(s.C, s.L, p) / (p * e_coeff<T>(s.C, s.R, p));
  require(s.L >= 1 && s.R >= 1, "C = 0 needs L, R >= 1");
  return T(1) + (e_coeff<T>(1, s.L, p) - T(1)) / (p * (e_coeff<T>(1, s.R, p) - T(1)));
}

template <class T>
T closed_form_exponent(const LcrParams& s, const T& p, const T& lambda) {
  require(p >= T(1), "p must be at least 1");
  T lim = nice_range_limit(s, p);
  bool inside;
  if constexpr (std::is_same_v<T, Rational>) inside = lambda <= lim;
  else inside = lambda <= lim * (1 + kRelTol);
  if (!inside)
    fail(ErrorCode::NiceRangeExceeded, "lambda " + std::to_string(to_d(lambda)) +
                                           " exceeds the closed-form range limit " +
                                           std::to_string(to_d(lim)) + " for " + s.label());
  if (s.C > 0) {
    T cc(static_cast<long>(s.C));
    return (T(1) + p / cc) / (e_coeff<T>(s.C, s.L, p) + p * e_coeff<T>(s.C, s.R, p)) * lambda;
  }
  return p / (e_coeff<T>(1, s.L, p) - T(1) + p * (e_coeff<T>(1, s.R, p) - T(1))) * lambda;
}

template <class T>
T low_p_coefficient(std::size_t t, const T& p) {
  require(t >= 1, "t must be at least 1");
  const double pd = to_d(p);
  const bool even = t % 2 == 0;
  if (pd < 1 || (even && pd > kGoldenRatio) || (!even && pd > 2))
    fail(ErrorCode::InvalidArgument, "low-p closed form needs p in [1, phi] (even t) or [1, 2] (odd t)");
  T r = (p - T(1)) / p;
  T pw(1);
  for (std::size_t k = 0; k < t / 2; ++k) pw *= r;
  if (even) return T(1) / ((p + T(1)) * (T(1) - pw));
  // odd: exponent (t-1)/2 = floor(t/2)
  return T(1) / (T(1) + p * (T(1) - pw));
}

template <class T>
T low_p_exponent(std::size_t t, const T& p, const T& lambda) {
  T a = low_p_coefficient(t, p) * lambda;
  T floor = T(1) / p;
  return a > floor ? a : floor;
}

ExtremalShape extremal_shape(std::size_t t, double p, double lambda) {
  require(p >= 1, "p must be at least 1");
  require(lambda > 0 && lambda <= (1 + 1 / p) * (1 + kRelTol), "lambda must lie in (0, 1 + 1/p]");
  ExtremalShape out;
  out.derived = derive_lcr(p, t).params;
  out.certificate_shape = out.derived;
  const double lim = nice_range_limit<double>(out.derived, p);
  if (lambda <= lim * (1 + kRelTol)) {
    out.ell = closed_form_exponent<double>(out.derived, p, std::min(lambda, lim));
    return out;
  }
  out.nice = false;
  const auto& d = out.derived;
  std::vector<LcrParams> pts;
  if (d.L > 0) {
    for (std::size_t i = 0; i <= d.R - d.L; ++i)
      pts.push_back({d.L + i / 2, d.C + (i + 1) / 2 - i / 2, d.R - (i + 1) / 2});
  } else {
    for (std::size_t c = d.C; c <= t; ++c) pts.push_back({0, c, t - c});
  }
  std::vector<double> lam, ell;
  for (const auto& s : pts) {
    lam.push_back(nice_range_limit<double>(s, p));
    ell.push_back(ell_at_limit<double>(s, p));
  }
  std::size_t j = 1;
  while (j + 1 < pts.size() && lambda > lam[j]) ++j;
  if (lambda > lam[j] * (1 + kRelTol)) out.beyond_last_segment = true;
  const double x = std::min(lambda, lam[j]);
  out.segment = j;
  out.theta = (lam[j] - x) / (lam[j] - lam[j - 1]);
  out.ell = out.theta * ell[j - 1] + (1 - out.theta) * ell[j];
  if (d.L == 0 || j % 2 == 1) {
    out.certificate_shape = pts[j - 1];
    out.certificate_shape.skew = Skew::Right;
    out.certificate_shape.skew_exponent =
        (1 - out.theta) / static_cast<double>(pts[j - 1].C + 1);
  } else {
    out.certificate_shape = pts[j];
    out.certificate_shape.skew = Skew::Left;
    out.certificate_shape.skew_exponent = out.theta / static_cast<double>(pts[j].C + 1);
  }
  if (p > 1 && verify_lcr_conditions(out.certificate_shape, p).all_satisfied()) {
    try {
      out.ell = construct_dual<double>(out.certificate_shape, p).objective(lambda);
      out.source = EllSource::SkewedDual;
      return out;
    } catch (const Error&) {
    }
  }
  out.interpolated = out.ell;
  out.ell = solve(build_model<double>(t, p, std::min(lambda, 1 + 1 / p))).ell;
  out.source = EllSource::Lp;
  return out;
}

template double nice_range_limit(const LcrParams&, const double&);
template Rational nice_range_limit(const LcrParams&, const Rational&);
template double closed_form_exponent(const LcrParams&, const double&, const double&);
template Rational closed_form_exponent(const LcrParams&, const Rational&, const Rational&);
template double low_p_coefficient(std::size_t, const double&);
template Rational low_p_coefficient(std::size_t, const Rational&);
template double low_p_exponent(std::size_t, const double&, const double&);
template Rational low_p_exponent(std::size_t, const Rational&, const Rational&);

}  // namespace spanorm
