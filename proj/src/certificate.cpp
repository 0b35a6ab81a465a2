#include "spanorm/certificate.hpp"

#include <cmath>
#include <type_traits>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

template <class T>
T ipow(const T& q, long k) {
  T r(1);
  T base = k < 0 ? T(1) / q : q;
  for (long i = 0; i < std::labs(k); ++i) r *= base;
  return r;
}

template <class T>
T tol() {
  if constexpr (std::is_same_v<T, Rational>) return T(0);
  else return T(1e-9);
}

template <class T>
double as_double(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return v.get_d();
  else return v;
}

template <class T>
T abs_val(const T& v) { return v < T(0) ? T(-v) : v; }

std::string at(const char* base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

template <class T>
struct Raw {
  T x{}, y{}, w{}, s{};
  std::vector<T> a, b, D;  // 1-based, slot 0 unused
};

template <class T>
Raw<T> general(long L, long C, long R, const T& p) {
  const long t = L + C + R;
  const T q = p / (p - T(1));
  const T pm1 = p - T(1);
  const T cp = T(C) + p;
  Raw<T> r;
  r.a.assign(t + 1, T(0)); r.b = r.a; r.D = r.a;
  r.x = T(1) + p * ipow(q, L - R);
  for (long i = L + 1; i <= L + C; ++i) r.a[i] = (T(1) + T(i - L) / pm1) * r.x - cp / pm1;
  for (long i = L + C + 1; i <= t; ++i) r.a[i] = cp * ipow(q, i - R - C);
  for (long i = 1; i <= L; ++i) r.b[i] = cp / pm1 * ipow(q, L - i);
  for (long i = std::max(L, 1L); i <= L + C; ++i) r.b[i] = cp / pm1 - T(i - L) / pm1 * r.x;
  for (long i = L + C + 1; i <= t; ++i) r.D[i] = cp * ipow(q, i - R - C) - r.x;
  r.y = cp * ipow(q, L);
  r.w = r.y - r.x;
  return r;
}

template <class T>
Raw<T> high_p(long C, long R, const T& p) {
  const long t = C + R;
  const T q = p / (p - T(1));
  const T pm1 = p - T(1);
  const T cp = T(C) + p;
  const T qr = ipow(q, R - 1);
  Raw<T> r;
  r.a.assign(t + 1, T(0)); r.b = r.a; r.D = r.a;
  r.x = pm1 + qr;
  for (long i = 1; i <= C; ++i) r.a[i] = T(i) + pm1 + T(i - C - 1) / pm1 * qr;
  for (long i = C + 1; i <= t; ++i) r.a[i] = cp * ipow(q, i - C - 1);
  for (long i = 1; i <= C; ++i) r.b[i] = (cp - T(i)) / pm1 * qr - T(i);
  for (long i = C + 1; i <= t; ++i) r.D[i] = cp * ipow(q, i - C - 1) - r.x;
  r.y = cp * qr;
  r.w = r.y - r.x;
  return r;
}

template <class T>
Raw<T> left_skew(long L, long C, long R, const T& p) {
  const long t = L + C + R;
  const T q = p / (p - T(1));
  const T pm1 = p - T(1);
  Raw<T> r;
  r.a.assign(t + 1, T(0)); r.b = r.a; r.D = r.a;
  r.x = T(1);
  for (long i = L + 1; i <= L + C; ++i) r.a[i] = T(i - L) / pm1;
  for (long i = L + C + 1; i <= t; ++i) r.a[i] = T(C + 1) / pm1 * ipow(q, i - (L + C + 1));
  for (long i = 1; i <= L; ++i) r.b[i] = ipow(q, L - i);
  for (long i = std::max(L, 1L); i <= L + C; ++i) r.b[i] = T(1) - T(i - L) / pm1;
  for (long i = L + C + 1; i <= t; ++i) r.D[i] = T(C + 1) / pm1 * ipow(q, i - (L + C + 1)) - T(1);
  r.y = p * ipow(q, L - 1);
  r.w = r.y - r.x;
  r.s = r.y - T(C + 1) / pm1 * ipow(q, R - 1);
  return r;
}

template <class T>
Raw<T> right_skew(long L, long C, long R, const T& p) {
  const long t = L + C + R;
  const T q = p / (p - T(1));
  const T pm1 = p - T(1);
  Raw<T> r;
  r.a.assign(t + 1, T(0)); r.b = r.a; r.D = r.a;
  r.x = T(1);
  for (long i = L + 1; i <= L + C; ++i) r.a[i] = T(1) - T(L + C + 1 - i) / pm1;
  for (long i = L + C + 1; i <= t; ++i) r.a[i] = ipow(q, i - (L + C + 1));
  for (long i = 1; i <= L; ++i) r.b[i] = T(C + 1) / pm1 * ipow(q, L - i);
  for (long i = std::max(L, 1L); i <= L + C; ++i) r.b[i] = T(L + C + 1 - i) / pm1;
  for (long i = L + C + 2; i <= t; ++i) r.D[i] = ipow(q, i - (L + C + 1)) - T(1);
  r.y = T(C + 1) * ipow(q, L);
  r.w = r.y - r.x;
  r.s = r.y - ipow(q, R - 1);
  return r;
}

}  // namespace

template <class T>
std::vector<T> DualCertificate<T>::row_vector(const LbLpModel<T>& model) const {
  require(model.form == LpForm::Relaxed, "certificates pair with the relaxed model");
  require(model.t == t, "certificate and model disagree on t");
  std::vector<T> u(model.lp.num_rows(), T(0));
  auto put = [&](const std::string& name, const T& v) {
    auto r = model.lp.find_row(name);
    require(r.has_value(), "model has no row " + name);
    u[*r] = v;
  };
  put("spanning", x);
  for (std::size_t i = 1; i <= t; ++i) {
    put(at("left_norm", i), a[i - 1]);
    put(at("right_norm", i), b[i - 1]);
    put(at("right_degree", i), D[i - 1]);
  }
  put("density", y);
  put("final_layer", w);
  put("size", s);
  return u;
}

template <class T>
DualCertificate<T> construct_dual(const LcrParams& params, const T& p) {
  if (!(p > T(1))) fail(ErrorCode::InvalidArgument, "no closed-form dual at p = 1");
  const long L = static_cast<long>(params.L), C = static_cast<long>(params.C),
             R = static_cast<long>(params.R);
  require(params.t() >= 1, "empty shape");
  DualCertificate<T> cert;
  cert.t = params.t();
  cert.shape = params;
  cert.regime = regime_of(params);
  Raw<T> raw;
  switch (params.skew) {
    case Skew::None:
      if (L > 0 || C == 0) {
        require(L > 0, "C = 0 needs L > 0");
        raw = general(L, C, R, p);
        if (C == 0) cert.regime = Applicability::General;
      } else {
        raw = high_p(C, R, p);
      }
      break;
    case Skew::Left:
      require(L > 0, "left-skewed dual needs L > 0");
      raw = left_skew(L, C, R, p);
      break;
    case Skew::Right:
      raw = right_skew(L, C, R, p);
      break;
  }
  T total(0);
  for (long i = 1; i <= L + C + R; ++i) total += raw.a[i] + raw.b[i];
  require(total > T(0), "degenerate dual scale");
  cert.eps = T(1) / total;

  auto scaled = [&](const T& v, const std::string& name) {
    T r = v * cert.eps;
    if (r < T(0)) {
      if constexpr (std::is_same_v<T, Rational>) {
        fail(ErrorCode::NegativeComponent, name + " = " + to_string(r) + " is negative");
      } else {
        if (r < -1e-12) fail(ErrorCode::NegativeComponent, name + " = " + std::to_string(r) + " is negative");
        r = 0;
      }
    }
    return r;
  };
  cert.x = scaled(raw.x, "x");
  for (long i = 1; i <= L + C + R; ++i) {
    cert.a.push_back(scaled(raw.a[i], at("a", i)));
    cert.b.push_back(scaled(raw.b[i], at("b", i)));
    cert.D.push_back(scaled(raw.D[i], at("D", i)));
  }
  cert.y = scaled(raw.y, "y");
  cert.w = scaled(raw.w, "w");
  cert.s = scaled(raw.s, "s");
  return cert;
}

template <class T>
DualCertificate<T> extract_dual(const LbLpModel<T>& model, const LbSolution<T>& sol) {
  require(model.form == LpForm::Relaxed, "certificates pair with the relaxed model");
  require(sol.duals.size() == model.lp.num_rows(), "dual vector size mismatch");
  DualCertificate<T> cert;
  cert.t = model.t;
  auto get = [&](const std::string& name) { return sol.duals[*model.lp.find_row(name)]; };
  cert.x = get("spanning");
  for (std::size_t i = 1; i <= model.t; ++i) {
    cert.a.push_back(get(at("left_norm", i)));
    cert.b.push_back(get(at("right_norm", i)));
    cert.D.push_back(get(at("right_degree", i)));
  }
  cert.y = get("density");
  cert.w = get("final_layer");
  cert.s = get("size");
  return cert;
}

template <class T>
CertificateCheck<T> verify_certificate(const LbLpModel<T>& model, const std::vector<T>& primal,
                                       const DualCertificate<T>& cert) {
  const auto& lp = model.lp;
  require(primal.size() == lp.num_variables(), "primal vector size mismatch");
  CertificateCheck<T> out;
  const std::vector<T> u = cert.row_vector(model);
  const T eps = tol<T>();

  out.nonnegative = true;
  for (std::size_t r = 0; r < u.size(); ++r)
    if (u[r] < -eps) {
      out.nonnegative = false;
      out.violations.push_back("negative dual on " + lp.rows[r].name);
    }

  // min c.x s.t. A x >= b, x >= 0: dual feasible iff A^T u <= c.
  std::vector<T> reduced = lp.cost;
  std::vector<T> slack(lp.num_rows(), T(0));
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    const auto& row = lp.rows[r];
    require(row.sense == Sense::GreaterEq, "relaxed model rows are all >=");
    T act(0);
    for (const auto& [j, c] : row.terms) {
      reduced[j] -= u[r] * c;
      act += c * primal[j];
    }
    slack[r] = act - row.rhs;
  }
  out.dual_feasible = true;
  for (std::size_t j = 0; j < reduced.size(); ++j)
    if (reduced[j] < -eps) {
      out.dual_feasible = false;
      out.violations.push_back("dual constraint for " + lp.variables[j] + " violated by " +
                               std::to_string(as_double(T(-reduced[j]))));
    }

  out.slackness = true;
  for (std::size_t r = 0; r < u.size(); ++r)
    if (abs_val(T(u[r] * slack[r])) > eps) {
      out.slackness = false;
      out.violations.push_back("slackness broken on " + lp.rows[r].name);
    }
  for (std::size_t j = 0; j < reduced.size(); ++j)
    if (abs_val(T(reduced[j] * primal[j])) > eps) {
      out.slackness = false;
      out.violations.push_back("slackness broken on variable " + lp.variables[j]);
    }

  out.primal_objective = T(0);
  for (std::size_t j = 0; j < primal.size(); ++j) out.primal_objective += lp.cost[j] * primal[j];
  out.dual_objective = T(0);
  for (std::size_t r = 0; r < u.size(); ++r) out.dual_objective += lp.rows[r].rhs * u[r];
  out.objective_match = abs_val(T(out.primal_objective - out.dual_objective)) <= eps;
  if (!out.objective_match)
    out.violations.push_back("objective gap " +
                             std::to_string(as_double(T(out.primal_objective - out.dual_objective))));
  out.ok = out.nonnegative && out.dual_feasible && out.slackness && out.objective_match;
  return out;
}

template struct DualCertificate<double>;
template struct DualCertificate<Rational>;
template DualCertificate<double> construct_dual(const LcrParams&, const double&);
template DualCertificate<Rational> construct_dual(const LcrParams&, const Rational&);
template DualCertificate<double> extract_dual(const LbLpModel<double>&, const LbSolution<double>&);
template DualCertificate<Rational> extract_dual(const LbLpModel<Rational>&, const LbSolution<Rational>&);
template CertificateCheck<double> verify_certificate(const LbLpModel<double>&, const std::vector<double>&,
                                                     const DualCertificate<double>&);
template CertificateCheck<Rational> verify_certificate(const LbLpModel<Rational>&,
                                                       const std::vector<Rational>&,
                                                       const DualCertificate<Rational>&);

}  // namespace spanorm
