#include <algorithm>
#include <functional>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "spanorm/certificate.hpp"
#include "spanorm/error.hpp"

using namespace spanorm;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

template <class T>
lp_oracle::Dual<T> as_oracle(const DualCertificate<T>& c) {
  return {c.x, c.y, c.w, c.s, c.a, c.b, c.D};
}

template <class T>
CertificateCheck<T> check_at(const LcrParams& s, const T& p, const T& lambda, const DualCertificate<T>& c) {
  const auto m = build_model<T>(s.t(), p, lambda);
  const auto sol = solve(m);
  return verify_certificate(m, sol.primal, c);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("general dual at (1,1,1), p = 2") {
  const LcrParams s{1, 1, 1};
  const auto c = construct_dual<Rational>(s, q(2));
  const auto e = c.eps;
  CHECK(e > 0);
  CHECK(c.x == 3 * e);
  CHECK(c.b[0] == 3 * e);
  CHECK(c.a[1] == 3 * e);
  CHECK(c.D[2] == 3 * e);
  CHECK(c.regime == Applicability::General);
  Rational ab = 0;
  for (std::size_t i = 0; i < 3; ++i) ab += c.a[i] + c.b[i];
  CHECK(ab == 1);
  CHECK(lp_oracle::dual_violation<Rational>(3, q(2), as_oracle(c)) == 0);
  for (const auto& lam : {q(1, 2), q(1), q(3, 2)}) {
    const auto r = check_at(s, q(2), lam, c);
    CHECK(r.ok);
    CHECK(r.dual_objective == closed_form_exponent(s, q(2), lam));
  }
  const auto d = construct_dual<double>(s, 2.0);
  CHECK(check_at(s, 2.0, 1.0, d).ok);
}

TEST_CASE("high-p dual at (0,1,2), p = 10") {
  const LcrParams s{0, 1, 2};
  const auto c = construct_dual<Rational>(s, q(10));
  CHECK(c.regime == Applicability::HighP);
  CHECK(c.s >= 0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(c.a[i] >= 0);
    CHECK(c.b[i] >= 0);
    CHECK(c.D[i] >= 0);
  }
  CHECK(lp_oracle::dual_violation<Rational>(3, q(10), as_oracle(c)) == 0);
  CHECK(check_at(s, q(10), q(1), c).ok);
}

TEST_CASE("broken certificates are rejected") {
  const LcrParams s{1, 1, 1};
  const auto good = construct_dual<double>(s, 2.0);

  DualCertificate<double> zero = good;
  zero.x = zero.y = zero.w = zero.s = 0;
  for (auto* v : {&zero.a, &zero.b, &zero.D}) std::fill(v->begin(), v->end(), 0.0);
  const auto z = check_at(s, 2.0, 1.0, zero);
  CHECK_FALSE(z.ok);
  CHECK_FALSE(z.objective_match);

  for (std::size_t i = 0; i < 3; ++i) {
    auto bumped = good;
    bumped.a[i] += 1e-3;
    const auto r = check_at(s, 2.0, 1.0, bumped);
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.violations.empty());
    bool named = false;
    for (const auto& v : r.violations)
      named = named || v.find("left_norm") != std::string::npos || v.find("ell") != std::string::npos;
    CHECK(named);
  }
}

TEST_CASE("construction errors") {
  CHECK(code_of([] { construct_dual<Rational>({1, 1, 1}, q(1)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { construct_dual<Rational>({0, 1, 6}, q(2)); }) == ErrorCode::NegativeComponent);
  try {
    construct_dual<double>({0, 1, 6}, 2.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("negative") != std::string::npos);
  }
}

TEST_CASE("extracted duals verify") {
  for (std::size_t t = 2; t <= 6; ++t)
    for (const auto& p : {q(11, 10), q(3, 2), q(2), q(3), q(10)})
      for (const Rational& lam : {q(1, 3), q(1), Rational(q(1) + q(1) / p)}) {
        const auto m = build_model<Rational>(t, p, lam);
        const auto sol = solve_exact(m);
        const auto c = extract_dual(m, sol);
        CHECK(verify_certificate(m, sol.primal, c).ok);
        CHECK(c.row_vector(m) == sol.duals);
      }
}

TEST_CASE("derived shapes with passing conditions certify") {
  std::size_t certified = 0;
  for (double p : {1.1, 1.3, kGoldenRatio, 1.8, 2.0, 2.5, 3.0, 5.0, 10.0})
    for (std::size_t t = 2; t <= 8; ++t) {
      const auto shape = derive_lcr(p, t).params;
      if (!verify_lcr_conditions(shape, p).all_satisfied() || regime_of(shape) == Applicability::None) continue;
      const auto c = construct_dual<double>(shape, p);
      CHECK(lp_oracle::dual_violation<double>(t, p, as_oracle(c)) <= 1e-9);
      const double top = nice_range_limit(shape, p);
      for (double f : {0.25, 0.5, 1.0}) {
        const double lam = std::min(top * f, 1 + 1 / p);
        const auto r = check_at(shape, p, lam, c);
        CHECK(r.ok);
        ++certified;
      }
    }
  CHECK(certified > 0);
}
