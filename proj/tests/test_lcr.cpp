#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "spanorm/error.hpp"
#include "spanorm/lb_lp.hpp"
#include "spanorm/lcr.hpp"

using namespace spanorm;

namespace {

Rational q(long a, long b = 1) { return Rational(a, b); }

double lp_ell(std::size_t t, double p, double lambda) { return solve(build_model<double>(t, p, lambda)).ell; }

long diff(std::size_t a, std::size_t b) { return std::labs(static_cast<long>(a) - static_cast<long>(b)); }

}  // namespace

TEST_CASE("derived shapes") {
  const auto a = derive_lcr(1.3, 4);
  CHECK(a.params == LcrParams{2, 0, 2});
  CHECK(a.branch == LcrBranch::LowestP);
  const auto b = derive_lcr(2, 5);
  CHECK(b.params == LcrParams{2, 1, 2});
  CHECK(b.branch == LcrBranch::LowestP);
  const auto c = derive_lcr(10, 3);
  CHECK(c.params == LcrParams{0, 1, 2});
  // (10/9)^3 lies in [1 * 10/9, 2 * (10/9)^2)
  const double qq = 10.0 / 9.0;
  CHECK(std::pow(qq, 3) >= qq);
  CHECK(std::pow(qq, 3) < 2 * qq * qq);
  for (double p : {1.2, 2.0, 3.0, 10.0})
    for (std::size_t t = 2; t <= 9; ++t) CHECK(derive_lcr(p, t).params.t() == t);
  CHECK_THROWS_AS(derive_lcr(2, 1), Error);
}

TEST_CASE("shapes move by at most one per component") {
  for (std::size_t t = 2; t <= 8; ++t) {
    LcrParams prev = derive_lcr(1.0, t).params;
    for (double p = 1.0; p <= 30.0; p += 0.005) {
      const auto cur = derive_lcr(p, t).params;
      CHECK(diff(cur.L, prev.L) <= 1);
      CHECK(diff(cur.C, prev.C) <= 1);
      CHECK(diff(cur.R, prev.R) <= 1);
      prev = cur;
    }
  }
}

TEST_CASE("centre size stays within p - 2 and p under the general conditions") {
  std::size_t checked = 0;
  for (std::size_t t = 2; t <= 8; ++t)
    for (double p = 1.0; p <= 30.0; p += 0.01) {
      const auto s = derive_lcr(p, t).params;
      const auto rep = verify_lcr_conditions(s, p);
      if (rep.regime != Applicability::General || !rep.all_satisfied()) continue;
      const double c = static_cast<double>(s.C);
      CHECK(p - 2 <= c + 1e-12);
      CHECK(c <= p + 1e-12);
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("condition examples") {
  const auto g = verify_lcr_conditions({1, 1, 1}, 2.0);
  CHECK(g.regime == Applicability::General);
  CHECK(g.all_satisfied());
  const auto* a = g.find("a_central_nonneg");
  REQUIRE(a);
  CHECK(a->lhs == 1.0);
  CHECK(a->rhs == 4.0);
  const auto* lo = g.find("center_lower");
  const auto* hi = g.find("center_upper");
  REQUIRE(lo);
  REQUIRE(hi);
  CHECK(lo->lhs == 0.0);
  CHECK(hi->rhs == 2.0);

  CHECK(verify_lcr_conditions({2, 0, 2}, 1.5).regime == Applicability::None);
  CHECK(verify_lcr_conditions({1, 1, 1}, 1.0).regime == Applicability::None);

  const auto h = verify_lcr_conditions({0, 1, 2}, 10.0);
  CHECK(h.regime == Applicability::HighP);
  CHECK(h.all_satisfied());
  const auto* b = h.find("b_central_nonneg");
  REQUIRE(b);
  CHECK(b->rhs == doctest::Approx(100.0 / 81.0));
  const auto* d = h.find("D_right_nonneg");
  REQUIRE(d);
  CHECK(d->lhs == doctest::Approx(10.0 / 9.0));
  CHECK(d->rhs == 2.0);

  LcrParams skew{1, 1, 1};
  skew.skew = Skew::Right;
  CHECK(regime_of(skew) == Applicability::RightSkew);
  skew.L = 0;
  CHECK(regime_of(skew) == Applicability::RightSkewHighP);
  skew.skew = Skew::Left;
  CHECK(regime_of(skew) == Applicability::LeftSkew);
}

TEST_CASE("closed forms") {
  CHECK(closed_form_exponent<Rational>({1, 1, 1}, q(2), q(1)) == q(1, 2));
  CHECK(closed_form_exponent<double>({1, 1, 1}, 2.0, 1.0) == doctest::Approx(0.5));
  for (std::size_t h : {1u, 2u, 3u})
    for (double p : {1.1, 1.4, 1.6})
      for (double lam : {0.3, 0.9}) {
        const double alpha = 1 / ((p + 1) * (1 - std::pow((p - 1) / p, static_cast<double>(h))));
        CHECK(closed_form_exponent<double>({h, 0, h}, p, lam) == doctest::Approx(alpha * lam).epsilon(1e-12));
      }
  // C > 0 against the E-coefficient formula
  for (LcrParams s : {LcrParams{1, 1, 1}, LcrParams{2, 1, 2}, LcrParams{1, 2, 2}, LcrParams{0, 2, 3}})
    for (double p : {2.0, 3.0}) {
      const double C = static_cast<double>(s.C);
      const double expect = (1 + p / C) / (lp_oracle::E(s.C, s.L, p) + p * lp_oracle::E(s.C, s.R, p));
      CHECK(closed_form_exponent<double>(s, p, 0.5) == doctest::Approx(0.5 * expect).epsilon(1e-12));
      const double limit = 1 + lp_oracle::E(s.C, s.L, p) / (p * lp_oracle::E(s.C, s.R, p));
      CHECK(nice_range_limit<double>(s, p) == doctest::Approx(limit).epsilon(1e-12));
    }
  const double lim = nice_range_limit<double>({0, 1, 2}, 10.0);
  CHECK_NOTHROW(closed_form_exponent<double>({0, 1, 2}, 10.0, lim));
  try {
    closed_form_exponent<double>({0, 1, 2}, 10.0, lim + 1e-3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NiceRangeExceeded);
  }
}

TEST_CASE("low-p exponents") {
  CHECK(low_p_exponent<double>(3, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(low_p_exponent<double>(2, 1.5, 1.2) == doctest::Approx(0.72));
  CHECK(low_p_exponent<double>(3, 2.0, 0.8) == doctest::Approx(0.5));
  CHECK(low_p_exponent<Rational>(2, q(3, 2), q(6, 5)) == q(18, 25));
  CHECK(low_p_coefficient<Rational>(3, q(2)) == q(1, 2));
  CHECK(low_p_coefficient<Rational>(2, q(3, 2)) == q(3, 5));
}

TEST_CASE("closed form agrees with the LP where it applies") {
  for (double p : {1.1, 1.3, kGoldenRatio, 1.8, 2.0, 2.5, 3.0, 5.0, 10.0})
    for (std::size_t t = 2; t <= 8; ++t) {
      const auto s = derive_lcr(p, t).params;
      const double top = std::min(nice_range_limit<double>(s, p), 1 + 1 / p);
      const bool conditions = s.C == 0 || verify_lcr_conditions(s, p).all_satisfied();
      if (!conditions) continue;
      for (int k = 1; k <= 10; ++k) {
        const double lam = top * k / 10.0;
        CHECK(std::abs(closed_form_exponent<double>(s, p, lam) - lp_ell(t, p, lam)) <= 1e-7);
      }
    }
}

TEST_CASE("extremal shape follows the LP over the whole range") {
  for (double p : {1.3, 2.0, 3.0, 5.0, 10.0})
    for (std::size_t t = 2; t <= 7; ++t)
      for (int k = 1; k <= 20; ++k) {
        const double lam = (1 + 1 / p) * k / 20.0;
        const auto sh = extremal_shape(t, p, lam);
        CHECK(std::abs(sh.ell - lp_ell(t, p, lam)) <= 1e-7);
        if (sh.nice) CHECK(sh.source == EllSource::ClosedForm);
        CHECK(sh.derived == derive_lcr(p, t).params);
        CHECK(sh.theta >= -1e-12);
        CHECK(sh.theta <= 1 + 1e-12);
      }
}
