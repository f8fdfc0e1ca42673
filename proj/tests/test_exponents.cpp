#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dampwave/exponents.hpp"

using namespace dampwave;

TEST_SUITE("exponents") {

TEST_CASE("fujita exponent") {
  CHECK(fujita_exponent(1) == 3.0);
  CHECK(fujita_exponent(2) == 2.0);
  CHECK(fujita_exponent(4) == 1.5);
  CHECK_THROWS_AS(fujita_exponent(0), std::invalid_argument);
  for (int n = 1; n < 50; ++n) CHECK(fujita_exponent(n + 1) < fujita_exponent(n));
  CHECK(fujita_exponent(1000000) - 1.0 < 1e-5);
}

TEST_CASE("admissible range") {
  const auto r2 = admissible_range(2);
  CHECK(r2.lower_open == 2.0);
  CHECK(r2.upper_is_infinite());
  CHECK(std::isinf(r2.upper_closed));

  const auto r3 = admissible_range(3);
  CHECK(r3.lower_open == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(r3.upper_closed == 3.0);
  CHECK(r3.contains(3.0));
  CHECK_FALSE(r3.contains(3.0 + 1e-12));
  CHECK_FALSE(r3.contains(r3.lower_open));

  const auto r1 = admissible_range(1);
  CHECK(r1.lower_open == 3.0);
  CHECK(r1.upper_is_infinite());
  CHECK_THROWS_AS(admissible_range(-1), std::invalid_argument);
}

TEST_CASE("lambda threshold examples") {
  CHECK(lambda_threshold(1, 4.0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(lambda_threshold(2, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(lambda_threshold(1, 3.0), std::domain_error);
  CHECK_THROWS_AS(lambda_threshold(1, 2.0), std::domain_error);
  CHECK_THROWS_AS(lambda_threshold(3, 3.5), std::domain_error);
  CHECK_NOTHROW(lambda_threshold(3, 3.0));
  CHECK(suggested_lambda(1, 4.0) == doctest::Approx(1.925));
  CHECK(suggested_lambda(1, 4.0, 0.5) == doctest::Approx(2.625));
}

// Brute-force oracle: scan lambda upward and find where every sign
// condition of the estimates first holds. The closed-form threshold must
// not lie below any of these switch points.
TEST_CASE("threshold dominates every sign condition") {
  struct Case {
    int dim;
    double p;
  };
  for (const Case c : {Case{1, 3.2}, Case{1, 4.0}, Case{1, 7.0}, Case{2, 2.3}, Case{2, 3.0}, Case{2, 5.0},
                       Case{3, 1.7}, Case{3, 1.9}, Case{3, 2.4}, Case{3, 3.0}}) {
    CAPTURE(c.dim);
    CAPTURE(c.p);
    const double threshold = lambda_threshold(c.dim, c.p);
    const double n = c.dim, p = c.p;
    const double q = std::max(2.0, n * (p - 1.0) / 2.0);
    for (double lam = threshold + 1e-6; lam < threshold + 20.0; lam += 0.01) {
      const double mu = n * (0.5 - 1.0 / q);
      const double big = (1.0 / (p + 1.0) + 2.0 * lam / (n * (p + 1.0)) - 1.0 / q) / (0.5 - 1.0 / q + (lam - 1.0) / n);
      const double weighted = lam * ((p + 1.0) * big / 2.0 - 1.0) - (n / 4.0 + mu / 2.0) * (1.0 - big) * (p + 1.0);
      REQUIRE(big >= 0.0);
      REQUIRE(big <= 1.0);
      REQUIRE(weighted < 0.0);
      if (p < 2.0) {
        const double th = n * (2.0 - p) / (2.0 * p * (lam - 1.0));
        REQUIRE(th < 1.0);
        REQUIRE(lam * p * th / 2.0 - n * p * (1.0 - th) / 4.0 < -1.0);
      }
    }
  }
}

TEST_CASE("threshold terms switch where the closed forms say") {
  // For dim 3, p < 2 the weighted L^p exponent reaches 1 exactly at the
  // third term of the threshold.
  const double n = 3.0, p = 1.8;
  const double term = (2.0 * n - (n - 2.0) * p) / (2.0 * p);
  const double theta = n * (2.0 - p) / (2.0 * p * (term - 1.0));
  CHECK(theta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambda_threshold(3, p) >= term);
}

TEST_CASE("interpolation exponents at (1, 4, 2)") {
  const ExponentSet e = interpolation_exponents({1, 4.0, 2.0});
  CHECK(e.p_fujita == 3.0);
  CHECK(std::isinf(e.p_max));
  CHECK(e.q == 2.0);
  CHECK(e.lambda_min == doctest::Approx(1.75));
  CHECK(e.theta_gn == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(e.mu == 0.0);
  CHECK(e.Theta_weighted == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.theta_lp == doctest::Approx(0.25));
  CHECK(e.theta_l2p == doctest::Approx(0.375));
  CHECK(e.budget_weighted == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(e.budget_lp == doctest::Approx(-1.5));
  CHECK(e.budget_l2p == doctest::Approx(-1.5));
}

TEST_CASE("q equal to 2 forces mu = 0") {
  const ExponentSet e = interpolation_exponents({2, 3.0, 1.5});
  CHECK(e.q == 2.0);
  CHECK(e.mu == 0.0);
}

TEST_CASE("interpolation exponents reject lambda at or below the threshold") {
  CHECK_THROWS_AS(interpolation_exponents({1, 4.0, 1.75}), std::domain_error);
  CHECK_THROWS_AS(interpolation_exponents({1, 2.0, 3.0}), std::domain_error);
  CHECK_NOTHROW(interpolation_exponents_unchecked({1, 2.0, 3.0}));
  CHECK_THROWS_AS(interpolation_exponents_unchecked({1, 1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(interpolation_exponents_unchecked({0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(interpolation_exponents_unchecked({1, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("all exponents in [0, 1] just above the threshold") {
  for (int dim = 1; dim <= 6; ++dim) {
    const AdmissibleRange range = admissible_range(dim);
    const double hi = range.upper_is_infinite() ? range.lower_open + 8.0 : range.upper_closed;
    for (int k = 1; k <= 40; ++k) {
      const double p = range.lower_open + (hi - range.lower_open) * k / 40.0;
      CAPTURE(dim);
      CAPTURE(p);
      const ProblemParams params{dim, p, lambda_threshold(dim, p) + 0.1};
      ExponentSet e;
      REQUIRE_NOTHROW(e = interpolation_exponents(params));
      for (double v : {e.theta_gn, e.Theta_weighted, e.theta_lp, e.theta_l2p}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(e.budget_weighted < 0.0);
      CHECK(e.budget_lp < -1.0);
      CHECK(e.budget_l2p < -1.0);
    }
  }
}

TEST_CASE("theta_l2p reaches 1 exactly at the upper end of the range") {
  for (int dim = 3; dim <= 6; ++dim) {
    const double pmax = dim / (dim - 2.0);
    CHECK(interpolation_exponents_unchecked({dim, pmax, 5.0}).theta_l2p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(interpolation_exponents_unchecked({dim, pmax * 0.99, 5.0}).theta_l2p < 1.0);
    CHECK(interpolation_exponents_unchecked({dim, pmax * 1.01, 5.0}).theta_l2p > 1.0);
  }
  // theta_gn = 1 at p = (N+2)/(N-2), outside the range; the checker refuses.
  const double p = 5.0;
  CHECK(interpolation_exponents_unchecked({3, p, 5.0}).theta_gn == doctest::Approx(1.0));
  CHECK_THROWS(interpolation_exponents({3, p, 5.0}));
}

TEST_CASE("CKN admissibility: Gagliardo-Nirenberg case") {
  const CknParams gn{1, 2.0, 2.0, 3.0, 0.0, 0.0, 0.0, 1.0 / 6.0};
  const CknVerdict v = ckn_admissible(gn);
  CHECK(v.admissible);
  CHECK(v.failed == CknCondition::none);
  CHECK(std::abs(v.balance_residual) < 1e-15);
}

TEST_CASE("closed-form Theta lies on the balance line") {
  for (int dim = 1; dim <= 3; ++dim) {
    const AdmissibleRange range = admissible_range(dim);
    const double hi = range.upper_is_infinite() ? range.lower_open + 6.0 : range.upper_closed;
    for (int k = 1; k <= 12; ++k) {
      const double p = range.lower_open + (hi - range.lower_open) * k / 12.0;
      for (double extra : {0.05, 1.0, 4.0}) {
        const double lam = lambda_threshold(dim, p) + extra;
        const CknParams c = weighted_lpp1_params({dim, p, lam});
        CAPTURE(dim);
        CAPTURE(p);
        CAPTURE(lam);
        // 1/r + gamma/N = a (1/p + (alpha - 1)/N) + (1 - a)(1/q + beta/N), evaluated independently.
        const double n = dim, gamma = c.a * c.sigma + (1.0 - c.a) * c.beta;
        const double lhs = 1.0 / c.r + gamma / n;
        const double rhs = c.a * (1.0 / c.p + (c.alpha - 1.0) / n) + (1.0 - c.a) * (1.0 / c.q + c.beta / n);
        CHECK(std::abs(lhs - rhs) < 1e-12);
        CHECK(gamma * c.r == doctest::Approx(2.0 * lam).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("CKN admissibility: a = 0 checks only the balance") {
  // alpha - sigma < 0 and > 1 are both irrelevant when a = 0.
  for (double alpha : {-0.3, 0.0, 5.0}) {
    for (double sigma : {-2.0, 0.0, 7.0}) {
      const CknParams c{2, 2.0, 3.0, 3.0, alpha, 0.4, sigma, 0.0};
      CHECK(ckn_admissible(c).admissible);
    }
  }
  const CknParams off{2, 2.0, 3.0, 2.5, 0.0, 0.4, 0.0, 0.0};
  CHECK(ckn_admissible(off).failed == CknCondition::dimensional_balance);
}

TEST_CASE("CKN admissibility: each condition can fail on its own") {
  const CknParams neg{3, 2.0, 2.0, 6.0, 0.0, 0.0, 1.0, 0.5};
  CHECK(std::abs(ckn_admissible(neg).balance_residual) < 1e-15);
  CHECK(ckn_admissible(neg).failed == CknCondition::alpha_minus_sigma_nonnegative);

  const CknParams big{3, 2.0, 2.0, 1.2, 2.0, 0.0, 0.0, 1.0};
  CHECK(ckn_admissible(big).failed == CknCondition::alpha_minus_sigma_at_most_one);
  CHECK_FALSE(std::string(ckn_admissible(big).reason).empty());

  // Moving r off the balance line flips only the balance condition.
  CknParams shifted{1, 2.0, 2.0, 3.0, 0.0, 0.0, 0.0, 1.0 / 6.0};
  shifted.r = 3.1;
  CHECK(ckn_admissible(shifted).failed == CknCondition::dimensional_balance);
}

TEST_CASE("CKN parameters outside the standing hypotheses throw") {
  CHECK_THROWS_AS(ckn_admissible({1, 0.5, 2.0, 3.0, 0.0, 0.0, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ckn_admissible({1, 2.0, 2.0, 3.0, 0.0, 0.0, 0.0, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(ckn_admissible({1, 2.0, 2.0, -1.0, 0.0, 0.0, 0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(ckn_admissible({1, 2.0, 2.0, 3.0, -0.6, 0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("weighted L^{p+1} instantiation satisfies the balance") {
  const CknParams c = weighted_lpp1_params({1, 4.0, 2.0});
  CHECK(c.p == 2.0);
  CHECK(c.q == 2.0);
  CHECK(c.r == 5.0);
  CHECK(c.alpha == 2.0);
  CHECK(c.beta == 0.0);
  CHECK(c.a == doctest::Approx(0.5));
  CHECK(c.gamma() == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(c.sigma == doctest::Approx(1.6).epsilon(1e-15));
  const CknVerdict v = ckn_admissible(c);
  CHECK(v.admissible);
  CHECK(std::abs(v.balance_residual) < 1e-14);

  for (const ProblemParams params : {ProblemParams{2, 3.0, 1.5}, ProblemParams{3, 2.5, 3.0}, ProblemParams{1, 6.0, 4.0}}) {
    CAPTURE(params.dim);
    const CknVerdict w = ckn_admissible(weighted_lpp1_params(params));
    CHECK(std::abs(w.balance_residual) < 1e-12);
  }
  const CknParams g = gn_lpp1_params({1, 4.0, 2.0});
  CHECK(g.r == 5.0);
  CHECK(g.a == doctest::Approx(0.3));
  CHECK(ckn_admissible(g).admissible);
}

}  // TEST_SUITE
