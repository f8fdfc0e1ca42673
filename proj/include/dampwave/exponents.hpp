#pragma once

#include <limits>
#include <string>

namespace dampwave {

/// Problem parameters: space dimension N, source power p, weight order lambda.
struct ProblemParams {
  int dim = 1;
  double p = 2.0;
  double lambda = 1.0;

  /// Throws std::invalid_argument unless dim >= 1, p > 1 and lambda > 0.
  void validate() const;
};

/// Open lower bound (Fujita exponent) and closed upper bound of the range of p
/// for which small-data global existence holds. The upper bound is +infinity
/// for dim <= 2.
struct AdmissibleRange {
  double lower_open = 1.0;
  double upper_closed = std::numeric_limits<double>::infinity();

  bool contains(double p) const { return p > lower_open && p <= upper_closed; }
  bool upper_is_infinite() const { return upper_closed == std::numeric_limits<double>::infinity(); }
};

/// Every scalar exponent that enters the weighted nonlinear estimates.
///
/// The three `budget_*` members are the decay exponents whose sign decides
/// whether the corresponding time integral stays bounded:
///   budget_weighted  < 0   weighted L^{p+1} term of the energy estimate
///   budget_lp        < -1  (1+t)-rate of ||u||_{L^p}^p, the L^1 source norm
///   budget_l2p       < -1  (1+t)^{N/4}-weighted rate of ||u||_{L^{2p}}^p
struct ExponentSet {
  double p_fujita = 0.0;
  double p_max = 0.0;
  double q = 0.0;
  double lambda_min = 0.0;
  double theta_gn = 0.0;        // ||u||_{p+1} <= ||grad u||_2^theta ||u||_2^{1-theta}
  double Theta_weighted = 0.0;  // weighted L^{p+1} interpolation exponent
  double mu = 0.0;              // ||u||_q <= ||grad u||_2^mu ||u||_2^{1-mu}
  double theta_lp = 0.0;        // L^p interpolation; weighted form for p < 2, GN form for p >= 2
  double theta_l2p = 0.0;       // ||u||_{2p} <= ||grad u||_2^theta ||u||_2^{1-theta}
  double budget_weighted = 0.0;
  double budget_lp = 0.0;
  double budget_l2p = 0.0;
};

double fujita_exponent(int dim);

AdmissibleRange admissible_range(int dim);

/// Lower bound for the weight order lambda. Valid weight orders are strictly
/// greater than the returned value. Rejects p outside the admissible range
/// (including p equal to the Fujita exponent).
double lambda_threshold(int dim, double p);

/// A concrete valid lambda: threshold * (1 + delta).
double suggested_lambda(int dim, double p, double delta = 0.1);

/// Interpolation exponents and decay budgets. Requires lambda above the
/// threshold; throws std::domain_error if any exponent leaves [0, 1] or a
/// budget has the wrong sign.
ExponentSet interpolation_exponents(const ProblemParams& params);

/// Same computation without the range and sign checks. Useful for reporting
/// parameters outside the global-existence hypotheses.
ExponentSet interpolation_exponents_unchecked(const ProblemParams& params);

/// Parameters of the weighted interpolation inequality
///   || |x|^gamma u ||_r <= C || |x|^alpha grad u ||_p^a || |x|^beta u ||_q^{1-a},
/// with gamma = a sigma + (1 - a) beta.
struct CknParams {
  int dim = 1;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
  double a = 0.0;

  double gamma() const { return a * sigma + (1.0 - a) * beta; }

  /// Throws std::invalid_argument when the standing hypotheses fail
  /// (p, q >= 1, r > 0, 0 <= a <= 1, positive scaling indices).
  void validate() const;
};

enum class CknCondition { none, dimensional_balance, alpha_minus_sigma_nonnegative, alpha_minus_sigma_at_most_one };

struct CknVerdict {
  bool admissible = false;
  CknCondition failed = CknCondition::none;
  std::string reason;
  /// (1/r + gamma/N) - [a(1/p + (alpha-1)/N) + (1-a)(1/q + beta/N)]
  double balance_residual = 0.0;
};

inline constexpr double kBalanceTolerance = 1e-12;

/// Necessary-and-sufficient conditions for the weighted interpolation
/// inequality. Invalid parameters throw; inadmissible ones return a verdict.
CknVerdict ckn_admissible(const CknParams& c);

const char* to_string(CknCondition c);

/// Instantiation used for ||u||_{L^{p+1}} <= ||grad u||_2^theta ||u||_2^{1-theta}.
CknParams gn_lpp1_params(const ProblemParams& params);

/// Instantiation used for
///   || |x|^{2 lambda/(p+1)} u ||_{p+1} <= || |x|^lambda grad u ||_2^Theta ||u||_q^{1-Theta},
/// with sigma solved from gamma = Theta sigma.
CknParams weighted_lpp1_params(const ProblemParams& params);

}  // namespace dampwave
