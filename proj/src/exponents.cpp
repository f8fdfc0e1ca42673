#include "dampwave/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dampwave {

namespace {

void require_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(dim));
}

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

// Endpoint values such as theta_l2p at p = N/(N-2) come out a few ulps off.
double snap_unit(double v) {
  constexpr double tol = 1e-13;
  if (std::abs(v - 1.0) <= tol) return 1.0;
  if (std::abs(v) <= tol) return 0.0;
  return v;
}

}  // namespace

void ProblemParams::validate() const {
  require_dim(dim);
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
}

double fujita_exponent(int dim) {
  require_dim(dim);
  return 1.0 + 2.0 / dim;
}

AdmissibleRange admissible_range(int dim) {
  require_dim(dim);
  AdmissibleRange range;
  range.lower_open = fujita_exponent(dim);
  if (dim >= 3) range.upper_closed = static_cast<double>(dim) / (dim - 2);
  return range;
}

double lambda_threshold(int dim, double p) {
  const AdmissibleRange range = admissible_range(dim);
  if (!range.contains(p)) {
    std::ostringstream msg;
    msg << "p = " << p << " outside the admissible range (" << range.lower_open << ", " << range.upper_closed
        << "] for dim " << dim;
    throw std::domain_error(msg.str());
  }
  const double n = dim;
  const double pf = range.lower_open;
  const double q = std::max(2.0, n * (p - 1.0) / 2.0);

  const double base = std::max(1.0, n / 2.0);
  const double t1 = (2.0 * n - (n - 2.0) * p) / (2.0 * p);
  const double t2 = (2.0 * n - 8.0 / n - (n - 2.0) * p) / (4.0 * (p - pf));
  const double t3 = (q - 1.0) / q * (n + 2.0 - (n - 2.0) * p) / (2.0 * (p - pf));
  return std::max({base, t1, t2, t3});
}

double suggested_lambda(int dim, double p, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  return lambda_threshold(dim, p) * (1.0 + delta);
}

ExponentSet interpolation_exponents_unchecked(const ProblemParams& params) {
  params.validate();
  const double n = params.dim;
  const double p = params.p;
  const double lam = params.lambda;

  ExponentSet e;
  const AdmissibleRange range = admissible_range(params.dim);
  e.p_fujita = range.lower_open;
  e.p_max = range.upper_closed;
  e.q = std::max(2.0, n * (p - 1.0) / 2.0);
  e.lambda_min = range.contains(p) ? lambda_threshold(params.dim, p) : std::numeric_limits<double>::quiet_NaN();

  e.theta_gn = snap_unit(n * (p - 1.0) / (2.0 * (p + 1.0)));
  e.mu = n * (0.5 - 1.0 / e.q);
  e.Theta_weighted = (1.0 / (p + 1.0) + 2.0 * lam / (n * (p + 1.0)) - 1.0 / e.q) /
                     (0.5 - 1.0 / e.q + (lam - 1.0) / n);
  e.theta_l2p = snap_unit(n * (p - 1.0) / (2.0 * p));

  e.budget_weighted = lam * ((p + 1.0) / 2.0 * e.Theta_weighted - 1.0) -
                      (n / 4.0 + e.mu / 2.0) * (1.0 - e.Theta_weighted) * (p + 1.0);

  if (p < 2.0) {
    e.theta_lp = n * (2.0 - p) / (2.0 * p * (lam - 1.0));
    e.budget_lp = lam * p / 2.0 * e.theta_lp - n / 4.0 * p * (1.0 - e.theta_lp);
  } else {
    e.theta_lp = n * (p - 2.0) / (2.0 * p);
    e.budget_lp = -(n / 4.0 + 0.5) * p * e.theta_lp - n / 4.0 * p * (1.0 - e.theta_lp);
  }

  const double l2p_rate = -(n / 4.0 + 0.5) * p * e.theta_l2p - n / 4.0 * p * (1.0 - e.theta_l2p);
  e.budget_l2p = l2p_rate + n / 4.0;
  return e;
}

ExponentSet interpolation_exponents(const ProblemParams& params) {
  const double threshold = lambda_threshold(params.dim, params.p);
  if (!(params.lambda > threshold)) {
    std::ostringstream msg;
    msg << "lambda = " << params.lambda << " must exceed the threshold " << threshold;
    throw std::domain_error(msg.str());
  }
  const ExponentSet e = interpolation_exponents_unchecked(params);

  const std::pair<const char*, double> unit[] = {{"theta_gn", e.theta_gn},
                                                 {"Theta_weighted", e.Theta_weighted},
                                                 {"mu", e.mu},
                                                 {"theta_lp", e.theta_lp},
                                                 {"theta_l2p", e.theta_l2p}};
  for (const auto& [name, value] : unit) {
    if (!in_unit_interval(value)) {
      std::ostringstream msg;
      msg << name << " = " << value << " leaves [0, 1]";
      throw std::domain_error(msg.str());
    }
  }
  if (!(e.budget_weighted < 0.0)) throw std::domain_error("weighted L^{p+1} decay budget is not negative");
  if (!(e.budget_lp < -1.0)) throw std::domain_error("L^p decay budget is not below -1");
  if (!(e.budget_l2p < -1.0)) throw std::domain_error("L^{2p} decay budget is not below -1");
  return e;
}

void CknParams::validate() const {
  require_dim(dim);
  const double n = dim;
  if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("CKN requires p, q >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("CKN requires finite r > 0");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("CKN requires 0 <= a <= 1");
  if (!(1.0 / p + alpha / n > 0.0)) throw std::invalid_argument("CKN requires 1/p + alpha/N > 0");
  if (!(1.0 / q + beta / n > 0.0)) throw std::invalid_argument("CKN requires 1/q + beta/N > 0");
  if (!(1.0 / r + gamma() / n > 0.0)) throw std::invalid_argument("CKN requires 1/r + gamma/N > 0");
}

CknVerdict ckn_admissible(const CknParams& c) {
  c.validate();
  const double n = c.dim;
  const double lhs = 1.0 / c.r + c.gamma() / n;
  const double grad_index = 1.0 / c.p + (c.alpha - 1.0) / n;
  const double rhs = c.a * grad_index + (1.0 - c.a) * (1.0 / c.q + c.beta / n);

  CknVerdict v;
  v.balance_residual = lhs - rhs;
  if (std::abs(v.balance_residual) > kBalanceTolerance) {
    v.failed = CknCondition::dimensional_balance;
    std::ostringstream msg;
    msg << "dimensional balance violated by " << v.balance_residual;
    v.reason = msg.str();
    return v;
  }
  if (c.a > 0.0) {
    const double gap = c.alpha - c.sigma;
    if (gap < -kBalanceTolerance) {
      v.failed = CknCondition::alpha_minus_sigma_nonnegative;
      v.reason = "alpha - sigma < 0 with a > 0";
      return v;
    }
    if (std::abs(grad_index - lhs) <= kBalanceTolerance && gap > 1.0 + kBalanceTolerance) {
      v.failed = CknCondition::alpha_minus_sigma_at_most_one;
      v.reason = "alpha - sigma > 1 in the equal-index case";
      return v;
    }
  }
  v.admissible = true;
  return v;
}

const char* to_string(CknCondition c) {
  switch (c) {
    case CknCondition::none: return "none";
    case CknCondition::dimensional_balance: return "dimensional_balance";
    case CknCondition::alpha_minus_sigma_nonnegative: return "alpha_minus_sigma_nonnegative";
    case CknCondition::alpha_minus_sigma_at_most_one: return "alpha_minus_sigma_at_most_one";
  }
  return "unknown";
}

CknParams gn_lpp1_params(const ProblemParams& params) {
  params.validate();
  const ExponentSet e = interpolation_exponents_unchecked(params);
  CknParams c;
  c.dim = params.dim;
  c.p = 2.0;
  c.q = 2.0;
  c.r = params.p + 1.0;
  c.a = e.theta_gn;
  return c;
}

CknParams weighted_lpp1_params(const ProblemParams& params) {
  params.validate();
  const ExponentSet e = interpolation_exponents_unchecked(params);
  if (!(e.Theta_weighted > 0.0)) throw std::domain_error("weighted interpolation exponent must be positive");
  CknParams c;
  c.dim = params.dim;
  c.p = 2.0;
  c.q = e.q;
  c.r = params.p + 1.0;
  c.alpha = params.lambda;
  c.beta = 0.0;
  c.a = e.Theta_weighted;
  c.sigma = (2.0 * params.lambda / (params.p + 1.0)) / e.Theta_weighted;
  return c;
}

}  // namespace dampwave
