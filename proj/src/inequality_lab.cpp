#include "dampwave/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace dampwave {

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double hermite(int n, double y) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * y;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double center_norm(const TestFunction& u) {
  double s = 0.0;
  for (int d = 0; d < u.dim; ++d) s += u.center[d] * u.center[d];
  return std::sqrt(s);
}

// Gauss nodes on [lo, hi] pulled through a smoothstep, so power-type kinks
// at either end cost only algebraic accuracy of high order.
void mapped_panel(double lo, double hi, const GaussRule& g, std::vector<double>& x, std::vector<double>& w) {
  for (std::size_t j = 0; j < g.nodes.size(); ++j) {
    const double s = 0.5 * (1.0 + g.nodes[j]);
    x.push_back(lo + (hi - lo) * s * s * (3.0 - 2.0 * s));
    w.push_back((hi - lo) * 3.0 * s * (1.0 - s) * g.weights[j]);
  }
}

// Radial nodes and weights on [h, R], where [0, h] is the innermost cell of a
// geometric grading toward 0 and is returned for separate treatment.
// Extra breaks go where the integrand has kinks.
double radial_rule(double radius, int panels, int levels, const std::vector<double>& kinks, const GaussRule& g,
                   std::vector<double>& r, std::vector<double>& w) {
  std::vector<double> breaks;
  const double first = radius / panels;
  for (int k = levels; k >= 1; --k) breaks.push_back(first * std::ldexp(1.0, -k));
  for (int i = 1; i <= panels; ++i) breaks.push_back(first * i);
  for (double k : kinks) {
    if (k > first && k < radius) breaks.push_back(k);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-12 * b; }),
               breaks.end());
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) mapped_panel(breaks[b], breaks[b + 1], g, r, w);
  return breaks.front();
}

// Weights at h/3 and 2h/3 exact for r^s (a + b r) on [0, h]; s <= -1 diverges.
std::array<double, 2> origin_weights(double h, double s) {
  if (!(s > -1.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  const double m0 = std::pow(h, s + 1.0) / (s + 1.0), m1 = std::pow(h, s + 2.0) / (s + 2.0);
  const double r1 = h / 3.0, r2 = 2.0 * h / 3.0;
  const double w2 = (m1 - r1 * m0) / (r2 - r1);
  return {m0 - w2, w2};
}

std::vector<double> hermite_zeros(int n) {
  std::vector<double> zeros;
  const double reach = std::sqrt(2.0 * n + 1.0) + 1.0;
  const int samples = 400 * (n + 1);
  double a = -reach, fa = hermite(n, a);
  for (int i = 1; i <= samples; ++i) {
    const double b = -reach + 2.0 * reach * i / samples, fb = hermite(n, b);
    if (fa == 0.0) zeros.push_back(a);
    if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > 1e-15 * reach) {
        const double mid = 0.5 * (lo + hi), fm = hermite(n, mid);
        if (fm == 0.0) lo = hi = mid;
        else if ((fm < 0.0) == (flo < 0.0)) lo = mid, flo = fm;
        else hi = mid;
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

// Planes x_1 = const on which u changes sign.
std::vector<double> sign_change_planes(const TestFunction& u) {
  std::vector<double> planes;
  if (u.kind == TestFunctionKind::hermite_gaussian) {
    for (double z : hermite_zeros(u.degree)) planes.push_back(u.center[0] + u.width * z);
  }
  return planes;
}

// Unit directions and weights covering the sphere S^{dim-1}.
void angular_rule(int dim, int n, std::vector<std::array<double, 3>>& dirs, std::vector<double>& w) {
  if (dim == 1) {
    dirs = {{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
    w = {1.0, 1.0};
    return;
  }
  if (dim == 2) {
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n;
      dirs.push_back({std::cos(th), std::sin(th), 0.0});
      w.push_back(2.0 * std::numbers::pi / n);
    }
    return;
  }
  const GaussRule g = gauss_legendre(std::max(4, n / 2));
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double c = g.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n;
      dirs.push_back({s * std::cos(th), s * std::sin(th), c});
      w.push_back(g.weights[i] * 2.0 * std::numbers::pi / n);
    }
  }
}

double finite_pow(double base, double e) { return base == 0.0 ? (e > 0.0 ? 0.0 : (e == 0.0 ? 1.0 : 0.0)) : std::pow(base, e); }

}  // namespace

std::string to_string(TestFunctionKind k) {
  switch (k) {
    case TestFunctionKind::gaussian: return "gaussian";
    case TestFunctionKind::bump: return "bump";
    case TestFunctionKind::polynomial_gaussian: return "polynomial_gaussian";
    case TestFunctionKind::hermite_gaussian: return "hermite_gaussian";
  }
  return "unknown";
}

TestFunctionKind parse_test_function_kind(const std::string& name) {
  if (name == "gaussian") return TestFunctionKind::gaussian;
  if (name == "bump") return TestFunctionKind::bump;
  if (name == "polynomial_gaussian") return TestFunctionKind::polynomial_gaussian;
  if (name == "hermite_gaussian") return TestFunctionKind::hermite_gaussian;
  throw std::invalid_argument("unknown test function kind '" + name + "'");
}

void TestFunction::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("test function dimension must be 1, 2 or 3");
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("test function width must be > 0");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("test function amplitude must be finite");
  if (degree < 0) throw std::invalid_argument("test function degree must be >= 0");
}

double TestFunction::value(std::span<const double> x) const {
  double y[3] = {0.0, 0.0, 0.0};
  double y2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    y[d] = (x[d] - center[d]) / width;
    y2 += y[d] * y[d];
  }
  switch (kind) {
    case TestFunctionKind::gaussian: return amplitude * std::exp(-y2);
    case TestFunctionKind::bump: return y2 < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - y2)) : 0.0;
    case TestFunctionKind::polynomial_gaussian: return amplitude * std::pow(1.0 + y2, degree) * std::exp(-y2);
    case TestFunctionKind::hermite_gaussian: return amplitude * hermite(degree, y[0]) * std::exp(-y2);
  }
  return 0.0;
}

std::array<double, 3> TestFunction::gradient(std::span<const double> x) const {
  double y[3] = {0.0, 0.0, 0.0};
  double y2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    y[d] = (x[d] - center[d]) / width;
    y2 += y[d] * y[d];
  }
  std::array<double, 3> g{0.0, 0.0, 0.0};
  switch (kind) {
    case TestFunctionKind::gaussian: {
      const double e = amplitude * std::exp(-y2);
      for (int d = 0; d < dim; ++d) g[d] = -2.0 * y[d] * e / width;
      break;
    }
    case TestFunctionKind::bump: {
      if (y2 >= 1.0) break;
      const double s = 1.0 - y2;
      const double e = amplitude * std::exp(-1.0 / s);
      for (int d = 0; d < dim; ++d) g[d] = -2.0 * y[d] / (s * s) * e / width;
      break;
    }
    case TestFunctionKind::polynomial_gaussian: {
      const double base = 1.0 + y2;
      const double e = amplitude * std::exp(-y2) * std::pow(base, degree - 1);
      const double factor = 2.0 * degree - 2.0 * base;
      for (int d = 0; d < dim; ++d) g[d] = factor * y[d] * e / width;
      break;
    }
    case TestFunctionKind::hermite_gaussian: {
      const double e = amplitude * std::exp(-y2);
      const double h = hermite(degree, y[0]);
      const double dh = degree > 0 ? 2.0 * degree * hermite(degree - 1, y[0]) : 0.0;
      g[0] = (dh - 2.0 * y[0] * h) * e / width;
      for (int d = 1; d < dim; ++d) g[d] = -2.0 * y[d] * h * e / width;
      break;
    }
  }
  return g;
}

TestFunction TestFunction::dilated(double mu) const {
  if (!(mu > 0.0)) throw std::invalid_argument("dilation factor must be > 0");
  TestFunction out = *this;
  out.width = width / mu;
  for (int d = 0; d < dim; ++d) out.center[d] = center[d] / mu;
  return out;
}

double TestFunction::extent() const {
  const double reach = kind == TestFunctionKind::bump ? 1.0 : 8.0 + std::sqrt(static_cast<double>(degree));
  return center_norm(*this) + width * reach;
}

QuadratureOptions QuadratureOptions::refined() const {
  QuadratureOptions r = *this;
  r.radial_panels *= 2;
  r.angular_points *= 2;
  r.grading_levels += 10;
  return r;
}

CknNorms ckn_norms(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts) {
  u.validate();
  if (u.dim != c.dim) throw std::invalid_argument("test function and CKN parameters differ in dimension");
  const double radius = u.extent();
  const double c_norm = center_norm(u);
  const int panels = std::max(opts.radial_panels, static_cast<int>(std::ceil(4.0 * radius / u.width)));

  // Symmetric about the x_1 axis: integrate over the angle to that axis only,
  // split where the angle crosses a sign-change plane or the bump boundary.
  const bool axial = c.dim >= 2 && u.center[1] == 0.0 && u.center[2] == 0.0;
  const double c0 = u.center[0];
  const std::vector<double> planes = sign_change_planes(u);
  std::vector<double> kinks;
  for (double b : planes) kinks.push_back(std::abs(b));
  if (u.kind == TestFunctionKind::bump) {
    kinks.push_back(std::abs(c0) + u.width);
    kinks.push_back(std::abs(std::abs(c0) - u.width));
  }

  const GaussRule g = gauss_legendre(opts.gauss_order);
  std::vector<double> rs, rw;
  const double h0 = radial_rule(radius, panels, opts.grading_levels, kinks, g, rs, rw);

  const int angular = std::max(opts.angular_points, static_cast<int>(std::ceil(40.0 * (c_norm / u.width + 1.0))));
  const GaussRule ga = gauss_legendre(angular / 2);
  std::vector<std::array<double, 3>> dirs;
  std::vector<double> dw;
  if (!axial) angular_rule(c.dim, angular, dirs, dw);

  std::vector<double> cuts, nodes, weights;
  // Angular integrals of |u|^r, |grad u|^p and |u|^q over the sphere of radius r.
  const auto shell = [&](double r) {
    if (axial) {
      // Cosines of the angle to the x_1 axis at which a kink is crossed.
      cuts = {-1.0, 1.0};
      for (double b : planes) {
        if (std::abs(b) < r) cuts.push_back(b / r);
      }
      if (u.kind == TestFunctionKind::bump && c0 != 0.0) {
        const double k = (r * r + c0 * c0 - u.width * u.width) / (2.0 * r * c0);
        if (std::abs(k) < 1.0) cuts.push_back(k);
      }
      std::sort(cuts.begin(), cuts.end());
      nodes.clear();
      weights.clear();
      dirs.clear();
      dw.clear();
      if (c.dim == 2) {
        // theta on [0, pi], doubled.
        std::vector<double> th;
        for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) th.push_back(std::acos(std::clamp(*it, -1.0, 1.0)));
        for (std::size_t k = 0; k + 1 < th.size(); ++k) {
          if (th[k + 1] > th[k]) mapped_panel(th[k], th[k + 1], ga, nodes, weights);
        }
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          dirs.push_back({std::cos(nodes[k]), std::sin(nodes[k]), 0.0});
          dw.push_back(2.0 * weights[k]);
        }
      } else {
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
          if (cuts[k + 1] > cuts[k]) mapped_panel(cuts[k], cuts[k + 1], ga, nodes, weights);
        }
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          dirs.push_back({nodes[k], std::sqrt(std::max(0.0, 1.0 - nodes[k] * nodes[k])), 0.0});
          dw.push_back(2.0 * std::numbers::pi * weights[k]);
        }
      }
    }
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    double x[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      for (int d = 0; d < c.dim; ++d) x[d] = r * dirs[j][d];
      const std::span<const double> xs(x, static_cast<std::size_t>(c.dim));
      const double v = std::abs(u.value(xs));
      const auto gr = u.gradient(xs);
      double g2 = 0.0;
      for (int d = 0; d < c.dim; ++d) g2 += gr[d] * gr[d];
      acc[0] += dw[j] * finite_pow(v, c.r);
      acc[1] += dw[j] * finite_pow(std::sqrt(g2), c.p);
      acc[2] += dw[j] * finite_pow(v, c.q);
    }
    return acc;
  };

  // Radial power carried by each integrand, including the r^{dim-1} Jacobian.
  const std::array<double, 3> power{c.dim - 1 + c.gamma() * c.r, c.dim - 1 + c.alpha * c.p, c.dim - 1 + c.beta * c.q};
  std::array<double, 3> total{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto acc = shell(rs[i]);
    for (int k = 0; k < 3; ++k) total[k] += rw[i] * finite_pow(rs[i], power[k]) * acc[k];
  }
  const auto inner1 = shell(h0 / 3.0), inner2 = shell(2.0 * h0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    const auto w = origin_weights(h0, power[k]);
    total[k] += w[0] * inner1[k] + w[1] * inner2[k];
  }
  const double int_r = total[0], int_p = total[1], int_q = total[2];
  return CknNorms{std::pow(int_r, 1.0 / c.r), std::pow(int_p, 1.0 / c.p), std::pow(int_q, 1.0 / c.q)};
}

double ckn_ratio_unchecked(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts) {
  c.validate();
  const CknNorms n = ckn_norms(u, c, opts);
  if ((c.a > 0.0 && !(n.weighted_grad_p > 0.0)) || (c.a < 1.0 && !(n.weighted_u_q > 0.0))) {
    throw std::domain_error("CKN ratio has a zero denominator");
  }
  const double denom = std::pow(n.weighted_grad_p, c.a) * std::pow(n.weighted_u_q, 1.0 - c.a);
  return n.weighted_u_r / denom;
}

double ckn_ratio(const TestFunction& u, const CknParams& c, const QuadratureOptions& opts) {
  const CknVerdict v = ckn_admissible(c);
  if (!v.admissible) throw std::invalid_argument("inadmissible CKN parameters: " + v.reason);
  return ckn_ratio_unchecked(u, c, opts);
}

RatioSweepReport ratio_sweep(std::span<const TestFunction> family, const CknParams& c, const QuadratureOptions& opts,
                             bool require_admissible) {
  if (family.empty()) throw std::invalid_argument("ratio_sweep needs a nonempty family");
  if (require_admissible) {
    const CknVerdict v = ckn_admissible(c);
    if (!v.admissible) throw std::invalid_argument("inadmissible CKN parameters: " + v.reason);
  } else {
    c.validate();
  }

  RatioSweepReport rep;
  rep.ratios.resize(family.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < family.size(); start += workers) {
    std::vector<std::future<double>> batch;
    const std::size_t stop = std::min(family.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, [&, i] { return ckn_ratio_unchecked(family[i], c, opts); }));
    }
    for (std::size_t i = start; i < stop; ++i) rep.ratios[i] = batch[i - start].get();
  }
  const auto [mn, mx] = std::minmax_element(rep.ratios.begin(), rep.ratios.end());
  rep.min_ratio = *mn;
  rep.max_ratio = *mx;
  rep.argmin = static_cast<std::size_t>(mn - rep.ratios.begin());
  rep.argmax = static_cast<std::size_t>(mx - rep.ratios.begin());
  return rep;
}

std::vector<TestFunction> gaussian_width_family(int dim, int k_min, int k_max) {
  std::vector<TestFunction> out;
  for (int k = k_min; k <= k_max; ++k) {
    TestFunction f;
    f.dim = dim;
    f.width = std::ldexp(1.0, k);
    out.push_back(f);
  }
  return out;
}

std::vector<TestFunction> mixed_family(int dim) {
  std::vector<TestFunction> out = gaussian_width_family(dim, -3, 3);
  for (double w : {0.5, 1.0, 2.0}) {
    TestFunction b;
    b.dim = dim;
    b.kind = TestFunctionKind::bump;
    b.width = w;
    out.push_back(b);
  }
  for (int k : {1, 2, 4}) {
    TestFunction pg;
    pg.dim = dim;
    pg.kind = TestFunctionKind::polynomial_gaussian;
    pg.degree = k;
    out.push_back(pg);
  }
  for (int n : {1, 2, 3}) {
    TestFunction h;
    h.dim = dim;
    h.kind = TestFunctionKind::hermite_gaussian;
    h.degree = n;
    out.push_back(h);
  }
  for (double shift : {0.5, 1.0, 2.0}) {
    TestFunction g;
    g.dim = dim;
    g.center[0] = shift;
    out.push_back(g);
  }
  return out;
}

}  // namespace dampwave
