#include "ktrees/analytic.hpp"

#include <cmath>
#include <limits>

namespace ktrees::analytic {

double pois_pmf(int i, double lambda) {
  if (i < 0) return 0.0;
  if (lambda == 0.0) return i == 0 ? 1.0 : 0.0;
  return std::exp(i * std::log(lambda) - lambda - std::lgamma(i + 1.0));
}

double pois_tail(int k, double lambda) {
  if (lambda < 0) throw InvalidArgument("pois_tail: lambda must be >= 0");
  if (k < 0) throw InvalidArgument("pois_tail: k must be >= 0");
  if (k == 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  if (lambda >= k) {
    // head is small relative to the result; 1 - head keeps full precision
    double term = std::exp(-lambda);
    double head = term;
    for (int i = 1; i < k; ++i) {
      term *= lambda / i;
      head += term;
    }
    return 1.0 - head;
  }
  // lambda < k: sum the tail itself, first term in log space
  double term = pois_pmf(k, lambda);
  double sum = term;
  for (int i = k + 1; i < k + 2000; ++i) {
    term *= lambda / i;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

double truncated_mean(int k, double lambda) {
  if (k < 1) throw InvalidArgument("truncated_mean: k must be >= 1");
  if (!(lambda > 0)) throw InvalidArgument("truncated_mean: lambda must be > 0");
  const double tail_k = pois_tail(k, lambda);
  if (tail_k <= 0 || !std::isfinite(tail_k))
    throw DegenerateInput("truncated_mean: pi_k underflowed");
  return lambda * pois_tail(k - 1, lambda) / tail_k;
}

namespace {

double golden_section_min(double lo, double hi, double tol, int max_iter,
                          const auto& f) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

// bisection on a sign change; runs down to floating-point resolution
double bisect(double lo, double hi, int max_iter, const auto& f) {
  double flo = f(lo);
  for (int it = 0; it < max_iter; ++it) {
    const double mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    const double fmid = f(mid);
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

GammaThreshold gamma_threshold(int k, const SolverConfig& cfg) {
  if (k < 2) throw InvalidArgument("gamma_threshold: k must be >= 2");
  if (k == 2) return {1.0, 0.0};  // lambda/(1-exp(-lambda)) decreases to 1 at 0+
  const auto objective = [&](double lam) { return lam / pois_tail(k - 1, lam); };
  // coarse bracket of the interior minimum, then golden section
  double best_lam = 0.1;
  double best_val = objective(best_lam);
  const double step = 0.05;
  for (double lam = step; lam < 4.0 * k; lam += step) {
    const double val = objective(lam);
    if (val < best_val) {
      best_val = val;
      best_lam = lam;
    }
  }
  const double argmin = golden_section_min(std::max(best_lam - step, 1e-9), best_lam + step,
                                           cfg.abs_tol, cfg.max_iter, objective);
  return {objective(argmin), argmin};
}

double lambda_root(int k, double d, const SolverConfig& cfg) {
  if (k < 2) throw InvalidArgument("lambda_root: k must be >= 2");
  const GammaThreshold gamma = gamma_threshold(k, cfg);
  if (!(d > gamma.value + cfg.abs_tol))
    throw BelowThreshold("lambda_root: d is not above gamma_k");
  const auto residual = [&](double lam) { return lam - d * pois_tail(k - 1, lam); };
  double lo = gamma.argmin;
  if (k == 2) {
    // 0 is itself a root; start just above it where the residual is negative
    lo = 1e-12;
    while (residual(lo) >= 0 && lo < d) lo *= 2;
  }
  return bisect(lo, d, cfg.max_iter, residual);
}

DeepThreshold deep_threshold(int k, const SolverConfig& cfg) {
  if (k < 2) throw InvalidArgument("deep_threshold: k must be >= 2");
  DeepThreshold out{};
  const GammaThreshold gamma = gamma_threshold(k + 1, cfg);
  const double density_at_birth = truncated_mean(k + 1, gamma.argmin);
  if (density_at_birth >= 2.0 * k) {
    out.d_star = gamma.value;
    out.degenerate = true;
  } else {
    const auto excess = [&](double d) {
      return truncated_mean(k + 1, lambda_root(k + 1, d, cfg)) - 2.0 * k;
    };
    double lo = gamma.value + std::max(16 * cfg.abs_tol, 1e-11);
    double hi = gamma.value + 0.5;
    int guard = 0;
    while (excess(hi) < 0 && ++guard < cfg.max_iter) hi += 0.5;
    out.d_star = bisect(lo, hi, cfg.max_iter, excess);
    out.degenerate = false;
  }

  // the introduction's variant pins the density equation at lambda = 2c
  const auto intro = [&](double c) {
    return c * pois_tail(k - 1, 2 * c) / pois_tail(k, 2 * c) - k;
  };
  double hi = 1.0;
  int guard = 0;
  while (intro(hi) < 0 && ++guard < cfg.max_iter) hi *= 2;
  out.d_star_intro = 2.0 * bisect(1e-9, hi, cfg.max_iter, intro);
  out.difference = out.d_star_intro - out.d_star;
  return out;
}

double beta(int k, double d, const SolverConfig& cfg) {
  if (k < 1) throw InvalidArgument("beta: k must be >= 1");
  if (d < 0) throw InvalidArgument("beta: d must be >= 0");
  if (k == 1) {
    if (d <= 1.0 + cfg.abs_tol) return 0.0;
    return lambda_root(2, d, cfg) / d;
  }
  const DeepThreshold threshold = deep_threshold(k, cfg);
  if (d < threshold.d_star) return 0.0;
  return lambda_root(k + 1, d, cfg) / d;
}

double rank_density(int k, double d, const SolverConfig& cfg) {
  if (k < 2) throw InvalidArgument("rank_density: k must be >= 2");
  if (d < 0) throw InvalidArgument("rank_density: d must be >= 0");
  const double c = d / 2;
  const DeepThreshold threshold = deep_threshold(k, cfg);
  if (d < threshold.d_star) return c;
  const double lam = lambda_root(k + 1, d, cfg);
  return c - lam * pois_tail(k, lam) / 2 + k * pois_tail(k + 1, lam);
}

namespace {

double adaptive_simpson(const auto& f, double a, double fa, double mid, double fmid, double b,
                        double fb, double whole, double tol, int depth, double* err) {
  const double lm = (a + mid) / 2, rm = (mid + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (mid - a) / 6 * (fa + 4 * flm + fmid);
  const double right = (b - mid) / 6 * (fmid + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) {
    *err += std::abs(delta) / 15;
    return left + right + delta / 15;
  }
  return adaptive_simpson(f, a, fa, lm, flm, mid, fmid, left, tol / 2, depth - 1, err) +
         adaptive_simpson(f, mid, fmid, rm, frm, b, fb, right, tol / 2, depth - 1, err);
}

double integrate_segment(const auto& f, double a, double b, double tol, double* err) {
  const double mid = (a + b) / 2;
  const double fa = f(a), fmid = f(mid), fb = f(b);
  const double whole = (b - a) / 6 * (fa + 4 * fmid + fb);
  return adaptive_simpson(f, a, fa, mid, fmid, b, fb, whole, tol, 40, err);
}

}  // namespace

Quadrature limit_weight(int k, double slope_a, const SolverConfig& cfg) {
  if (k < 1) throw InvalidArgument("limit_weight: k must be >= 1");
  if (!(slope_a > 0)) throw InvalidArgument("limit_weight: slope must be > 0");

  const double threshold = k == 1 ? 1.0 : deep_threshold(k, cfg).d_star;
  const auto integrand = [&](double x) {
    // k=1: beta -> 0 continuously at the threshold, where lambda_root's
    // domain ends; k>=2: the threshold sits strictly above gamma_{k+1}
    if (k == 1 && x <= 1.0 + 16 * cfg.abs_tol) return x;
    const double b = lambda_root(k + 1, x, cfg) / x;
    return x * (1.0 - b * b);
  };

  // below the threshold beta is 0 and the integrand is exactly x
  double integral = threshold * threshold / 2;
  double err = 0;
  const double x_max = std::max(10.0 * k, 50.0);
  double x = threshold;
  while (x < x_max) {
    const double next = std::min(x + 1.0, x_max);
    const double piece = integrate_segment(integrand, x, next, cfg.quad_rel_tol, &err);
    integral += piece;
    x = next;
    if (piece < cfg.tail_eps && integrand(x) < cfg.tail_eps) break;
  }
  err += cfg.tail_eps;
  return {integral / (2 * slope_a), err / (2 * slope_a)};
}

AnalyticTable make_table(int k, double d, const SolverConfig& cfg) {
  if (k < 1) throw InvalidArgument("make_table: k must be >= 1");
  AnalyticTable table{};
  table.k = k;
  table.d = d;
  const GammaThreshold gamma = gamma_threshold(k + 1, cfg);
  table.gamma = gamma.value;
  table.beta = beta(k, d, cfg);
  table.rank_density =
      k >= 2 ? rank_density(k, d, cfg) : std::numeric_limits<double>::quiet_NaN();
  if (d > gamma.value + cfg.abs_tol) {
    table.lambda = lambda_root(k + 1, d, cfg);
    table.core_fraction = pois_tail(k + 1, table.lambda);
    table.core_density = truncated_mean(k + 1, table.lambda);
  } else {
    table.lambda = std::numeric_limits<double>::quiet_NaN();
    table.core_fraction = 0.0;
    table.core_density = 0.0;
  }
  return table;
}

}  // namespace ktrees::analytic
