#pragma once

#include "ktrees/errors.hpp"

namespace ktrees::analytic {

/// All functions take the mean degree d of the binomial model G(n, d/n).
/// For the uniform model G(n, m=cn) the conversion is d = 2c; it happens at
/// call sites, never inside this module.
struct SolverConfig {
  double abs_tol = 1e-12;       // root finding / optimizer tolerance
  int max_iter = 200;           // iteration cap for bracketing loops
  double quad_rel_tol = 1e-8;   // adaptive quadrature tolerance
  double tail_eps = 1e-12;      // integration tail truncation threshold
};

/// pi_k(lambda) = Pr[Pois(lambda) >= k]. Summed from the small side of the
/// split at k vs lambda, so neither tail cancels catastrophically.
double pois_tail(int k, double lambda);

/// Poisson pmf at i (helper shared with tests).
double pois_pmf(int i, double lambda);

/// E_k(lambda) = E[X | X >= k] for X ~ Pois(lambda), via
/// lambda * pi_{k-1}(lambda) / pi_k(lambda).
double truncated_mean(int k, double lambda);

struct GammaThreshold {
  double value;   // gamma_k = inf_{lambda>0} lambda / pi_{k-1}(lambda)
  double argmin;  // attaining lambda (0 for k=2: infimum in the limit)
};
GammaThreshold gamma_threshold(int k, const SolverConfig& cfg = {});

/// Larger root of lambda = d * pi_{k-1}(lambda); throws BelowThreshold when
/// d <= gamma_k.
double lambda_root(int k, double d, const SolverConfig& cfg = {});

struct DeepThreshold {
  double d_star;        // smallest d with E_{k+1}(lambda_{k+1}(d)) = 2k
  bool degenerate;      // core density at gamma_{k+1} already >= 2k
  double d_star_intro;  // alternative fixed point c*pi_{k-1}(2c)/pi_k(2c)=k, as d=2c
  double difference;    // d_star_intro - d_star; reported, never reconciled
};
DeepThreshold deep_threshold(int k, const SolverConfig& cfg = {});

/// Fraction of vertices in the giant k-deeply connected component:
/// lambda_{k+1}(d)/d above the threshold (d*_k for k>=2, 1 for k=1), else 0.
/// Satisfies beta = pi_k(beta*d).
double beta(int k, double d, const SolverConfig& cfg = {});

/// Per-vertex rank of G(n, cn) with c = d/2: c below the threshold, else
/// c - lambda*pi_k(lambda)/2 + k*pi_{k+1}(lambda) at lambda = lambda_{k+1}(d).
double rank_density(int k, double d, const SolverConfig& cfg = {});

struct Quadrature {
  double value;
  double error_estimate;
};

/// Limit of the minimum k-tree-union weight for weight distributions with
/// density slope a at 0+: (1/2a) * integral of x(1 - beta_k(x)^2) dx. The
/// integrand is exactly x below the threshold and decays exponentially past
/// it, so the quadrature splits at the threshold and truncates the tail.
Quadrature limit_weight(int k, double slope_a, const SolverConfig& cfg = {});

struct AnalyticTable {
  int k;
  double d;
  double gamma;          // gamma_{k+1}
  double lambda;         // lambda_{k+1}(d), NaN below gamma
  double beta;
  double rank_density;   // NaN for k=1
  double core_fraction;  // pi_{k+1}(lambda), 0 below gamma
  double core_density;   // E_{k+1}(lambda), 0 below gamma
};
AnalyticTable make_table(int k, double d, const SolverConfig& cfg = {});

}  // namespace ktrees::analytic
