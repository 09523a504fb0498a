#include "banditlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace banditlab {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_t_delta(std::int64_t t, double delta) {
  require(t >= 1, "bounds: t must be >= 1");
  require(delta > 0.0 && delta < 1.0, "bounds: delta must lie in (0, 1)");
}

}  // namespace

double kl_divergence(const ArmDistribution& rho, const ArmDistribution& mu) {
  require(rho.num_arms() == mu.num_arms(), "kl_divergence: size mismatch");
  double kl = 0.0;
  for (int a = 0; a < rho.num_arms(); ++a) {
    double r = rho[a];
    if (r == 0.0) continue;
    double m = mu[a];
    if (m <= 0.0) {
      throw std::invalid_argument("kl_divergence: rho has mass where mu has none");
    }
    kl += r * std::log(r / m);
  }
  // Rounding can push a tiny negative value for rho == mu.
  return std::max(kl, 0.0);
}

double deviation_log_budget(double kl, std::int64_t t, double delta) {
  check_t_delta(t, delta);
  require(kl >= 0.0, "bounds: kl must be non-negative");
  return kl + 2.0 * std::log(static_cast<double>(t) + 1.0) + std::log(2.0 / delta);
}

double pac_bayes_bernstein_bound(double kl, std::int64_t t, double delta, double lambda,
                                 double variance) {
  require(lambda > 0.0, "pac_bayes_bernstein_bound: lambda must be positive");
  require(variance >= 0.0, "pac_bayes_bernstein_bound: variance must be non-negative");
  return deviation_log_budget(kl, t, delta) / lambda + kBernsteinFactor * lambda * variance;
}

double optimal_lambda(double kl, std::int64_t t, double delta, double variance) {
  if (!(variance > 0.0)) {
    throw std::domain_error("optimal_lambda: variance must be positive");
  }
  return std::sqrt(deviation_log_budget(kl, t, delta) / (kBernsteinFactor * variance));
}

double optimal_lambda_bound(double kl, std::int64_t t, double delta, double variance) {
  require(variance >= 0.0, "optimal_lambda_bound: variance must be non-negative");
  return 2.0 * std::sqrt(kBernsteinFactor * variance * deviation_log_budget(kl, t, delta));
}

double empirical_regret_deviation_bound(std::int64_t t, int num_arms, double delta, double eps) {
  require(num_arms >= 2, "bounds: need at least 2 arms");
  require(eps > 0.0, "bounds: eps must be positive");
  double budget = deviation_log_budget(std::log(static_cast<double>(num_arms)), t, delta);
  return 2.0 * std::sqrt(2.0 * kBernsteinFactor * budget / (static_cast<double>(t) * eps));
}

double exploration_condition_lhs(std::int64_t t, int num_arms, double delta) {
  require(num_arms >= 2, "bounds: need at least 2 arms");
  double budget = deviation_log_budget(std::log(static_cast<double>(num_arms)), t, delta);
  return budget / (2.0 * kBernsteinFactor * static_cast<double>(t));
}

bool exploration_condition_holds(std::int64_t t, int num_arms, double delta, double eps) {
  require(eps > 0.0, "bounds: eps must be positive");
  return exploration_condition_lhs(t, num_arms, delta) <= eps;
}

std::optional<std::int64_t> exploration_condition_threshold(
    int num_arms, double delta, const std::function<double(std::int64_t)>& eps_of_t,
    std::int64_t t_max) {
  require(t_max >= 1, "bounds: t_max must be >= 1");
  for (std::int64_t t = 1; t <= t_max; ++t) {
    if (exploration_condition_holds(t, num_arms, delta, eps_of_t(t))) return t;
  }
  return std::nullopt;
}

bool lambda_condition_holds(double lambda, double range_bound) {
  require(range_bound > 0.0, "bounds: range bound must be positive");
  require(lambda >= 0.0, "bounds: lambda must be non-negative");
  return lambda <= 1.0 / range_bound;
}

double importance_variance_cap(std::int64_t t, double eps) {
  require(t >= 0, "bounds: t must be >= 0");
  require(eps > 0.0, "bounds: eps must be positive");
  if (t == 0) return 0.0;
  return 2.0 * static_cast<double>(t) / eps;
}

double spectrum_regret_bound(std::int64_t t, int num_arms, double delta) {
  require(num_arms >= 2, "bounds: need at least 2 arms");
  double K = static_cast<double>(num_arms);
  double budget = deviation_log_budget(std::log(K), t, delta);
  double lead = std::cbrt(K) / std::cbrt(static_cast<double>(t) + 1.0);
  return lead *
         (1.0 + std::sqrt(std::log(K)) + 2.0 * std::sqrt(2.0 * kBernsteinFactor * budget));
}

BoundReport make_bound_report(const BoundParams& p) {
  check_t_delta(p.t, p.delta);
  require(p.num_arms >= 2, "bounds: need at least 2 arms");
  require(p.epsilon > 0.0, "bounds: epsilon must be positive");
  BoundReport rep;
  rep.inputs = p;
  rep.kl_value = p.kl.value_or(std::log(static_cast<double>(p.num_arms)));
  rep.deviation_width = empirical_regret_deviation_bound(p.t, p.num_arms, p.delta, p.epsilon);
  rep.spectrum_regret = spectrum_regret_bound(p.t, p.num_arms, p.delta);
  rep.variance_cap = importance_variance_cap(p.t, p.epsilon);
  rep.conditions["exploration_floor"] =
      exploration_condition_holds(p.t, p.num_arms, p.delta, p.epsilon);
  if (p.lambda && p.range_bound) {
    rep.conditions["lambda_range"] = lambda_condition_holds(*p.lambda, *p.range_bound);
  }
  if (p.variance) {
    if (p.lambda) {
      rep.pac_bayes = pac_bayes_bernstein_bound(rep.kl_value, p.t, p.delta, *p.lambda, *p.variance);
    }
    if (*p.variance > 0.0) {
      rep.lambda_opt = optimal_lambda(rep.kl_value, p.t, p.delta, *p.variance);
    }
    rep.balanced_bound = optimal_lambda_bound(rep.kl_value, p.t, p.delta, *p.variance);
  }
  return rep;
}

}  // namespace banditlab
