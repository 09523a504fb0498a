#include "banditlab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace banditlab {
namespace {

// Rounding headroom when counting violations of inequalities that are exact
// in real arithmetic; magnitudes in the suites stay within a few hundred, so
// an absolute slack suffices.
constexpr double kNumericSlack = 1e-9;

double uniform_in(Pcg32& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

double log_uniform_in(Pcg32& rng, double lo, double hi) {
  return std::exp(uniform_in(rng, std::log(lo), std::log(hi)));
}

// Dirichlet(1)-style random distribution. With allow_zeros some entries are
// knocked out (never all); the largest entry absorbs the normalization
// residue so the validator's tolerance is met exactly.
std::vector<double> random_probs(Pcg32& rng, int n, bool allow_zeros) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = -std::log(std::max(rng.next_double(), 1e-12));
  if (allow_zeros && rng.next_double() < 0.4) {
    int keep = static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(n));
    for (int i = 0; i < n; ++i) {
      if (i != keep && rng.next_double() < 0.4) v[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  double sum = 0.0;
  for (double x : v) sum += x;
  for (auto& x : v) x /= sum;
  auto top = std::max_element(v.begin(), v.end());
  double resid = 1.0;
  for (double x : v) resid -= x;
  *top += resid;
  return v;
}

void check_case(const InequalityCase& c, SuiteResult& suite) {
  ++suite.cases;
  if (c.value > c.bound + kNumericSlack) ++suite.violations;
  suite.worst_slack = std::min(suite.worst_slack, c.slack());
}

}  // namespace

MartingalePath simulate_martingale(const SyntheticMartingale& spec, Pcg32& rng) {
  if (!(spec.range > 0.0) || !std::isfinite(spec.range)) {
    throw std::invalid_argument("martingale range must be positive and finite");
  }
  if (!(spec.bernoulli_p > 0.0) || !(spec.bernoulli_p < 1.0)) {
    throw std::invalid_argument("bernoulli_p must lie in (0, 1)");
  }
  if (spec.horizon < 1) throw std::invalid_argument("martingale horizon must be >= 1");
  MartingalePath path;
  for (std::int64_t tau = 1; tau <= spec.horizon; ++tau) {
    double s = spec.range;
    if (spec.history_driven_scale) s = spec.range * (0.5 + 0.45 * std::sin(3.0 * path.sum));
    if (spec.family == SyntheticMartingale::Family::centered_bernoulli) {
      const double p = spec.bernoulli_p;
      const double denom = std::max(p, 1.0 - p);
      const double b = rng.next_bernoulli(p);
      path.sum += s * (b - p) / denom;
      path.variance += s * s * p * (1.0 - p) / (denom * denom);
    } else {
      const double u = 2.0 * rng.next_double() - 1.0;
      path.sum += s * u;
      path.variance += s * s / 3.0;
    }
  }
  return path;
}

MgfCheckResult mgf_check(const SyntheticMartingale& spec, double lambda,
                         std::int64_t num_samples, std::uint64_t seed) {
  if (!(lambda >= 0.0) || lambda > 1.0 / spec.range) {
    throw std::domain_error("lambda must lie in [0, 1/range]");
  }
  if (num_samples < 2) throw std::invalid_argument("mgf check needs at least two samples");
  Pcg32 rng(seed, 0x4d47460aULL);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 1; i <= num_samples; ++i) {
    const MartingalePath path = simulate_martingale(spec, rng);
    const double x =
        std::exp(lambda * path.sum - kBernsteinFactor * lambda * lambda * path.variance);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (x - mean);
  }
  MgfCheckResult out;
  out.samples = num_samples;
  out.lambda = lambda;
  out.estimate = mean;
  out.std_error = std::sqrt(m2 / static_cast<double>(num_samples - 1) /
                            static_cast<double>(num_samples));
  out.pass = out.estimate <= 1.0 + 3.0 * out.std_error;
  return out;
}

InequalityCase change_of_measure_case(std::span<const double> phi, const ArmDistribution& mu,
                                      const ArmDistribution& rho) {
  const int n = mu.num_arms();
  if (rho.num_arms() != n || static_cast<int>(phi.size()) != n) {
    throw std::invalid_argument("phi, mu and rho must share one hypothesis set");
  }
  if (n > 64) throw std::invalid_argument("hypothesis sets are capped at 64 entries");
  for (double p : phi) {
    if (!std::isfinite(p)) throw std::invalid_argument("phi entries must be finite");
  }
  InequalityCase out;
  for (int i = 0; i < n; ++i) out.value += rho[i] * phi[static_cast<std::size_t>(i)];
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (mu[i] > 0.0) shift = std::max(shift, phi[static_cast<std::size_t>(i)]);
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (mu[i] > 0.0) sum += mu[i] * std::exp(phi[static_cast<std::size_t>(i)] - shift);
  }
  out.bound = kl_divergence(rho, mu) + shift + std::log(sum);
  return out;
}

InequalityCase smoothing_gap_case(const BanditEnv& env, const ArmDistribution& rho, double eps) {
  const int n = env.num_arms();
  if (rho.num_arms() != n) throw std::invalid_argument("rho must match the environment arms");
  const ArmDistribution mixed = smooth(rho, eps);
  InequalityCase out;
  for (int a = 0; a < n; ++a) out.value += (rho[a] - mixed[a]) * env.mean(a);
  out.bound = static_cast<double>(n) * eps;
  return out;
}

InequalityCase expsum_bound_case(std::span<const double> x, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
  if (x.empty()) throw std::invalid_argument("expsum case needs at least one entry");
  double lo = std::numeric_limits<double>::infinity();
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("expsum entries must be finite and non-negative");
    }
    lo = std::min(lo, v);
  }
  if (lo != 0.0) throw std::invalid_argument("expsum entries must include an exact zero");
  // The zero entry pins every weight at or below 1 and the denominator at or
  // above 1, so the direct evaluation cannot overflow or lose the scale.
  double num = 0.0;
  double den = 0.0;
  for (double v : x) {
    const double w = std::exp(-alpha * v);
    num += v * w;
    den += w;
  }
  InequalityCase out;
  out.value = num / den;
  out.bound = std::log(static_cast<double>(x.size())) / alpha;
  return out;
}

InequalityCase exp3_empirical_regret_case(const EstimatorState& est, const BanditEnv& env,
                                          double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
  const int n = est.num_arms();
  if (env.num_arms() != n) throw std::invalid_argument("estimator and environment disagree");
  std::vector<double> hat_r(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) hat_r[static_cast<std::size_t>(a)] = est.empirical_mean(a);
  const ArmDistribution rho = exp3_weights(hat_r, gamma);
  InequalityCase out;
  for (int a = 0; a < n; ++a) out.value += rho[a] * empirical_regret(est, env, a);
  out.bound = std::log(static_cast<double>(n)) / gamma;
  return out;
}

double expsum_tightness_gap(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
  const auto ratio2 = [alpha](double x1, double x2) {
    const double w1 = std::exp(-alpha * x1);
    const double w2 = std::exp(-alpha * x2);
    return (x1 * w1 + x2 * w2) / (1.0 + w1 + w2);
  };
  const auto ratio1 = [alpha](double x) {
    const double w = std::exp(-alpha * x);
    return 2.0 * x * w / (1.0 + 2.0 * w);
  };
  const double hi = 20.0 / alpha;
  // Coarse grid then shrinking local grids around the incumbent; the ratio is
  // smooth so this resolves the maximum far below the 1e-3 comparison scale.
  double best2 = -std::numeric_limits<double>::infinity();
  double bx = 0.0;
  double by = 0.0;
  const int coarse = 160;
  for (int i = 0; i <= coarse; ++i) {
    for (int j = 0; j <= coarse; ++j) {
      const double x1 = hi * i / coarse;
      const double x2 = hi * j / coarse;
      const double v = ratio2(x1, x2);
      if (v > best2) {
        best2 = v;
        bx = x1;
        by = x2;
      }
    }
  }
  double w = 2.0 * hi / coarse;
  for (int iter = 0; iter < 40; ++iter) {
    const double cx = bx;
    const double cy = by;
    for (int i = -8; i <= 8; ++i) {
      for (int j = -8; j <= 8; ++j) {
        const double x1 = std::max(0.0, cx + w * i / 8.0);
        const double x2 = std::max(0.0, cy + w * j / 8.0);
        const double v = ratio2(x1, x2);
        if (v > best2) {
          best2 = v;
          bx = x1;
          by = x2;
        }
      }
    }
    w *= 0.4;
  }
  double best1 = -std::numeric_limits<double>::infinity();
  double b1 = 0.0;
  for (int i = 0; i <= coarse * coarse; ++i) {
    const double x = hi * i / (coarse * coarse);
    const double v = ratio1(x);
    if (v > best1) {
      best1 = v;
      b1 = x;
    }
  }
  w = 2.0 * hi / (coarse * coarse);
  for (int iter = 0; iter < 40; ++iter) {
    const double c = b1;
    for (int i = -8; i <= 8; ++i) {
      const double x = std::max(0.0, c + w * i / 8.0);
      const double v = ratio1(x);
      if (v > best1) {
        best1 = v;
        b1 = x;
      }
    }
    w *= 0.4;
  }
  return best2 - best1;
}

SuiteResult run_change_of_measure_suite(std::int64_t cases, std::uint64_t seed) {
  SuiteResult suite{"change_of_measure", 0, 0, std::numeric_limits<double>::infinity()};
  Pcg32 rng(seed, 1);
  std::vector<double> phi;
  std::vector<double> base;
  while (suite.cases < cases) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 63);
    base.resize(static_cast<std::size_t>(n));
    // The reference measure stays strictly positive so every rho is
    // absolutely continuous with respect to it.
    double sum = 0.0;
    for (auto& x : base) {
      x = 0.05 - std::log(std::max(rng.next_double(), 1e-12));
      sum += x;
    }
    for (auto& x : base) x /= sum;
    double resid = 1.0;
    for (double x : base) resid -= x;
    *std::max_element(base.begin(), base.end()) += resid;
    const ArmDistribution mu{std::vector<double>(base)};
    const ArmDistribution rho{random_probs(rng, n, true)};
    phi.resize(static_cast<std::size_t>(n));
    for (auto& p : phi) p = uniform_in(rng, -50.0, 50.0);
    check_case(change_of_measure_case(phi, mu, rho), suite);
  }
  return suite;
}

SuiteResult run_smoothing_gap_suite(std::int64_t cases, std::uint64_t seed) {
  SuiteResult suite{"smoothing_gap", 0, 0, std::numeric_limits<double>::infinity()};
  Pcg32 rng(seed, 2);
  while (suite.cases < cases) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 15);
    std::vector<double> biases(static_cast<std::size_t>(n));
    for (auto& b : biases) b = rng.next_double();
    const BernoulliBanditEnv env(std::move(biases));
    const ArmDistribution rho{random_probs(rng, n, true)};
    // Occasionally pin eps at the full-smoothing boundary K eps = 1.
    const double eps =
        rng.next_double() < 0.1 ? 1.0 / n : rng.next_double() / static_cast<double>(n);
    check_case(smoothing_gap_case(env, rho, eps), suite);
  }
  return suite;
}

SuiteResult run_expsum_suite(std::int64_t cases, std::uint64_t seed) {
  SuiteResult suite{"expsum_bound", 0, 0, std::numeric_limits<double>::infinity()};
  Pcg32 rng(seed, 3);
  std::vector<double> x;
  while (suite.cases < cases) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 63);
    x.resize(static_cast<std::size_t>(n));
    for (auto& v : x) {
      const double u = rng.next_double();
      v = 100.0 * u * u * u;
    }
    x[rng.next_u32() % static_cast<std::uint32_t>(n)] = 0.0;
    const double alpha = log_uniform_in(rng, 0.02, 50.0);
    check_case(expsum_bound_case(x, alpha), suite);
  }
  return suite;
}

SuiteResult run_exp3_regret_cap_suite(std::int64_t cases, std::uint64_t seed) {
  SuiteResult suite{"exp3_regret_cap", 0, 0, std::numeric_limits<double>::infinity()};
  Pcg32 rng(seed, 4);
  // Checkpointed spectrum runs first: the states the bound is actually
  // applied to, with the schedule's own gamma.
  const int spectrum_runs = cases >= 500 ? 5 : 1;
  for (int run = 0; run < spectrum_runs && suite.cases < cases; ++run) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 3);
    std::vector<double> biases(static_cast<std::size_t>(n));
    for (auto& b : biases) b = rng.next_double();
    const BernoulliBanditEnv env(std::move(biases));
    Exp3SpectrumParams params;
    Exp3SpectrumStrategy strat("probe", n, params);
    EstimatorState est(n);
    const auto checkpoints = checkpoint_schedule(2000, 50, 1.1);
    std::size_t ci = 0;
    for (std::int64_t t = 1; t <= 2000 && suite.cases < cases; ++t) {
      const ArmDistribution& pol = strat.policy(t, est);
      const int arm = sample_arm(pol, rng);
      const double reward = env.draw(arm, rng);
      est.update(RoundRecord{t, &pol, arm, reward}, env);
      strat.observe(t, arm, reward);
      if (ci < checkpoints.size() && checkpoints[ci] == t) {
        ++ci;
        check_case(exp3_empirical_regret_case(est, env, params.gamma(n, t)), suite);
      }
    }
  }
  // Remaining budget: random short histories under arbitrary full-support
  // policies with log-uniform gamma.
  while (suite.cases < cases) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 7);
    std::vector<double> biases(static_cast<std::size_t>(n));
    for (auto& b : biases) b = rng.next_double();
    const BernoulliBanditEnv env(std::move(biases));
    EstimatorState est(n);
    const std::int64_t rounds = 1 + static_cast<std::int64_t>(rng.next_u32() % 200);
    ArmDistribution pol = ArmDistribution::uniform(n);
    std::vector<double> mixed(static_cast<std::size_t>(n));
    for (std::int64_t t = 1; t <= rounds; ++t) {
      smooth_into(random_probs(rng, n, false), 0.01, mixed);
      pol.assign(mixed);
      const int arm = sample_arm(pol, rng);
      const double reward = env.draw(arm, rng);
      est.update(RoundRecord{t, &pol, arm, reward}, env);
    }
    check_case(exp3_empirical_regret_case(est, env, log_uniform_in(rng, 0.01, 50.0)), suite);
  }
  return suite;
}

namespace {

void validate_coverage_config(const CoverageConfig& config) {
  if (config.num_runs < 1) throw std::invalid_argument("coverage needs at least one run");
  if (config.horizon < 1) throw std::invalid_argument("coverage horizon must be >= 1");
  if (!(config.delta > 0.0) || !(config.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

}  // namespace

CoverageResult deviation_coverage_check(const CoverageConfig& config) {
  validate_coverage_config(config);
  const BernoulliBanditEnv env(config.biases);
  const int num_arms = env.num_arms();
  config.params.validate(num_arms);
  const auto checkpoints = checkpoint_schedule(config.horizon, 50, 1.1);
  const ArmDistribution uniform = ArmDistribution::uniform(num_arms);
  std::vector<ArmDistribution> vertices;
  vertices.reserve(static_cast<std::size_t>(num_arms));
  for (int a = 0; a < num_arms; ++a) {
    vertices.push_back(ArmDistribution::point_mass(num_arms, a));
  }
  const double ln_k = std::log(static_cast<double>(num_arms));
  CoverageResult out;
  out.num_runs = config.num_runs;
  out.delta = config.delta;
  for (std::int64_t run = 0; run < config.num_runs; ++run) {
    Pcg32 rng(config.seed, static_cast<std::uint64_t>(run));
    Exp3SpectrumStrategy strat("probe", num_arms, config.params);
    EstimatorState est(num_arms);
    std::size_t ci = 0;
    bool violated = false;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
      const ArmDistribution& pol = strat.policy(t, est);
      const int arm = sample_arm(pol, rng);
      const double reward = env.draw(arm, rng);
      est.update(RoundRecord{t, &pol, arm, reward}, env);
      strat.observe(t, arm, reward);
      if (ci >= checkpoints.size() || checkpoints[ci] != t) continue;
      ++ci;
      // The deviation parameter is scheduled in advance from the worst-case
      // point-mass budget, so it never peeks at the realized path. Rounds
      // where it exceeds the admissible range 1/(1 + 1/eps) are skipped and
      // reported.
      const double eps_t = config.params.epsilon(num_arms, t);
      const double budget0 = deviation_log_budget(ln_k, t, config.delta);
      const double lambda_t = std::sqrt(eps_t * budget0 / (2.0 * kBernsteinFactor * t));
      if (!lambda_condition_holds(lambda_t, 1.0 + 1.0 / eps_t)) {
        ++out.skipped_points;
        continue;
      }
      const auto check_probe = [&](const ArmDistribution& rho) {
        double mart = 0.0;
        double var = 0.0;
        for (int a = 0; a < num_arms; ++a) {
          mart += rho[a] * (empirical_regret(est, env, a) - env.gap(a));
          var += rho[a] * est.analytic_variance(a);
        }
        mart *= static_cast<double>(t);
        const double kl = kl_divergence(rho, uniform);
        const double bound = pac_bayes_bernstein_bound(kl, t, config.delta, lambda_t, var);
        ++out.checked_points;
        if (std::abs(mart) > bound) violated = true;
      };
      check_probe(pol);
      check_probe(uniform);
      for (const auto& vertex : vertices) check_probe(vertex);
    }
    if (violated) ++out.violated_runs;
  }
  out.fraction = static_cast<double>(out.violated_runs) / static_cast<double>(out.num_runs);
  out.pass = out.fraction <= config.delta;
  return out;
}

CoverageResult regret_deviation_coverage_check(const CoverageConfig& config) {
  validate_coverage_config(config);
  const BernoulliBanditEnv env(config.biases);
  const int num_arms = env.num_arms();
  config.params.validate(num_arms);
  const auto checkpoints = checkpoint_schedule(config.horizon, 50, 1.1);
  CoverageResult out;
  out.num_runs = config.num_runs;
  out.delta = config.delta;
  for (std::int64_t run = 0; run < config.num_runs; ++run) {
    Pcg32 rng(config.seed, static_cast<std::uint64_t>(run));
    Exp3SpectrumStrategy strat("probe", num_arms, config.params);
    EstimatorState est(num_arms);
    std::size_t ci = 0;
    bool violated = false;
    for (std::int64_t t = 1; t <= config.horizon; ++t) {
      const ArmDistribution& pol = strat.policy(t, est);
      const int arm = sample_arm(pol, rng);
      const double reward = env.draw(arm, rng);
      est.update(RoundRecord{t, &pol, arm, reward}, env);
      strat.observe(t, arm, reward);
      if (ci >= checkpoints.size() || checkpoints[ci] != t) continue;
      ++ci;
      const double eps_t = config.params.epsilon(num_arms, t);
      if (!exploration_condition_holds(t, num_arms, config.delta, eps_t)) {
        ++out.skipped_points;
        continue;
      }
      const double width = empirical_regret_deviation_bound(t, num_arms, config.delta, eps_t);
      // The regret gap is linear in the mixture, so its sup over the simplex
      // sits at a vertex; checking the arms checks every mixture.
      double worst = 0.0;
      for (int a = 0; a < num_arms; ++a) {
        worst = std::max(worst, std::abs(empirical_regret(est, env, a) - env.gap(a)));
      }
      out.checked_points += num_arms;
      if (worst > width) violated = true;
    }
    if (violated) ++out.violated_runs;
  }
  out.fraction = static_cast<double>(out.violated_runs) / static_cast<double>(out.num_runs);
  out.pass = out.fraction <= config.delta;
  return out;
}

bool LabReport::all_pass() const {
  for (const auto& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

namespace {

LabRow suite_row(const SuiteResult& suite) {
  LabRow row;
  row.name = suite.name;
  row.cases = suite.cases;
  row.violations = suite.violations;
  row.worst_slack = suite.worst_slack;
  row.pass = suite.pass();
  return row;
}

std::string format_detail(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

}  // namespace

LabReport run_concentration_lab(const LabOptions& options) {
  LabReport report;
  report.rows.push_back(suite_row(run_change_of_measure_suite(options.suite_cases, options.seed)));
  report.rows.push_back(suite_row(run_smoothing_gap_suite(options.suite_cases, options.seed)));
  report.rows.push_back(suite_row(run_expsum_suite(options.suite_cases, options.seed)));
  report.rows.push_back(suite_row(run_exp3_regret_cap_suite(options.suite_cases, options.seed)));

  {
    LabRow row;
    row.name = "expsum_tightness";
    double worst = 0.0;
    for (double alpha : {0.5, 2.0, 8.0}) {
      worst = std::max(worst, std::abs(expsum_tightness_gap(alpha)));
      ++row.cases;
    }
    row.worst_slack = worst;
    row.pass = worst <= 1e-3;
    row.violations = row.pass ? 0 : 1;
    row.detail = format_detail("max |free - equal-entry| maximum gap = %.3g", worst);
    report.rows.push_back(row);
  }

  const SyntheticMartingale mgf_specs[] = {
      {SyntheticMartingale::Family::centered_bernoulli, 1.0, 0.5, false, 100},
      {SyntheticMartingale::Family::centered_bernoulli, 2.0, 0.15, true, 100},
      {SyntheticMartingale::Family::symmetric_uniform, 1.0, 0.5, false, 100},
      {SyntheticMartingale::Family::symmetric_uniform, 0.5, 0.5, true, 100},
  };
  int mgf_index = 0;
  for (const auto& spec : mgf_specs) {
    const double lambda = 0.8 / spec.range;
    const MgfCheckResult res =
        mgf_check(spec, lambda, options.mgf_samples, options.seed + 11 * ++mgf_index);
    LabRow row;
    row.name = format_detail("mgf_%s_%d",
                             spec.family == SyntheticMartingale::Family::centered_bernoulli
                                 ? "bernoulli"
                                 : "uniform",
                             mgf_index);
    row.cases = res.samples;
    row.violations = res.pass ? 0 : 1;
    row.worst_slack = 1.0 + 3.0 * res.std_error - res.estimate;
    row.pass = res.pass;
    row.detail = format_detail("estimate=%.6f stderr=%.2g lambda=%.3g range=%.3g", res.estimate,
                               res.std_error, res.lambda, spec.range);
    report.rows.push_back(row);
  }

  {
    CoverageConfig config;
    config.num_runs = options.coverage_runs;
    config.horizon = options.coverage_horizon;
    config.seed = options.seed + 1000;
    const CoverageResult res = deviation_coverage_check(config);
    LabRow row;
    row.name = "deviation_coverage";
    row.cases = res.num_runs;
    row.violations = res.violated_runs;
    row.worst_slack = res.delta - res.fraction;
    row.pass = res.pass;
    row.detail = format_detail("fraction=%.4g delta=%.3g checked=%lld skipped=%lld", res.fraction,
                               res.delta, static_cast<long long>(res.checked_points),
                               static_cast<long long>(res.skipped_points));
    report.rows.push_back(row);
  }
  {
    CoverageConfig config;
    config.num_runs = options.coverage_runs;
    config.horizon = options.coverage_horizon;
    config.seed = options.seed + 2000;
    const CoverageResult res = regret_deviation_coverage_check(config);
    LabRow row;
    row.name = "regret_coverage";
    row.cases = res.num_runs;
    row.violations = res.violated_runs;
    row.worst_slack = res.delta - res.fraction;
    row.pass = res.pass;
    row.detail = format_detail("fraction=%.4g delta=%.3g checked=%lld skipped=%lld", res.fraction,
                               res.delta, static_cast<long long>(res.checked_points),
                               static_cast<long long>(res.skipped_points));
    report.rows.push_back(row);
  }
  return report;
}

std::string lab_report_text(const LabReport& report) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof(line), "%-22s %10s %10s %14s %5s  %s\n", "check", "cases",
                "violations", "worst_slack", "pass", "detail");
  os << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof(line), "%-22s %10lld %10lld %14.6g %5s  %s\n", row.name.c_str(),
                  static_cast<long long>(row.cases), static_cast<long long>(row.violations),
                  row.worst_slack, row.pass ? "ok" : "FAIL", row.detail.c_str());
    os << line;
  }
  os << (report.all_pass() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
  return os.str();
}

std::string lab_report_csv(const LabReport& report) {
  std::ostringstream os;
  os << "check,cases,violations,worst_slack,pass,detail\n";
  char line[512];
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof(line), "%s,%lld,%lld,%.17g,%d,%s\n", row.name.c_str(),
                  static_cast<long long>(row.cases), static_cast<long long>(row.violations),
                  row.worst_slack, row.pass ? 1 : 0, row.detail.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace banditlab
