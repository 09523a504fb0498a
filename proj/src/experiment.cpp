#include "banditlab/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <thread>

#include "banditlab/bounds.hpp"
#include "banditlab/estimators.hpp"

namespace banditlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

double parse_double_strict(const std::string& what, const std::string& text) {
  const std::string s = trim(text);
  if (s == "nan") return kNaN;
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(what + ": cannot parse number '" + text + "'");
  }
  return value;
}

std::int64_t parse_int_strict(const std::string& what, const std::string& text) {
  const std::string s = trim(text);
  std::int64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(what + ": cannot parse integer '" + text + "'");
  }
  return value;
}

std::uint64_t parse_uint_strict(const std::string& what, const std::string& text) {
  const std::string s = trim(text);
  std::uint64_t value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument(what + ": cannot parse unsigned integer '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      const std::string item = trim(std::string_view(text).substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

void append_double(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "nan";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

void append_int(std::string& out, std::int64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_uint(std::string& out, std::uint64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

constexpr const char* kCsvHeader =
    "algorithm,replications,checkpoint_t,seed,pseudo_regret_mean,pseudo_regret_std,"
    "expected_regret_mean,expected_regret_std,norm_variance_mean,norm_variance_std,"
    "subopt_pulls_mean,theorem2_bound,theorem3_bound,eq5_satisfied";

}  // namespace

void ExperimentConfig::validate() const {
  const BernoulliBanditEnv env(arm_biases);
  if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
  if (replications < 1) throw std::invalid_argument("config: replications must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("config: delta must lie in (0, 1)");
  }
  if (checkpoint_dense_until < 1) {
    throw std::invalid_argument("config: checkpoint_dense_until must be >= 1");
  }
  if (!(checkpoint_ratio > 1.0)) {
    throw std::invalid_argument("config: checkpoint_ratio must exceed 1");
  }
  if (output_dir.empty()) throw std::invalid_argument("config: output_dir must be non-empty");
  std::set<std::string> labels;
  for (const AlgorithmSpec& algo : algorithms) {
    if (!valid_label(algo.label)) {
      throw std::invalid_argument("config: bad algorithm label '" + algo.label +
                                  "' (allowed: [A-Za-z0-9_-]+)");
    }
    if (!labels.insert(algo.label).second) {
      throw std::invalid_argument("config: duplicate algorithm label '" + algo.label + "'");
    }
    // Constructing the strategy surfaces unknown kinds, unknown parameters
    // and invalid schedules before any replication runs.
    make_strategy(algo.strategy.empty() ? algo.label : algo.strategy, algo.params,
                  env.num_arms());
  }
}

std::vector<std::int64_t> ExperimentConfig::checkpoints() const {
  return checkpoint_schedule(horizon, checkpoint_dense_until, checkpoint_ratio);
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
    }
  }

  ExperimentConfig config;
  config.algorithms.clear();
  std::set<std::string> consumed;
  const auto take = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    consumed.insert(it->first);
    return &it->second;
  };

  if (const std::string* v = take("arm_biases")) {
    config.arm_biases.clear();
    for (const std::string& item : split_list(*v)) {
      config.arm_biases.push_back(parse_double_strict("arm_biases", item));
    }
  }
  if (const std::string* v = take("horizon")) config.horizon = parse_int_strict("horizon", *v);
  if (const std::string* v = take("replications")) {
    config.replications = parse_int_strict("replications", *v);
  }
  if (const std::string* v = take("delta")) config.delta = parse_double_strict("delta", *v);
  if (const std::string* v = take("base_seed")) {
    config.base_seed = parse_uint_strict("base_seed", *v);
  }
  if (const std::string* v = take("checkpoint_dense_until")) {
    config.checkpoint_dense_until = parse_int_strict("checkpoint_dense_until", *v);
  }
  if (const std::string* v = take("checkpoint_ratio")) {
    config.checkpoint_ratio = parse_double_strict("checkpoint_ratio", *v);
  }
  if (const std::string* v = take("output_dir")) config.output_dir = *v;

  std::map<std::string, std::size_t> label_index;
  if (const std::string* v = take("algorithms")) {
    for (const std::string& label : split_list(*v)) {
      if (!valid_label(label)) {
        throw std::invalid_argument("config: bad algorithm label '" + label + "'");
      }
      if (label_index.count(label) != 0) {
        throw std::invalid_argument("config: duplicate algorithm label '" + label + "'");
      }
      label_index[label] = config.algorithms.size();
      config.algorithms.push_back(AlgorithmSpec{label, label, {}});
    }
  }

  for (const auto& [key, value] : kv) {
    if (consumed.count(key) != 0) continue;
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    const std::string label = key.substr(0, dot);
    const std::string param = key.substr(dot + 1);
    const auto it = label_index.find(label);
    if (it == label_index.end()) {
      throw std::invalid_argument("config: key '" + key + "' refers to an unlisted algorithm");
    }
    if (param.empty()) throw std::invalid_argument("config: empty parameter in key '" + key + "'");
    AlgorithmSpec& algo = config.algorithms[it->second];
    if (param == "strategy") {
      algo.strategy = value;
    } else {
      algo.params[param] = value;
    }
  }

  config.validate();
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read config file '" + path + "'");
  return parse_config_text(buf.str());
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig config;
  config.arm_biases = {0.5, 0.6};
  config.delta = 0.05;
  config.algorithms = {
      AlgorithmSpec{"exp3",
                    "exp3",
                    {{"epsilon_schedule", "sqrt"}, {"gamma_schedule", "sqrt"}}},
      AlgorithmSpec{"exp3p1", "exp3p1", {{"delta", "0.001"}}},
      AlgorithmSpec{"ucb1", "ucb1", {}},
  };
  if (name == "exp1") {
    config.horizon = 10000;
    config.replications = 1000;
    config.base_seed = 1;
    config.output_dir = "out/exp1";
  } else if (name == "exp2") {
    config.horizon = 10000000;
    config.replications = 100;
    config.base_seed = 2;
    config.output_dir = "out/exp2";
  } else if (name == "exp2-desk") {
    config.horizon = 1000000;
    config.replications = 20;
    config.base_seed = 3;
    config.output_dir = "out/exp2_desk";
  } else {
    throw std::invalid_argument("unknown preset '" + name + "' (known: exp1, exp2, exp2-desk)");
  }
  config.validate();
  return config;
}

std::uint64_t replication_stream(const std::string& label, std::int64_t replication) {
  return fnv1a64(label) + static_cast<std::uint64_t>(replication);
}

RunTrace run_replication(const ExperimentConfig& config, const AlgorithmSpec& algo,
                         std::int64_t replication) {
  if (replication < 0 || replication >= config.replications) {
    throw std::invalid_argument("replication index out of range");
  }
  const BernoulliBanditEnv env(config.arm_biases);
  const int num_arms = env.num_arms();
  const int best = env.best_arm();
  const auto strategy =
      make_strategy(algo.strategy.empty() ? algo.label : algo.strategy, algo.params, num_arms);
  const auto* spectrum = dynamic_cast<const Exp3SpectrumStrategy*>(strategy.get());
  const bool with_estimator = strategy->supports_weighted_estimator();
  const auto checkpoints = config.checkpoints();

  RunTrace trace;
  trace.algorithm = algo.label;
  trace.stream_id = replication_stream(algo.label, replication);
  trace.rows.reserve(checkpoints.size());
  Pcg32 rng(config.base_seed, trace.stream_id);
  EstimatorState est(num_arms);

  double pseudo = 0.0;
  double expected = 0.0;
  std::int64_t subopt = 0;
  double floor_eps = kNaN;  // tightest guaranteed floor over rounds so far
  std::size_t ci = 0;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    const ArmDistribution& pol = strategy->policy(t, est);
    if (const auto fl = strategy->epsilon_floor(t)) {
      for (int a = 0; a < num_arms; ++a) {
        if (pol[a] < *fl - 1e-12) {
          ++trace.floor_violations;
          break;
        }
      }
      floor_eps = std::isnan(floor_eps) ? *fl : std::min(floor_eps, *fl);
    }
    const int arm = sample_arm(pol, rng);
    const double reward = env.draw(arm, rng);
    pseudo += env.gap(arm);
    expected += expected_regret_of_policy(env, pol);
    if (arm != best) ++subopt;
    if (with_estimator) est.update(RoundRecord{t, &pol, arm, reward}, env);
    strategy->observe(t, arm, reward);
    if (ci >= checkpoints.size() || checkpoints[ci] != t) continue;
    ++ci;

    CheckpointRow row;
    row.t = t;
    row.pseudo_regret = pseudo;
    row.expected_regret = expected;
    row.subopt_pulls = subopt;
    row.policy = pol.probs();
    row.bound_epsilon = spectrum != nullptr ? spectrum->params().epsilon(num_arms, t) : floor_eps;
    if (with_estimator) {
      row.empirical_means.resize(static_cast<std::size_t>(num_arms));
      row.exact_variance.resize(static_cast<std::size_t>(num_arms));
      row.relaxed_variance.resize(static_cast<std::size_t>(num_arms));
      double relaxed = 0.0;
      double exact = 0.0;
      for (int a = 0; a < num_arms; ++a) {
        const auto i = static_cast<std::size_t>(a);
        row.empirical_means[i] = est.empirical_mean(a);
        row.exact_variance[i] = est.analytic_variance(a);
        row.relaxed_variance[i] = est.relaxed_variance(a);
        relaxed += pol[a] * row.relaxed_variance[i];
        exact += pol[a] * row.exact_variance[i];
      }
      const double denom = 2.0 * static_cast<double>(num_arms) * static_cast<double>(t);
      row.norm_variance = relaxed / denom;
      row.norm_variance_exact = exact / denom;
      if (!std::isnan(row.bound_epsilon)) {
        const double cap = importance_variance_cap(t, row.bound_epsilon);
        for (int a = 0; a < num_arms; ++a) {
          if (est.analytic_variance(a) > cap * (1.0 + 1e-9)) ++trace.variance_cap_violations;
        }
        if (exploration_condition_holds(t, num_arms, config.delta, row.bound_epsilon)) {
          const double width =
              empirical_regret_deviation_bound(t, num_arms, config.delta, row.bound_epsilon);
          double worst = 0.0;
          for (int a = 0; a < num_arms; ++a) {
            worst = std::max(worst, std::abs(empirical_regret(est, env, a) - env.gap(a)));
          }
          if (worst > width) ++trace.deviation_violations;
        }
      }
    } else {
      row.norm_variance = kNaN;
      row.norm_variance_exact = kNaN;
    }
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

namespace {

// Streaming per-checkpoint moments; the folding order is fixed by the
// caller, so results are independent of scheduling.
class Welford {
 public:
  explicit Welford(std::size_t n) : mean_(n, 0.0), m2_(n, 0.0) {}
  void add(std::size_t i, double x, std::int64_t count) {
    const double delta = x - mean_[i];
    mean_[i] += delta / static_cast<double>(count);
    m2_[i] += delta * (x - mean_[i]);
  }
  double mean(std::size_t i) const { return mean_[i]; }
  double sample_std(std::size_t i, std::int64_t count) const {
    if (count <= 1) return 0.0;
    const double v = m2_[i] / static_cast<double>(count - 1);
    if (std::isnan(v)) return kNaN;
    return std::sqrt(std::max(0.0, v));
  }

 private:
  std::vector<double> mean_;
  std::vector<double> m2_;
};

class SeriesAccumulator {
 public:
  SeriesAccumulator(std::string label, const std::vector<std::int64_t>& checkpoints)
      : label_(std::move(label)),
        checkpoints_(checkpoints),
        pseudo_(checkpoints.size()),
        expected_(checkpoints.size()),
        norm_var_(checkpoints.size()),
        subopt_(checkpoints.size()),
        bound_eps_(checkpoints.size(), kNaN) {}

  void fold(const RunTrace& trace) {
    if (trace.algorithm != label_) {
      throw std::logic_error("trace folded into the wrong algorithm series");
    }
    if (trace.rows.size() != checkpoints_.size()) {
      throw std::invalid_argument("aggregate: mismatched checkpoint schedules");
    }
    ++count_;
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
      const CheckpointRow& row = trace.rows[i];
      if (row.t != checkpoints_[i]) {
        throw std::invalid_argument("aggregate: mismatched checkpoint schedules");
      }
      pseudo_.add(i, row.pseudo_regret, count_);
      expected_.add(i, row.expected_regret, count_);
      norm_var_.add(i, row.norm_variance, count_);
      subopt_.add(i, static_cast<double>(row.subopt_pulls), count_);
      if (count_ == 1) bound_eps_[i] = row.bound_epsilon;
    }
    variance_cap_violations_ += trace.variance_cap_violations;
    floor_violations_ += trace.floor_violations;
    if (trace.deviation_violations > 0) ++deviation_violation_runs_;
  }

  AggregateSeries finish_series(const ExperimentConfig& config) const {
    if (count_ == 0) throw std::logic_error("aggregate: no traces folded");
    const int num_arms = static_cast<int>(config.arm_biases.size());
    AggregateSeries s;
    s.algorithm = label_;
    s.replications = count_;
    s.checkpoints = checkpoints_;
    const std::size_t n = checkpoints_.size();
    s.pseudo_regret_mean.resize(n);
    s.pseudo_regret_std.resize(n);
    s.expected_regret_mean.resize(n);
    s.expected_regret_std.resize(n);
    s.norm_variance_mean.resize(n);
    s.norm_variance_std.resize(n);
    s.subopt_pulls_mean.resize(n);
    s.theorem2_bound.resize(n);
    s.theorem3_bound.resize(n);
    s.eq5_satisfied.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t t = checkpoints_[i];
      s.pseudo_regret_mean[i] = pseudo_.mean(i);
      s.pseudo_regret_std[i] = pseudo_.sample_std(i, count_);
      s.expected_regret_mean[i] = expected_.mean(i);
      s.expected_regret_std[i] = expected_.sample_std(i, count_);
      s.norm_variance_mean[i] = norm_var_.mean(i);
      s.norm_variance_std[i] = norm_var_.sample_std(i, count_);
      s.subopt_pulls_mean[i] = subopt_.mean(i);
      const double eps = bound_eps_[i];
      if (std::isnan(eps)) {
        s.theorem2_bound[i] = kNaN;
        s.eq5_satisfied[i] = 0;
      } else {
        s.theorem2_bound[i] = empirical_regret_deviation_bound(t, num_arms, config.delta, eps);
        s.eq5_satisfied[i] =
            exploration_condition_holds(t, num_arms, config.delta, eps) ? 1 : 0;
      }
      s.theorem3_bound[i] = spectrum_regret_bound(t, num_arms, config.delta);
    }
    return s;
  }

  AlgorithmDiagnostics finish_diagnostics() const {
    AlgorithmDiagnostics d;
    d.algorithm = label_;
    d.variance_cap_violations = variance_cap_violations_;
    d.deviation_violation_runs = deviation_violation_runs_;
    d.floor_violations = floor_violations_;
    d.variance_cap.resize(checkpoints_.size());
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
      d.variance_cap[i] = std::isnan(bound_eps_[i])
                              ? kNaN
                              : importance_variance_cap(checkpoints_[i], bound_eps_[i]);
    }
    d.single_replication = count_ == 1;
    return d;
  }

  const std::string& label() const { return label_; }

 private:
  std::string label_;
  std::vector<std::int64_t> checkpoints_;
  Welford pseudo_;
  Welford expected_;
  Welford norm_var_;
  Welford subopt_;
  std::vector<double> bound_eps_;
  std::int64_t count_ = 0;
  std::int64_t variance_cap_violations_ = 0;
  std::int64_t deviation_violation_runs_ = 0;
  std::int64_t floor_violations_ = 0;
};

ExperimentResult finish_all(const ExperimentConfig& config,
                            const std::vector<SeriesAccumulator>& accumulators) {
  ExperimentResult result;
  result.summary.base_seed = config.base_seed;
  for (const SeriesAccumulator& acc : accumulators) {
    result.summary.series.push_back(acc.finish_series(config));
    result.diagnostics.push_back(acc.finish_diagnostics());
  }
  return result;
}

}  // namespace

ExperimentResult aggregate(const ExperimentConfig& config, const std::vector<RunTrace>& runs) {
  const auto checkpoints = config.checkpoints();
  std::vector<SeriesAccumulator> accumulators;
  std::set<std::string> seen;
  for (const RunTrace& trace : runs) {
    if (accumulators.empty() || accumulators.back().label() != trace.algorithm) {
      if (!seen.insert(trace.algorithm).second) {
        throw std::invalid_argument("aggregate: traces of algorithm '" + trace.algorithm +
                                    "' are not contiguous");
      }
      accumulators.emplace_back(trace.algorithm, checkpoints);
    }
    accumulators.back().fold(trace);
  }
  return finish_all(config, accumulators);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();
  if (workers < 1) throw std::invalid_argument("run_experiment: workers must be >= 1");
  if (config.algorithms.empty()) {
    return finish_all(config, {});
  }
  const auto checkpoints = config.checkpoints();
  std::vector<SeriesAccumulator> accumulators;
  accumulators.reserve(config.algorithms.size());
  for (const AlgorithmSpec& algo : config.algorithms) {
    accumulators.emplace_back(algo.label, checkpoints);
  }
  const std::int64_t per = config.replications;
  const std::int64_t total = per * static_cast<std::int64_t>(config.algorithms.size());

  if (workers == 1) {
    for (std::int64_t task = 0; task < total; ++task) {
      const auto& algo = config.algorithms[static_cast<std::size_t>(task / per)];
      accumulators[static_cast<std::size_t>(task / per)].fold(
          run_replication(config, algo, task % per));
    }
    return finish_all(config, accumulators);
  }

  // Tasks complete in any order; folding happens strictly in task order, so
  // the aggregate is the same as the single-worker one. Completed traces
  // wait in `parked` only until their turn, which keeps memory bounded by
  // the out-of-order spread.
  std::atomic<std::int64_t> next{0};
  std::mutex mu;
  std::map<std::int64_t, RunTrace> parked;
  std::int64_t fold_cursor = 0;
  std::exception_ptr first_error;
  const auto worker = [&]() {
    for (;;) {
      const std::int64_t task = next.fetch_add(1);
      if (task >= total) return;
      try {
        const auto& algo = config.algorithms[static_cast<std::size_t>(task / per)];
        RunTrace trace = run_replication(config, algo, task % per);
        const std::lock_guard<std::mutex> lock(mu);
        parked.emplace(task, std::move(trace));
        while (!parked.empty() && parked.begin()->first == fold_cursor) {
          accumulators[static_cast<std::size_t>(fold_cursor / per)].fold(parked.begin()->second);
          parked.erase(parked.begin());
          ++fold_cursor;
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        next.store(total);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return finish_all(config, accumulators);
}

std::string csv_text(const AggregateSummary& summary) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const AggregateSeries& s : summary.series) {
    for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
      out += s.algorithm;
      out += ',';
      append_int(out, s.replications);
      out += ',';
      append_int(out, s.checkpoints[i]);
      out += ',';
      append_uint(out, summary.base_seed);
      out += ',';
      append_double(out, s.pseudo_regret_mean[i]);
      out += ',';
      append_double(out, s.pseudo_regret_std[i]);
      out += ',';
      append_double(out, s.expected_regret_mean[i]);
      out += ',';
      append_double(out, s.expected_regret_std[i]);
      out += ',';
      append_double(out, s.norm_variance_mean[i]);
      out += ',';
      append_double(out, s.norm_variance_std[i]);
      out += ',';
      append_double(out, s.subopt_pulls_mean[i]);
      out += ',';
      append_double(out, s.theorem2_bound[i]);
      out += ',';
      append_double(out, s.theorem3_bound[i]);
      out += ',';
      out += s.eq5_satisfied[i] != 0 ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

void emit_csv(const AggregateSummary& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const std::string text = csv_text(summary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out.good()) throw std::runtime_error("write failed for '" + path + "'");
}

AggregateSummary parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  AggregateSummary summary;
  bool have_seed = false;
  std::set<std::string> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_fields(trim(line));
    if (fields.size() != 14) {
      throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected 14 fields");
    }
    const std::string& label = fields[0];
    if (summary.series.empty() || summary.series.back().algorithm != label) {
      if (!seen.insert(label).second) {
        throw std::invalid_argument("csv: rows of algorithm '" + label + "' are not contiguous");
      }
      summary.series.emplace_back();
      summary.series.back().algorithm = label;
      summary.series.back().replications = parse_int_strict("replications", fields[1]);
    }
    AggregateSeries& s = summary.series.back();
    if (parse_int_strict("replications", fields[1]) != s.replications) {
      throw std::invalid_argument("csv: inconsistent replications for '" + label + "'");
    }
    const std::uint64_t seed = parse_uint_strict("seed", fields[3]);
    if (!have_seed) {
      summary.base_seed = seed;
      have_seed = true;
    } else if (seed != summary.base_seed) {
      throw std::invalid_argument("csv: inconsistent seed column");
    }
    s.checkpoints.push_back(parse_int_strict("checkpoint_t", fields[2]));
    s.pseudo_regret_mean.push_back(parse_double_strict("pseudo_regret_mean", fields[4]));
    s.pseudo_regret_std.push_back(parse_double_strict("pseudo_regret_std", fields[5]));
    s.expected_regret_mean.push_back(parse_double_strict("expected_regret_mean", fields[6]));
    s.expected_regret_std.push_back(parse_double_strict("expected_regret_std", fields[7]));
    s.norm_variance_mean.push_back(parse_double_strict("norm_variance_mean", fields[8]));
    s.norm_variance_std.push_back(parse_double_strict("norm_variance_std", fields[9]));
    s.subopt_pulls_mean.push_back(parse_double_strict("subopt_pulls_mean", fields[10]));
    s.theorem2_bound.push_back(parse_double_strict("theorem2_bound", fields[11]));
    s.theorem3_bound.push_back(parse_double_strict("theorem3_bound", fields[12]));
    const std::string flag = trim(fields[13]);
    if (flag != "0" && flag != "1") {
      throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                  ": eq5_satisfied must be 0 or 1");
    }
    s.eq5_satisfied.push_back(flag == "1" ? 1 : 0);
  }
  return summary;
}

AggregateSummary load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open csv file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read csv file '" + path + "'");
  return parse_csv_text(buf.str());
}

}  // namespace banditlab
