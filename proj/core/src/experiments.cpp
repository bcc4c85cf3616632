#include "pursuit/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pursuit/io.hpp"

namespace pursuit {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void PhaseTransitionSpec::validate() const {
  require(N >= 1, "PhaseTransitionSpec: N must be >= 1");
  require(!m_values.empty(), "PhaseTransitionSpec: m_values must be nonempty");
  require(!k_values.empty(), "PhaseTransitionSpec: k_values must be nonempty");
  const int min_m = *std::min_element(m_values.begin(), m_values.end());
  for (int m : m_values)
    require(m >= 1 && m <= N, "PhaseTransitionSpec: every m must satisfy 1 <= m <= N");
  for (int k : k_values)
    require(k >= 1 && k < min_m,
            "PhaseTransitionSpec: every k must satisfy 1 <= k < min(m_values)");
  require(trials_per_cell >= 1, "PhaseTransitionSpec: trials_per_cell must be >= 1");
  require(recovery_tol >= 0.0, "PhaseTransitionSpec: recovery_tol must be >= 0");
  solver.rule.validate();
  require(solver.residual_tol >= 0.0, "PhaseTransitionSpec: solver residual_tol must be >= 0");
  if (solver.prune_to_k)
    require(solver.algorithm == PursuitAlgorithm::OMP,
            "PhaseTransitionSpec: prune_to_k requires the orthogonal updater");
}

SparseSignal random_sparse_signal(int N, int k, SignalModel model, Rng& rng) {
  require(N >= 1 && k >= 1 && k <= N, "random_sparse_signal: need 1 <= k <= N");
  SparseSignal x;
  x.N = N;
  x.support = random_support(N, k, rng);
  x.values.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    if (model == SignalModel::GaussianAmplitudes) {
      double v = rng.normal();
      while (v == 0.0) v = rng.normal();  // amplitudes must be nonzero
      x.values[static_cast<std::size_t>(i)] = v;
    } else {
      x.values[static_cast<std::size_t>(i)] = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    }
  }
  return x;
}

PhaseTable run_phase_transition(const PhaseTransitionSpec& spec) {
  spec.validate();
  // Stream 0 feeds per-m matrices, stream 1 feeds per-trial signals; both are
  // indexed deterministically so any cell can be reproduced in isolation.
  const std::uint64_t matrix_stream = Rng::derive_seed(spec.base_seed, 0);
  const std::uint64_t signal_stream = Rng::derive_seed(spec.base_seed, 1);
  const std::uint64_t k_count = spec.k_values.size();

  PhaseTable table;
  for (std::size_t mi = 0; mi < spec.m_values.size(); ++mi) {
    const int m = spec.m_values[mi];
    const DenseMatrix A = generate(
        {EnsembleKind::Gaussian, m, spec.N, Rng::derive_seed(matrix_stream, mi)});
    for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
      const int k = spec.k_values[ki];
      int hits = 0;
      for (int t = 0; t < spec.trials_per_cell; ++t) {
        const std::uint64_t trial_index =
            (static_cast<std::uint64_t>(mi) * k_count + ki) *
                static_cast<std::uint64_t>(spec.trials_per_cell) +
            static_cast<std::uint64_t>(t);
        Rng rng(Rng::derive_seed(signal_stream, trial_index));
        const SparseSignal x = random_sparse_signal(spec.N, k, spec.signal_model, rng);
        const DenseVector y = matvec(A, x.dense());

        PursuitConfig cfg = spec.solver;
        cfg.sparsity_k = k;
        cfg.max_iterations = k;  // recovery runs allow up to k iterations

        TrialResult trial;
        trial.m = m;
        trial.k = k;
        trial.trial_index = t;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const PursuitResult res = run(A, y, cfg);
          trial.recovered = exact_recovery_check(x, res.state.estimate, spec.recovery_tol);
          trial.iterations_used = res.state.n;
          trial.final_residual_norm = res.trace.records.empty()
                                          ? res.trace.initial_residual_norm
                                          : res.trace.records.back().residual_norm;
        } catch (const SolveFailure&) {
          // The rule flooded the support past full rank; the trial simply fails.
          trial.recovered = false;
          trial.iterations_used = 0;
          trial.final_residual_norm = norm2(y);
        }
        trial.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (trial.recovered) ++hits;
        table.trials.push_back(std::move(trial));
      }
      PhaseCell cell;
      cell.m = m;
      cell.k = k;
      cell.recovery_fraction = static_cast<double>(hits) / spec.trials_per_cell;
      cell.trials = spec.trials_per_cell;
      table.cells.push_back(cell);
    }
  }
  return table;
}

double snr(const DenseVector& x, const DenseVector& a) {
  require(x.size() == a.size(), "snr: vectors must have equal length");
  require(!x.empty(), "snr: vectors must be nonempty");
  double diff2 = 0.0;
  double sig2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - a[i];
    diff2 += d * d;
    sig2 += x[i] * x[i];
  }
  if (diff2 == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(std::sqrt(sig2) / std::sqrt(diff2));
}

double best_k_term_snr(const DenseVector& x, int k) {
  require(k >= 0, "best_k_term_snr: k must be >= 0");
  const int N = static_cast<int>(x.size());
  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double fa = std::abs(x[static_cast<std::size_t>(a)]);
    const double fb = std::abs(x[static_cast<std::size_t>(b)]);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  DenseVector a(x.size(), 0.0);
  for (int i = 0; i < std::min(k, N); ++i) {
    const std::size_t idx = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
    a[idx] = x[idx];
  }
  return snr(x, a);
}

DenseVector compressible_signal(int N, double decay_p, Rng& rng) {
  require(N >= 1, "compressible_signal: N must be >= 1");
  require(decay_p > 0.0 && decay_p <= 1.0, "compressible_signal: decay_p must be in (0, 1]");
  DenseVector x(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double mag = std::pow(static_cast<double>(i + 1), -1.0 / decay_p);
    x[static_cast<std::size_t>(i)] = (rng.next_u64() >> 63) ? mag : -mag;
  }
  for (int i = N - 1; i >= 1; --i) {  // Fisher-Yates
    const int j = rng.uniform_int(i + 1);
    std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
  }
  return x;
}

void CompressibleStudySpec::validate() const {
  require(N >= 1, "CompressibleStudySpec: N must be >= 1");
  require(m >= 1 && m <= N, "CompressibleStudySpec: need 1 <= m <= N");
  require(decay_p > 0.0 && decay_p <= 1.0, "CompressibleStudySpec: decay_p must be in (0, 1]");
  require(trials >= 1, "CompressibleStudySpec: trials must be >= 1");
  require(!solvers.empty(), "CompressibleStudySpec: at least one solver required");
  std::set<std::string> labels;
  for (const auto& [label, cfg] : solvers) {
    require(!label.empty(), "CompressibleStudySpec: solver labels must be nonempty");
    require(labels.insert(label).second, "CompressibleStudySpec: duplicate solver label " + label);
    cfg.validate();
  }
}

std::vector<CompressibleRow> run_compressible_study(const CompressibleStudySpec& spec) {
  spec.validate();
  const std::uint64_t matrix_stream = Rng::derive_seed(spec.base_seed, 0);
  const std::uint64_t signal_stream = Rng::derive_seed(spec.base_seed, 1);
  const DenseMatrix A =
      generate({EnsembleKind::Gaussian, spec.m, spec.N, Rng::derive_seed(matrix_stream, 0)});

  std::vector<double> sums(spec.solvers.size(), 0.0);
  for (std::uint64_t t = 0; t < spec.trials; ++t) {
    Rng rng(Rng::derive_seed(signal_stream, t));
    const DenseVector x = compressible_signal(spec.N, spec.decay_p, rng);
    const DenseVector y = matvec(A, x);
    for (std::size_t si = 0; si < spec.solvers.size(); ++si) {
      DenseVector estimate(x.size(), 0.0);
      try {
        estimate = run(A, y, spec.solvers[si].second).state.estimate;
      } catch (const SolveFailure&) {
        // scored against the zero estimate (0 dB contribution)
      }
      sums[si] += snr(x, estimate);
    }
  }

  std::vector<CompressibleRow> rows;
  rows.reserve(spec.solvers.size());
  for (std::size_t si = 0; si < spec.solvers.size(); ++si) {
    CompressibleRow row;
    row.solver = spec.solvers[si].first;
    row.mean_snr_db = sums[si] / static_cast<double>(spec.trials);
    row.trials = spec.trials;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// `key = value` lines; # starts a comment; duplicate or unknown keys are
// rejected so config typos fail loudly.
class KeyValues {
 public:
  explicit KeyValues(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      require(eq != std::string::npos,
              "config line " + std::to_string(line_no) + " is not `key = value`: " + t);
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      require(!key.empty(), "config line " + std::to_string(line_no) + " has an empty key");
      require(!value.empty(), "config key `" + key + "` has an empty value");
      require(kv_.emplace(key, value).second, "config repeats key `" + key + "`");
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string take(const std::string& key) {
    auto it = kv_.find(key);
    require(it != kv_.end(), "config is missing required key `" + key + "`");
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  void finish() const {
    require(kv_.empty(),
            kv_.empty() ? std::string() : "config has unknown key `" + kv_.begin()->first + "`");
  }

 private:
  std::map<std::string, std::string> kv_;
};

long long parse_ll(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    require(pos == v.size(), "config key `" + key + "` has trailing junk: " + v);
    return x;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config key `" + key + "` is not an integer: " + v);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("config key `" + key + "` is out of range: " + v);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  const long long x = parse_ll(v, key);
  require(x >= std::numeric_limits<int>::min() && x <= std::numeric_limits<int>::max(),
          "config key `" + key + "` does not fit in an int: " + v);
  return static_cast<int>(x);
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    require(pos == v.size(), "config key `" + key + "` has trailing junk: " + v);
    require(v.find('-') == std::string::npos, "config key `" + key + "` must be non-negative");
    return x;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config key `" + key + "` is not an unsigned integer: " + v);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("config key `" + key + "` is out of range: " + v);
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    require(pos == v.size(), "config key `" + key + "` has trailing junk: " + v);
    return x;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config key `" + key + "` is not a number: " + v);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("config key `" + key + "` is out of range: " + v);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key `" + key + "` must be a boolean: " + v);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const std::string piece =
        trim(comma == std::string::npos ? v.substr(start) : v.substr(start, comma - start));
    if (!piece.empty()) parts.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> xs;
  for (const std::string& piece : split_list(v)) xs.push_back(parse_int(piece, key));
  require(!xs.empty(), "config key `" + key + "` must list at least one integer");
  return xs;
}

PursuitAlgorithm parse_algorithm(const std::string& v) {
  if (v == "mp") return PursuitAlgorithm::MP;
  if (v == "omp") return PursuitAlgorithm::OMP;
  if (v == "gp") return PursuitAlgorithm::GP;
  throw std::invalid_argument("config algorithm must be mp, omp or gp: " + v);
}

SelectionRuleKind parse_rule(const std::string& v) {
  if (v == "weak") return SelectionRuleKind::StagewiseWeak;
  if (v == "relaxed") return SelectionRuleKind::RelaxedWeak;
  throw std::invalid_argument("config rule must be weak or relaxed: " + v);
}

SignalModel parse_signal(const std::string& v) {
  if (v == "gaussian") return SignalModel::GaussianAmplitudes;
  if (v == "signs") return SignalModel::RandomSigns;
  throw std::invalid_argument("config signal must be gaussian or signs: " + v);
}

}  // namespace

PhaseTransitionSpec parse_phase_config(std::istream& in) {
  KeyValues kv(in);
  PhaseTransitionSpec spec;
  spec.N = parse_int(kv.take("n"), "n");
  spec.m_values = parse_int_list(kv.take("m_values"), "m_values");
  spec.k_values = parse_int_list(kv.take("k_values"), "k_values");
  spec.trials_per_cell = parse_int(kv.take("trials_per_cell"), "trials_per_cell");
  spec.solver.algorithm = parse_algorithm(kv.take("algorithm"));
  spec.solver.rule.kind = parse_rule(kv.take("rule"));
  spec.solver.rule.alpha = parse_double(kv.take("alpha"), "alpha");
  if (kv.has("prune_to_k")) spec.solver.prune_to_k = parse_bool(kv.take("prune_to_k"), "prune_to_k");
  if (kv.has("residual_tol"))
    spec.solver.residual_tol = parse_double(kv.take("residual_tol"), "residual_tol");
  if (kv.has("signal")) spec.signal_model = parse_signal(kv.take("signal"));
  spec.base_seed = parse_u64(kv.take("base_seed"), "base_seed");
  if (kv.has("recovery_tol"))
    spec.recovery_tol = parse_double(kv.take("recovery_tol"), "recovery_tol");
  kv.finish();
  spec.validate();
  return spec;
}

PhaseTransitionSpec load_phase_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_phase_config(in);
}

CompressibleStudySpec parse_compressible_config(std::istream& in) {
  KeyValues kv(in);
  CompressibleStudySpec spec;
  spec.N = parse_int(kv.take("n"), "n");
  spec.m = parse_int(kv.take("m"), "m");
  spec.decay_p = parse_double(kv.take("decay_p"), "decay_p");
  spec.trials = parse_u64(kv.take("trials"), "trials");
  spec.base_seed = parse_u64(kv.take("base_seed"), "base_seed");
  const SelectionRuleKind rule = parse_rule(kv.take("rule"));
  const double alpha = parse_double(kv.take("alpha"), "alpha");
  int max_iterations = 0;
  if (kv.has("max_iterations")) max_iterations = parse_int(kv.take("max_iterations"), "max_iterations");
  for (const std::string& name : split_list(kv.take("solvers"))) {
    PursuitConfig cfg;
    cfg.algorithm = parse_algorithm(name);
    cfg.rule.kind = rule;
    cfg.rule.alpha = alpha;
    cfg.max_iterations = max_iterations;
    spec.solvers.emplace_back(name, cfg);
  }
  kv.finish();
  spec.validate();
  return spec;
}

CompressibleStudySpec load_compressible_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_compressible_config(in);
}

std::string phase_summary_csv(const PhaseTable& table) {
  std::string out = "m,k,recovery_fraction,trials\n";
  for (const PhaseCell& c : table.cells) {
    out += std::to_string(c.m) + "," + std::to_string(c.k) + "," +
           format_double(c.recovery_fraction) + "," + std::to_string(c.trials) + "\n";
  }
  return out;
}

std::string phase_trials_csv(const PhaseTable& table) {
  std::string out = "m,k,trial,recovered,iterations,final_residual_norm\n";
  for (const TrialResult& t : table.trials) {
    out += std::to_string(t.m) + "," + std::to_string(t.k) + "," +
           std::to_string(t.trial_index) + "," + (t.recovered ? "1" : "0") + "," +
           std::to_string(t.iterations_used) + "," + format_double(t.final_residual_norm) +
           "\n";
  }
  return out;
}

std::string compressible_csv(const std::vector<CompressibleRow>& rows) {
  std::string out = "solver,mean_snr_db,trials\n";
  for (const CompressibleRow& r : rows)
    out += r.solver + "," + format_double(r.mean_snr_db) + "," + std::to_string(r.trials) + "\n";
  return out;
}

std::string trace_csv(const PursuitTrace& trace) {
  std::string out = "n,residual_norm,selected_count,support_size,step,contraction_ratio\n";
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.n) + "," + format_double(r.residual_norm) + "," +
           std::to_string(r.selected.size()) + "," + std::to_string(r.support_size) + "," +
           format_double(r.step) + "," + format_double(r.contraction_ratio) + "\n";
  }
  return out;
}

}  // namespace pursuit
