// pursuit-lab: command-line front end for the sparse-recovery toolkit.
//
// Subcommands: gen, rip, concentration, solve, bounds, verify-rip-lemmas,
// phase, compressible. Matrices and vectors travel as PLAB binary files or
// CSV (picked by file extension); reports print as one-line JSON on stdout.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/ensembles.hpp"
#include "pursuit/experiments.hpp"
#include "pursuit/io.hpp"
#include "pursuit/rng.hpp"

namespace {

using json = nlohmann::json;
using namespace pursuit;

bool has_csv_extension(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

void save_matrix_auto(const std::string& path, const DenseMatrix& A) {
  if (has_csv_extension(path))
    save_matrix_csv(path, A);
  else
    save_matrix(path, A);
}

EnsembleKind parse_kind(const std::string& v) {
  if (v == "gaussian") return EnsembleKind::Gaussian;
  if (v == "bernoulli") return EnsembleKind::Bernoulli;
  throw CLI::ValidationError("--kind must be gaussian or bernoulli");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

json certificate_to_json(const RipCertificate& cert) {
  return json{{"k", cert.k},
              {"delta_lower", cert.delta_lower},
              {"delta_upper", cert.delta_upper},
              {"method", cert.method == RipMethod::Exhaustive ? "exhaustive" : "sampled"},
              {"trials", cert.trials},
              {"rip_holds", cert.rip_holds()}};
}

SupportSet parse_support_list(const std::string& csv) {
  std::vector<int> idx;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const std::string piece =
        comma == std::string::npos ? csv.substr(start) : csv.substr(start, comma - start);
    if (!piece.empty()) idx.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return SupportSet(std::move(idx));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"sparse-recovery toolkit: greedy pursuit algorithms, RIP "
               "certificates, and reproducible experiments"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "generate a random sensing matrix");
  std::string gen_kind = "gaussian";
  int gen_m = 0;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--kind", gen_kind, "gaussian or bernoulli")->capture_default_str();
  gen_cmd->add_option("--m", gen_m, "rows (measurements)")->required();
  gen_cmd->add_option("--n", gen_n, "columns (signal dimension)")->required();
  gen_cmd->add_option("--seed", gen_seed, "generation seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output file (.csv for text, else binary)")->required();
  gen_cmd->callback([&] {
    const DenseMatrix A = generate({parse_kind(gen_kind), gen_m, gen_n, gen_seed});
    save_matrix_auto(gen_out, A);
    std::cout << json{{"kind", gen_kind}, {"m", gen_m}, {"n", gen_n},
                      {"seed", gen_seed}, {"out", gen_out}}
              << "\n";
  });

  // ---- rip ----------------------------------------------------------------
  auto* rip_cmd = app.add_subcommand("rip", "certify the restricted-isometry constant");
  std::string rip_in;
  int rip_k = 0;
  std::optional<std::uint64_t> rip_sampled_trials;
  std::uint64_t rip_seed = 0;
  rip_cmd->add_option("--in", rip_in, "matrix file")->required();
  rip_cmd->add_option("--k", rip_k, "sparsity level")->required();
  rip_cmd->add_option("--sampled", rip_sampled_trials,
                      "sample this many subsets instead of enumerating");
  rip_cmd->add_option("--seed", rip_seed, "seed for --sampled")->capture_default_str();
  rip_cmd->callback([&] {
    const DenseMatrix A = load_matrix_any(rip_in);
    const RipCertificate cert = rip_sampled_trials
                                    ? rip_sampled(A, rip_k, *rip_sampled_trials, rip_seed)
                                    : rip_exhaustive(A, rip_k);
    std::cout << certificate_to_json(cert) << "\n";
  });

  // ---- concentration --------------------------------------------------------
  auto* conc_cmd = app.add_subcommand("concentration",
                                      "empirical inner-product tail vs the theoretical bound");
  std::string conc_kind = "gaussian";
  int conc_m = 0;
  double conc_eps = 0.0;
  std::uint64_t conc_trials = 0;
  std::uint64_t conc_seed = 0;
  conc_cmd->add_option("--kind", conc_kind, "gaussian or bernoulli")->capture_default_str();
  conc_cmd->add_option("--m", conc_m, "ambient dimension")->required();
  conc_cmd->add_option("--eps", conc_eps, "threshold in (0, 1]")->required();
  conc_cmd->add_option("--trials", conc_trials, "Monte Carlo trials (>= 1000)")->required();
  conc_cmd->add_option("--seed", conc_seed, "base seed")->capture_default_str();
  conc_cmd->callback([&] {
    const ConcentrationReport r =
        concentration_check(parse_kind(conc_kind), conc_m, conc_eps, conc_trials, conc_seed);
    std::cout << json{{"kind", ensemble_kind_name(r.kind)},
                      {"epsilon", r.epsilon},
                      {"m", r.m},
                      {"trials", r.trials},
                      {"hits", r.hits},
                      {"empirical_rate", r.empirical_rate},
                      {"theoretical_bound", r.theoretical_bound}}
              << "\n";
  });

  // ---- solve ----------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "run a pursuit algorithm on y = Ax");
  std::string solve_matrix;
  std::string solve_y;
  std::string solve_algo = "omp";
  std::string solve_rule = "weak";
  double solve_alpha = 1.0;
  std::optional<int> solve_k;
  bool solve_prune = false;
  double solve_tol = tol::default_residual;
  int solve_max_iter = 0;
  std::string solve_trace_out;
  std::string solve_x_out;
  solve_cmd->add_option("--matrix", solve_matrix, "sensing matrix file")->required();
  solve_cmd->add_option("--y", solve_y, "measurement vector file")->required();
  solve_cmd->add_option("--algo", solve_algo, "mp, omp or gp")->capture_default_str();
  solve_cmd->add_option("--rule", solve_rule, "weak or relaxed")->capture_default_str();
  solve_cmd->add_option("--alpha", solve_alpha, "rule parameter")->capture_default_str();
  solve_cmd->add_option("--k", solve_k, "target sparsity (sets iteration budget to 2k)");
  solve_cmd->add_flag("--prune", solve_prune, "prune to the k largest entries each iteration");
  solve_cmd->add_option("--tol", solve_tol, "relative residual stopping tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--max-iter", solve_max_iter, "iteration cap (0 = auto)")
      ->capture_default_str();
  solve_cmd->add_option("--trace-out", solve_trace_out, "per-iteration CSV path");
  solve_cmd->add_option("--x-out", solve_x_out, "write the estimate vector here");
  solve_cmd->callback([&] {
    const DenseMatrix A = load_matrix_any(solve_matrix);
    const DenseVector y = load_vector_any(solve_y);
    PursuitConfig cfg;
    if (solve_algo == "mp") cfg.algorithm = PursuitAlgorithm::MP;
    else if (solve_algo == "omp") cfg.algorithm = PursuitAlgorithm::OMP;
    else if (solve_algo == "gp") cfg.algorithm = PursuitAlgorithm::GP;
    else throw CLI::ValidationError("--algo must be mp, omp or gp");
    if (solve_rule == "weak") cfg.rule.kind = SelectionRuleKind::StagewiseWeak;
    else if (solve_rule == "relaxed") cfg.rule.kind = SelectionRuleKind::RelaxedWeak;
    else throw CLI::ValidationError("--rule must be weak or relaxed");
    cfg.rule.alpha = solve_alpha;
    cfg.sparsity_k = solve_k;
    cfg.prune_to_k = solve_prune;
    cfg.residual_tol = solve_tol;
    cfg.max_iterations = solve_max_iter;
    const PursuitResult res = run(A, y, cfg);
    if (!solve_trace_out.empty()) write_text_file(solve_trace_out, trace_csv(res.trace));
    if (!solve_x_out.empty()) {
      if (has_csv_extension(solve_x_out)) {
        DenseMatrix column(static_cast<int>(res.state.estimate.size()), 1,
                           res.state.estimate);
        save_matrix_csv(solve_x_out, column);
      } else {
        save_vector(solve_x_out, res.state.estimate);
      }
    }
    json out{{"status", pursuit_status_name(res.trace.status)},
             {"iterations", res.state.n},
             {"residual_norm", res.trace.records.empty()
                                   ? res.trace.initial_residual_norm
                                   : res.trace.records.back().residual_norm},
             {"support_size", res.state.support.size()},
             {"support", res.state.support.indices()}};
    if (!res.trace.stall_reason.empty()) out["stall_reason"] = res.trace.stall_reason;
    std::cout << out << "\n";
  });

  // ---- bounds ----------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form constants for (delta_k, delta_k1, k)");
  double bounds_delta = 0.0;
  double bounds_delta1 = 0.0;
  int bounds_k = 0;
  bounds_cmd->add_option("--delta", bounds_delta, "delta_k")->required();
  bounds_cmd->add_option("--delta1", bounds_delta1, "delta_{k+1}")->required();
  bounds_cmd->add_option("--k", bounds_k, "sparsity level")->required();
  bounds_cmd->callback([&] {
    const BoundsReport r = compute_bounds_report(bounds_delta, bounds_delta1, bounds_k);
    std::cout << json{{"delta_k", r.delta_k},
                      {"delta_k1", r.delta_k1},
                      {"k", r.k},
                      {"alpha_min_weak", r.alpha_min_weak},
                      {"alpha_min_relaxed", r.alpha_min_relaxed},
                      {"alpha_max_relaxed", r.alpha_max_relaxed},
                      {"C_k", r.C_k},
                      {"C_prime_k", r.C_prime_k},
                      {"D_k", r.D_k},
                      {"gp_plain", r.gp_plain},
                      {"gp_weak", r.gp_weak},
                      {"gp_relaxed", r.gp_relaxed},
                      {"mp_weak", r.mp_weak},
                      {"mp_relaxed", r.mp_relaxed}}
              << "\n";
  });

  // ---- verify-rip-lemmas ------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify-rip-lemmas", "probe the near-isometry inequalities against an exhaustive certificate");
  std::string verify_matrix;
  int verify_k = 0;
  std::uint64_t verify_trials = 0;
  std::uint64_t verify_seed = 0;
  std::string verify_gamma;
  std::string verify_gamma_prime;
  verify_cmd->add_option("--matrix", verify_matrix, "matrix file")->required();
  verify_cmd->add_option("--k", verify_k, "certificate order")->required();
  verify_cmd->add_option("--trials", verify_trials, "random probes per inequality")->required();
  verify_cmd->add_option("--seed", verify_seed, "probe seed")->capture_default_str();
  verify_cmd->add_option("--gamma", verify_gamma,
                         "comma-separated support (default: first ceil(k/2) columns)");
  verify_cmd->add_option("--gamma-prime", verify_gamma_prime,
                         "comma-separated disjoint support (default: next floor(k/2) columns)");
  verify_cmd->callback([&] {
    const DenseMatrix A = load_matrix_any(verify_matrix);
    const RipCertificate cert = rip_exhaustive(A, verify_k);
    SupportSet gamma, gamma_prime;
    if (!verify_gamma.empty()) {
      gamma = parse_support_list(verify_gamma);
      gamma_prime = parse_support_list(verify_gamma_prime);
    } else {
      std::vector<int> g, gp;
      const int half = (verify_k + 1) / 2;
      for (int i = 0; i < half; ++i) g.push_back(i);
      for (int i = half; i < verify_k; ++i) gp.push_back(i);
      gamma = SupportSet(g);
      gamma_prime = SupportSet(gp);
    }
    json out{{"delta", cert.delta()}, {"trials", verify_trials}};
    try {
      Rng rng(verify_seed);
      const RipConsequenceReport rep =
          check_rip_consequences(A, gamma, gamma_prime, cert, verify_trials, rng);
      const AdjointBoundReport adj =
          check_adjoint_lower_bound(A, gamma, cert, verify_trials, rng);
      out["max_op_ratio"] = rep.max_op_ratio;
      out["min_gram_ratio"] = rep.min_gram_ratio;
      out["max_gram_ratio"] = rep.max_gram_ratio;
      out["min_inv_gram_ratio"] = rep.min_inv_gram_ratio;
      out["max_inv_gram_ratio"] = rep.max_inv_gram_ratio;
      out["max_cross_ratio"] = rep.max_cross_ratio;
      out["adjoint_min_ratio"] = adj.min_ratio;
      out["adjoint_bound"] = adj.bound;
      out["pass"] = true;
      std::cout << out << "\n";
    } catch (const std::logic_error& e) {
      out["pass"] = false;
      out["violation"] = e.what();
      std::cout << out << "\n";
      throw;
    }
  });

  // ---- phase ----------------------------------------------------------------
  auto* phase_cmd = app.add_subcommand("phase", "recovery-fraction sweep over an (m, k) grid");
  std::string phase_config;
  std::string phase_out_dir;
  bool phase_trials_out = false;
  phase_cmd->add_option("--config", phase_config, "key-value spec file")->required();
  phase_cmd->add_option("--out-dir", phase_out_dir, "directory for summary.csv")->required();
  phase_cmd->add_flag("--per-trial", phase_trials_out, "also write trials.csv");
  phase_cmd->callback([&] {
    const PhaseTransitionSpec spec = load_phase_config(phase_config);
    const PhaseTable table = run_phase_transition(spec);
    std::filesystem::create_directories(phase_out_dir);
    const std::string summary_path =
        (std::filesystem::path(phase_out_dir) / "summary.csv").string();
    write_text_file(summary_path, phase_summary_csv(table));
    if (phase_trials_out)
      write_text_file((std::filesystem::path(phase_out_dir) / "trials.csv").string(),
                      phase_trials_csv(table));
    std::cout << json{{"cells", table.cells.size()}, {"summary", summary_path}} << "\n";
  });

  // ---- compressible ------------------------------------------------------------
  auto* comp_cmd = app.add_subcommand("compressible",
                                      "mean-SNR comparison on power-law signals");
  std::string comp_config;
  std::string comp_out;
  comp_cmd->add_option("--config", comp_config, "key-value spec file")->required();
  comp_cmd->add_option("--out", comp_out, "output CSV path")->required();
  comp_cmd->callback([&] {
    const CompressibleStudySpec spec = load_compressible_config(comp_config);
    const std::vector<CompressibleRow> rows = run_compressible_study(spec);
    write_text_file(comp_out, compressible_csv(rows));
    std::cout << json{{"solvers", rows.size()}, {"out", comp_out}} << "\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "pursuit-lab: " << e.what() << "\n";
    return 1;
  }
}
