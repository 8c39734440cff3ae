#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "covsel/errors.hpp"
#include "covsel/kernels.hpp"
#include "covsel/linalg.hpp"
#include "covsel/matrix_io.hpp"
#include "covsel/model.hpp"
#include "covsel/solve.hpp"
#include "covsel/synth.hpp"

namespace covsel::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

SolverKind solver_or_throw(const std::string& name) {
  if (auto kind = parse_solver_kind(name)) return *kind;
  throw InvalidArgument("unknown solver '" + name +
                        "' (expected bcd, nesterov-primal or nesterov-dual)");
}

SolveOptions solve_options(const JobSpec& spec, double default_eps) {
  SolveOptions opts;
  opts.kind = solver_or_throw(spec.solver);
  opts.epsilon = spec.epsilon.value_or(default_eps);
  opts.max_sweeps = spec.max_sweeps;
  opts.max_iters = spec.max_iters;
  opts.trace_every = spec.trace_every;
  return opts;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
}

std::string csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return io::format_double(v);
}

ordered_json json_double(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

GroundTruth truth_for(const JobSpec& spec) {
  if (spec.truth.empty()) return gen_sparse_precision(spec.n, spec.density, spec.seed);
  GroundTruth gt;
  gt.a = io::read_matrix(spec.truth);
  gt.seed = spec.seed;
  for (std::size_t i = 0; i < gt.a.n(); ++i) {
    for (std::size_t j = 0; j < gt.a.n(); ++j) {
      if (gt.in_support(i, j)) gt.support.emplace_back(i, j);
    }
  }
  return gt;
}

}  // namespace

int cmd_solve(const JobSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    if (spec.input.empty()) throw InvalidArgument("solve needs --input");
    const SymMatrix sigma = io::read_matrix(spec.input);
    const Problem p(sigma, spec.rho, spec.alpha, spec.beta.value_or(kUnbounded));
    const SolveOptions opts = solve_options(spec, 0.1);
    const Solution sol = solve(p, opts);
    for (const auto& w : sol.warnings) log << "warning: " << w << "\n";

    if (!spec.out_x.empty()) io::write_dense(spec.out_x, sol.x);
    if (!spec.out_sigma.empty()) io::write_dense(spec.out_sigma, sol.sigma_hat);
    if (!spec.pattern.empty()) {
      const double thr = spec.threshold.value_or(spec.rho);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < sol.x.n(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (std::abs(sol.x(i, j)) > thr) pairs.emplace_back(i, j);
        }
      }
      io::write_pattern(spec.pattern, sol.x.n(), pairs);
    }
    ordered_json report;
    report["n"] = p.n();
    report["rho"] = p.rho();
    report["solver"] = std::string(to_string(opts.kind));
    report["primal_obj"] = json_double(sol.primal_obj);
    report["dual_obj"] = json_double(sol.dual_obj);
    report["gap"] = json_double(sol.gap);
    report["iterations"] = sol.iterations;
    report["wall_seconds"] = sol.wall_seconds;
    if (!spec.report.empty()) write_file(spec.report, report.dump(2) + "\n");
    else log << report.dump(2) << "\n";

    if (!spec.trace.empty()) {
      std::string csv = "iteration,seconds,gap\n";
      for (const TracePoint& t : sol.trace) {
        csv += std::to_string(t.iteration) + "," + csv_double(t.seconds) + "," +
               csv_double(t.gap) + "\n";
      }
      write_file(spec.trace, csv);
    }
    return sol.converged ? kExitOk : kExitBudget;
  });
}

int cmd_gen(const JobSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    const GroundTruth gt = gen_sparse_precision(spec.n, spec.density, spec.seed);
    // Noise uses a seed stream distinct from the pattern's.
    const SymMatrix sigma = make_noisy_cov(gt, spec.sigma, spec.seed + 1);
    const fs::path dir(spec.out_dir);
    fs::create_directories(dir);
    io::write_dense(dir / "precision.txt", gt.a);
    io::write_dense(dir / "precision_inv.txt", inverse_spd(gt.a));
    io::write_dense(dir / "sigma.txt", sigma);
    io::write_pattern(dir / "support.mtx", gt.a.n(), gt.support);
    log << "wrote precision.txt, precision_inv.txt, sigma.txt, support.mtx to " << dir.string()
        << "\n";
    return kExitOk;
  });
}

int cmd_recover(const JobSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    const GroundTruth gt = truth_for(spec);
    std::vector<double> rhos = spec.rhos;
    if (rhos.empty()) rhos.push_back(spec.sigma);
    std::vector<std::uint64_t> seeds;
    for (std::size_t k = 1; k <= spec.seeds; ++k) seeds.push_back(spec.seed + k);

    SweepOptions opts;
    opts.solver = solve_options(spec, 0.1);
    opts.threshold = spec.threshold;
    const std::vector<SweepRow> rows = rho_sweep(gt, spec.sigma, rhos, seeds, opts);
    const std::vector<SweepSummary> summary = summarize(rows);

    std::string csv =
        "rho,seed,error_percent,false_zeros,false_nonzeros,min_on_support,max_off_support,"
        "gap,wall_seconds\n";
    for (const SweepRow& r : rows) {
      if (!r.ok) log << "warning: rho=" << r.rho << " seed=" << r.seed << ": " << r.error << "\n";
      const double nan = std::nan("");
      csv += csv_double(r.rho) + "," + std::to_string(r.seed) + "," +
             csv_double(r.ok ? r.report.error_percent : nan) + "," +
             (r.ok ? std::to_string(r.report.false_zeros) : "nan") + "," +
             (r.ok ? std::to_string(r.report.false_nonzeros) : "nan") + "," +
             csv_double(r.ok ? r.report.min_on_support : nan) + "," +
             csv_double(r.ok ? r.report.max_off_support : nan) + "," + csv_double(r.gap) +
             "," + csv_double(r.wall_seconds) + "\n";
    }
    if (!spec.csv.empty()) write_file(spec.csv, csv);
    else log << csv;

    if (!spec.summary_csv.empty()) {
      std::string table =
          "rho,runs,failures,mean_error_percent,std_error_percent,mean_min_on_support,"
          "mean_mean_on_support,mean_max_off_support,mean_mean_off_support,interval_count\n";
      for (const SweepSummary& s : summary) {
        table += csv_double(s.rho) + "," + std::to_string(s.runs) + "," +
                 std::to_string(s.failures) + "," + csv_double(s.mean_error_percent) + "," +
                 csv_double(s.std_error_percent) + "," + csv_double(s.mean_min_on_support) +
                 "," + csv_double(s.mean_mean_on_support) + "," +
                 csv_double(s.mean_max_off_support) + "," +
                 csv_double(s.mean_mean_off_support) + "," + std::to_string(s.interval_count) +
                 "\n";
      }
      write_file(spec.summary_csv, table);
    }

    ordered_json js;
    js["n"] = gt.a.n();
    js["sigma"] = spec.sigma;
    js["threshold"] = spec.threshold.value_or(spec.sigma);
    js["solver"] = spec.solver;
    js["seeds"] = seeds.size();
    ordered_json per_rho = ordered_json::array();
    std::optional<double> best_rho;
    double best_err = std::numeric_limits<double>::infinity();
    for (const SweepSummary& s : summary) {
      ordered_json e;
      e["rho"] = s.rho;
      e["runs"] = s.runs;
      e["failures"] = s.failures;
      e["mean_error_percent"] = json_double(s.mean_error_percent);
      e["std_error_percent"] = json_double(s.std_error_percent);
      e["interval_count"] = s.interval_count;
      per_rho.push_back(e);
      if (std::isfinite(s.mean_error_percent) && s.mean_error_percent < best_err) {
        best_err = s.mean_error_percent;
        best_rho = s.rho;
      }
    }
    js["per_rho"] = per_rho;
    js["best_rho"] = best_rho ? ordered_json(*best_rho) : ordered_json(nullptr);
    if (!spec.summary.empty()) write_file(spec.summary, js.dump(2) + "\n");
    else log << js.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_bench(const JobSpec& spec, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<std::size_t> sizes = spec.sizes;
    if (sizes.empty()) sizes = {30, 60, 100};
    std::vector<std::string> solvers = spec.solvers;
    if (solvers.empty()) solvers = {"bcd", "nesterov-dual"};
    std::string csv = "n,solver,seconds,gap,converged,iterations\n";
    for (std::size_t n : sizes) {
      const GroundTruth gt = gen_sparse_precision(n, spec.density, spec.seed);
      const Problem p(make_noisy_cov(gt, spec.sigma, spec.seed + 1), spec.rho);
      for (const std::string& name : solvers) {
        JobSpec cell = spec;
        cell.solver = name;
        const SolveOptions opts = solve_options(cell, 1.0);
        const Solution sol = solve(p, opts);
        csv += std::to_string(n) + "," + name + "," + csv_double(sol.wall_seconds) + "," +
               csv_double(sol.gap) + "," + (sol.converged ? "1" : "0") + "," +
               std::to_string(sol.iterations) + "\n";
        log << "n=" << n << " " << name << ": " << sol.wall_seconds << " s, gap " << sol.gap
            << "\n";
      }
    }
    if (!spec.csv.empty()) write_file(spec.csv, csv);
    else log << csv;
    return kExitOk;
  });
}

int run(const JobSpec& spec, std::ostream& log) {
  if (spec.command == "solve") return cmd_solve(spec, log);
  if (spec.command == "gen") return cmd_gen(spec, log);
  if (spec.command == "recover") return cmd_recover(spec, log);
  if (spec.command == "bench") return cmd_bench(spec, log);
  log << "error: unknown command '" << spec.command << "'\n";
  return kExitError;
}

int main_entry(int argc, char** argv) {
  kernels::configure_threads_from_env();
  CLI::App app{"Sparse inverse covariance estimation with duality-gap certificates"};
  app.require_subcommand(1);
  JobSpec spec;

  const auto add_solver_flags = [&spec](CLI::App* cmd) {
    cmd->add_option("--solver", spec.solver, "bcd | nesterov-primal | nesterov-dual")
        ->check(CLI::IsMember({"bcd", "nesterov-primal", "nesterov-dual"}));
    cmd->add_option("--epsilon", spec.epsilon, "target duality gap");
    cmd->add_option("--max-sweeps", spec.max_sweeps, "BCD sweep cap")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", spec.max_iters, "Nesterov iteration cap");
    cmd->add_option("--trace-every", spec.trace_every, "Nesterov gap checkpoint period");
  };
  const auto add_instance_flags = [&spec](CLI::App* cmd) {
    cmd->add_option("--n", spec.n, "dimension")->check(CLI::Range(2, 100000));
    cmd->add_option("--density", spec.density, "off-diagonal density of A");
    cmd->add_option("--sigma", spec.sigma, "uniform noise magnitude");
    cmd->add_option("--seed", spec.seed, "random seed");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance from a matrix file");
  solve_cmd->add_option("--input,-i", spec.input, "covariance matrix file")->required();
  solve_cmd->add_option("--rho", spec.rho, "penalty")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--alpha", spec.alpha, "lower eigenvalue bound");
  solve_cmd->add_option("--beta", spec.beta, "upper eigenvalue bound");
  solve_cmd->add_option("--out-x", spec.out_x, "write X here");
  solve_cmd->add_option("--out-sigma", spec.out_sigma, "write sigma_hat here");
  solve_cmd->add_option("--report", spec.report, "JSON report path (stdout if omitted)");
  solve_cmd->add_option("--trace", spec.trace, "CSV convergence trace path");
  solve_cmd->add_option("--pattern", spec.pattern, "MatrixMarket nonzero pattern of X");
  solve_cmd->add_option("--threshold", spec.threshold, "pattern threshold (default rho)");
  add_solver_flags(solve_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded synthetic instance");
  add_instance_flags(gen_cmd);
  gen_cmd->add_option("--out-dir", spec.out_dir, "output directory");

  CLI::App* rec_cmd = app.add_subcommand("recover", "structure recovery over a rho sweep");
  add_instance_flags(rec_cmd);
  add_solver_flags(rec_cmd);
  rec_cmd->add_option("--truth", spec.truth, "ground-truth precision file (else generated)");
  rec_cmd->add_option("--rhos", spec.rhos, "penalties to sweep (default: sigma)")->delimiter(',');
  rec_cmd->add_option("--seeds", spec.seeds, "noise samples per rho");
  rec_cmd->add_option("--threshold", spec.threshold, "classification threshold (default sigma)");
  rec_cmd->add_option("--csv", spec.csv, "per-run CSV");
  rec_cmd->add_option("--summary-csv", spec.summary_csv, "per-rho CSV");
  rec_cmd->add_option("--summary", spec.summary, "summary JSON");

  CLI::App* bench_cmd = app.add_subcommand("bench", "time solvers across problem sizes");
  add_instance_flags(bench_cmd);
  add_solver_flags(bench_cmd);
  bench_cmd->add_option("--sizes", spec.sizes, "problem sizes")->delimiter(',');
  bench_cmd->add_option("--solvers", spec.solvers, "solvers to time")->delimiter(',');
  bench_cmd->add_option("--rho", spec.rho, "penalty");
  bench_cmd->add_option("--csv", spec.csv, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  spec.command = app.get_subcommands().front()->get_name();
  return run(spec, std::cerr);
}

}  // namespace covsel::cli
