// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit code is
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset (criterion 9 needs 3 and 6 and runs them itself if absent).

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "covsel/bcd.hpp"
#include "covsel/errors.hpp"
#include "covsel/linalg.hpp"
#include "covsel/model.hpp"
#include "covsel/nesterov.hpp"
#include "covsel/solve.hpp"
#include "covsel/synth.hpp"
#include "reference_solver.hpp"
#include "support.hpp"

using namespace covsel;
using covsel::test::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) first_ << (first_.tellp() > 0 ? "; " : "") << what;
  }
  bool any() const { return count_ > 0; }
  std::string summary() const {
    return std::to_string(count_) + " violation(s): " + first_.str();
  }

 private:
  std::size_t count_ = 0;
  std::ostringstream first_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Checkpoint (gap, primal, dual) triples gathered by criteria 3 and 6.
struct Checkpoint {
  std::string source;
  double gap, primal, dual;
};
std::vector<Checkpoint> g_checkpoints;
bool g_have_3 = false;
bool g_have_6 = false;

void record_trace(const std::string& source, const Solution& sol) {
  for (const TracePoint& t : sol.trace) {
    g_checkpoints.push_back({source, t.gap, t.primal_obj, t.dual_obj});
  }
}

// ‖X‖₁ with the diagonal, computed directly.
double l1(const Eigen::MatrixXd& x) { return x.cwiseAbs().sum(); }

Outcome criterion_1() {
  Rng rng(101);
  Failures f;
  double worst_x = 0, worst_gap = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 20; ++k) {
    const double s = test::uniform(rng, 0.05, 10.0);
    const double rho = test::uniform(rng, 0.01, 2.0);
    const double expect = 1.0 / (s + rho);
    const Problem p(SymMatrix::diagonal(Eigen::VectorXd::Constant(1, s)), rho);
    for (SolverKind kind : {SolverKind::bcd, SolverKind::nesterov_primal, SolverKind::nesterov_dual}) {
      SolveOptions opts;
      opts.kind = kind;
      opts.epsilon = 1e-6;
      const Solution sol = solve(p, opts);
      const double dx = std::abs(sol.x(0, 0) - expect);
      worst_x = std::max(worst_x, dx);
      worst_gap = std::max(worst_gap, sol.gap);
      if (!(dx <= 1e-6) || !(sol.gap <= 1e-6)) {
        f.add(std::string(to_string(kind)) + " s=" + fmt(s) + " rho=" + fmt(rho) +
              " |dx|=" + fmt(dx) + " gap=" + fmt(sol.gap));
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) f.add("runtime " + fmt(secs) + " s >= 1 s");
  return {!f.any(), f.any() ? f.summary()
                            : "max |x - 1/(s+rho)| " + fmt(worst_x) + ", max gap " + fmt(worst_gap)};
}

Outcome criterion_2() {
  Rng rng(202);
  Failures f;
  double worst = 0, worst_iterate = 0;
  for (std::size_t n : {1u, 2u, 5u, 10u, 15u, 20u}) {
    const SymMatrix sigma = test::random_spd(n, rng, 0.5, 2.0);
    const Eigen::MatrixXd inv = inverse_spd(sigma).dense();
    const auto ev = sym_eig(SymMatrix::from_symmetric(inv)).eigenvalues;
    const double alpha = 0.9 * ev.minCoeff(), beta = 1.1 * ev.maxCoeff();
    const Problem p(sigma, 0.0, alpha, beta);
    SolveOptions opts;
    opts.kind = SolverKind::nesterov_primal;
    opts.epsilon = 1e-4;
    const Solution sol = solve(p, opts);
    const double rel = (sol.x.dense() - inv).norm() / inv.norm();
    worst = std::max(worst, rel);
    if (!(rel <= 1e-3)) f.add("n=" + std::to_string(n) + " rel=" + fmt(rel));

    // Diagnostic only: the projected-gradient iterate after N(ε) steps.
    const SmoothingParams sp = smoothing_params(p, 1e-4);
    NesterovPrimalState st = nesterov_primal_init(p, sp);
    SymMatrix y;
    for (std::size_t k = 0, N = iteration_bound(sp, 1e-4); k < N; ++k) y = nesterov_step(st, p, sp).y;
    worst_iterate = std::max(worst_iterate, (y.dense() - inv).norm() / inv.norm());
  }
  return {!f.any(), f.any() ? f.summary()
                            : "max relative error " + fmt(worst) +
                                  " (raw iterate after N(eps) steps: " + fmt(worst_iterate) + ")"};
}

Outcome criterion_3() {
  Rng rng(303);
  Failures f;
  double worst_bcd = 0, worst_nes = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n : {2u, 3u, 5u}) {
    for (int k = 0; k < 20; ++k) {
      const SymMatrix sigma = test::random_sample_cov(n, 2 * n + 2, rng);
      const double rho = test::uniform(rng, 0.05, 0.4);
      const Problem p(sigma, rho);
      const auto ref = test::reference_dual_solve(sigma.dense(), rho, 1e-9);
      const std::string tag = "n=" + std::to_string(n) + "#" + std::to_string(k);

      BcdConfig bc;
      bc.gap_tol = 1e-7;
      bc.max_sweeps = 500;
      const Solution b = bcd_solve(p, bc);
      record_trace("3/bcd " + tag, b);
      const double db = std::abs(b.dual_obj - ref.dual_obj);
      worst_bcd = std::max(worst_bcd, db);
      if (!(db <= 1e-5)) f.add("bcd " + tag + " |d|=" + fmt(db));

      NesterovConfig nc;
      nc.variant = NesterovVariant::dual;
      nc.epsilon = 1e-5;
      const Solution d = nesterov_dual_solve(p, nc);
      record_trace("3/nesterov-dual " + tag, d);
      const double dn = std::abs(d.dual_obj - ref.dual_obj);
      worst_nes = std::max(worst_nes, dn);
      if (!(dn <= 1e-5)) f.add("nesterov-dual " + tag + " |d|=" + fmt(dn));
    }
  }
  g_have_3 = true;
  const double secs = seconds_since(t0);
  if (secs >= 60.0) f.add("runtime " + fmt(secs) + " s >= 60 s");
  return {!f.any(), f.any() ? f.summary()
                            : "max |dual - reference|: bcd " + fmt(worst_bcd) + ", nesterov-dual " +
                                  fmt(worst_nes) + " (" + fmt(secs) + " s)"};
}

Outcome criterion_4() {
  Rng rng(404);
  Failures f;
  double worst = 0;
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 3 + 2 * inst;
    const SymMatrix sigma = test::random_sample_cov(n, 3 * n, rng);
    const double rho = test::uniform(rng, 0.05, 0.5);
    const double eps = std::pow(10.0, -inst + 1);
    const Problem p0(sigma, rho);
    const Bounds b = resolved_bounds(p0);
    const Problem p = p0.with_bounds(b.alpha, b.beta);
    const SmoothingParams sp = smoothing_params(p, eps);
    for (int k = 0; k < 100; ++k) {
      // Spectra spread over the whole box, so entries range from tiny to large.
      const double hi = b.alpha + (b.beta - b.alpha) * test::uniform(rng, 0.0, 1.0);
      const SymMatrix x = test::random_spd(n, rng, b.alpha, std::max(hi, b.alpha * 1.01));
      const Eigen::MatrixXd& xd = x.dense();
      Eigen::LLT<Eigen::MatrixXd> llt(xd);
      const Eigen::MatrixXd l = llt.matrixL();
      const double f_hat = -2.0 * l.diagonal().array().log().sum() + sigma.dense().cwiseProduct(xd).sum();
      const double diff = std::abs(smoothed_objective(x, p, sp) - (f_hat + rho * l1(xd)));
      worst = std::max(worst, diff / eps);
      if (!(diff <= eps / 2 + 1e-12)) f.add("inst " + std::to_string(inst) + " diff/eps=" + fmt(diff / eps));
    }
  }
  return {!f.any(), f.any() ? f.summary() : "max |f_eps - f| / eps = " + fmt(worst) + " (bound 0.5)"};
}

Outcome criterion_5() {
  Rng rng(505);
  Failures f;
  double worst = 0;
  for (int inst = 0; inst < 5; ++inst) {
    const std::size_t n = 2 + inst;
    const SymMatrix sigma = test::random_sample_cov(n, 3 * n, rng);
    const double rho = test::uniform(rng, 0.05, 0.5);
    const Problem p0(sigma, rho);
    const Bounds b = resolved_bounds(p0);
    const Problem p = p0.with_bounds(b.alpha, b.beta);
    const SmoothingParams sp = smoothing_params(p, 0.1);
    for (int k = 0; k < 20; ++k) {
      const SymMatrix x = test::random_spd(n, rng, 0.3, 3.0);
      const Eigen::MatrixXd g = grad_f_eps(x, p, sp).dense();
      Eigen::MatrixXd fd(n, n);
      const double h = 1e-6;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
          e(i, j) = e(j, i) = 1.0;
          const double fp = smoothed_objective(SymMatrix(x.dense() + h * e), p, sp);
          const double fm = smoothed_objective(SymMatrix(x.dense() - h * e), p, sp);
          const double d = (fp - fm) / (2 * h) / (i == j ? 1.0 : 2.0);
          fd(i, j) = fd(j, i) = d;
        }
      }
      const double rel = (fd - g).norm() / g.norm();
      worst = std::max(worst, rel);
      if (!(rel <= 1e-4)) f.add("inst " + std::to_string(inst) + " rel=" + fmt(rel));
    }
  }
  return {!f.any(), f.any() ? f.summary() : "max relative error " + fmt(worst)};
}

Outcome criterion_6() {
  Rng rng(606);
  Failures f;
  std::size_t updates = 0;
  double max_rise = -1e300;
  const std::size_t sizes[] = {3, 5, 8, 12, 20, 30, 40, 50};
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = sizes[inst % 8];
    SymMatrix sigma;
    double rho;
    if (inst % 2 == 0) {
      // Rank-deficient sample covariance.
      sigma = test::random_sample_cov(n, n / 2 + 1, rng);
      rho = test::uniform(rng, 0.05, 0.3);
    } else {
      const GroundTruth gt = gen_sparse_precision(n, 0.1, 1000 + inst);
      sigma = make_noisy_cov(gt, 0.05, 2000 + inst);
      rho = 0.1;
      if (!is_positive_definite(sigma + rho * SymMatrix::identity(n))) rho = 0.3;
    }
    const Problem p(sigma, rho);
    const std::string tag = "inst " + std::to_string(inst) + " (n=" + std::to_string(n) + ")";
    double prev = dual_objective(p, bcd_init(p).sigma_hat);
    const auto observe = [&](std::size_t col, const SymMatrix& sh) {
      ++updates;
      const std::string where = tag + " col " + std::to_string(col);
      Eigen::LLT<Eigen::MatrixXd> llt(sh.dense());
      if (llt.info() != Eigen::Success) {
        f.add(where + " not PD");
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (sh(i, i) != sigma(i, i) + rho) f.add(where + " diagonal changed");
      }
      const double box = (sh.dense() - sigma.dense()).cwiseAbs().maxCoeff();
      if (!(box <= rho + 1e-12)) f.add(where + " box violated by " + fmt(box - rho));
      const double d = dual_objective(p, sh);
      max_rise = std::max(max_rise, d - prev);
      if (!(d <= prev + 1e-9)) f.add(where + " dual rose by " + fmt(d - prev));
      prev = d;
      const auto [gap, x] = duality_gap_with_primal(p, sh);
      g_checkpoints.push_back({"6/column " + where, gap, primal_objective(p, x), d});
    };
    BcdConfig cfg;
    cfg.gap_tol = 1e-6;
    cfg.max_sweeps = 100;
    const Solution sol = bcd_solve(p, cfg, observe);
    record_trace("6/bcd " + tag, sol);
  }
  g_have_6 = true;
  return {!f.any(), f.any() ? f.summary()
                            : std::to_string(updates) + " column updates checked, max dual change " +
                                  fmt(max_rise)};
}

Outcome criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  const GroundTruth gt = gen_sparse_precision(30, 0.05, 1);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 2; s <= 11; ++s) seeds.push_back(s);
  SweepOptions opts;
  opts.solver.max_sweeps = 20;
  const auto rows = rho_sweep(gt, 0.13, {0.13}, seeds, opts);
  std::size_t intervals = 0, failed = 0;
  for (const SweepRow& r : rows) {
    failed += !r.ok;
    intervals += r.ok && r.report.threshold_interval.has_value();
  }
  const double secs = seconds_since(t0);
  const bool pass = intervals >= 8 && secs < 300.0;
  return {pass, "non-empty threshold interval in " + std::to_string(intervals) + "/10 seeds (" +
                    std::to_string(failed) + " failed solves, " + fmt(secs) + " s)"};
}

Outcome criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  const double sigma = 0.1;
  const GroundTruth gt = gen_sparse_precision(50, 0.04, 1);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 2; s <= 11; ++s) seeds.push_back(s);
  SweepOptions opts;
  opts.solver.max_sweeps = 20;
  const auto rows = rho_sweep(gt, sigma, {sigma / 10, sigma, 10 * sigma}, seeds, opts);
  const auto summary = summarize(rows);
  std::map<double, double> mean;
  std::size_t failures = 0;
  std::ostringstream detail;
  for (const SweepSummary& s : summary) {
    mean[s.rho] = s.mean_error_percent;
    failures += s.failures;
    detail << "rho=" << fmt(s.rho) << ": " << fmt(s.mean_error_percent) << "% +- "
           << fmt(s.std_error_percent) << "  ";
  }
  const double secs = seconds_since(t0);
  detail << "(" << failures << " failed solves, " << fmt(secs) << " s)";
  const bool pass = failures == 0 && mean[sigma] < mean[sigma / 10] &&
                    mean[sigma] < mean[10 * sigma] && secs < 600.0;
  return {pass, detail.str()};
}

Outcome criterion_9() {
  Failures f;
  double min_gap = 1e300, worst_identity = 0;
  for (const Checkpoint& c : g_checkpoints) {
    min_gap = std::min(min_gap, c.gap);
    const double id = std::abs(c.gap - (c.dual - c.primal));
    worst_identity = std::max(worst_identity, id);
    if (!(c.gap >= -1e-7)) f.add(c.source + " gap " + fmt(c.gap));
    if (!(id <= 1e-9)) f.add(c.source + " identity off by " + fmt(id));
  }
  if (g_checkpoints.empty()) f.add("no checkpoints collected");
  return {!f.any(), f.any() ? f.summary()
                            : std::to_string(g_checkpoints.size()) + " checkpoints, min gap " +
                                  fmt(min_gap) + ", max |gap - (dual - primal)| " +
                                  fmt(worst_identity)};
}

Outcome criterion_10() {
  Rng rng(1010);
  Failures f;
  std::ostringstream notes;
  std::size_t runs = 0;
  for (std::size_t n : {2u, 4u, 6u, 8u, 10u}) {
    for (double eps : {0.5, 0.1}) {
      const SymMatrix sigma = test::random_sample_cov(n, 3 * n, rng);
      const double rho = test::uniform(rng, 0.05, 0.3);
      const Problem p0(sigma, rho);
      const Bounds b = resolved_bounds(p0);
      const std::size_t N = iteration_bound(smoothing_params(p0.with_bounds(b.alpha, b.beta), eps), eps);
      NesterovConfig cfg;
      cfg.epsilon = eps;
      cfg.trace_every = 1;
      const Solution sol = nesterov_primal_solve(p0, cfg);
      ++runs;
      const std::string tag = "n=" + std::to_string(n) + " eps=" + fmt(eps);
      if (!sol.converged || sol.iterations > N) {
        f.add(tag + " gap " + fmt(sol.gap) + " after " + std::to_string(sol.iterations) + "/" +
              std::to_string(N));
      } else if (sol.iterations * 100 < N) {
        notes << " [" << tag << ": " << sol.iterations << "/" << N << "]";
      }
    }
  }
  std::string detail = std::to_string(runs) + " runs within N(eps)";
  if (!notes.str().empty()) detail += "; warning, converged far earlier than the bound:" + notes.str();
  return {!f.any(), f.any() ? f.summary() : detail};
}

Outcome criterion_11() {
  Rng rng(1111);
  const GroundTruth gt = gen_sparse_precision(300, 0.01, 11);
  // Sample covariance of Gaussian draws with precision A.
  const Eigen::MatrixXd cov = inverse_spd(gt.a).dense();
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(cov).matrixL();
  std::normal_distribution<double> gauss;
  const int m = 600;
  Eigen::MatrixXd z(300, m);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = gauss(rng);
  const Eigen::MatrixXd draws = l * z;
  const SymMatrix sigma = SymMatrix::from_symmetric(draws * draws.transpose() / m);
  try {
    BcdConfig cfg;
    cfg.max_sweeps = 4;
    cfg.gap_tol = 1e-12;  // run all four sweeps
    const Solution sol = bcd_solve(Problem(sigma, 0.1), cfg);
    const bool pass = std::isfinite(sol.gap);
    return {pass, "gap " + fmt(sol.gap) + " after " + std::to_string(sol.iterations) +
                      " sweeps, wall time " + fmt(sol.wall_seconds) + " s"};
  } catch (const std::exception& e) {
    return {false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"scalar analytic optimum", criterion_1},
      {"unpenalized consistency", criterion_2},
      {"oracle equivalence", criterion_3},
      {"smoothing sandwich", criterion_4},
      {"gradient correctness", criterion_5},
      {"BCD invariants", criterion_6},
      {"structure recovery", criterion_7},
      {"rho sensitivity", criterion_8},
      {"gap certification", criterion_9},
      {"iteration-bound sanity", criterion_10},
      {"scale smoke test", criterion_11},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= 11; ++i) selected.insert(i);
  }
  if (selected.count(9)) {
    // Checkpoints come from the runs of criteria 3 and 6.
    if (!selected.count(3)) criterion_3();
    if (!selected.count(6)) criterion_6();
  }

  int failed = 0;
  for (int id : selected) {
    if (id < 1 || id > 11) continue;
    const auto& [name, fn] = criteria[id - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %-24s %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(selected.size()) - failed,
              selected.size());
  return failed == 0 ? 0 : 1;
}
