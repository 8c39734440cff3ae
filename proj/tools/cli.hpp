#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace covsel::cli {

/// Parsed command line of one invocation.
struct JobSpec {
  std::string command;

  // solve
  std::string input;
  std::string out_x;
  std::string out_sigma;
  std::string report;
  std::string trace;
  std::string pattern;
  double rho = 0.1;
  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<double> epsilon;  // default 0.1 (solve, recover), 1 (bench)
  std::string solver = "bcd";
  std::size_t max_sweeps = 4;
  std::optional<std::size_t> max_iters;
  std::size_t trace_every = 10;
  std::optional<double> threshold;

  // gen / recover / bench instance generation
  std::size_t n = 30;
  double density = 0.05;
  double sigma = 0.13;
  std::uint64_t seed = 1;
  std::string out_dir = ".";

  // recover
  std::string truth;
  std::vector<double> rhos;
  std::size_t seeds = 10;
  std::string csv;
  std::string summary_csv;
  std::string summary;

  // bench
  std::vector<std::size_t> sizes;
  std::vector<std::string> solvers;
};

// Exit codes: 0 success (gap ≤ ε for solve), 2 budget exhausted, 1 error.
int cmd_solve(const JobSpec& spec, std::ostream& log);
int cmd_gen(const JobSpec& spec, std::ostream& log);
int cmd_recover(const JobSpec& spec, std::ostream& log);
int cmd_bench(const JobSpec& spec, std::ostream& log);

int run(const JobSpec& spec, std::ostream& log);

/// Parses argv with CLI11 and runs the selected command.
int main_entry(int argc, char** argv);

}  // namespace covsel::cli
