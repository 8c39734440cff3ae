#pragma once

// Entrywise kernels over dense n×n storage. Every kernel has a serial
// reference in covsel::kernels::serial and an OpenMP version in
// covsel::kernels::parallel; the unqualified names dispatch to the parallel
// one. Reductions may differ from the serial result by round-off only.

#include <cstddef>
#include <span>

namespace covsel::kernels {

namespace serial {
double frob_inner(std::span<const double> a, std::span<const double> b);
double l1_norm(std::span<const double> a);
double max_abs(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
/// out[i] = clamp(scale * x[i], lo, hi)
void scaled_clamp(std::span<const double> x, double scale, double lo, double hi,
                  std::span<double> out);
/// out[i] = a * x[i] + b * y[i]
void combine(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out);
/// Σᵢ huber(scale·x[i]; mu) with huber(t) = t²/(2mu) if |t| ≤ mu else |t| − mu/2.
double huber_sum(std::span<const double> x, double scale, double mu);
bool all_finite(std::span<const double> a);
}  // namespace serial

namespace parallel {
double frob_inner(std::span<const double> a, std::span<const double> b);
double l1_norm(std::span<const double> a);
double max_abs(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
void scaled_clamp(std::span<const double> x, double scale, double lo, double hi,
                  std::span<double> out);
void combine(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out);
double huber_sum(std::span<const double> x, double scale, double mu);
bool all_finite(std::span<const double> a);
}  // namespace parallel

using parallel::all_finite;
using parallel::combine;
using parallel::frob_inner;
using parallel::huber_sum;
using parallel::l1_norm;
using parallel::max_abs;
using parallel::max_abs_diff;
using parallel::scaled_clamp;

/// Applies the COVSEL_THREADS environment cap to the OpenMP runtime, if set.
/// Returns the thread count in effect afterwards.
int configure_threads_from_env();

/// Thread count the parallel kernels will use.
int max_threads();

}  // namespace covsel::kernels
