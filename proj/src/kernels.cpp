#include "covsel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace covsel::kernels {

namespace {

inline double huber(double t, double mu) {
  const double a = std::abs(t);
  return a <= mu ? t * t / (2.0 * mu) : a - 0.5 * mu;
}

// Below this many entries the parallel versions run inline.
constexpr std::ptrdiff_t kParallelMin = 4096;

}  // namespace

namespace serial {

double frob_inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l1_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void scaled_clamp(std::span<const double> x, double scale, double lo, double hi,
                  std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(scale * x[i], lo, hi);
}

void combine(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
}

double huber_sum(std::span<const double> x, double scale, double mu) {
  double s = 0.0;
  for (double v : x) s += huber(scale * v, mu);
  return s;
}

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace serial

namespace parallel {

double frob_inner(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

double l1_norm(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double* pa = a.data();
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += std::abs(pa[i]);
  return s;
}

double max_abs(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double* pa = a.data();
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(pa[i]));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double* pa = a.data();
  const double* pb = b.data();
  double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(pa[i] - pb[i]));
  return m;
}

void scaled_clamp(std::span<const double> x, double scale, double lo, double hi,
                  std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double* px = x.data();
  double* po = out.data();
#pragma omp parallel for simd schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) po[i] = std::min(std::max(scale * px[i], lo), hi);
}

void combine(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double* px = x.data();
  const double* py = y.data();
  double* po = out.data();
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) po[i] = a * px[i] + b * py[i];
}

double huber_sum(std::span<const double> x, double scale, double mu) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double* px = x.data();
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += huber(scale * px[i], mu);
  return s;
}

bool all_finite(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const double* pa = a.data();
  int bad = 0;
#pragma omp parallel for reduction(| : bad) schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) bad |= std::isfinite(pa[i]) ? 0 : 1;
  return bad == 0;
}

}  // namespace parallel

int configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("COVSEL_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // ignore malformed values; the runtime default stays in effect
    }
  }
#endif
  return max_threads();
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace covsel::kernels
