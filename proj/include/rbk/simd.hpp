#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace rbk::simd {

// Runtime-selected implementation of the dense inner loops. The scalar lane
// is the reference; the AVX2 lane must be bit-identical for elementwise
// operations and within rounding-order tolerance for reductions (covered by
// the lane-equivalence tests). Selection happens once, at first use; set
// RBK_SIMD=scalar in the environment to force the reference lane.
enum class Lane { scalar, avx2 };

Lane active_lane();
std::string_view lane_name(Lane lane);

struct WrmsResult {
  double norm = 0.0;          // sqrt(sum((e_i/w_i)^2) / max(active,1))
  std::size_t active = 0;     // components with y0, y1 or e nonzero
};

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// Weighted RMS of e with weights w_i = atol + rtol*max(|y0_i|,|y1_i|),
// averaged over dynamically active components only, so identically-zero
// padding does not dilute the norm.
WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol);

// Per-lane entry points, exposed for the equivalence tests.
namespace scalar {
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol);
}  // namespace scalar

namespace avx2 {
bool available();
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double a, std::span<const double> x, std::span<double> y);
WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol);
}  // namespace avx2

}  // namespace rbk::simd
