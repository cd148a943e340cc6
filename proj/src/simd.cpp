#include "rbk/simd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace rbk::simd {

namespace scalar {

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = y[i] + a * x[i];
}

WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  double acc = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double w = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
    double r = e[i] / w;
    acc += r * r;
    if (y0[i] != 0.0 || y1[i] != 0.0 || e[i] != 0.0) ++active;
  }
  std::size_t n = active == 0 ? 1 : active;
  return {std::sqrt(acc / static_cast<double>(n)), active};
}

}  // namespace scalar

namespace {

struct Dispatch {
  Lane lane;
  double (*sum)(std::span<const double>);
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  WrmsResult (*wrms)(std::span<const double>, std::span<const double>,
                     std::span<const double>, double, double);
};

Dispatch select() {
  bool want_avx2 = avx2::available();
  if (const char* env = std::getenv("RBK_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) want_avx2 = false;
    // "avx2"/"auto" keep the hardware-derived choice
  }
  if (want_avx2)
    return {Lane::avx2, &avx2::sum, &avx2::dot, &avx2::axpy,
            &avx2::wrms_error};
  return {Lane::scalar, &scalar::sum, &scalar::dot, &scalar::axpy,
          &scalar::wrms_error};
}

const Dispatch& dispatch() {
  static const Dispatch d = select();
  return d;
}

}  // namespace

Lane active_lane() { return dispatch().lane; }

std::string_view lane_name(Lane lane) {
  return lane == Lane::avx2 ? "avx2" : "scalar";
}

double sum(std::span<const double> x) { return dispatch().sum(x); }

double dot(std::span<const double> x, std::span<const double> y) {
  return dispatch().dot(x, y);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  dispatch().axpy(a, x, y);
}

WrmsResult wrms_error(std::span<const double> e, std::span<const double> y0,
                      std::span<const double> y1, double atol, double rtol) {
  return dispatch().wrms(e, y0, y1, atol, rtol);
}

}  // namespace rbk::simd
