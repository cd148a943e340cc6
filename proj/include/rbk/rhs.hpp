#pragma once

#include <span>
#include <vector>

#include "rbk/kernel.hpp"
#include "rbk/state.hpp"

namespace rbk {

enum class RhsPath { naive, fast, automatic };

std::string_view to_string(RhsPath path);

// Automatic path selection switches to the transform-based gain for
// separable kernels at and above this truncation size; below it the direct
// path wins and keeps exact zeros exact.
inline constexpr int kAutoFastThreshold = 128;

struct RhsOutput {
  std::vector<double> derivative;  // derivative[j-1] = dc_j/dt
  std::vector<double> gain;        // filled when parts are requested
  std::vector<double> loss;
  bool has_parts = false;
};

// Reusable evaluation context: resolves the path once and owns the scratch
// buffers (separable weights, correlation input) so repeated evaluations at
// fixed truncation size do not allocate.
class RhsEvaluator {
public:
  RhsEvaluator(const Kernel& kernel, int n, RhsPath path);

  RhsPath path() const { return path_; }

  // d := f(c) for the truncated system
  //   dc_j/dt = sum_{k=1}^{N-j} a(j+k,k) c_{j+k} c_k
  //           - c_j sum_{k=1}^{N} a(j,k) c_k,
  // the first sum being empty when N = 1 or j = N.
  void operator()(std::span<const double> c, std::span<double> d);

  // Same evaluation, also exporting the gain/loss split with d = gain - loss
  // holding bitwise.
  void eval_with_parts(std::span<const double> c, std::span<double> d,
                       std::span<double> gain, std::span<double> loss);

private:
  void naive(std::span<const double> c, std::span<double> d, double* gain_out,
             double* loss_out) const;
  void fast(std::span<const double> c, std::span<double> d, double* gain_out,
            double* loss_out);

  const Kernel* kernel_;
  int n_;
  RhsPath path_;
  std::vector<double> weights_;  // w_j with a(j,k) = K w_j w_k (separable)
  std::vector<double> u_;        // weighted concentrations, correlation input
};

// Direct double summation over (j,k), ascending k, O(N^2), with
// double-double accumulators so the gain-loss cancellation keeps full double
// accuracy. This is the reproducible reference path.
RhsOutput eval_naive(const Kernel& kernel, const ClusterState& state,
                     bool with_parts = false);

// Separable kernels only: gain evaluated as an autocorrelation of the
// weighted sequence u_j = j^beta c_j in O(N log N), loss from one weighted
// sum in O(N). Agrees with eval_naive componentwise to 1e-12 relative.
// Throws UnsupportedKernel for expression kernels.
RhsOutput eval_fast(const Kernel& kernel, const ClusterState& state,
                    bool with_parts = false);

RhsOutput eval_rhs(const Kernel& kernel, const ClusterState& state,
                   RhsPath path, bool with_parts = false);

// The path `automatic` resolves to for the given kernel and size.
RhsPath resolve_rhs_path(const Kernel& kernel, int n, RhsPath requested);

}  // namespace rbk
