#pragma once

#include <span>
#include <vector>

namespace rbk::fft {

// Linear autocorrelation r[lag] = sum_i u[i]*u[i+lag] for lag = 0..n-1.
//
// The gain sum of the truncated system is a correlation, not a convolution:
// one index runs backwards relative to a convolution, which in spectral terms
// means multiplying the transform by its own conjugate instead of by itself.
// The transform length is the smallest power of two >= 2n so the circular
// wrap-around never touches lags below n. Accumulation is done in long
// double; in plain double the spectral rounding noise (~eps * ||u||_1||u||_2)
// can exceed the componentwise equivalence budget against direct summation
// for product kernels at large n.
std::vector<double> autocorrelation(std::span<const double> u);

}  // namespace rbk::fft
