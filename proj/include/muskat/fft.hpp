#ifndef MUSKAT_FFT_HPP
#define MUSKAT_FFT_HPP

#include <complex>
#include <vector>

namespace muskat::fft {

/// Real-to-complex DFT of n samples; returns n/2+1 unnormalized bins
/// B_k = sum_j x_j exp(-2 pi i j k / n). Plans are cached per size behind a
/// mutex; execution is safe to call concurrently.
std::vector<std::complex<double>> forward(const std::vector<double>& x);

/// Inverse of forward(), including the 1/n normalization.
std::vector<double> inverse(const std::vector<std::complex<double>>& bins, int n);

} // namespace muskat::fft

#endif
