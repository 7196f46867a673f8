#ifndef MUSKAT_SPECTRAL_FIELD_HPP
#define MUSKAT_SPECTRAL_FIELD_HPP

#include <complex>
#include <functional>
#include <vector>

namespace muskat {

/// A real scalar field sampled on the uniform periodic grid
/// alpha_j = -pi + j h, h = 2 pi / n (n even). The Fourier coefficients are
/// computed once at construction, so a field is immutable and safe to share
/// across threads.
class SpectralField {
public:
    /// Takes ownership of the samples. n must be even and >= 4, values finite.
    explicit SpectralField(std::vector<double> values);

    static SpectralField zeros(int n);
    static SpectralField constant(int n, double c);
    static SpectralField from_function(int n, const std::function<double(double)>& f);

    int size() const { return n_; }
    double operator[](int j) const { return values_[j]; }
    const std::vector<double>& values() const { return values_; }

    double node(int j) const;
    double spacing() const;

    double mean() const;
    double max_abs() const;

    /// Trigonometric coefficient c_k of exp(i k alpha), 0 <= k <= n/2.
    std::complex<double> coeff(int k) const;

    /// Amplitude of the real mode k: |a_k cos + b_k sin| magnitude
    /// (2|c_k| for 0 < k < n/2, |c_0| for k = 0, |c_{n/2}| at Nyquist).
    double mode_amplitude(int k) const;

    /// Raw unnormalized DFT bins (r2c layout, size n/2+1).
    const std::vector<std::complex<double>>& bins() const { return bins_; }

    /// New field with bin k multiplied by m(k); m(n/2) must be real-valued
    /// for the result to stay real.
    SpectralField apply_multiplier(const std::function<std::complex<double>(int)>& m) const;

    /// Evaluates the trigonometric interpolant at an arbitrary point x.
    double interp(double x) const;

    /// Samples of the interpolant on the same grid shifted to alpha_j - beta.
    SpectralField shifted(double beta) const;

    /// Zero-padded resampling onto n_fine >= n nodes (band-limited).
    SpectralField upsample(int n_fine) const;

private:
    SpectralField(std::vector<double> values, std::vector<std::complex<double>> bins);

    int n_;
    std::vector<double> values_;
    std::vector<std::complex<double>> bins_;
};

// ---- grid operators (Fourier multipliers) ----

/// k-th spectral derivative, multiplier (i k)^order; the Nyquist mode is
/// zeroed for odd orders.
SpectralField spectral_derivative(const SpectralField& f, int order);

/// Periodic Hilbert transform, multiplier -i sign(k); modes 0 and Nyquist
/// map to zero. Convention: H(cos k a) = sin k a.
SpectralField hilbert(const SpectralField& f);

/// Lambda = H d/da, multiplier |k|.
SpectralField lambda_op(const SpectralField& f);

/// Full H^s norm ( sum_k (1+k^2)^s |c_k|^2 )^{1/2} normalized so s = 0 is the
/// L^2 norm on [-pi, pi).
double sobolev_norm(const SpectralField& f, double s);

/// Smoothing filter with symbol phi_hat(eps k) = exp(1 - 1/(1 - (eps k/pi)^2))
/// for |eps k| < pi, 0 beyond. Real, even, <= 1, equal to 1 at k = 0, so the
/// mean is preserved exactly.
SpectralField mollify(const SpectralField& f, double eps);

/// mollify applied twice (symbol squared).
SpectralField double_mollify(const SpectralField& f, double eps);

double mollifier_symbol(double eps, int k);

/// Periodic antiderivative of the mean-free part of f (mode 0 of the result
/// is zero; the mean of f is ignored).
SpectralField periodic_antiderivative(const SpectralField& f);

// ---- pointwise arithmetic ----

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
SpectralField pointwise_mul(const SpectralField& a, const SpectralField& b);

} // namespace muskat

#endif
