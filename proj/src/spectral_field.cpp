#include "muskat/spectral_field.hpp"

#include "muskat/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;

void check_size(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("SpectralField: grid size must be even and >= 4");
}
} // namespace

SpectralField::SpectralField(std::vector<double> values)
    : n_(static_cast<int>(values.size())), values_(std::move(values)) {
    check_size(n_);
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SpectralField: non-finite sample");
    bins_ = fft::forward(values_);
}

SpectralField::SpectralField(std::vector<double> values, std::vector<std::complex<double>> bins)
    : n_(static_cast<int>(values.size())), values_(std::move(values)), bins_(std::move(bins)) {
    check_size(n_);
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SpectralField: non-finite sample");
}

SpectralField SpectralField::zeros(int n) {
    check_size(n);
    return SpectralField(std::vector<double>(n, 0.0));
}

SpectralField SpectralField::constant(int n, double c) {
    check_size(n);
    return SpectralField(std::vector<double>(n, c));
}

SpectralField SpectralField::from_function(int n, const std::function<double(double)>& f) {
    check_size(n);
    std::vector<double> v(n);
    const double h = 2.0 * kPi / n;
    for (int j = 0; j < n; ++j) v[j] = f(-kPi + j * h);
    return SpectralField(std::move(v));
}

double SpectralField::node(int j) const { return -kPi + j * (2.0 * kPi / n_); }
double SpectralField::spacing() const { return 2.0 * kPi / n_; }

double SpectralField::mean() const { return bins_[0].real() / n_; }

double SpectralField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> SpectralField::coeff(int k) const {
    if (k < 0 || k > n_ / 2) throw std::out_of_range("coeff: mode out of range");
    // Samples start at alpha = -pi, hence the (-1)^k phase.
    const double phase = (k % 2 == 0) ? 1.0 : -1.0;
    return phase * bins_[k] / static_cast<double>(n_);
}

double SpectralField::mode_amplitude(int k) const {
    const double c = std::abs(coeff(k));
    return (k == 0 || k == n_ / 2) ? c : 2.0 * c;
}

SpectralField SpectralField::apply_multiplier(
    const std::function<std::complex<double>(int)>& m) const {
    std::vector<std::complex<double>> out(bins_.size());
    for (int k = 0; k <= n_ / 2; ++k) out[k] = bins_[k] * m(k);
    std::vector<double> vals = fft::inverse(out, n_);
    return SpectralField(std::move(vals), std::move(out));
}

double SpectralField::interp(double x) const {
    // f(x) = c_0 + sum_{0<k<n/2} 2 Re(c_k e^{ikx}) + c_{n/2} cos((n/2)(x+pi))
    double acc = coeff(0).real();
    for (int k = 1; k < n_ / 2; ++k) {
        const std::complex<double> c = coeff(k);
        acc += 2.0 * (c.real() * std::cos(k * x) - c.imag() * std::sin(k * x));
    }
    acc += coeff(n_ / 2).real() * std::cos((n_ / 2) * (x + kPi));
    return acc;
}

SpectralField SpectralField::shifted(double beta) const {
    const int nyq = n_ / 2;
    return apply_multiplier([&](int k) -> std::complex<double> {
        if (k == nyq) return std::cos(nyq * beta);
        return std::exp(std::complex<double>(0.0, -k * beta));
    });
}

SpectralField SpectralField::upsample(int n_fine) const {
    if (n_fine < n_ || n_fine % 2 != 0)
        throw std::invalid_argument("upsample: target size must be even and >= n");
    if (n_fine == n_) return *this;
    std::vector<std::complex<double>> out(n_fine / 2 + 1, 0.0);
    const double scale = static_cast<double>(n_fine) / n_;
    for (int k = 0; k < n_ / 2; ++k) out[k] = bins_[k] * scale;
    // Nyquist of the coarse grid becomes an interior cosine mode.
    out[n_ / 2] = bins_[n_ / 2] * (0.5 * scale);
    std::vector<double> vals = fft::inverse(out, n_fine);
    return SpectralField(std::move(vals), std::move(out));
}

SpectralField spectral_derivative(const SpectralField& f, int order) {
    if (order < 1) throw std::invalid_argument("spectral_derivative: order must be >= 1");
    const int nyq = f.size() / 2;
    return f.apply_multiplier([&](int k) -> std::complex<double> {
        if (k == nyq && order % 2 == 1) return 0.0;
        return std::pow(std::complex<double>(0.0, k), order);
    });
}

SpectralField hilbert(const SpectralField& f) {
    const int nyq = f.size() / 2;
    return f.apply_multiplier([&](int k) -> std::complex<double> {
        if (k == 0 || k == nyq) return 0.0;
        return std::complex<double>(0.0, -1.0);
    });
}

SpectralField lambda_op(const SpectralField& f) {
    return f.apply_multiplier([](int k) -> std::complex<double> { return double(k); });
}

double sobolev_norm(const SpectralField& f, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    const int n = f.size();
    double acc = std::norm(f.coeff(0));
    for (int k = 1; k < n / 2; ++k)
        acc += 2.0 * std::pow(1.0 + double(k) * k, s) * std::norm(f.coeff(k));
    acc += std::pow(1.0 + double(n / 2) * (n / 2), s) * std::norm(f.coeff(n / 2));
    return std::sqrt(2.0 * kPi * acc);
}

double mollifier_symbol(double eps, int k) {
    const double x = eps * k / kPi;
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

SpectralField mollify(const SpectralField& f, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("mollify: eps must be > 0");
    return f.apply_multiplier([&](int k) -> std::complex<double> {
        return mollifier_symbol(eps, k);
    });
}

SpectralField double_mollify(const SpectralField& f, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("mollify: eps must be > 0");
    return f.apply_multiplier([&](int k) -> std::complex<double> {
        const double m = mollifier_symbol(eps, k);
        return m * m;
    });
}

SpectralField periodic_antiderivative(const SpectralField& f) {
    const int nyq = f.size() / 2;
    return f.apply_multiplier([&](int k) -> std::complex<double> {
        if (k == 0 || k == nyq) return 0.0;
        return 1.0 / std::complex<double>(0.0, k);
    });
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = a[j] + b[j];
    return SpectralField(std::move(v));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = a[j] - b[j];
    return SpectralField(std::move(v));
}

SpectralField operator*(double s, const SpectralField& a) {
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = s * a[j];
    return SpectralField(std::move(v));
}

SpectralField pointwise_mul(const SpectralField& a, const SpectralField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    std::vector<double> v(a.size());
    for (int j = 0; j < a.size(); ++j) v[j] = a[j] * b[j];
    return SpectralField(std::move(v));
}

} // namespace muskat
