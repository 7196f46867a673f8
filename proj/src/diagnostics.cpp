#include "muskat/diagnostics.hpp"

#include "muskat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;

// Band-limited data resampled fine enough that the plain trapezoidal rule
// resolves a kernel concentrated at distance d from the curve. The error of
// the rule decays like exp(-d n_fine), so n_fine ~ 28/d reaches roundoff.
constexpr int kMaxFine = 1 << 17;

int fine_size_for(double distance, int n) {
    const double needed = 28.0 / distance;
    int nf = std::max(4 * n, 256);
    while (nf < needed && nf < kMaxFine) nf *= 2;
    return nf;
}

struct FineSheet {
    std::vector<double> z1, z2, w, pi;
    double h = 0.0;

    static FineSheet build(const Curve& c, const SpectralField& w,
                           const SpectralField* pi_coarse, int nf) {
        FineSheet f;
        const SpectralField q1f = c.q1().upsample(nf);
        const SpectralField q2f = c.q2().upsample(nf);
        const SpectralField wf = w.upsample(nf);
        f.z1.resize(nf);
        f.z2.resize(nf);
        f.w.resize(nf);
        f.h = 2.0 * kPi / nf;
        for (int j = 0; j < nf; ++j) {
            f.z1[j] = q1f.node(j) + q1f[j];
            f.z2[j] = q2f[j];
            f.w[j] = wf[j];
        }
        if (pi_coarse) {
            const SpectralField pif = pi_coarse->upsample(nf);
            f.pi.assign(pif.values().begin(), pif.values().end());
        }
        return f;
    }

    double min_distance(double x1, double x2) const {
        double d2 = std::numeric_limits<double>::max();
        for (std::size_t j = 0; j < z1.size(); ++j) {
            // horizontal periodicity: compare against the wrapped difference
            double dx = std::remainder(x1 - z1[j], 2.0 * kPi);
            double dy = x2 - z2[j];
            d2 = std::min(d2, dx * dx + dy * dy);
        }
        return std::sqrt(d2);
    }

    std::array<double, 2> velocity(double x1, double x2) const {
        double a1 = 0.0, a2 = 0.0;
        for (std::size_t j = 0; j < z1.size(); ++j) {
            const double t1 = std::tan(0.5 * (x1 - z1[j]));
            const double t2 = std::tanh(0.5 * (x2 - z2[j]));
            const double denom = t1 * t1 + t2 * t2;
            a1 -= w[j] * t2 * (1.0 + t1 * t1) / denom;
            a2 += w[j] * t1 * (1.0 - t2 * t2) / denom;
        }
        const double s = h / (4.0 * kPi);
        return {s * a1, s * a2};
    }

    double pressure(double x1, double x2, const FluidParams& p) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < z1.size(); ++j)
            acc += pi[j] * std::log(std::cosh(x2 - z2[j]) - std::cos(x1 - z1[j]));
        return acc * h / (4.0 * kPi) - 0.5 * p.g * (p.rho1 + p.rho2) * x2;
    }
};

void check_standoff(const FineSheet& f, double x1, double x2) {
    const double d = f.min_distance(x1, x2);
    if (d * double(f.z1.size()) < 24.0)
        throw std::invalid_argument(
            "off-curve evaluation: point too close to the interface; use "
            "boundary_limits for near-boundary values");
}

} // namespace

SpectralField sigma_field(const Curve& c, const SpectralField& w, const FluidParams& p) {
    const BrVelocity br = birkhoff_rott(c, w);
    const int n = c.size();
    const double visc = (p.mu2 - p.mu1) / p.kappa;
    const double grav = p.g * (p.rho2 - p.rho1);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        const double br_dot_perp = -br.x[j] * c.dz2()[j] + br.y[j] * c.dz1()[j];
        out[j] = visc * br_dot_perp + grav * c.dz1()[j];
    }
    return SpectralField(std::move(out));
}

MinSigma min_sigma(const Curve& c, const SpectralField& w, const FluidParams& p) {
    const SpectralField s = sigma_field(c, w, p);
    const int n = c.size();
    int jm = 0;
    for (int j = 1; j < n; ++j)
        if (s[j] < s[jm]) jm = j;
    const double sm = s[(jm + n - 1) % n];
    const double sp = s[(jm + 1) % n];
    const double s0 = s[jm];
    const double denom = sm - 2.0 * s0 + sp;
    double delta = 0.0;
    if (denom > 1e-14 * (std::abs(s0) + std::abs(sm) + std::abs(sp)))
        delta = 0.5 * (sm - sp) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    const double value = s0 - 0.25 * (sm - sp) * delta;
    return {value, c.node(jm) + delta * c.spacing()};
}

std::array<double, 2> velocity_at(const Curve& c, const SpectralField& w,
                                  double x1, double x2) {
    if (w.max_abs() == 0.0) return {0.0, 0.0};
    FineSheet probe = FineSheet::build(c, w, nullptr, std::max(4 * c.size(), 1024));
    const double d = probe.min_distance(x1, x2);
    const int nf = fine_size_for(std::max(d, 1e-12), c.size());
    FineSheet f = nf == int(probe.z1.size())
                      ? std::move(probe)
                      : FineSheet::build(c, w, nullptr, nf);
    check_standoff(f, x1, x2);
    return f.velocity(x1, x2);
}

double pressure_at(const Curve& c, const SpectralField& w, const FluidParams& p,
                   double x1, double x2) {
    const SpectralField pi = sigma_field(c, w, p);
    FineSheet probe = FineSheet::build(c, w, &pi, std::max(4 * c.size(), 1024));
    const double d = probe.min_distance(x1, x2);
    const int nf = fine_size_for(std::max(d, 1e-12), c.size());
    FineSheet f = nf == int(probe.z1.size())
                      ? std::move(probe)
                      : FineSheet::build(c, w, &pi, nf);
    check_standoff(f, x1, x2);
    return f.pressure(x1, x2, p);
}

BoundaryLimits boundary_limits(const Curve& c, const SpectralField& w,
                               const FluidParams& p, double h) {
    if (h <= 0.0) throw std::invalid_argument("boundary_limits: h must be > 0");
    const int n = c.size();
    const SpectralField pi = sigma_field(c, w, p);
    const BrVelocity br = birkhoff_rott(c, w);
    const int nf = fine_size_for(h, n);
    const FineSheet f = FineSheet::build(c, w, &pi, nf);

    std::vector<double> jump(n), avg(n), pjump(n);
    parallel_for(n, [&](std::size_t j) {
        const double sp = std::sqrt(c.speed2(int(j)));
        const double nu1 = -c.dz2()[int(j)] / sp; // unit normal, points up into fluid 1
        const double nu2 = c.dz1()[int(j)] / sp;
        const double x1 = c.z1(int(j)), x2 = c.z2(int(j));

        const auto v_below = f.velocity(x1 - h * nu1, x2 - h * nu2);
        const auto v_above = f.velocity(x1 + h * nu1, x2 + h * nu2);
        const double sp2 = sp * sp;
        const double j1 = v_below[0] - v_above[0] - w[int(j)] * c.dz1()[int(j)] / sp2;
        const double j2 = v_below[1] - v_above[1] - w[int(j)] * c.dz2()[int(j)] / sp2;
        jump[j] = std::hypot(j1, j2);
        const double a1 = 0.5 * (v_below[0] + v_above[0]) - br.x[int(j)];
        const double a2 = 0.5 * (v_below[1] + v_above[1]) - br.y[int(j)];
        avg[j] = std::hypot(a1, a2);
        pjump[j] = std::abs(f.pressure(x1 + h * nu1, x2 + h * nu2, p) -
                            f.pressure(x1 - h * nu1, x2 - h * nu2, p));
    });

    BoundaryLimits out;
    for (int j = 0; j < n; ++j) {
        out.velocity_jump_residual = std::max(out.velocity_jump_residual, jump[j]);
        out.velocity_avg_residual = std::max(out.velocity_avg_residual, avg[j]);
        out.pressure_jump_max = std::max(out.pressure_jump_max, pjump[j]);
    }
    return out;
}

LambdaCheck lambda_pointwise_check(const SpectralField& f) {
    const SpectralField lf = lambda_op(f);
    const SpectralField lf2 = lambda_op(pointwise_mul(f, f));
    double mn = std::numeric_limits<double>::max();
    for (int j = 0; j < f.size(); ++j)
        mn = std::min(mn, f[j] * lf[j] - 0.5 * lf2[j]);
    return {mn, mn >= -1e-10};
}

DiagnosticsRecord energy_report(const Curve& c, const SpectralField& w,
                                const FluidParams& p, double t,
                                double boundary_offset) {
    DiagnosticsRecord r;
    r.t = t;

    const ArcChordReport arc = arc_chord(c, c.size());
    r.sup_F = arc.sup_F;
    r.arc_argmax_alpha = arc.argmax_alpha;
    r.arc_argmax_beta = arc.argmax_beta;

    const MinSigma ms = min_sigma(c, w, p);
    r.min_sigma = ms.value;
    r.min_sigma_alpha = ms.alpha;

    const SpectralField sig = sigma_field(c, w, p);
    r.sigma_integral = 2.0 * kPi * sig.mean();

    for (int s = 0; s <= 3; ++s) {
        const double n1 = sobolev_norm(c.q1(), s);
        const double n2 = sobolev_norm(c.q2(), s);
        r.sobolev_norms[s] = std::hypot(n1, n2);
    }
    r.tangent_dev = tangent_speed_deviation(c);

    const BoundaryLimits bl = boundary_limits(c, w, p, boundary_offset);
    r.pressure_jump_max = bl.pressure_jump_max;
    r.velocity_jump_residual = bl.velocity_jump_residual;
    r.velocity_avg_residual = bl.velocity_avg_residual;

    r.lambda_inequality_min = std::min(lambda_pointwise_check(w).min_value,
                                       lambda_pointwise_check(c.q2()).min_value);

    // Leading H^3 energy term: int (sigma/|dz|^2) d^3z . Lambda(d^3z) da.
    // Dissipative (nonnegative) when sigma > 0 up to the variable-weight
    // coupling, which is what the record lets the reader inspect.
    const SpectralField d3q1 = spectral_derivative(c.q1(), 3);
    const SpectralField d3q2 = spectral_derivative(c.q2(), 3);
    const SpectralField l1 = lambda_op(d3q1);
    const SpectralField l2 = lambda_op(d3q2);
    double form = 0.0;
    for (int j = 0; j < c.size(); ++j)
        form += sig[j] / c.speed2(j) * (d3q1[j] * l1[j] + d3q2[j] * l2[j]);
    r.sigma_weighted_k3_form = form * c.spacing();

    const BrVelocity br = birkhoff_rott(c, w);
    const SpectralField dbx = spectral_derivative(br.x, 1);
    const SpectralField dby = spectral_derivative(br.y, 1);
    double a_mean = 0.0;
    for (int j = 0; j < c.size(); ++j) a_mean += c.speed2(j);
    a_mean /= c.size();
    double integ = 0.0;
    for (int j = 0; j < c.size(); ++j)
        integ += c.dz1()[j] * dbx[j] + c.dz2()[j] * dby[j];
    integ *= c.spacing();
    r.b_t = integ / (kPi * a_mean);

    return r;
}

} // namespace muskat
