#include "muskat/kernels.hpp"

#include "muskat/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) {
    x = std::fmod(x + kPi, 2.0 * kPi);
    if (x < 0) x += 2.0 * kPi;
    return x - kPi;
}
} // namespace

void FluidParams::validate() const {
    if (!(mu1 > 0.0) || !(mu2 > 0.0))
        throw std::invalid_argument("FluidParams: viscosities must be > 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("FluidParams: kappa must be > 0");
    if (!(g > 0.0)) throw std::invalid_argument("FluidParams: g must be > 0");
    if (!std::isfinite(rho1) || !std::isfinite(rho2))
        throw std::invalid_argument("FluidParams: densities must be finite");
}

KernelSample kernel_V(const Curve& c, int i, int j) {
    if (i == j) throw std::invalid_argument("kernel_V: diagonal pair");
    const double d1 = 0.5 * (c.z1(i) - c.z1(j));
    const double d2 = 0.5 * (c.z2(i) - c.z2(j));
    return {std::tan(d1), std::tanh(d2), wrap_pi(d1), d2};
}

namespace {

// Shared alternating-node loop for both BR components. The j = i node is
// never touched (opposite parity only); each target's sum runs in a fixed
// source order, so results do not depend on the thread count.
BrVelocity br_impl(const Curve& c, const SpectralField& w, double delta) {
    const int n = c.size();
    if (w.size() != n) throw std::invalid_argument("birkhoff_rott: size mismatch");
    const double h = c.spacing();
    const double scale = 2.0 * h / (4.0 * kPi);

    std::vector<double> out1(n), out2(n);
    parallel_for(n, [&](std::size_t i) {
        const double z1i = c.z1(int(i));
        const double z2i = c.z2(int(i));
        double acc1 = 0.0, acc2 = 0.0;
        for (int j = (int(i) % 2 == 0) ? 1 : 0; j < n; j += 2) {
            const double t1 = std::tan(0.5 * (z1i - c.z1(j)));
            const double t2 = std::tanh(0.5 * (z2i - c.z2(j)));
            const double denom = t1 * t1 + t2 * t2 + delta;
            acc1 -= w[j] * t2 * (1.0 + t1 * t1) / denom;
            acc2 += w[j] * t1 * (1.0 - t2 * t2) / denom;
        }
        out1[i] = scale * acc1;
        out2[i] = scale * acc2;
    });
    return {SpectralField(std::move(out1)), SpectralField(std::move(out2))};
}

} // namespace

BrVelocity birkhoff_rott(const Curve& c, const SpectralField& w) {
    return br_impl(c, w, 0.0);
}

BrVelocity birkhoff_rott_delta(const Curve& c, const SpectralField& w, double delta) {
    if (delta < 0.0) throw std::invalid_argument("birkhoff_rott_delta: delta must be >= 0");
    return br_impl(c, w, delta);
}

SpectralField op_T(const Curve& c, const SpectralField& u) {
    const BrVelocity br = birkhoff_rott(c, u);
    const int n = c.size();
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = 2.0 * (br.x[j] * c.dz1()[j] + br.y[j] * c.dz2()[j]);
    return SpectralField(std::move(out));
}

SpectralField op_T_adjoint(const Curve& c, const SpectralField& u) {
    const int n = c.size();
    if (u.size() != n) throw std::invalid_argument("op_T_adjoint: size mismatch");
    const double h = c.spacing();
    const double scale = 2.0 * h / (2.0 * kPi);

    // Transpose of the T kernel: swapping arguments flips the sign of V, so
    // the three-integral boundary-limit expression acquires an overall minus
    // once its tan/tanh terms are collected.
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
        const double z1i = c.z1(int(i));
        const double z2i = c.z2(int(i));
        double acc = 0.0;
        for (int j = (int(i) % 2 == 0) ? 1 : 0; j < n; j += 2) {
            const double t1 = std::tan(0.5 * (z1i - c.z1(j)));
            const double t2 = std::tanh(0.5 * (z2i - c.z2(j)));
            const double denom = t1 * t1 + t2 * t2;
            acc += u[j] *
                   (c.dz1()[j] * t2 * (1.0 + t1 * t1) -
                    c.dz2()[j] * t1 * (1.0 - t2 * t2)) /
                   denom;
        }
        out[i] = scale * acc;
    });
    return SpectralField(std::move(out));
}

Eigen::MatrixXd assemble_T_matrix(const Curve& c, int cap) {
    const int n = c.size();
    if (n > cap) throw std::invalid_argument("assemble_T_matrix: N exceeds cap");
    const double h = c.spacing();
    const double scale = 2.0 * h / (2.0 * kPi);

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    parallel_for(n, [&](std::size_t i) {
        const double z1i = c.z1(int(i));
        const double z2i = c.z2(int(i));
        for (int j = (int(i) % 2 == 0) ? 1 : 0; j < n; j += 2) {
            const double t1 = std::tan(0.5 * (z1i - c.z1(j)));
            const double t2 = std::tanh(0.5 * (z2i - c.z2(j)));
            const double denom = t1 * t1 + t2 * t2;
            m(i, j) = scale *
                      (c.dz2()[int(i)] * t1 * (1.0 - t2 * t2) -
                       c.dz1()[int(i)] * t2 * (1.0 + t1 * t1)) /
                      denom;
        }
    });
    return m;
}

KernelDecomposition kernel_decompositions(const Curve& c, const SpectralField& w,
                                          int i, int j) {
    if (i == j) throw std::invalid_argument("kernel_decompositions: diagonal pair");
    const KernelSample v = kernel_V(c, i, j);
    const double beta = wrap_pi(c.node(i) - c.node(j));
    const double tb = std::tan(0.5 * beta);
    const double sb = std::sin(0.5 * beta);

    const double dz1 = c.dz1()[i];
    const double dz2 = c.dz2()[i];
    const double nz2 = dz1 * dz1 + dz2 * dz2;

    const SpectralField ddz1f = spectral_derivative(c.q1(), 2);
    const SpectralField ddz2f = spectral_derivative(c.q2(), 2);
    const double ddz1 = ddz1f[i];
    const double ddz2 = ddz2f[i];

    const double D = v.V1 * v.V1 + v.V2 * v.V2;

    KernelDecomposition kd{};
    kd.A1 = v.V2 / D - dz2 / (nz2 * tb);
    kd.A2 = v.V1 / D - dz1 / (nz2 * tb);

    // V^perp = (-V2, V1); (ddz)^perp = (-ddz2, ddz1)
    const double vperp_dot_dz = -v.V2 * dz1 + v.V1 * dz2;
    const double ddzperp_dot_dz = -ddz2 * dz1 + ddz1 * dz2;
    kd.B = v.V1 * vperp_dot_dz / (D * D) +
           dz1 * ddzperp_dot_dz / (nz2 * nz2 * tb);

    const double c1 = -v.V2 * w[j] * beta / (D * D) -
                      2.0 * (-dz2) * w[i] / (nz2 * nz2 * sb * sb);
    const double c2 = v.V1 * w[j] * beta / (D * D) -
                      2.0 * dz1 * w[i] / (nz2 * nz2 * sb * sb);
    kd.C_norm = std::hypot(c1, c2);

    const double dz_dot_ddz = dz1 * ddz1 + dz2 * ddz2;
    kd.Q1_C = 1.0 / D - 4.0 / (nz2 * beta * beta) -
              4.0 * dz_dot_ddz / (nz2 * nz2 * beta);
    return kd;
}

} // namespace muskat
