#ifndef MUSKAT_DIAGNOSTICS_HPP
#define MUSKAT_DIAGNOSTICS_HPP

#include "muskat/curve.hpp"
#include "muskat/kernels.hpp"
#include "muskat/spectral_field.hpp"

#include <array>

namespace muskat {

/// Rayleigh-Taylor function: minus the jump of the pressure gradients in the
/// normal direction,
///   sigma = ((mu2 - mu1)/kappa) BR(z, w) . dz^perp + g (rho2 - rho1) dz1,
/// with dz^perp = (-dz2, dz1). w must solve the vorticity equation for c.
SpectralField sigma_field(const Curve& c, const SpectralField& w, const FluidParams& p);

struct MinSigma {
    double value = 0.0;
    double alpha = 0.0;
};

/// Grid minimum of sigma with quadratic sub-grid refinement around the
/// minimizing node.
MinSigma min_sigma(const Curve& c, const SpectralField& w, const FluidParams& p);

/// Velocity induced by the sheet at a point off the curve (the off-curve
/// Biot-Savart integral; smooth kernel, plain trapezoidal quadrature on an
/// upsampled grid fine enough to resolve the standoff distance).
/// Throws when x is closer to the curve than the resolvable standoff.
std::array<double, 2> velocity_at(const Curve& c, const SpectralField& w,
                                  double x1, double x2);

/// Pressure at a point off the curve, normalized so that Darcy's law holds
/// with the Biot-Savart velocity (determined up to one additive constant):
///   p(x) = (1/4 pi) int ln(cosh(x2 - z2) - cos(x1 - z1)) Pi da
///          - g (rho1 + rho2)/2 x2,
/// where Pi = sigma (the normal component of the velocity is continuous, so
/// either one-sided limit gives the same Pi).
double pressure_at(const Curve& c, const SpectralField& w, const FluidParams& p,
                   double x1, double x2);

/// Residuals of the boundary-limit relations at standoff h along the unit
/// normal (fluid 2 below, fluid 1 above):
///   v_below - v_above -> w dz/|dz|^2,  (v_below + v_above)/2 -> BR,
///   p(z + h nu) - p(z - h nu) -> 0,
/// each of first order in h. Values are maxima over the grid nodes.
struct BoundaryLimits {
    double velocity_jump_residual = 0.0;
    double velocity_avg_residual = 0.0;
    double pressure_jump_max = 0.0;
};

BoundaryLimits boundary_limits(const Curve& c, const SpectralField& w,
                               const FluidParams& p, double h);

struct LambdaCheck {
    double min_value = 0.0;
    bool ok = false; // min >= -1e-10
};

/// Grid minimum of f Lambda f - (1/2) Lambda(f^2), which is nonnegative for
/// smooth periodic f.
LambdaCheck lambda_pointwise_check(const SpectralField& f);

/// Everything monitored per state. The H^k norms of the curve are those of
/// the periodic pair (q1, q2); arc-chord and Sobolev components are stored
/// separately rather than combined.
struct DiagnosticsRecord {
    double t = 0.0;
    double sup_F = 0.0;
    double arc_argmax_alpha = 0.0;
    double arc_argmax_beta = 0.0;
    double min_sigma = 0.0;
    double min_sigma_alpha = 0.0;
    double sigma_integral = 0.0;
    std::array<double, 4> sobolev_norms{}; // s = 0, 1, 2, 3
    double tangent_dev = 0.0;
    double pressure_jump_max = 0.0;
    double velocity_jump_residual = 0.0;
    double velocity_avg_residual = 0.0;
    double lambda_inequality_min = 0.0;
    double sigma_weighted_k3_form = 0.0; // int (sigma/|dz|^2) d^3z . Lambda d^3z
    double b_t = 0.0;
};

/// Assembles the full record. boundary_offset sets the standoff used for the
/// jump/continuity residuals (the dominant cost).
DiagnosticsRecord energy_report(const Curve& c, const SpectralField& w,
                                const FluidParams& p, double t = 0.0,
                                double boundary_offset = 1e-2);

} // namespace muskat

#endif
