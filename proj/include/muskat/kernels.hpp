#ifndef MUSKAT_KERNELS_HPP
#define MUSKAT_KERNELS_HPP

#include "muskat/curve.hpp"
#include "muskat/spectral_field.hpp"

#include <Eigen/Dense>

namespace muskat {

/// Two-fluid parameters. Fluid 1 occupies the domain above the interface,
/// fluid 2 the domain below.
struct FluidParams {
    double mu1 = 1.0;   // dynamic viscosity, fluid 1
    double mu2 = 1.0;   // dynamic viscosity, fluid 2
    double rho1 = 0.0;  // density, fluid 1
    double rho2 = 1.0;  // density, fluid 2
    double kappa = 1.0; // permeability
    double g = 1.0;     // gravity

    /// Viscosity contrast (mu1 - mu2)/(mu1 + mu2), |A_mu| <= 1.
    double atwood() const { return (mu1 - mu2) / (mu1 + mu2); }

    /// G = 2 kappa g (rho2 - rho1)/(mu2 + mu1); the vorticity right-hand side
    /// is -G d/da z2.
    double gravity_coeff() const { return 2.0 * kappa * g * (rho2 - rho1) / (mu2 + mu1); }

    /// Throws if viscosities/permeability/gravity are not positive.
    void validate() const;
};

/// tan/tanh half-differences of the interface positions at a node pair, plus
/// the periodically wrapped plain half-differences used by the desingularized
/// kernels. |V2| <= 1 always.
struct KernelSample {
    double V1; // tan((z1_i - z1_j)/2), +-inf at a tan pole (callers use the
               // combined rational forms, where the pole cancels)
    double V2; // tanh((z2_i - z2_j)/2)
    double W1; // ((z1_i - z1_j)/2) wrapped to (-pi, pi]
    double W2; // (z2_i - z2_j)/2
};

KernelSample kernel_V(const Curve& c, int i, int j);

struct BrVelocity {
    SpectralField x, y;
};

/// Birkhoff-Rott velocity of amplitude w along the interface, evaluated at
/// every node by the alternating-node trapezoidal rule (sum over source nodes
/// of opposite parity, weight 2h). The rule skips the singular node and is
/// spectrally accurate for the cot-type principal value.
BrVelocity birkhoff_rott(const Curve& c, const SpectralField& w);

/// Same quadrature with delta added to the denominator of both components;
/// delta = 0 reproduces birkhoff_rott exactly.
BrVelocity birkhoff_rott_delta(const Curve& c, const SpectralField& w, double delta);

/// T(u) = 2 BR(z, u) . d/da z. Compact, mean-zero range.
SpectralField op_T(const Curve& c, const SpectralField& u);

/// L^2 adjoint of T, evaluated with the same quadrature. The kernel is the
/// transposed T kernel; see kernels.cpp for the sign relative to the usual
/// three-integral boundary-limit expression.
SpectralField op_T_adjoint(const Curve& c, const SpectralField& u);

/// Dense matrix M with (M u)_i = op_T(c, u)(alpha_i) for every grid field.
/// Throws when n exceeds the cap.
Eigen::MatrixXd assemble_T_matrix(const Curve& c, int cap = 2048);

/// Near-singularity kernel decompositions: the subtracted kernels stay
/// bounded (A1, A2), or grow no faster than the stated rates (B, C, Q1_C),
/// as beta -> 0 on smooth non-degenerate curves.
struct KernelDecomposition {
    double A1;     // V2/|V|^2 - dz2 /(|dz|^2 tan(beta/2))
    double A2;     // V1/|V|^2 - dz1 /(|dz|^2 tan(beta/2))
    double B;      // V1 (V^perp . dz)/|V|^4 + dz1 ((ddz)^perp . dz)/(|dz|^4 tan(beta/2))
    double C_norm; // |V^perp w_j beta /|V|^4 - 2 dz^perp w_i /(|dz|^4 sin^2(beta/2))|
    double Q1_C;   // 1/|V|^2 - 4/(|dz|^2 beta^2) - 4 (dz . ddz)/(|dz|^4 beta)
};

/// Evaluates the decompositions at the node pair (i, j), beta = alpha_i -
/// alpha_j wrapped; w supplies the amplitude entering C. Requires i != j.
KernelDecomposition kernel_decompositions(const Curve& c, const SpectralField& w,
                                          int i, int j);

} // namespace muskat

#endif
