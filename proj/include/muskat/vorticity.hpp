#ifndef MUSKAT_VORTICITY_HPP
#define MUSKAT_VORTICITY_HPP

#include "muskat/curve.hpp"
#include "muskat/kernels.hpp"
#include "muskat/spectral_field.hpp"

#include <vector>

namespace muskat {

enum class SolveMethod { dense, neumann };

struct VorticitySolve {
    SpectralField w;        // solution of (I + A_mu T) w = -G d/da z2
    double residual = 0.0;  // sup norm of (I + A_mu T) w - rhs
    SolveMethod method = SolveMethod::neumann;
    int iterations = 0;
    bool fell_back = false; // neumann hit the iteration cap, dense took over
};

/// Solves the second-kind vortex-sheet-strength equation
/// w + A_mu T(w) = -G d/da z2.
/// neumann: w_{k+1} = rhs - A_mu T(w_k) until the sup residual drops below
/// tol (at most 500 iterations, then dense fallback, recorded). dense:
/// LU-factor I + A_mu M from assemble_T_matrix.
VorticitySolve solve_vorticity(const Curve& c, const FluidParams& p,
                               SolveMethod method = SolveMethod::neumann,
                               double tol = 1e-10);

/// Mollified variant: (I + A_mu D_eps T) w = -G D_eps d/da z2 with D_eps the
/// double-mollification symbol (the smoothing acts inside the amplitude
/// equation only).
VorticitySolve solve_vorticity_mollified(const Curve& c, const FluidParams& p,
                                         double eps,
                                         SolveMethod method = SolveMethod::neumann,
                                         double tol = 1e-10);

/// Condition numbers of I - xi M for each xi (|xi| <= 1); a singular matrix
/// is reported as +inf rather than thrown.
std::vector<double> resolvent_sweep(const Curve& c, const std::vector<double>& xi_list);

} // namespace muskat

#endif
